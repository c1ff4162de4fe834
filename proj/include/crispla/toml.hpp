// SPDX-License-Identifier: Apache-2.0
//
// Reader for the TOML subset used by experiment configuration files: [section] headers, bare keys,
// basic strings, integers, floats, booleans and (nested, multi-line) arrays. Every value remembers
// its source line so schema errors can point at it.

#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace crispla::toml
{

class ParseError : public std::runtime_error
{
  public:
    ParseError(const std::string &source, int line, const std::string &what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

  private:
    int line_;
};

struct Value;
using Array = std::vector<Value>;

struct Value
{
    std::variant<bool, std::int64_t, double, std::string, Array> data;
    int line = 0;

    bool is_bool() const { return std::holds_alternative<bool>(data); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
    bool is_float() const { return std::holds_alternative<double>(data); }
    bool is_number() const { return is_int() || is_float(); }
    bool is_string() const { return std::holds_alternative<std::string>(data); }
    bool is_array() const { return std::holds_alternative<Array>(data); }

    double as_number() const { return is_int() ? static_cast<double>(std::get<std::int64_t>(data)) : std::get<double>(data); }
};

// section -> key -> value; top-level keys live in section ""
using Table = std::map<std::string, std::map<std::string, Value>>;

namespace detail
{

class Parser
{
  public:
    Parser(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

    Table parse()
    {
        Table table;
        std::string section;
        table[section];
        while (true)
        {
            skip_blank_lines();
            if (eof())
                break;
            if (peek() == '[')
            {
                ++pos_;
                skip_inline_space();
                const std::string name = read_dotted_key();
                skip_inline_space();
                expect(']');
                end_of_line();
                section = name;
                if (table.count(section) && section_seen_.count(section))
                    fail("duplicate section [" + section + "]");
                section_seen_[section] = true;
                table[section];
                continue;
            }
            const int key_line = line_;
            std::string key = read_dotted_key();
            std::string target = section;
            if (const auto dot = key.rfind('.'); dot != std::string::npos)
            {
                target = (section.empty() ? "" : section + ".") + key.substr(0, dot);
                key = key.substr(dot + 1);
            }
            skip_inline_space();
            expect('=');
            skip_inline_space();
            Value v = read_value();
            v.line = key_line;
            end_of_line();
            auto &slot = table[target];
            if (slot.count(key))
                fail_at(key_line, "duplicate key '" + key + "'");
            slot.emplace(key, std::move(v));
        }
        return table;
    }

    // Parses a single value, e.g. the right-hand side of a command-line override.
    Value parse_single()
    {
        skip_inline_space();
        Value v = read_value();
        skip_inline_space();
        if (!eof())
            fail("trailing characters after value");
        return v;
    }

  private:
    std::string_view text_;
    std::string source_;
    std::size_t pos_ = 0;
    int line_ = 1;
    std::map<std::string, bool> section_seen_;

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }

    [[noreturn]] void fail(const std::string &what) const { throw ParseError(source_, line_, what); }
    [[noreturn]] void fail_at(int line, const std::string &what) const { throw ParseError(source_, line, what); }

    void expect(char c)
    {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_inline_space()
    {
        while (!eof() && (peek() == ' ' || peek() == '\t'))
            ++pos_;
    }

    void skip_comment()
    {
        if (peek() == '#')
            while (!eof() && peek() != '\n')
                ++pos_;
    }

    void skip_blank_lines()
    {
        while (!eof())
        {
            skip_inline_space();
            skip_comment();
            if (peek() == '\r')
                ++pos_;
            if (peek() == '\n')
            {
                ++pos_;
                ++line_;
                continue;
            }
            break;
        }
    }

    // Whitespace, comments and newlines inside arrays
    void skip_array_space()
    {
        while (!eof())
        {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r')
                ++pos_;
            else if (c == '\n')
            {
                ++pos_;
                ++line_;
            }
            else if (c == '#')
                skip_comment();
            else
                break;
        }
    }

    void end_of_line()
    {
        skip_inline_space();
        skip_comment();
        if (peek() == '\r')
            ++pos_;
        if (eof())
            return;
        if (peek() != '\n')
            fail("unexpected trailing characters");
        ++pos_;
        ++line_;
    }

    static bool bare_key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

    std::string read_dotted_key()
    {
        std::string key;
        while (true)
        {
            const std::size_t start = pos_;
            while (!eof() && bare_key_char(peek()))
                ++pos_;
            if (pos_ == start)
                fail("expected a key");
            key.append(text_.substr(start, pos_ - start));
            skip_inline_space();
            if (peek() != '.')
                break;
            ++pos_;
            skip_inline_space();
            key.push_back('.');
        }
        return key;
    }

    Value read_value()
    {
        const char c = peek();
        if (c == '"')
            return {read_string(), line_};
        if (c == '\'')
            return {read_literal(), line_};
        if (c == '[')
            return read_array();
        if (text_.substr(pos_, 4) == "true" && !bare_key_char(text_.size() > pos_ + 4 ? text_[pos_ + 4] : ' '))
        {
            pos_ += 4;
            return {true, line_};
        }
        if (text_.substr(pos_, 5) == "false" && !bare_key_char(text_.size() > pos_ + 5 ? text_[pos_ + 5] : ' '))
        {
            pos_ += 5;
            return {false, line_};
        }
        return read_number();
    }

    std::string read_string()
    {
        expect('"');
        std::string out;
        while (true)
        {
            if (eof() || peek() == '\n')
                fail("unterminated string");
            char c = text_[pos_++];
            if (c == '"')
                break;
            if (c == '\\')
            {
                if (eof())
                    fail("unterminated escape");
                const char e = text_[pos_++];
                switch (e)
                {
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                default: fail(std::string("unsupported escape \\") + e);
                }
                continue;
            }
            out.push_back(c);
        }
        return out;
    }

    // 'literal': no escapes
    std::string read_literal()
    {
        expect('\'');
        std::string out;
        while (true)
        {
            if (eof() || peek() == '\n')
                fail("unterminated string");
            const char c = text_[pos_++];
            if (c == '\'')
                return out;
            out.push_back(c);
        }
    }

    Value read_array()
    {
        const int start_line = line_;
        expect('[');
        Array items;
        while (true)
        {
            skip_array_space();
            if (peek() == ']')
            {
                ++pos_;
                break;
            }
            items.push_back(read_value());
            skip_array_space();
            if (peek() == ',')
            {
                ++pos_;
                continue;
            }
            if (peek() == ']')
            {
                ++pos_;
                break;
            }
            fail("expected ',' or ']' in array");
        }
        return {std::move(items), start_line};
    }

    Value read_number()
    {
        const std::size_t start = pos_;
        while (!eof())
        {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' || c == '_')
                ++pos_;
            else
                break;
        }
        std::string token(text_.substr(start, pos_ - start));
        std::erase(token, '_');
        if (token.empty())
            fail("expected a value");
        std::string_view body = token;
        if (body.front() == '+')
            body.remove_prefix(1);
        const bool looks_float = body.find_first_of(".eE") != std::string_view::npos || body == "inf" ||
                                 body == "-inf" || body == "nan";
        if (!looks_float)
        {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
            if (ec == std::errc() && p == body.data() + body.size())
                return {v, line_};
        }
        double d = 0.0;
        auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), d);
        if (ec != std::errc() || p != body.data() + body.size())
            fail("invalid value '" + token + "'");
        return {d, line_};
    }
};

} // namespace detail

inline Table parse(std::string_view text, const std::string &source = "config")
{
    return detail::Parser(text, source).parse();
}

inline Value parse_value(std::string_view text, const std::string &source = "override")
{
    return detail::Parser(text, source).parse_single();
}

} // namespace crispla::toml
