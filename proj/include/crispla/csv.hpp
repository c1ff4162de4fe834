// SPDX-License-Identifier: Apache-2.0
//
// CSV serialisation of score samples, DET curves and run summaries.
// UTF-8, LF line endings, comma separator, shortest round-trip number formatting.

#pragma once

#include "format.hpp"
#include "pla.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace crispla
{

inline constexpr std::string_view kScoresHeader = "trial,hypothesis,score";
inline constexpr std::string_view kDetHeader = "gamma,pfa,pmd";
inline constexpr std::string_view kSummaryHeader = "plan-id,scenario,N,attacker,EER,runtime_s";

inline void write_scores(std::ostream &os, const ScoreSamples &s)
{
    os << kScoresHeader << '\n';
    for (std::size_t t = 0; t < s.h0.size(); ++t)
        os << t << ",h0," << format_double(s.h0[t]) << '\n';
    for (std::size_t t = 0; t < s.h1.size(); ++t)
        os << t << ",h1," << format_double(s.h1[t]) << '\n';
}

inline void write_det(std::ostream &os, const DetCurve &curve)
{
    os << kDetHeader << '\n';
    for (const auto &p : curve.points)
        os << format_double(p.gamma) << ',' << format_double(p.pfa) << ',' << format_double(p.pmd) << '\n';
}

inline ScoreSamples read_scores(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line != kScoresHeader)
        throw std::runtime_error("read_scores: missing header '" + std::string(kScoresHeader) + "'");
    ScoreSamples s;
    std::size_t lineno = 1;
    while (std::getline(is, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("read_scores: malformed line " + std::to_string(lineno));
        const std::string hyp = line.substr(c1 + 1, c2 - c1 - 1);
        const double score = parse_double(std::string_view(line).substr(c2 + 1));
        if (hyp == "h0")
            s.h0.push_back(score);
        else if (hyp == "h1")
            s.h1.push_back(score);
        else
            throw std::runtime_error("read_scores: unknown hypothesis '" + hyp + "' on line " + std::to_string(lineno));
    }
    return s;
}

inline DetCurve read_det(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line != kDetHeader)
        throw std::runtime_error("read_det: missing header");
    DetCurve curve;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        std::string_view v(line);
        curve.points.push_back({parse_double(v.substr(0, c1)), parse_double(v.substr(c1 + 1, c2 - c1 - 1)),
                                parse_double(v.substr(c2 + 1))});
    }
    return curve;
}

template <class Writer, class T>
void write_file(const std::string &path, Writer &&writer, const T &value)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    writer(out, value);
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

} // namespace crispla
