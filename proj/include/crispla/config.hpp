// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: schema, defaults, command-line overrides and expansion into plans.

#pragma once

#include "format.hpp"
#include "sim.hpp"
#include "toml.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace crispla
{

inline constexpr std::int64_t kSchemaVersion = 1;

// Raised for unreadable, malformed or invalid configuration. Each entry carries its source location.
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems))
    {
    }
    const std::vector<std::string> &problems() const { return problems_; }

  private:
    std::vector<std::string> problems_;

    static std::string join(const std::vector<std::string> &v)
    {
        std::string out;
        for (const auto &s : v)
            out += (out.empty() ? "" : "\n") + s;
        return out;
    }
};

inline const std::vector<Vec3> kDefaultPassivePositions = {
    {2.7, 2.5, 3.0}, {3.05, 2.5, 3.0}, {3.4, 2.5, 3.0}, {3.75, 2.5, 3.0}, {4.1, 2.5, 3.0}};

struct ExperimentConfig
{
    SystemModel system;
    StrategyKind strategy = StrategyKind::DynamicRandom;
    std::size_t rows = 50;
    std::size_t cols = 30;
    std::vector<AttackerSpec> attackers;
    std::size_t trials = 20000;
    double snr_db = 10.0;
    std::uint64_t seed = 1;
    std::optional<PlaMode> pla_mode; // unset: SC for static strategies, CR for dynamic ones
    ReferenceMode reference = ReferenceMode::genie;
    std::size_t ia_probes = 1;
    std::size_t ia_probe_configs = 0;
    NoiseCalibration calibration = NoiseCalibration::received_power;
    std::size_t calibration_rows = 50;
    std::size_t calibration_cols = 30;
    std::size_t n_thresholds = 512;
    std::string output_dir = "out";
    std::vector<std::string> formats{"csv"};

    ExperimentConfig()
    {
        for (const auto &p : kDefaultPassivePositions)
            attackers.push_back(AttackerSpec::passive(p));
        attackers.push_back(AttackerSpec::los());
    }

    ExperimentPlan plan_for(const AttackerSpec &attacker) const
    {
        ExperimentPlan p;
        p.system = system;
        p.system.resolve_coupling();
        p.strategy = strategy;
        p.rows = rows;
        p.cols = cols;
        p.attacker = attacker;
        p.trials = trials;
        p.snr_db = snr_db;
        p.master_seed = seed;
        p.pla_mode = pla_mode.value_or(default_pla_mode(strategy));
        p.reference = reference;
        p.ia_probes = ia_probes;
        p.ia_probe_configs = ia_probe_configs;
        p.calibration = calibration;
        p.calibration_rows = calibration_rows;
        p.calibration_cols = calibration_cols;
        p.n_thresholds = n_thresholds;
        return p;
    }

    std::vector<ExperimentPlan> plans() const
    {
        std::vector<ExperimentPlan> out;
        for (const auto &a : attackers)
            out.push_back(plan_for(a));
        return out;
    }

    // Physics and plan checks that need the fully resolved configuration.
    std::vector<std::string> violations() const
    {
        std::vector<std::string> out;
        if (attackers.empty())
            out.push_back("attack: no attacker configured");
        std::set<std::string> seen;
        for (const auto &p : plans())
            for (const auto &v : p.violations())
                if (seen.insert(v).second)
                    out.push_back(v);
        if (system.power.coupling == SpectralCoupling::full && reference == ReferenceMode::measured &&
            is_dynamic(strategy))
            out.push_back("sim.reference = \"measured\" cannot be combined with full spectral coupling in CR mode");
        return out;
    }

    std::string describe() const;
};

namespace config_detail
{

inline std::string location(const toml::Value &v, const std::string &source, const std::string &key)
{
    return v.line > 0 ? source + ":" + std::to_string(v.line) : "--set " + key;
}

// Walks the parsed table, recording every problem instead of stopping at the first.
class Reader
{
  public:
    Reader(toml::Table table, std::string source) : table_(std::move(table)), source_(std::move(source)) {}

    std::vector<std::string> &problems() { return problems_; }

    const toml::Value *find(const std::string &section, const std::string &key)
    {
        consumed_.insert(section + "." + key);
        auto s = table_.find(section);
        if (s == table_.end())
            return nullptr;
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    void error(const toml::Value &v, const std::string &section, const std::string &key, const std::string &what)
    {
        problems_.push_back(location(v, source_, full(section, key)) + ": " + full(section, key) + ": " + what);
    }

    void number(const std::string &sec, const std::string &key, double &out)
    {
        if (auto *v = find(sec, key))
        {
            if (!v->is_number())
                return error(*v, sec, key, "expected a number");
            out = v->as_number();
            if (!std::isfinite(out))
                error(*v, sec, key, "must be finite");
        }
    }

    void count(const std::string &sec, const std::string &key, std::size_t &out, std::int64_t min_value)
    {
        if (auto *v = find(sec, key))
        {
            if (!v->is_int())
                return error(*v, sec, key, "expected an integer");
            const auto n = std::get<std::int64_t>(v->data);
            if (n < min_value)
                return error(*v, sec, key, "must be at least " + std::to_string(min_value) + ", got " + std::to_string(n));
            out = static_cast<std::size_t>(n);
        }
    }

    void text(const std::string &sec, const std::string &key, std::string &out)
    {
        if (auto *v = find(sec, key))
        {
            if (!v->is_string())
                return error(*v, sec, key, "expected a string");
            out = std::get<std::string>(v->data);
        }
    }

    bool numbers(const toml::Value &v, const std::string &sec, const std::string &key, std::size_t n, double *out)
    {
        if (!v.is_array() || std::get<toml::Array>(v.data).size() != n)
        {
            error(v, sec, key, "expected an array of " + std::to_string(n) + " numbers");
            return false;
        }
        const auto &arr = std::get<toml::Array>(v.data);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!arr[i].is_number())
            {
                error(v, sec, key, "expected an array of " + std::to_string(n) + " numbers");
                return false;
            }
            out[i] = arr[i].as_number();
        }
        return true;
    }

    void vec3(const std::string &sec, const std::string &key, Vec3 &out)
    {
        if (auto *v = find(sec, key))
        {
            double tmp[3];
            if (numbers(*v, sec, key, 3, tmp))
                out = {tmp[0], tmp[1], tmp[2]};
        }
    }

    void color_array(const std::string &sec, const std::string &key, std::array<double, kNumColors> &out)
    {
        if (auto *v = find(sec, key))
            numbers(*v, sec, key, kNumColors, out.data());
    }

    // Reports keys and sections nobody asked for.
    void report_unknown()
    {
        for (const auto &[sec, keys] : table_)
            for (const auto &[key, v] : keys)
                if (!consumed_.count(sec + "." + key))
                    problems_.push_back(location(v, source_, full(sec, key)) + ": unknown key '" + full(sec, key) + "'");
    }

    static std::string full(const std::string &sec, const std::string &key) { return sec.empty() ? key : sec + "." + key; }

  private:
    toml::Table table_;
    std::string source_;
    std::vector<std::string> problems_;
    std::set<std::string> consumed_;
};

inline void apply_override(toml::Table &table, const std::string &assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError({"--set " + assignment + ": expected key=value"});
    std::string path = assignment.substr(0, eq);
    while (!path.empty() && path.back() == ' ')
        path.pop_back();
    const std::string rhs = assignment.substr(eq + 1);
    const auto dot = path.rfind('.');
    const std::string section = dot == std::string::npos ? "" : path.substr(0, dot);
    const std::string key = dot == std::string::npos ? path : path.substr(dot + 1);
    toml::Value v;
    try
    {
        v = toml::parse_value(rhs, "--set " + path);
    }
    catch (const toml::ParseError &)
    {
        v = toml::Value{rhs, 0}; // bare words become strings
    }
    v.line = 0;
    table[section][key] = std::move(v);
}

} // namespace config_detail

/// Parses configuration text, applies `key=value` overrides and resolves defaults.
/// Throws ConfigError listing every problem found.
inline ExperimentConfig parse_config(std::string_view text, const std::string &source = "config",
                                     const std::vector<std::string> &overrides = {})
{
    toml::Table table;
    try
    {
        table = toml::parse(text, source);
    }
    catch (const toml::ParseError &e)
    {
        throw ConfigError({e.what()});
    }
    for (const auto &o : overrides)
        config_detail::apply_override(table, o);

    config_detail::Reader r(std::move(table), source);
    ExperimentConfig cfg;
    auto &sys = cfg.system;

    if (const auto *v = r.find("", "schema_version"))
    {
        if (!v->is_int() || std::get<std::int64_t>(v->data) != kSchemaVersion)
            r.error(*v, "", "schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
    }
    else
        r.problems().push_back(source + ":1: schema_version: required field missing");

    // scene
    Vec3 alice_pos = sys.scene.alice.position, alice_n = sys.scene.alice.normal;
    Vec3 bob_pos = sys.scene.bob.position, bob_n = sys.scene.bob.normal;
    r.vec3("scene", "room", sys.scene.room);
    r.vec3("scene", "alice", alice_pos);
    r.vec3("scene", "alice_normal", alice_n);
    r.vec3("scene", "bob", bob_pos);
    r.vec3("scene", "bob_normal", bob_n);
    try
    {
        sys.scene.alice = OrientedPoint::make(alice_pos, alice_n);
        sys.scene.bob = OrientedPoint::make(bob_pos, bob_n);
    }
    catch (const std::exception &e)
    {
        r.problems().push_back(source + ": scene: " + e.what());
    }

    // led
    double half_angle = 47.5;
    r.number("led", "half_angle_deg", half_angle);
    try
    {
        sys.led = LedModel(half_angle);
    }
    catch (const std::exception &e)
    {
        r.problems().push_back(source + ": led.half_angle_deg: " + e.what());
    }
    r.number("led", "tx_power_w", sys.power.tx_power_w);
    if (!(sys.power.tx_power_w >= 0.0))
        r.problems().push_back(source + ": led.tx_power_w must be non-negative");
    {
        std::array<double, kNumColors> peak{}, left{}, right{}, k1{}, k2{};
        for (std::size_t c = 0; c < kNumColors; ++c)
        {
            const auto &p = sys.spectra[c];
            peak[c] = p.peak_nm;
            left[c] = p.left_width_nm;
            right[c] = p.right_width_nm;
            k1[c] = p.k1;
            k2[c] = p.k2;
        }
        r.color_array("led", "peak_nm", peak);
        r.color_array("led", "left_width_nm", left);
        r.color_array("led", "right_width_nm", right);
        r.color_array("led", "k1", k1);
        r.color_array("led", "k2", k2);
        for (std::size_t c = 0; c < kNumColors; ++c)
        {
            sys.spectra[c] = {peak[c], left[c], right[c], k1[c], k2[c]};
            try
            {
                sys.spectra[c].validate();
            }
            catch (const std::exception &e)
            {
                r.problems().push_back(source + ": led (" + std::string(color_name(kAllColors[c])) + "): " + e.what());
            }
        }
    }

    // pd
    {
        double area = sys.pd.area(), n = sys.pd.refractive_index(), fov = sys.pd.fov_deg(), resp = sys.pd.responsivity();
        r.number("pd", "area_m2", area);
        r.number("pd", "refractive_index", n);
        r.number("pd", "fov_deg", fov);
        r.number("pd", "responsivity", resp);
        try
        {
            sys.pd = Photodetector(area, n, fov, resp);
        }
        catch (const std::exception &e)
        {
            r.problems().push_back(source + ": pd: " + e.what());
        }
    }

    // filters
    {
        std::array<double, kNumColors> lower{}, upper{};
        for (std::size_t c = 0; c < kNumColors; ++c)
        {
            lower[c] = sys.bands[c].lower_nm;
            upper[c] = sys.bands[c].upper_nm;
        }
        r.color_array("filters", "lower_nm", lower);
        r.color_array("filters", "upper_nm", upper);
        for (std::size_t c = 0; c < kNumColors; ++c)
        {
            sys.bands[c] = {lower[c], upper[c]};
            if (!(lower[c] < upper[c]) || lower[c] < kPsdDomainMinNm || upper[c] > kPsdDomainMaxNm)
                r.problems().push_back(source + ": filters (" + std::string(color_name(kAllColors[c])) +
                                       "): band must satisfy 300 <= lower < upper <= 900 nm");
        }
    }

    // cris
    r.count("cris", "rows", cfg.rows, 1);
    r.count("cris", "cols", cfg.cols, 1);
    r.vec3("cris", "center", sys.scene.grid.center);
    r.vec3("cris", "normal", sys.scene.grid.normal);
    r.number("cris", "element_side_m", sys.scene.grid.element_side);
    if (!(sys.scene.grid.element_side > 0.0))
        r.problems().push_back(source + ": cris.element_side_m must be positive");
    if (const auto *v = r.find("cris", "strategy"))
    {
        const auto parsed = v->is_string() ? parse_strategy(std::get<std::string>(v->data)) : std::nullopt;
        if (!parsed)
            r.error(*v, "cris", "strategy", "expected one of fixed_cyclic, static_random, dynamic_random, random_permutation");
        else
            cfg.strategy = *parsed;
    }
    if (const auto *v = r.find("cris", "profiles"))
    {
        bool ok = v->is_array() && std::get<toml::Array>(v->data).size() == kNumColors;
        if (ok)
        {
            const auto &arr = std::get<toml::Array>(v->data);
            for (std::size_t i = 0; i < kNumColors && ok; ++i)
            {
                ReflectanceProfile p{};
                ok = r.numbers(arr[i], "cris", "profiles", kNumColors, p.data());
                if (ok && !valid_reflectance(p))
                {
                    r.error(*v, "cris", "profiles", "reflectivities must lie in [0, 1]");
                    ok = false;
                }
                sys.profiles[i] = p;
            }
        }
        else
            r.error(*v, "cris", "profiles", "expected four profiles of four reflectivities");
    }

    // attack
    {
        std::vector<std::string> kinds{"passive", "los"};
        if (const auto *v = r.find("attack", "kinds"))
        {
            kinds.clear();
            bool ok = v->is_array();
            if (ok)
                for (const auto &item : std::get<toml::Array>(v->data))
                {
                    if (!item.is_string())
                        ok = false;
                    else
                        kinds.push_back(std::get<std::string>(item.data));
                }
            if (!ok)
                r.error(*v, "attack", "kinds", "expected an array of strings");
        }
        std::vector<Vec3> passive = kDefaultPassivePositions;
        if (const auto *v = r.find("attack", "passive_positions"))
        {
            passive.clear();
            if (!v->is_array())
                r.error(*v, "attack", "passive_positions", "expected an array of [x, y, z] positions");
            else
                for (const auto &item : std::get<toml::Array>(v->data))
                {
                    double tmp[3];
                    if (r.numbers(item, "attack", "passive_positions", 3, tmp))
                        passive.push_back({tmp[0], tmp[1], tmp[2]});
                }
        }
        AttackerSpec los = AttackerSpec::los();
        r.vec3("attack", "los_position", los.position);
        r.vec3("attack", "los_normal", los.normal);
        std::string split = "equal";
        r.text("attack", "split_policy", split);
        if (split == "custom")
            los.split = SplitPolicy::custom;
        else if (split != "equal")
            r.problems().push_back(source + ": attack.split_policy: expected \"equal\" or \"custom\"");
        r.color_array("attack", "split_weights", los.weights);
        r.count("attack", "budget_samples", los.budget_samples, 1);

        cfg.attackers.clear();
        for (const auto &k : kinds)
        {
            if (k == "passive")
                for (const auto &p : passive)
                    cfg.attackers.push_back(AttackerSpec::passive(p));
            else if (k == "los")
                cfg.attackers.push_back(los);
            else
                r.problems().push_back(source + ": attack.kinds: unknown attacker kind '" + k + "'");
        }
    }

    // sim
    {
        if (const auto *v = r.find("sim", "trials"))
        {
            if (!v->is_int())
                r.error(*v, "sim", "trials", "expected an integer");
            else if (std::get<std::int64_t>(v->data) < 1)
                r.error(*v, "sim", "trials", "must be at least 1, got " + std::to_string(std::get<std::int64_t>(v->data)));
            else
                cfg.trials = static_cast<std::size_t>(std::get<std::int64_t>(v->data));
        }
        r.number("sim", "snr_db", cfg.snr_db);
        if (const auto *v = r.find("sim", "seed"))
        {
            if (!v->is_int() || std::get<std::int64_t>(v->data) < 0)
                r.error(*v, "sim", "seed", "expected a non-negative integer");
            else
                cfg.seed = static_cast<std::uint64_t>(std::get<std::int64_t>(v->data));
        }
        std::string mode = "auto";
        r.text("sim", "pla_mode", mode);
        if (mode == "SC" || mode == "sc")
            cfg.pla_mode = PlaMode::SC;
        else if (mode == "CR" || mode == "cr")
            cfg.pla_mode = PlaMode::CR;
        else if (mode != "auto")
            r.problems().push_back(source + ": sim.pla_mode: expected \"auto\", \"SC\" or \"CR\"");
        std::string reference = "genie";
        r.text("sim", "reference", reference);
        if (reference == "measured")
            cfg.reference = ReferenceMode::measured;
        else if (reference != "genie")
            r.problems().push_back(source + ": sim.reference: expected \"genie\" or \"measured\"");
        r.count("sim", "ia_probes", cfg.ia_probes, 1);
        r.count("sim", "ia_probe_configs", cfg.ia_probe_configs, 0);
        r.count("sim", "n_thresholds", cfg.n_thresholds, 0);
        std::size_t exponent = 2;
        r.count("sim", "gain_exponent", exponent, 1);
        if (exponent != 1 && exponent != 2)
            r.problems().push_back(source + ": sim.gain_exponent: expected 1 or 2");
        sys.power.gain_exponent = static_cast<int>(exponent);
        std::string coupling = "off";
        r.text("sim", "spectral_coupling", coupling);
        if (coupling == "diagonal")
            sys.power.coupling = SpectralCoupling::diagonal;
        else if (coupling == "full")
            sys.power.coupling = SpectralCoupling::full;
        else if (coupling != "off")
            r.problems().push_back(source + ": sim.spectral_coupling: expected \"off\", \"diagonal\" or \"full\"");
        std::string calibration = "received_power";
        r.text("sim", "noise_calibration", calibration);
        if (calibration == "gain")
            cfg.calibration = NoiseCalibration::gain;
        else if (calibration != "received_power")
            r.problems().push_back(source + ": sim.noise_calibration: expected \"received_power\" or \"gain\"");
        if (const auto *v = r.find("sim", "calibration_grid"))
        {
            double tmp[2];
            if (r.numbers(*v, "sim", "calibration_grid", 2, tmp))
            {
                if (tmp[0] < 1 || tmp[1] < 1 || tmp[0] != std::floor(tmp[0]) || tmp[1] != std::floor(tmp[1]))
                    r.error(*v, "sim", "calibration_grid", "expected two positive integers");
                else
                {
                    cfg.calibration_rows = static_cast<std::size_t>(tmp[0]);
                    cfg.calibration_cols = static_cast<std::size_t>(tmp[1]);
                }
            }
        }
    }

    // output
    r.text("output", "directory", cfg.output_dir);
    if (const auto *v = r.find("output", "formats"))
    {
        cfg.formats.clear();
        bool ok = v->is_array();
        if (ok)
            for (const auto &item : std::get<toml::Array>(v->data))
            {
                if (!item.is_string() || std::get<std::string>(item.data) != "csv")
                    ok = false;
                else
                    cfg.formats.push_back("csv");
            }
        if (!ok)
            r.error(*v, "output", "formats", "only \"csv\" output is supported");
    }

    r.report_unknown();
    auto problems = std::move(r.problems());
    if (problems.empty())
        for (auto &v : cfg.violations())
            problems.push_back(source + ": " + v);
    if (!problems.empty())
        throw ConfigError(std::move(problems));
    return cfg;
}

inline ExperimentConfig load_config(const std::string &path, const std::vector<std::string> &overrides = {})
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError({path + ": cannot open configuration file"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path, overrides);
}

inline std::string ExperimentConfig::describe() const
{
    std::ostringstream os;
    auto num = [](double v) { return format_double(v); };
    auto vec = [&](const Vec3 &v) { return "[" + num(v.x) + ", " + num(v.y) + ", " + num(v.z) + "]"; };
    auto arr4 = [&](const std::array<double, kNumColors> &a) {
        return "[" + num(a[0]) + ", " + num(a[1]) + ", " + num(a[2]) + ", " + num(a[3]) + "]";
    };
    auto spectra = [&](auto field) {
        std::array<double, kNumColors> a{};
        for (std::size_t c = 0; c < kNumColors; ++c)
            a[c] = system.spectra[c].*field;
        return arr4(a);
    };
    const auto &sc = system.scene;
    os << "schema_version = " << kSchemaVersion << "\n\n[scene]\n"
       << "room = " << vec(sc.room) << "\nalice = " << vec(sc.alice.position) << "\nalice_normal = "
       << vec(sc.alice.normal) << "\nbob = " << vec(sc.bob.position) << "\nbob_normal = " << vec(sc.bob.normal)
       << "\n\n[led]\nhalf_angle_deg = " << num(system.led.half_angle_deg()) << "\ntx_power_w = "
       << num(system.power.tx_power_w) << "\npeak_nm = " << spectra(&HModelParams::peak_nm)
       << "\nleft_width_nm = " << spectra(&HModelParams::left_width_nm)
       << "\nright_width_nm = " << spectra(&HModelParams::right_width_nm) << "\nk1 = " << spectra(&HModelParams::k1)
       << "\nk2 = " << spectra(&HModelParams::k2) << "\n\n[pd]\narea_m2 = " << num(system.pd.area())
       << "\nrefractive_index = " << num(system.pd.refractive_index()) << "\nfov_deg = " << num(system.pd.fov_deg())
       << "\nresponsivity = " << num(system.pd.responsivity()) << "\n\n[filters]\n";
    std::array<double, kNumColors> lo{}, hi{};
    for (std::size_t c = 0; c < kNumColors; ++c)
    {
        lo[c] = system.bands[c].lower_nm;
        hi[c] = system.bands[c].upper_nm;
    }
    os << "lower_nm = " << arr4(lo) << "\nupper_nm = " << arr4(hi) << "\n\n[cris]\nrows = " << rows
       << "\ncols = " << cols << "\ncenter = " << vec(sc.grid.center) << "\nnormal = " << vec(sc.grid.normal)
       << "\nelement_side_m = " << num(sc.grid.element_side) << "\nstrategy = \"" << strategy_name(strategy)
       << "\"\nprofiles = [";
    for (std::size_t i = 0; i < kNumColors; ++i)
        os << (i ? ", " : "") << arr4(system.profiles[i]);
    os << "]\n\n[attack]\n";
    std::vector<std::string> kinds;
    std::string passive;
    const AttackerSpec *los = nullptr;
    for (const auto &a : attackers)
    {
        if (a.kind == AttackerKind::passive)
            passive += (passive.empty() ? "" : ", ") + vec(a.position);
        else
            los = &a;
    }
    os << "kinds = [" << (passive.empty() ? "" : "\"passive\"") << (!passive.empty() && los ? ", " : "")
       << (los ? "\"los\"" : "") << "]\npassive_positions = [" << passive << "]\n";
    if (los)
        os << "los_position = " << vec(los->position) << "\nlos_normal = " << vec(los->normal)
           << "\nsplit_policy = \"" << (los->split == SplitPolicy::equal ? "equal" : "custom")
           << "\"\nsplit_weights = " << arr4(los->weights) << "\nbudget_samples = " << los->budget_samples << "\n";
    os << "\n[sim]\ntrials = " << trials << "\nsnr_db = " << num(snr_db) << "\nseed = " << seed << "\npla_mode = \""
       << (pla_mode ? std::string(pla_mode_name(*pla_mode)) : std::string("auto")) << "\"\nreference = \""
       << (reference == ReferenceMode::genie ? "genie" : "measured") << "\"\nia_probes = " << ia_probes
       << "\nia_probe_configs = " << ia_probe_configs << "\nn_thresholds = " << n_thresholds
       << "\ngain_exponent = " << system.power.gain_exponent << "\nspectral_coupling = \""
       << (system.power.coupling == SpectralCoupling::off        ? "off"
           : system.power.coupling == SpectralCoupling::diagonal ? "diagonal"
                                                                 : "full")
       << "\"\nnoise_calibration = \"" << (calibration == NoiseCalibration::gain ? "gain" : "received_power")
       << "\"\ncalibration_grid = [" << calibration_rows << ", " << calibration_cols << "]\n\n[output]\ndirectory = \""
       << output_dir << "\"\nformats = [\"csv\"]\n";
    return os.str();
}

} // namespace crispla
