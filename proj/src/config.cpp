#include "mopg/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "mopg/run_io.hpp"

namespace mopg {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Strips a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
        if (c == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

nlohmann::json parse_toml_scalar(const std::string& raw, int line_no);

nlohmann::json parse_toml_value(const std::string& raw, int line_no) {
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError("toml: empty value on line " + std::to_string(line_no));
    if (v.front() == '[') {
        if (v.back() != ']')
            throw ConfigError("toml: unterminated array on line " + std::to_string(line_no));
        nlohmann::json arr = nlohmann::json::array();
        std::string body = v.substr(1, v.size() - 2);
        std::string item;
        bool in_string = false;
        int depth = 0;
        for (std::size_t i = 0; i < body.size(); ++i) {
            char c = body[i];
            if (c == '"' && (i == 0 || body[i - 1] != '\\')) in_string = !in_string;
            if (!in_string && c == '[') ++depth;
            if (!in_string && c == ']') --depth;
            if (c == ',' && !in_string && depth == 0) {
                if (!trim(item).empty()) arr.push_back(parse_toml_value(item, line_no));
                item.clear();
            } else {
                item += c;
            }
        }
        if (!trim(item).empty()) arr.push_back(parse_toml_value(item, line_no));
        return arr;
    }
    return parse_toml_scalar(v, line_no);
}

nlohmann::json parse_toml_scalar(const std::string& v, int line_no) {
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw ConfigError("toml: unterminated string on line " + std::to_string(line_no));
        std::string out;
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            if (v[i] == '\\' && i + 2 < v.size()) {
                ++i;
                switch (v[i]) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: out += v[i];
                }
            } else {
                out += v[i];
            }
        }
        return out;
    }
    if (v == "true") return true;
    if (v == "false") return false;
    const bool looks_float = v.find_first_of(".eE") != std::string::npos &&
                             v.find_first_not_of("+-0123456789.eE") == std::string::npos;
    try {
        std::size_t used = 0;
        if (looks_float) {
            double d = std::stod(v, &used);
            if (used == v.size()) return d;
        } else {
            long long n = std::stoll(v, &used);
            if (used == v.size()) return n;
        }
    } catch (const std::exception&) {
        // fall through to the error below
    }
    throw ConfigError("toml: cannot parse value '" + v + "' on line " + std::to_string(line_no));
}

} // namespace

nlohmann::json toml_to_json(const std::string& text) {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json::json_pointer table("");
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("toml: malformed table header on line " + std::to_string(line_no));
            std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty())
                throw ConfigError("toml: empty table name on line " + std::to_string(line_no));
            table = nlohmann::json::json_pointer("");
            std::string part;
            std::istringstream parts(name);
            while (std::getline(parts, part, '.')) {
                part = trim(part);
                if (part.empty())
                    throw ConfigError("toml: empty table segment on line " + std::to_string(line_no));
                table /= part;
            }
            if (!root.contains(table)) root[table] = nlohmann::json::object();
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("toml: expected key = value on line " + std::to_string(line_no));
        std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("toml: empty key on line " + std::to_string(line_no));
        if (key.front() == '"' && key.back() == '"' && key.size() >= 2)
            key = key.substr(1, key.size() - 2);
        root[table / key] = parse_toml_value(line.substr(eq + 1), line_no);
    }
    return root;
}

nlohmann::json load_config_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f.good()) throw ConfigError("config: cannot open " + path.string());
    std::stringstream buf;
    buf << f.rdbuf();
    if (path.extension() == ".toml") return toml_to_json(buf.str());
    try {
        return nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: " + path.string() + " is not valid JSON: " + e.what());
    }
}

namespace {

template <typename T>
T get_field(const nlohmann::json& j, const std::string& field, const T& fallback) {
    if (!j.contains(field)) return fallback;
    try {
        return j.at(field).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config: field '" + field + "' has the wrong type");
    }
}

TemperatureSchedule schedule_from(const nlohmann::json& block, const TemperatureSchedule& dflt,
                                  const std::string& where) {
    TemperatureSchedule s = dflt;
    if (!block.contains("schedule")) return s;
    const auto& j = block.at("schedule");
    s.t_min = get_field(j, "t_min", s.t_min);
    s.t_max = get_field(j, "t_max", s.t_max);
    s.period = get_field(j, "period", s.period);
    try {
        s.validate();
    } catch (const ContractViolation& e) {
        throw ConfigError("config: " + where + ".schedule: " + e.what());
    }
    return s;
}

std::vector<std::pair<double, double>> pair_list(const nlohmann::json& j, const std::string& field) {
    std::vector<std::pair<double, double>> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2)
            throw ConfigError("config: field '" + field + "' must hold [lo, hi] pairs");
        out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return out;
}

} // namespace

RunConfig resolve_config(const nlohmann::json& raw, const std::filesystem::path& base_dir) {
    if (!raw.is_object()) throw ConfigError("config: top level must be a table/object");
    RunConfig cfg;

    // Algorithm tag plus the exactly-one-matching-block rule.
    cfg.algorithm = get_field<std::string>(raw, "algorithm", "adf");
    static const std::vector<std::string> known{"adf", "adc", "rs", "mdf"};
    if (std::find(known.begin(), known.end(), cfg.algorithm) == known.end())
        throw ConfigError("config: field 'algorithm' must be one of adf, adc, rs, mdf (got '" +
                          cfg.algorithm + "')");
    std::vector<std::string> blocks_present;
    for (const auto& name : known)
        if (raw.contains(name)) blocks_present.push_back(name);
    if (blocks_present.size() > 1)
        throw ConfigError("config: multiple algorithm blocks present ([" + blocks_present[0] + "], [" +
                          blocks_present[1] + "]); keep exactly the one matching 'algorithm'");
    if (blocks_present.size() == 1 && blocks_present[0] != cfg.algorithm)
        throw ConfigError("config: algorithm block [" + blocks_present[0] +
                          "] does not match field 'algorithm' = '" + cfg.algorithm + "'");

    // Space: inline definition or a file reference.
    nlohmann::json space_json;
    if (raw.contains("space") && raw.at("space").contains("file")) {
        const auto file = raw.at("space").at("file").get<std::string>();
        std::filesystem::path p = file;
        if (p.is_relative()) p = base_dir / p;
        std::ifstream f(p);
        if (!f.good()) throw ConfigError("config: space.file '" + p.string() + "' cannot be opened");
        try {
            space_json = nlohmann::json::parse(f);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError("config: space.file '" + p.string() + "' is not valid JSON: " + e.what());
        }
    } else {
        space_json = raw.value("space", nlohmann::json::object());
    }
    if (!space_json.contains("seed")) space_json["seed"] = 0;
    if (!space_json.contains("L")) space_json["L"] = 8;
    if (!space_json.contains("arities"))
        space_json["arities"] = std::vector<int>(space_json.at("L").get<std::size_t>(), 4);
    if (!space_json.contains("correlation_strength")) space_json["correlation_strength"] = 0.1;
    try {
        cfg.space = space_from_json(space_json);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: [space]: ") + e.what());
    }

    cfg.m = get_field<std::size_t>(raw, "objectives", 2);
    if (cfg.m != 2 && cfg.m != 3)
        throw ConfigError("config: field 'objectives' must be 2 or 3");

    // Evaluator.
    const nlohmann::json eval_json = raw.value("evaluator", nlohmann::json::object());
    const std::string kind = get_field<std::string>(eval_json, "kind", "deterministic");
    if (kind == "deterministic") {
        cfg.evaluator_kind = EvaluatorKind::Deterministic;
        cfg.sigma = 0.0;
    } else if (kind == "noisy") {
        cfg.evaluator_kind = EvaluatorKind::NoisySurrogate;
        if (eval_json.contains("target_correlation"))
            cfg.sigma = calibrate_sigma(cfg.space, eval_json.at("target_correlation").get<double>());
        else
            cfg.sigma = get_field(eval_json, "sigma", cfg.space.default_sigma);
        if (cfg.sigma < 0.0) throw ConfigError("config: evaluator.sigma must be >= 0");
    } else {
        throw ConfigError("config: evaluator.kind must be deterministic or noisy (got '" + kind + "')");
    }

    // Policy hyperparameters; learning-rate defaults are per algorithm.
    const nlohmann::json pol = raw.value("policy", nlohmann::json::object());
    const double lr_default = cfg.algorithm == "adc" ? 0.002 : 0.001;
    cfg.learning_rate = get_field(pol, "learning_rate", lr_default);
    cfg.baseline_decay = get_field(pol, "baseline_decay", 0.95);
    cfg.tanh_constant = get_field(pol, "tanh_constant", 1.5);
    cfg.batch_size = get_field(pol, "batch_size", 1);
    const std::string rule = get_field<std::string>(pol, "update_rule", "ascent");
    if (rule == "ascent")
        cfg.update_rule = UpdateRule::GradientAscent;
    else if (rule == "adam")
        cfg.update_rule = UpdateRule::Adam;
    else
        throw ConfigError("config: policy.update_rule must be ascent or adam (got '" + rule + "')");
    if (cfg.learning_rate <= 0.0) throw ConfigError("config: policy.learning_rate must be > 0");
    if (cfg.batch_size < 1) throw ConfigError("config: policy.batch_size must be >= 1");

    // Algorithm blocks, defaults per the stock experiment.
    std::vector<std::pair<double, double>> tau_default{cfg.space.params_range};
    if (cfg.m == 3) tau_default.push_back(cfg.space.flops_range);

    const nlohmann::json adf = raw.value("adf", nlohmann::json::object());
    cfg.adf.n_warm = get_field(adf, "n_warm", 1500L);
    cfg.adf.n_anneal = get_field(adf, "n_anneal", 6000L);
    cfg.adf.tau_bounds = adf.contains("tau_bounds") ? pair_list(adf.at("tau_bounds"), "adf.tau_bounds")
                                                    : tau_default;
    cfg.adf.delta_warm = get_field(adf, "delta_warm", std::vector<double>{});
    cfg.adf.delta_anneal = get_field(adf, "delta_anneal", std::vector<double>{});
    cfg.adf.grid_sizes = get_field(adf, "grid_sizes",
                                   cfg.m == 3 ? std::vector<int>{110, 109} : std::vector<int>{});
    cfg.adf.schedule = schedule_from(adf, TemperatureSchedule{5.0, 10.0, 50}, "adf");
    cfg.adf.include_warmup = get_field(adf, "include_warmup", false);
    cfg.adf.batch_size = cfg.batch_size;

    const nlohmann::json adc = raw.value("adc", nlohmann::json::object());
    cfg.adc.n_steps = get_field(adc, "n_steps", cfg.m == 3 ? 12000L : 6000L);
    cfg.adc.m = cfg.m;
    cfg.adc.spec.epsilon = get_field(adc, "epsilon", default_adc_epsilon(cfg.m));
    cfg.adc.spec.c = get_field(adc, "c", 10.0);
    cfg.adc.schedule = schedule_from(adc, TemperatureSchedule{1.0, 25.0, 1200}, "adc");
    cfg.adc.batch_size = cfg.batch_size;

    const nlohmann::json rs = raw.value("rs", nlohmann::json::object());
    cfg.rs_steps = get_field(rs, "n_steps", cfg.m == 3 ? 12000L : 6000L);

    const nlohmann::json mdf = raw.value("mdf", nlohmann::json::object());
    cfg.mdf.targets_per_axis = get_field(mdf, "targets_per_axis",
                                         cfg.m == 3 ? std::vector<int>{4, 4} : std::vector<int>{10});
    cfg.mdf.steps_per_target = get_field(mdf, "steps_per_target", 6000L);
    cfg.mdf.temperature = get_field(mdf, "temperature", 5.0);
    cfg.mdf.delta = get_field(mdf, "delta", std::vector<double>{});
    if (cfg.mdf.targets_per_axis.size() + 1 != cfg.m)
        throw ConfigError("config: mdf.targets_per_axis must list one entry per constrained objective");

    // Seeds: non-empty and distinct.
    cfg.seeds = get_field(raw, "seeds", std::vector<std::uint64_t>{0});
    if (cfg.seeds.empty()) throw ConfigError("config: field 'seeds' must not be empty");
    std::set<std::uint64_t> unique_seeds(cfg.seeds.begin(), cfg.seeds.end());
    if (unique_seeds.size() != cfg.seeds.size())
        throw ConfigError("config: field 'seeds' holds duplicates");

    cfg.out_dir = get_field<std::string>(raw, "out", "out");
    cfg.histogram_bins = get_field(raw, "histogram_bins", 10);
    if (cfg.histogram_bins < 1) throw ConfigError("config: histogram_bins must be >= 1");

    // Canonical form: the resolved settings that shape a run's outputs.
    cfg.canonical = {
        {"space", space_to_json(cfg.space)},
        {"objectives", cfg.m},
        {"evaluator", {{"kind", kind}, {"sigma", cfg.sigma}}},
        {"algorithm", cfg.algorithm},
        {"policy",
         {{"learning_rate", cfg.learning_rate},
          {"baseline_decay", cfg.baseline_decay},
          {"tanh_constant", cfg.tanh_constant},
          {"update_rule", rule},
          {"batch_size", cfg.batch_size}}},
    };
    if (cfg.algorithm == "adf") {
        nlohmann::json tb = nlohmann::json::array();
        for (auto& [lo, hi] : cfg.adf.tau_bounds) tb.push_back({lo, hi});
        cfg.canonical["adf"] = {{"n_warm", cfg.adf.n_warm},
                                {"n_anneal", cfg.adf.n_anneal},
                                {"tau_bounds", tb},
                                {"delta_warm", cfg.adf.warm_widths()},
                                {"delta_anneal", cfg.adf.anneal_widths()},
                                {"grid_sizes", cfg.adf.grid_sizes},
                                {"schedule",
                                 {{"t_min", cfg.adf.schedule.t_min},
                                  {"t_max", cfg.adf.schedule.t_max},
                                  {"period", cfg.adf.schedule.period}}},
                                {"include_warmup", cfg.adf.include_warmup}};
    } else if (cfg.algorithm == "adc") {
        cfg.canonical["adc"] = {{"n_steps", cfg.adc.n_steps},
                                {"epsilon", cfg.adc.spec.epsilon},
                                {"c", cfg.adc.spec.c},
                                {"schedule",
                                 {{"t_min", cfg.adc.schedule.t_min},
                                  {"t_max", cfg.adc.schedule.t_max},
                                  {"period", cfg.adc.schedule.period}}}};
    } else if (cfg.algorithm == "rs") {
        cfg.canonical["rs"] = {{"n_steps", cfg.rs_steps}};
    } else {
        cfg.canonical["mdf"] = {{"targets_per_axis", cfg.mdf.targets_per_axis},
                                {"steps_per_target", cfg.mdf.steps_per_target},
                                {"temperature", cfg.mdf.temperature},
                                {"delta", cfg.mdf.delta}};
    }
    cfg.config_fingerprint = fingerprint(cfg.canonical);
    cfg.space_fingerprint = fingerprint(space_to_json(cfg.space));
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return resolve_config(load_config_file(path), path.has_parent_path() ? path.parent_path() : ".");
}

PolicyParams initial_policy(const RunConfig& cfg) {
    PolicyParams p = make_policy(cfg.space, cfg.learning_rate, cfg.update_rule);
    p.baseline_decay = cfg.baseline_decay;
    p.tanh_constant = cfg.tanh_constant;
    return p;
}

Evaluator make_run_evaluator(const RunConfig& cfg) {
    return make_evaluator(cfg.space, cfg.evaluator_kind, cfg.sigma);
}

} // namespace mopg
