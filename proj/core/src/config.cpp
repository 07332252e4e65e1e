#include "ramct/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ramct {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Shortest representation that parses back to the same double.
std::string fmt_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt_double(v[i]);
    }
    return out;
}

std::string fmt_nested(const std::vector<std::vector<double>>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ";";
        out += fmt_list(v[i]);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has a malformed number '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    const double d = parse_double(key, v);
    return static_cast<int>(d);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config: key '" + key + "' expects true/false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    if (trim(v).empty()) return out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    return out;
}

std::vector<std::vector<double>> parse_nested(const std::string& key, const std::string& v) {
    std::vector<std::vector<double>> out;
    if (trim(v).empty()) return out;
    std::stringstream ss(v);
    std::string group;
    while (std::getline(ss, group, ';')) out.push_back(parse_list(key, trim(group)));
    return out;
}

void apply_key(RunConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value) {
    WeightConfig& w = cfg.weights;
    SolverConfig& s = cfg.solver;
    TrackerParams& t = cfg.tracker;
    if (section == "weights") {
        if (key == "lambda") w.spatial_weight = parse_double(key, value);
        else if (key == "mu") w.relaxation_mu = parse_double(key, value);
        else if (key == "nu") w.ridge_nu = parse_double(key, value);
        else if (key == "eta") w.multiplier_eta = parse_double(key, value);
        else if (key == "rho_init") w.penalty_rho_init = parse_double(key, value);
        else if (key == "rho_max") w.penalty_rho_max = parse_double(key, value);
        else if (key == "delta") w.penalty_delta = parse_double(key, value);
        else if (key == "temporal") w.temporal_weight = parse_double(key, value);
        else if (key == "gamma") w.data_side_gamma = parse_double(key, value);
        else if (key == "beta") w.data_side_beta = parse_double(key, value);
        else if (key == "zeta") w.zeta = parse_double(key, value);
        else if (key == "psi") w.temporal_component_weights = parse_list(key, value);
        else if (key == "channel_weights") w.channel_weights = parse_list(key, value);
        else if (key == "component_weights") w.component_weights = parse_nested(key, value);
        else if (key == "reg_group_weights") w.reg_group_weights = parse_list(key, value);
        else if (key == "reg_operator_weights") w.reg_operator_weights = parse_nested(key, value);
        else throw ConfigError("config: unknown key '" + key + "' in section [weights]");
    } else if (section == "solver") {
        if (key == "max_iter") s.max_iter = parse_int(key, value);
        else if (key == "tol_rel") s.tol_rel = parse_double(key, value);
        else if (key == "tol_coupling") s.tol_coupling = parse_double(key, value);
        else if (key == "mode") {
            if (value == "online") s.mode = SolverMode::online;
            else if (value == "auxiliary") s.mode = SolverMode::auxiliary;
            else throw ConfigError("config: key 'mode' expects online|auxiliary, got '" + value + "'");
        } else if (key == "record_history") s.record_history = parse_bool(key, value);
        else if (key == "aux_refine") s.aux_refine = parse_bool(key, value);
        else throw ConfigError("config: unknown key '" + key + "' in section [solver]");
    } else if (section == "tracker") {
        if (key == "cell_size") t.cell_size = parse_int(key, value);
        else if (key == "bins") t.bins = parse_int(key, value);
        else if (key == "padding") t.padding = parse_double(key, value);
        else if (key == "sigma_factor") t.sigma_factor = parse_double(key, value);
        else if (key == "learning_rate") t.learning_rate = parse_double(key, value);
        else if (key == "inflation") t.inflation = parse_double(key, value);
        else if (key == "scale_step") t.scale_step = parse_double(key, value);
        else if (key == "scale_penalty") t.scale_penalty = parse_double(key, value);
        else if (key == "use_scale") t.use_scale = parse_bool(key, value);
        else if (key == "mask_mode") {
            if (value == "feature") t.mask_mode = MaskMode::feature;
            else if (value == "filter") t.mask_mode = MaskMode::filter;
            else throw ConfigError("config: key 'mask_mode' expects feature|filter, got '" + value + "'");
        } else throw ConfigError("config: unknown key '" + key + "' in section [tracker]");
    } else if (section == "paths") {
        if (key == "seq") cfg.seq_path = value;
        else if (key == "out") cfg.out_path = value;
        else throw ConfigError("config: unknown key '" + key + "' in section [paths]");
    } else {
        throw ConfigError("config: unknown section [" + section + "]");
    }
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
    const WeightConfig &wa = a.weights, &wb = b.weights;
    const SolverConfig &sa = a.solver, &sb = b.solver;
    const TrackerParams &ta = a.tracker, &tb = b.tracker;
    return wa.channel_weights == wb.channel_weights &&
           wa.component_weights == wb.component_weights &&
           wa.spatial_weight == wb.spatial_weight &&
           wa.reg_group_weights == wb.reg_group_weights &&
           wa.reg_operator_weights == wb.reg_operator_weights &&
           wa.temporal_weight == wb.temporal_weight &&
           wa.temporal_component_weights == wb.temporal_component_weights &&
           wa.relaxation_mu == wb.relaxation_mu && wa.ridge_nu == wb.ridge_nu &&
           wa.data_side_gamma == wb.data_side_gamma && wa.data_side_beta == wb.data_side_beta &&
           wa.multiplier_eta == wb.multiplier_eta &&
           wa.penalty_rho_init == wb.penalty_rho_init &&
           wa.penalty_rho_max == wb.penalty_rho_max && wa.penalty_delta == wb.penalty_delta &&
           wa.zeta == wb.zeta && sa.max_iter == sb.max_iter && sa.tol_rel == sb.tol_rel &&
           sa.tol_coupling == sb.tol_coupling && sa.mode == sb.mode &&
           sa.record_history == sb.record_history && sa.aux_refine == sb.aux_refine &&
           ta.cell_size == tb.cell_size && ta.bins == tb.bins && ta.padding == tb.padding &&
           ta.sigma_factor == tb.sigma_factor && ta.learning_rate == tb.learning_rate &&
           ta.inflation == tb.inflation && ta.scale_step == tb.scale_step &&
           ta.scale_penalty == tb.scale_penalty &&
           ta.use_scale == tb.use_scale && ta.mask_mode == tb.mask_mode &&
           a.seq_path == b.seq_path && a.out_path == b.out_path;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        apply_key(cfg, section, key, value);
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    const WeightConfig& w = cfg.weights;
    const SolverConfig& s = cfg.solver;
    const TrackerParams& t = cfg.tracker;
    std::ostringstream out;
    out << "[weights]\n";
    out << "lambda = " << fmt_double(w.spatial_weight) << "\n";
    out << "mu = " << fmt_double(w.relaxation_mu) << "\n";
    out << "nu = " << fmt_double(w.ridge_nu) << "\n";
    out << "eta = " << fmt_double(w.multiplier_eta) << "\n";
    out << "rho_init = " << fmt_double(w.penalty_rho_init) << "\n";
    out << "rho_max = " << fmt_double(w.penalty_rho_max) << "\n";
    out << "delta = " << fmt_double(w.penalty_delta) << "\n";
    out << "temporal = " << fmt_double(w.temporal_weight) << "\n";
    out << "gamma = " << fmt_double(w.data_side_gamma) << "\n";
    out << "beta = " << fmt_double(w.data_side_beta) << "\n";
    out << "zeta = " << fmt_double(w.zeta) << "\n";
    out << "psi = " << fmt_list(w.temporal_component_weights) << "\n";
    out << "channel_weights = " << fmt_list(w.channel_weights) << "\n";
    out << "component_weights = " << fmt_nested(w.component_weights) << "\n";
    out << "reg_group_weights = " << fmt_list(w.reg_group_weights) << "\n";
    out << "reg_operator_weights = " << fmt_nested(w.reg_operator_weights) << "\n";
    out << "\n[solver]\n";
    out << "max_iter = " << s.max_iter << "\n";
    out << "tol_rel = " << fmt_double(s.tol_rel) << "\n";
    out << "tol_coupling = " << fmt_double(s.tol_coupling) << "\n";
    out << "mode = " << solver_mode_name(s.mode) << "\n";
    out << "record_history = " << (s.record_history ? "true" : "false") << "\n";
    out << "aux_refine = " << (s.aux_refine ? "true" : "false") << "\n";
    out << "\n[tracker]\n";
    out << "cell_size = " << t.cell_size << "\n";
    out << "bins = " << t.bins << "\n";
    out << "padding = " << fmt_double(t.padding) << "\n";
    out << "sigma_factor = " << fmt_double(t.sigma_factor) << "\n";
    out << "learning_rate = " << fmt_double(t.learning_rate) << "\n";
    out << "inflation = " << fmt_double(t.inflation) << "\n";
    out << "scale_step = " << fmt_double(t.scale_step) << "\n";
    out << "scale_penalty = " << fmt_double(t.scale_penalty) << "\n";
    out << "use_scale = " << (t.use_scale ? "true" : "false") << "\n";
    out << "mask_mode = " << mask_mode_name(t.mask_mode) << "\n";
    out << "\n[paths]\n";
    out << "seq = " << cfg.seq_path << "\n";
    out << "out = " << cfg.out_path << "\n";
    return out.str();
}

void write_config_file(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("config: cannot write '" + path + "'");
    out << serialize_config(cfg);
}

const char* mask_mode_name(MaskMode m) {
    return m == MaskMode::feature ? "feature" : "filter";
}

const char* solver_mode_name(SolverMode m) {
    return m == SolverMode::online ? "online" : "auxiliary";
}

}  // namespace ramct
