#include "phasecade/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "phasecade/errors.hpp"

namespace phasecade {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error("bad numeric value for key '" + key + "': '" + value + "'");
    }
}

long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error("bad integer value for key '" + key + "': '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    std::string v = value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw config_error("bad boolean value for key '" + key + "': '" + value + "'");
}

std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& item : split(value, ',')) out.push_back(parse_real(key, item));
    if (out.empty()) throw config_error("empty list for key '" + key + "'");
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    for (const auto& item : split(value, ','))
        out.push_back(static_cast<int>(parse_int(key, item)));
    if (out.empty()) throw config_error("empty list for key '" + key + "'");
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
    return v;
}

}  // namespace

std::vector<unsigned> parse_seed_list(const std::string& text) {
    std::vector<unsigned> seeds;
    for (const auto& item : split(text, ',')) {
        const long v = parse_int("seed_list", item);
        if (v < 0) throw config_error("seeds must be non-negative");
        seeds.push_back(static_cast<unsigned>(v));
    }
    if (seeds.empty()) throw config_error("seed list is empty");
    return seeds;
}

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.dispersion_grid_psnm_norm = linspace(0.0, 0.5, 11);
    cfg.bandwidth_grid_fs = linspace(0.05, 1.5, 12);
    cfg.dac_bits_grid.resize(12);
    for (int b = 1; b <= 12; ++b) cfg.dac_bits_grid[static_cast<std::size_t>(b - 1)] = b;
    cfg.laser_grid_dbm = linspace(-30.0, 20.0, 11);
    return cfg;
}

void apply_key_value(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key.empty()) throw config_error("empty config key");

    if (key == "block_length") cfg.system.block_length = static_cast<int>(parse_int(key, value));
    else if (key == "oversampling") cfg.system.oversampling = static_cast<int>(parse_int(key, value));
    else if (key == "rrc_rolloff") cfg.system.rrc_rolloff = parse_real(key, value);
    else if (key == "rrc_span_symbols") cfg.system.rrc_span_symbols = static_cast<int>(parse_int(key, value));
    else if (key == "qam_order") cfg.system.qam_order = static_cast<int>(parse_int(key, value));
    else if (key == "stage_count") cfg.system.stage_count = static_cast<int>(parse_int(key, value));
    else if (key == "dispersion_psnm_norm") cfg.system.dispersion_psnm_norm = parse_real(key, value);
    else if (key == "pm_bandwidth_fs") cfg.system.pm_bandwidth_fs = parse_real(key, value);
    else if (key == "trailing_dispersion") cfg.system.trailing_dispersion = parse_bool(key, value);
    else if (key == "symbol_rate_gbd") cfg.system.symbol_rate_gbd = parse_real(key, value);
    else if (key == "wavelength_nm") cfg.system.wavelength_nm = parse_real(key, value);
    else if (key == "step_size") cfg.solver.step_size = parse_real(key, value);
    else if (key == "max_iterations") cfg.solver.max_iterations = static_cast<int>(parse_int(key, value));
    else if (key == "stall_tolerance_db") cfg.solver.stall_tolerance_db = parse_real(key, value);
    else if (key == "stall_window") cfg.solver.stall_window = static_cast<int>(parse_int(key, value));
    else if (key == "init_mode") {
        if (value == "zero") cfg.solver.init_mode = SolverConfig::Init::zero;
        else if (value == "random") cfg.solver.init_mode = SolverConfig::Init::seeded_random;
        else throw config_error("init_mode must be 'zero' or 'random', got '" + value + "'");
    }
    else if (key == "init_epsilon") cfg.solver.init_epsilon = parse_real(key, value);
    else if (key == "init_seed") cfg.solver.init_seed = static_cast<unsigned>(parse_int(key, value));
    else if (key == "laser_power_dbm") cfg.budget.laser_power_dbm = parse_real(key, value);
    else if (key == "stage_loss_db") cfg.budget.stage_loss_db = parse_real(key, value);
    else if (key == "detector_efficiency") cfg.budget.detector_efficiency = parse_real(key, value);
    else if (key == "seed_list") cfg.seeds = parse_seed_list(value);
    else if (key == "stage_counts") {
        cfg.stage_counts = parse_int_list(key, value);
        for (int n : cfg.stage_counts) {
            if (n < 1) throw config_error("stage_counts entries must be >= 1");
        }
    }
    else if (key == "dispersion_grid_psnm_norm") cfg.dispersion_grid_psnm_norm = parse_real_list(key, value);
    else if (key == "bandwidth_grid_fs") cfg.bandwidth_grid_fs = parse_real_list(key, value);
    else if (key == "dac_bits_grid") cfg.dac_bits_grid = parse_int_list(key, value);
    else if (key == "laser_grid_dbm") cfg.laser_grid_dbm = parse_real_list(key, value);
    else if (key == "mzm_depth") cfg.mzm_depth = parse_real(key, value);
    else if (key == "mean_domain") {
        if (value == "db") cfg.linear_mean = false;
        else if (value == "linear") cfg.linear_mean = true;
        else throw config_error("mean_domain must be 'db' or 'linear', got '" + value + "'");
    }
    else if (key == "workers") cfg.workers = static_cast<int>(parse_int(key, value));
    else if (key == "out_dir") cfg.out_dir = value;
    else throw config_error("unknown config key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file", path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config line " + std::to_string(lineno) + " is not key=value: '" +
                               line + "'");
        }
        apply_key_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

SweepSpec sweep_spec_for(const RunConfig& cfg, SweepAxis axis) {
    SweepSpec spec;
    spec.axis = axis;
    spec.stage_counts = cfg.stage_counts;
    spec.seeds = cfg.seeds;
    spec.system = cfg.system;
    spec.solver = cfg.solver;
    spec.budget = cfg.budget;
    // Shot noise shares the signal's rate and wavelength.
    spec.budget.symbol_rate_gbd = cfg.system.symbol_rate_gbd;
    spec.budget.wavelength_nm = cfg.system.wavelength_nm;
    spec.mzm_depth = cfg.mzm_depth;
    spec.linear_mean = cfg.linear_mean;
    switch (axis) {
        case SweepAxis::dispersion: spec.grid = cfg.dispersion_grid_psnm_norm; break;
        case SweepAxis::pm_bandwidth: spec.grid = cfg.bandwidth_grid_fs; break;
        case SweepAxis::dac_bits:
            spec.grid.assign(cfg.dac_bits_grid.begin(), cfg.dac_bits_grid.end());
            break;
        case SweepAxis::laser_power: spec.grid = cfg.laser_grid_dbm; break;
    }
    return spec;
}

}  // namespace phasecade
