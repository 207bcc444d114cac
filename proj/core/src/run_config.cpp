#include "nlwave/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nlwave::cli {

namespace {

const std::set<std::string> kCommands = {"run",    "converge",     "domain-study",
                                         "blowup", "blowup-refine", "decay",
                                         "kernel-info", "lemma-check"};

const std::set<std::string> kKnownKeys = {
    "command",          "kernel",
    "nonlinearity",     "nonlinearity.p",
    "grid.h",           "grid.x_left",
    "grid.x_right",     "integrator.method",
    "integrator.dt",    "integrator.rel_tol",
    "integrator.abs_tol", "integrator.t_end",
    "integrator.blowup_threshold", "integrator.min_step",
    "integrator.trace_samples",    "initial_data",
    "initial.v_file",   "initial.w_file",
    "solitary.c",       "solitary.x0",
    "output.path",      "output.format",
    "converge.h_list",  "converge.t_eval",
    "domain.n_list",    "domain.t_list",
    "blowup.kernels",   "refine.n_list",
    "decay.r",          "decay.t_list",
    "decay.band_lo",    "decay.band_hi",
    "lemma.h_list",     "lemma.corrupt",
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + value + "'");
  }
}

long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key, "expected true/false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream stream(value);
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError(key, "expected a comma-separated list of numbers");
  return out;
}

std::vector<index_t> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<index_t> out;
  for (const auto& item : split_list(value)) out.push_back(parse_int(key, item));
  if (out.empty()) throw ConfigError(key, "expected a comma-separated list of integers");
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config", "malformed config line '" + line + "' (expected key = value)");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown config key");
    kv[key] = value;
  }
  return kv;
}

std::string format_shortest_double(double x) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

template <typename T, typename Fmt>
std::string join_list(const std::vector<T>& items, Fmt fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    out += fmt(items[i]);
  }
  return out;
}

void apply_presets(RunConfig& config, const std::map<std::string, std::string>& user) {
  // blow-up style commands default to the blow-up preset
  if (!user.contains("initial_data") &&
      (config.command == "blowup" || config.command == "blowup-refine")) {
    config.initial_data = "blowup-gaussian";
  }
  if (config.initial_data == "blowup-gaussian") {
    if (!user.contains("grid.h")) config.grid_h = 0.1;
    if (!user.contains("grid.x_left")) config.x_left = -10.0;
    if (!user.contains("grid.x_right")) config.x_right = 10.0;
    if (!user.contains("integrator.t_end")) config.t_end = 10.0;
  }
  if (config.command == "decay" && !user.contains("integrator.t_end")) config.t_end = 10.0;
}

void validate(RunConfig& config) {
  if (!kCommands.contains(config.command)) {
    throw ConfigError("command", "unknown command '" + config.command + "'");
  }
  if (config.kernel != "exp" && config.kernel != "lorentz" && config.kernel != "sech2" &&
      config.kernel != "triangle" && !std::filesystem::exists(config.kernel)) {
    throw ConfigError("kernel", "unknown kernel name '" + config.kernel + "'");
  }
  for (const auto& name : config.blowup_kernels) {
    if (name != "exp" && name != "lorentz" && name != "sech2" && name != "triangle" &&
        !std::filesystem::exists(name)) {
      throw ConfigError("blowup.kernels", "unknown kernel name '" + name + "'");
    }
  }
  if (config.nonlinearity != "quadratic" && config.nonlinearity != "power") {
    throw ConfigError("nonlinearity", "unknown nonlinearity '" + config.nonlinearity +
                                          "' (expected quadratic or power)");
  }
  if (config.nonlinearity == "power" && config.power_p < 2) {
    throw ConfigError("nonlinearity.p", "power nonlinearity needs integer p >= 2");
  }
  if (config.method != "rk45_adaptive" && config.method != "rk4_fixed") {
    throw ConfigError("integrator.method",
                      "unknown method '" + config.method + "' (expected rk45_adaptive or rk4_fixed)");
  }
  if (config.initial_data != "solitary" && config.initial_data != "blowup-gaussian" &&
      config.initial_data != "file") {
    throw ConfigError("initial_data", "unknown preset '" + config.initial_data +
                                          "' (expected solitary, blowup-gaussian, or file)");
  }
  if (config.initial_data == "file" && config.initial_v_file.empty()) {
    throw ConfigError("initial.v_file", "missing required field for initial_data = file");
  }
  if (config.output_format != "csv" && config.output_format != "json") {
    throw ConfigError("output.format", "unknown format '" + config.output_format + "'");
  }
  if (!(config.grid_h > 0.0)) throw ConfigError("grid.h", "mesh size must be positive");
  if (!(config.x_left < config.x_right)) {
    throw ConfigError("grid.x_left", "domain must satisfy x_left < x_right");
  }
  try {
    (void)Grid::from_domain(config.grid_h, config.x_left, config.x_right);
  } catch (const std::exception& e) {
    throw ConfigError("grid.h", e.what());
  }
  if (!(config.dt > 0.0)) throw ConfigError("integrator.dt", "dt must be positive");
  if (!(config.rel_tol > 0.0)) throw ConfigError("integrator.rel_tol", "must be positive");
  if (!(config.abs_tol > 0.0)) throw ConfigError("integrator.abs_tol", "must be positive");
  if (!(config.t_end > 0.0)) throw ConfigError("integrator.t_end", "must be positive");
  if (!(config.blowup_threshold > 0.0)) {
    throw ConfigError("integrator.blowup_threshold", "must be positive");
  }
  if (!(config.min_step > 0.0)) throw ConfigError("integrator.min_step", "must be positive");
  if (config.trace_samples < 2) throw ConfigError("integrator.trace_samples", "need at least 2");
  if (!(config.decay_band_lo >= 0.0 && config.decay_band_lo < config.decay_band_hi &&
        config.decay_band_hi <= 1.0)) {
    throw ConfigError("decay.band_lo", "need 0 <= band_lo < band_hi <= 1");
  }
}

void assign(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "command") config.command = value;
  else if (key == "kernel") config.kernel = value;
  else if (key == "nonlinearity") config.nonlinearity = value;
  else if (key == "nonlinearity.p") config.power_p = static_cast<int>(parse_int(key, value));
  else if (key == "grid.h") config.grid_h = parse_double(key, value);
  else if (key == "grid.x_left") config.x_left = parse_double(key, value);
  else if (key == "grid.x_right") config.x_right = parse_double(key, value);
  else if (key == "integrator.method") config.method = value;
  else if (key == "integrator.dt") config.dt = parse_double(key, value);
  else if (key == "integrator.rel_tol") config.rel_tol = parse_double(key, value);
  else if (key == "integrator.abs_tol") config.abs_tol = parse_double(key, value);
  else if (key == "integrator.t_end") config.t_end = parse_double(key, value);
  else if (key == "integrator.blowup_threshold")
    config.blowup_threshold = parse_double(key, value);
  else if (key == "integrator.min_step") config.min_step = parse_double(key, value);
  else if (key == "integrator.trace_samples")
    config.trace_samples = static_cast<int>(parse_int(key, value));
  else if (key == "initial_data") config.initial_data = value;
  else if (key == "initial.v_file") config.initial_v_file = value;
  else if (key == "initial.w_file") config.initial_w_file = value;
  else if (key == "solitary.c") config.solitary_c = parse_double(key, value);
  else if (key == "solitary.x0") config.solitary_x0 = parse_double(key, value);
  else if (key == "output.path") config.output_path = value;
  else if (key == "output.format") config.output_format = value;
  else if (key == "converge.h_list") config.converge_h_list = parse_double_list(key, value);
  else if (key == "converge.t_eval") config.converge_t_eval = parse_double(key, value);
  else if (key == "domain.n_list") config.domain_n_list = parse_int_list(key, value);
  else if (key == "domain.t_list") config.domain_t_list = parse_double_list(key, value);
  else if (key == "blowup.kernels") {
    config.blowup_kernels = split_list(value);
    if (config.blowup_kernels.empty()) throw ConfigError(key, "expected a list of kernel names");
  } else if (key == "refine.n_list") config.refine_n_list = parse_int_list(key, value);
  else if (key == "decay.r") config.decay_r = parse_double(key, value);
  else if (key == "decay.t_list") config.decay_t_list = parse_double_list(key, value);
  else if (key == "decay.band_lo") config.decay_band_lo = parse_double(key, value);
  else if (key == "decay.band_hi") config.decay_band_hi = parse_double(key, value);
  else if (key == "lemma.h_list") config.lemma_h_list = parse_double_list(key, value);
  else if (key == "lemma.corrupt") config.lemma_corrupt = parse_bool(key, value);
  else throw ConfigError(key, "unknown config key");
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  std::vector<std::string> positionals;
  std::map<std::string, std::string> flags;
  std::string config_file;

  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg.rfind("--", 0) == 0) {
      std::string key = arg.substr(2);
      std::string value;
      const auto eq = key.find('=');
      if (eq != std::string::npos) {
        value = key.substr(eq + 1);
        key = key.substr(0, eq);
      } else {
        if (i + 1 >= args.size()) throw ConfigError(key, "flag is missing a value");
        value = args[++i];
      }
      if (key == "config") {
        config_file = value;
      } else if (kKnownKeys.contains(key)) {
        flags[key] = value;
      } else {
        throw ConfigError(key, "unknown config key");
      }
    } else {
      positionals.push_back(arg);
    }
  }

  std::map<std::string, std::string> merged;  // file first, then flag overrides
  if (!config_file.empty()) {
    for (auto& [k, v] : read_config_file(config_file)) merged[k] = v;
  }
  for (auto& [k, v] : flags) merged[k] = v;

  if (!positionals.empty()) merged["command"] = positionals[0];
  if (positionals.size() >= 2) {
    if (merged["command"] == "kernel-info") {
      merged["kernel"] = positionals[1];
    } else {
      throw ConfigError("command", "unexpected positional argument '" + positionals[1] + "'");
    }
  }
  if (!merged.contains("command") || merged["command"].empty()) {
    throw ConfigError("command", "missing required field");
  }

  RunConfig config;
  config.command = merged["command"];
  if (!kCommands.contains(config.command)) {
    throw ConfigError("command", "unknown command '" + config.command + "'");
  }
  if (merged.contains("initial_data")) config.initial_data = merged["initial_data"];
  apply_presets(config, merged);
  for (const auto& [key, value] : merged) {
    if (key == "command") continue;
    assign(config, key, value);
  }
  validate(config);
  return config;
}

std::vector<std::pair<std::string, std::string>> config_metadata(const RunConfig& c) {
  const auto d = [](double x) { return format_shortest_double(x); };
  const auto i = [](long long x) { return std::to_string(x); };
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("command", c.command);
  kv.emplace_back("kernel", c.kernel);
  kv.emplace_back("nonlinearity", c.nonlinearity);
  kv.emplace_back("nonlinearity.p", i(c.power_p));
  kv.emplace_back("grid.h", d(c.grid_h));
  kv.emplace_back("grid.x_left", d(c.x_left));
  kv.emplace_back("grid.x_right", d(c.x_right));
  kv.emplace_back("integrator.method", c.method);
  kv.emplace_back("integrator.dt", d(c.dt));
  kv.emplace_back("integrator.rel_tol", d(c.rel_tol));
  kv.emplace_back("integrator.abs_tol", d(c.abs_tol));
  kv.emplace_back("integrator.t_end", d(c.t_end));
  kv.emplace_back("integrator.blowup_threshold", d(c.blowup_threshold));
  kv.emplace_back("integrator.min_step", d(c.min_step));
  kv.emplace_back("integrator.trace_samples", i(c.trace_samples));
  kv.emplace_back("initial_data", c.initial_data);
  kv.emplace_back("initial.v_file", c.initial_v_file);
  kv.emplace_back("initial.w_file", c.initial_w_file);
  kv.emplace_back("solitary.c", d(c.solitary_c));
  kv.emplace_back("solitary.x0", d(c.solitary_x0));
  kv.emplace_back("output.path", c.output_path);
  kv.emplace_back("output.format", c.output_format);
  kv.emplace_back("converge.h_list", join_list(c.converge_h_list, d));
  kv.emplace_back("converge.t_eval", d(c.converge_t_eval));
  kv.emplace_back("domain.n_list", join_list(c.domain_n_list, i));
  kv.emplace_back("domain.t_list", join_list(c.domain_t_list, d));
  kv.emplace_back("blowup.kernels",
                  join_list(c.blowup_kernels, [](const std::string& s) { return s; }));
  kv.emplace_back("refine.n_list", join_list(c.refine_n_list, i));
  kv.emplace_back("decay.r", d(c.decay_r));
  kv.emplace_back("decay.t_list", join_list(c.decay_t_list, d));
  kv.emplace_back("decay.band_lo", d(c.decay_band_lo));
  kv.emplace_back("decay.band_hi", d(c.decay_band_hi));
  kv.emplace_back("lemma.h_list", join_list(c.lemma_h_list, d));
  kv.emplace_back("lemma.corrupt", c.lemma_corrupt ? "true" : "false");
  return kv;
}

std::string emit_config(const RunConfig& config) {
  std::string out;
  for (const auto& [key, value] : config_metadata(config)) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  }
  return out;
}

}  // namespace nlwave::cli
