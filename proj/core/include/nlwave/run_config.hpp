#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nlwave/grid.hpp"

namespace nlwave::cli {

/// Invalid or missing configuration; carries the offending field name so the
/// CLI can print a one-line message naming it.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(message + " (field '" + field + "')"), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Fully resolved run configuration: every field holds its final value, so
/// emitting and re-parsing a config reproduces it exactly.
struct RunConfig {
  std::string command;

  std::string kernel = "exp";  // builtin name or path of a tabulated kernel
  std::string nonlinearity = "quadratic";
  int power_p = 2;

  double grid_h = 0.125;
  double x_left = -30.0;
  double x_right = 30.0;

  std::string method = "rk45_adaptive";
  double dt = 1e-3;
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double t_end = 20.0;
  double blowup_threshold = 1e8;
  double min_step = 1e-12;
  int trace_samples = 200;

  std::string initial_data = "solitary";  // solitary | blowup-gaussian | file
  std::string initial_v_file;
  std::string initial_w_file;
  double solitary_c = 1.5;
  double solitary_x0 = -15.0;

  std::string output_path;  // empty: print to stdout only
  std::string output_format = "csv";

  std::vector<double> converge_h_list{2.0, 1.0, 0.5, 0.25, 0.125};
  double converge_t_eval = 20.0;

  std::vector<index_t> domain_n_list{160, 180, 200, 220, 240, 260, 280};
  std::vector<double> domain_t_list{5.0, 10.0, 15.0, 20.0};

  std::vector<std::string> blowup_kernels{"exp", "lorentz", "sech2", "triangle"};
  std::vector<index_t> refine_n_list{2, 5, 10, 20, 40, 60, 80, 100};

  double decay_r = 0.0;  // 0: derive from the solitary wave width
  std::vector<double> decay_t_list{2.5, 5.0, 7.5, 10.0};
  double decay_band_lo = 0.5;
  double decay_band_hi = 0.9;

  std::vector<double> lemma_h_list{0.4, 0.2, 0.1, 0.05};
  bool lemma_corrupt = false;  // negative-control hook for tests

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses CLI tokens: `<command> [--config FILE] [--key value ...]`.
/// Flags override file values; file values override command defaults.
/// Throws ConfigError on unknown keys, unknown kernel names, misaligned
/// grids, or missing required fields.
RunConfig parse_config(const std::vector<std::string>& args);

/// Canonical key=value text of a resolved config; parse_config of this text
/// (via --config) returns an equal RunConfig.
std::string emit_config(const RunConfig& config);

/// The emitted lines as (key, value) pairs, for output-file metadata.
std::vector<std::pair<std::string, std::string>> config_metadata(const RunConfig& config);

}  // namespace nlwave::cli
