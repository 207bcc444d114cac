#include "nlwave/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>

#include "nlwave/experiments.hpp"
#include "nlwave/integrator.hpp"
#include "nlwave/kernel.hpp"
#include "nlwave/lemma_checks.hpp"
#include "nlwave/report_io.hpp"
#include "nlwave/sequence_ops.hpp"

namespace nlwave::cli {

namespace {

Kernel resolve_kernel(const std::string& selector) {
  if (selector == "exp" || selector == "lorentz" || selector == "sech2" || selector == "triangle") {
    return kernel_by_name(selector);
  }
  return kernel_from_table(std::filesystem::path(selector));
}

Nonlinearity resolve_nonlinearity(const RunConfig& config) {
  if (config.nonlinearity == "power") return nonlinearity_power(config.power_p);
  return nonlinearity_quadratic();
}

InitialData resolve_initial_data(const RunConfig& config) {
  if (config.initial_data == "blowup-gaussian") return blowup_initial_data();
  if (config.initial_data == "file") {
    auto phi = load_tabulated_function(config.initial_v_file);
    std::function<double(double)> psi = [](double) { return 0.0; };
    if (!config.initial_w_file.empty()) psi = load_tabulated_function(config.initial_w_file);
    return {std::move(phi), std::move(psi)};
  }
  return solitary_initial_data(SolitaryWave(config.solitary_c, config.solitary_x0));
}

IntegratorConfig integrator_config(const RunConfig& config) {
  IntegratorConfig cfg;
  cfg.method = config.method == "rk4_fixed" ? IntegrationMethod::rk4_fixed
                                            : IntegrationMethod::rk45_adaptive;
  cfg.dt = config.dt;
  cfg.rel_tol = config.rel_tol;
  cfg.abs_tol = config.abs_tol;
  cfg.t_end = config.t_end;
  cfg.blowup_threshold = config.blowup_threshold;
  cfg.min_step = config.min_step;
  cfg.trace_samples = static_cast<std::size_t>(config.trace_samples);
  return cfg;
}

Metadata metadata_for(const RunConfig& config) {
  Metadata meta;
  meta.emplace_back("generator", "nlwave");
  meta.emplace_back("schema_version", "1");
  for (auto& kv : config_metadata(config)) meta.push_back(std::move(kv));
  return meta;
}

void maybe_write(const RunConfig& config, const Metadata& meta, const OutputTable& table,
                 const std::string& suffix = "") {
  if (config.output_path.empty()) return;
  std::filesystem::path path = config.output_path;
  if (!suffix.empty()) path = derived_path(path, suffix);
  write_table_file(path, config.output_format, meta, table);
}

OutputTable trace_table(const std::vector<TracePoint>& trace) {
  OutputTable table;
  table.columns = {"t", "linf_u"};
  for (const auto& point : trace) {
    table.rows.push_back({format_full(point.t), format_full(point.linf_v)});
  }
  return table;
}

OutputTable snapshot_table(const SystemState& state) {
  OutputTable table;
  table.columns = {"x", "u", "u_t"};
  const Grid& grid = state.v.grid();
  for (index_t i = grid.i_min(); i <= grid.i_max(); ++i) {
    table.rows.push_back(
        {format_full(grid.point(i)), format_full(state.v[i]), format_full(state.w[i])});
  }
  return table;
}

const char* status_name(IntegrationStatus status) {
  switch (status) {
    case IntegrationStatus::completed: return "completed";
    case IntegrationStatus::blowup_detected: return "blowup_detected";
    case IntegrationStatus::step_underflow: return "step_underflow";
  }
  return "unknown";
}

int cmd_run(const RunConfig& config, std::ostream& out) {
  const Kernel kernel = resolve_kernel(config.kernel);
  const Nonlinearity f = resolve_nonlinearity(config);
  const InitialData data = resolve_initial_data(config);
  const Grid grid = Grid::from_domain(config.grid_h, config.x_left, config.x_right);
  const Problem problem = make_problem(grid, kernel, f, data.phi, data.psi);
  const IntegrationOutcome outcome = integrate(problem, integrator_config(config));

  const Metadata meta = metadata_for(config);
  maybe_write(config, meta, snapshot_table(outcome.final_state));
  maybe_write(config, meta, trace_table(outcome.trace), "_trace");

  out << "run: status=" << status_name(outcome.status)
      << " t=" << format_shortest(outcome.final_state.t)
      << " linf_u=" << format_full(norm_linf(outcome.final_state.v)) << "\n";
  if (outcome.blowup_time_estimate) {
    out << "run: blowup_time_estimate=" << format_full(*outcome.blowup_time_estimate) << "\n";
  }
  if (config.initial_data == "solitary" && outcome.status == IntegrationStatus::completed) {
    const SolitaryWave wave(config.solitary_c, config.solitary_x0);
    const double err = error_linf(
        outcome.final_state.v, [&](double x, double t) { return solitary_exact(wave, x, t); },
        outcome.final_state.t);
    out << "run: error_vs_exact=" << format_full(err) << "\n";
  }
  return outcome.status == IntegrationStatus::completed ? kOk : kBlowupDetected;
}

int cmd_converge(const RunConfig& config, std::ostream& out) {
  const Kernel kernel = resolve_kernel(config.kernel);
  const Nonlinearity f = resolve_nonlinearity(config);
  const SolitaryWave wave(config.solitary_c, config.solitary_x0);
  const Domain domain{config.x_left, config.x_right};
  const ConvergenceReport report =
      convergence_study(domain, config.converge_h_list, config.converge_t_eval, wave, kernel, f,
                        integrator_config(config));

  OutputTable table;
  table.columns = {"h", "E", "order"};
  for (const auto& row : report.rows) {
    table.rows.push_back({format_full(row.h), format_full(row.error),
                          std::isfinite(row.rate) ? format_full(row.rate) : "-"});
  }
  maybe_write(config, metadata_for(config), table);

  out << "converge: t=" << format_shortest(report.t_eval) << "\n";
  out << "h,E,order\n";
  for (const auto& row : table.rows) {
    out << row[0] << "," << row[1] << "," << row[2] << "\n";
  }
  return kOk;
}

int cmd_domain_study(const RunConfig& config, std::ostream& out) {
  const Kernel kernel = resolve_kernel(config.kernel);
  const Nonlinearity f = resolve_nonlinearity(config);
  const SolitaryWave wave(config.solitary_c, config.solitary_x0);
  const DomainStudyReport report =
      domain_study(config.domain_n_list, config.grid_h, config.domain_t_list, wave, kernel, f,
                   integrator_config(config));

  OutputTable table;
  table.columns = {"N", "x_left", "x_right"};
  for (double t : report.times) table.columns.push_back("E_t" + format_shortest(t));
  table.columns.push_back("max");
  for (const auto& row : report.rows) {
    std::vector<std::string> cells{std::to_string(row.n_half), format_full(row.domain.x_left),
                                   format_full(row.domain.x_right)};
    for (double err : row.errors) cells.push_back(format_full(err));
    cells.push_back(format_full(row.max_error));
    table.rows.push_back(std::move(cells));
  }
  maybe_write(config, metadata_for(config), table);

  out << "domain-study: h=" << format_shortest(config.grid_h) << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << "\n";
  }
  return kOk;
}

int cmd_blowup(const RunConfig& config, std::ostream& out) {
  std::vector<Kernel> kernels;
  for (const auto& name : config.blowup_kernels) kernels.push_back(resolve_kernel(name));
  const Nonlinearity f = resolve_nonlinearity(config);
  const BlowupStudyReport report =
      blowup_study(kernels, config.grid_h, {config.x_left, config.x_right},
                   config.blowup_threshold, f, integrator_config(config));

  OutputTable table;
  table.columns = {"kernel", "status", "t_star"};
  bool any_blowup = false;
  for (const auto& result : report.results) {
    any_blowup = any_blowup || result.status == IntegrationStatus::blowup_detected;
    table.rows.push_back({result.kernel_name, status_name(result.status),
                          result.t_star ? format_full(*result.t_star) : "-"});
  }
  const Metadata meta = metadata_for(config);
  maybe_write(config, meta, table);
  for (const auto& result : report.results) {
    maybe_write(config, meta, trace_table(result.trace), "_trace_" + result.kernel_name);
  }

  for (const auto& row : table.rows) {
    out << "blowup: kernel=" << row[0] << " status=" << row[1] << " t_star=" << row[2] << "\n";
  }
  return any_blowup ? kBlowupDetected : kOk;
}

int cmd_blowup_refine(const RunConfig& config, std::ostream& out) {
  const Kernel kernel = resolve_kernel(config.kernel);
  const Nonlinearity f = resolve_nonlinearity(config);
  const BlowupRefinementReport report =
      blowup_refinement_study(kernel, config.refine_n_list, {config.x_left, config.x_right},
                              config.blowup_threshold, f, integrator_config(config));

  OutputTable table;
  table.columns = {"N", "h", "status", "t_star"};
  bool any_blowup = false;
  for (const auto& row : report.rows) {
    any_blowup = any_blowup || row.status == IntegrationStatus::blowup_detected;
    table.rows.push_back({std::to_string(row.n_half), format_full(row.h),
                          status_name(row.status),
                          row.t_star ? format_full(*row.t_star) : "-"});
  }
  maybe_write(config, metadata_for(config), table);

  for (const auto& row : table.rows) {
    out << "blowup-refine: N=" << row[0] << " h=" << row[1] << " status=" << row[2]
        << " t_star=" << row[3] << "\n";
  }
  return any_blowup ? kBlowupDetected : kOk;
}

int cmd_decay(const RunConfig& config, std::ostream& out) {
  const Kernel kernel = resolve_kernel(config.kernel);
  const Nonlinearity f = resolve_nonlinearity(config);
  const InitialData data = resolve_initial_data(config);
  const Grid grid = Grid::from_domain(config.grid_h, config.x_left, config.x_right);
  const Problem problem = make_problem(grid, kernel, f, data.phi, data.psi);

  DecayCheckParams params;
  params.t_list = config.decay_t_list;
  params.band_lo_frac = config.decay_band_lo;
  params.band_hi_frac = config.decay_band_hi;
  if (config.decay_r > 0.0) {
    params.r = config.decay_r;
  } else if (config.initial_data == "solitary") {
    const SolitaryWave wave(config.solitary_c, config.solitary_x0);
    params.r = 0.9 * std::min(1.0, 2.0 * wave.width_param());
  } else {
    throw ConfigError("decay.r", "missing required field for non-solitary initial data");
  }

  const DecayCheckReport report = decay_check(problem, params, integrator_config(config));

  OutputTable table;
  table.columns = {"r", "fitted_C", "kappa", "violations", "samples", "max_ratio"};
  table.rows.push_back({format_full(report.r), format_full(report.fitted_C),
                        format_full(report.kappa), std::to_string(report.violations),
                        std::to_string(report.samples_checked), format_full(report.max_ratio)});
  maybe_write(config, metadata_for(config), table);

  out << "decay: r=" << format_shortest(report.r) << " violations=" << report.violations
      << " samples=" << report.samples_checked << " max_ratio=" << format_full(report.max_ratio)
      << "\n";
  return report.violations == 0 ? kOk : kCheckViolation;
}

int cmd_kernel_info(const RunConfig& config, std::ostream& out) {
  const Kernel kernel = resolve_kernel(config.kernel);
  const char* decay = kernel.decay_class() == DecayClass::compact       ? "compact"
                      : kernel.decay_class() == DecayClass::exponential ? "exponential"
                                                                        : "algebraic";
  out << "kernel: name=" << kernel.name() << " tv_mass=" << format_shortest(kernel.tv_mass())
      << " support_radius="
      << (std::isfinite(kernel.support_radius()) ? format_shortest(kernel.support_radius())
                                                 : std::string("inf"))
      << " decay=" << decay << "\n";
  for (const auto& warning : kernel.warnings()) out << "kernel: warning: " << warning << "\n";

  OutputTable table;
  table.columns = {"h", "normalization_sum", "abs_weight_sum", "mass_bound", "bound_ok"};
  bool all_ok = true;
  for (const double h : config.lemma_h_list) {
    const Grid grid = Grid::from_domain(h, -40.0, 40.0);
    double sum = 0.0;
    for (index_t i = grid.i_min(); i <= grid.i_max(); ++i) sum += kernel(grid.point(i));
    sum *= h;
    const auto k_max = static_cast<index_t>(std::ceil(80.0 / h));
    const KernelWeights weights = second_difference_weights(kernel, h, k_max);
    const double bound = 2.0 * kernel.tv_mass() + 1e-8;
    const bool ok = weights.abs_sum() <= bound;
    all_ok = all_ok && ok;
    table.rows.push_back({format_shortest(h), format_full(sum), format_full(weights.abs_sum()),
                          format_full(bound), ok ? "1" : "0"});
    out << "kernel: h=" << format_shortest(h) << " normalization_sum=" << format_full(sum)
        << " abs_weight_sum=" << format_full(weights.abs_sum())
        << " bound=" << format_full(bound) << (ok ? " PASS" : " FAIL") << "\n";
  }
  maybe_write(config, metadata_for(config), table);
  return all_ok ? kOk : kCheckViolation;
}

int cmd_lemma_check(const RunConfig& config, std::ostream& out) {
  LemmaCheckOptions options;
  options.h_list = config.lemma_h_list;
  options.corrupt_forward_difference = config.lemma_corrupt;
  const LemmaCheckReport report = run_lemma_checks(options);

  OutputTable table;
  table.columns = {"check", "subject", "h", "measured", "bound", "rate", "violated"};
  for (const auto& row : report.rows) {
    table.rows.push_back({row.check, row.subject, format_shortest(row.h),
                          format_full(row.measured),
                          std::isfinite(row.bound) ? format_full(row.bound) : "-",
                          std::isfinite(row.rate) ? format_full(row.rate) : "-",
                          row.violated ? "1" : "0"});
  }
  maybe_write(config, metadata_for(config), table);

  out << "lemma-check: checks=" << report.rows.size()
      << " violations=" << report.violation_count << "\n";
  for (const auto& row : report.rows) {
    if (row.violated) {
      out << "lemma-check: VIOLATION " << row.check << " subject=" << row.subject
          << " h=" << format_shortest(row.h) << " measured=" << format_full(row.measured)
          << " bound=" << (std::isfinite(row.bound) ? format_full(row.bound) : "-") << "\n";
    }
  }
  return report.violation_count == 0 ? kOk : kCheckViolation;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out) {
  if (config.command == "run") return cmd_run(config, out);
  if (config.command == "converge") return cmd_converge(config, out);
  if (config.command == "domain-study") return cmd_domain_study(config, out);
  if (config.command == "blowup") return cmd_blowup(config, out);
  if (config.command == "blowup-refine") return cmd_blowup_refine(config, out);
  if (config.command == "decay") return cmd_decay(config, out);
  if (config.command == "kernel-info") return cmd_kernel_info(config, out);
  if (config.command == "lemma-check") return cmd_lemma_check(config, out);
  throw ConfigError("command", "unknown command '" + config.command + "'");
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_config(args);
    return execute(config, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace nlwave::cli
