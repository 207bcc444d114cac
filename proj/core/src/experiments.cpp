#include "nlwave/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nlwave/internal/parallel.hpp"
#include "nlwave/sequence_ops.hpp"

namespace nlwave {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double sech(double x) { return 1.0 / std::cosh(x); }

/// Runs fn(i) for i in [0, count) on the default worker pool; results are
/// assembled in index order and the first exception, if any, is rethrown.
template <typename T, typename Fn>
std::vector<T> indexed_parallel_map(std::size_t count, Fn&& fn) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  internal::parallel_for(count, std::min<unsigned>(internal::default_threads(),
                                                   static_cast<unsigned>(count)),
                         [&](std::size_t begin, std::size_t end) {
                           for (std::size_t i = begin; i < end; ++i) {
                             try {
                               slots[i] = fn(i);
                             } catch (...) {
                               errors[i] = std::current_exception();
                             }
                           }
                         });
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  std::vector<T> out;
  out.reserve(count);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

void require_halving(std::span<const double> h_list) {
  if (h_list.empty()) throw std::invalid_argument("study: h_list must not be empty");
  for (std::size_t k = 1; k < h_list.size(); ++k) {
    if (std::abs(h_list[k] - 0.5 * h_list[k - 1]) > 1e-12 * h_list[k - 1]) {
      throw std::invalid_argument("study: h_list must be a halving sequence, largest first");
    }
  }
}

IntegrationOutcome run_to_completion(const Problem& problem, IntegratorConfig config,
                                     const std::string& label) {
  const IntegrationOutcome outcome = integrate(problem, config);
  if (outcome.status != IntegrationStatus::completed) {
    std::ostringstream msg;
    msg << label << ": run diverged (status "
        << (outcome.status == IntegrationStatus::blowup_detected ? "blowup_detected"
                                                                 : "step_underflow")
        << " near t=" << outcome.blowup_time_estimate.value_or(nan) << ")";
    throw std::runtime_error(msg.str());
  }
  return outcome;
}

void fill_rates(std::vector<ConvergenceRow>& rows) {
  std::vector<double> errors;
  errors.reserve(rows.size());
  for (const auto& row : rows) errors.push_back(row.error);
  const std::vector<double> rates = convergence_rates(errors);
  for (std::size_t k = 0; k < rows.size(); ++k) rows[k].rate = rates[k];
}

}  // namespace

std::vector<double> convergence_rates(std::span<const double> errors) {
  std::vector<double> rates(errors.size(), nan);
  for (std::size_t k = 1; k < errors.size(); ++k) {
    rates[k] = std::log2(errors[k - 1] / errors[k]);
  }
  return rates;
}

SolitaryWave::SolitaryWave(double speed, double crest_position)
    : c_(speed), x0_(crest_position) {
  if (!(c_ * c_ > 1.0)) {
    throw std::invalid_argument("SolitaryWave: requires c^2 > 1");
  }
  amplitude_ = 3.0 * (c_ * c_ - 1.0) / 2.0;
  width_param_ = std::sqrt(amplitude_) / (std::sqrt(6.0) * std::abs(c_));
}

double solitary_exact(const SolitaryWave& wave, double x, double t) {
  const double s = sech(wave.width_param() * (x - wave.c() * t - wave.x0()));
  return wave.amplitude() * s * s;
}

InitialData solitary_initial_data(const SolitaryWave& wave) {
  const double a = wave.amplitude();
  const double b = wave.width_param();
  const double c = wave.c();
  const double x0 = wave.x0();
  return {
      [a, b, x0](double x) {
        const double s = sech(b * (x - x0));
        return a * s * s;
      },
      [a, b, c, x0](double x) {
        const double arg = b * (x - x0);
        const double s = sech(arg);
        return 2.0 * a * b * c * s * s * std::tanh(arg);
      },
  };
}

InitialData blowup_initial_data() {
  return {
      [](double x) { return 4.0 * ((2.0 / 3.0) * x * x - 1.0) * std::exp(-x * x / 3.0); },
      [](double x) { return (x * x - 1.0) * std::exp(-x * x / 2.0); },
  };
}

double error_linf(const GridSequence& numerical,
                  const std::function<double(double, double)>& exact, double t) {
  const Grid& grid = numerical.grid();
  double m = 0.0;
  for (index_t i = grid.i_min(); i <= grid.i_max(); ++i) {
    m = std::max(m, std::abs(exact(grid.point(i), t) - numerical[i]));
  }
  return m;
}

ConvergenceReport convergence_study(const Domain& domain, std::span<const double> h_list,
                                    double t_eval, const SolitaryWave& wave, const Kernel& kernel,
                                    const Nonlinearity& f, const IntegratorConfig& base) {
  require_halving(h_list);
  const InitialData data = solitary_initial_data(wave);
  auto rows = indexed_parallel_map<ConvergenceRow>(h_list.size(), [&](std::size_t idx) {
    const double h = h_list[idx];
    const Grid grid = Grid::from_domain(h, domain.x_left, domain.x_right);
    const Problem problem = make_problem(grid, kernel, f, data.phi, data.psi);
    IntegratorConfig config = base;
    config.t_end = t_eval;
    config.snapshot_times.clear();
    const IntegrationOutcome outcome = run_to_completion(problem, config, "convergence_study");
    const double err = error_linf(outcome.final_state.v,
                                  [&](double x, double t) { return solitary_exact(wave, x, t); },
                                  t_eval);
    return ConvergenceRow{h, grid.size(), err, nan};
  });
  fill_rates(rows);
  return {t_eval, std::move(rows)};
}

ConvergenceReport convergence_study_self(const Domain& domain, std::span<const double> h_list,
                                         double t_eval, const InitialData& data,
                                         const Kernel& kernel, const Nonlinearity& f,
                                         const IntegratorConfig& base) {
  require_halving(h_list);
  auto rows = indexed_parallel_map<ConvergenceRow>(h_list.size(), [&](std::size_t idx) {
    const double h = h_list[idx];
    const Grid grid = Grid::from_domain(h, domain.x_left, domain.x_right);
    const Grid fine_grid = Grid::from_domain(h / 4.0, domain.x_left, domain.x_right);

    IntegratorConfig config = base;
    config.t_end = t_eval;
    config.snapshot_times.clear();

    const Problem problem = make_problem(grid, kernel, f, data.phi, data.psi);
    const Problem reference = make_problem(fine_grid, kernel, f, data.phi, data.psi);
    const IntegrationOutcome coarse = run_to_completion(problem, config, "convergence_study_self");
    const IntegrationOutcome fine =
        run_to_completion(reference, config, "convergence_study_self (reference)");

    // grid point i of the coarse run coincides with fine index 4i exactly
    double err = 0.0;
    const GridSequence& uc = coarse.final_state.v;
    const GridSequence& uf = fine.final_state.v;
    for (index_t i = grid.i_min(); i <= grid.i_max(); ++i) {
      err = std::max(err, std::abs(uc[i] - uf[4 * i]));
    }
    return ConvergenceRow{h, grid.size(), err, nan};
  });
  fill_rates(rows);
  return {t_eval, std::move(rows)};
}

DomainStudyReport domain_study(std::span<const index_t> n_list, double h,
                               std::span<const double> t_list, const SolitaryWave& wave,
                               const Kernel& kernel, const Nonlinearity& f,
                               const IntegratorConfig& base) {
  if (n_list.empty() || t_list.empty()) {
    throw std::invalid_argument("domain_study: n_list and t_list must not be empty");
  }
  const InitialData data = solitary_initial_data(wave);
  std::vector<double> times(t_list.begin(), t_list.end());
  std::sort(times.begin(), times.end());

  auto rows = indexed_parallel_map<DomainStudyRow>(n_list.size(), [&](std::size_t idx) {
    const index_t n_half = n_list[idx];
    const double half_width = static_cast<double>(n_half) * h;
    const Grid grid = Grid::from_domain(h, -half_width, half_width);
    const Problem problem = make_problem(grid, kernel, f, data.phi, data.psi);
    IntegratorConfig config = base;
    config.t_end = times.back();
    config.snapshot_times = times;
    const IntegrationOutcome outcome = run_to_completion(problem, config, "domain_study");
    if (outcome.snapshots.size() != times.size()) {
      throw std::runtime_error("domain_study: missing snapshot states");
    }
    DomainStudyRow row{n_half, {-half_width, half_width}, {}, 0.0};
    for (std::size_t k = 0; k < times.size(); ++k) {
      row.errors.push_back(error_linf(
          outcome.snapshots[k].v,
          [&](double x, double t) { return solitary_exact(wave, x, t); }, times[k]));
    }
    row.max_error = *std::max_element(row.errors.begin(), row.errors.end());
    return row;
  });
  return {std::move(times), std::move(rows)};
}

BlowupStudyReport blowup_study(std::span<const Kernel> kernels, double h, const Domain& domain,
                               double threshold, const Nonlinearity& f,
                               const IntegratorConfig& base) {
  const InitialData data = blowup_initial_data();
  auto results = indexed_parallel_map<BlowupResult>(kernels.size(), [&](std::size_t idx) {
    const Kernel& kernel = kernels[idx];
    const Grid grid = Grid::from_domain(h, domain.x_left, domain.x_right);
    const Problem problem = make_problem(grid, kernel, f, data.phi, data.psi);
    IntegratorConfig config = base;
    config.blowup_threshold = threshold;
    const IntegrationOutcome outcome = integrate(problem, config);
    return BlowupResult{kernel.name(), outcome.status, outcome.blowup_time_estimate,
                        outcome.trace};
  });
  return {std::move(results)};
}

BlowupRefinementReport blowup_refinement_study(const Kernel& kernel,
                                               std::span<const index_t> n_list,
                                               const Domain& domain, double threshold,
                                               const Nonlinearity& f,
                                               const IntegratorConfig& base) {
  if (!(domain.x_left == -domain.x_right)) {
    throw std::invalid_argument("blowup_refinement_study: domain must be symmetric");
  }
  const double half_width = domain.x_right;
  const InitialData data = blowup_initial_data();
  auto rows = indexed_parallel_map<BlowupRefinementRow>(n_list.size(), [&](std::size_t idx) {
    const index_t n_half = n_list[idx];
    const double h = half_width / static_cast<double>(n_half);
    const Grid grid = Grid::from_domain(h, -half_width, half_width);
    const Problem problem = make_problem(grid, kernel, f, data.phi, data.psi);
    IntegratorConfig config = base;
    config.blowup_threshold = threshold;
    const IntegrationOutcome outcome = integrate(problem, config);
    return BlowupRefinementRow{n_half, h, outcome.status, outcome.blowup_time_estimate};
  });
  return {std::move(rows)};
}

DecayCheckReport decay_check(const Problem& problem, const DecayCheckParams& params,
                             const IntegratorConfig& base) {
  if (!(params.r > 0.0)) throw std::invalid_argument("decay_check: r must be > 0");
  if (params.t_list.empty()) throw std::invalid_argument("decay_check: t_list must not be empty");

  double envelope_constant = 0.0;
  if (params.kappa_override) {
    envelope_constant = nan;  // kappa supplied directly
  } else if (problem.kernel() && problem.kernel()->name() == "exp") {
    if (!(params.r < 1.0)) {
      throw std::invalid_argument("decay_check: the exponential kernel requires r < 1");
    }
    envelope_constant = 1.0 / (1.0 - params.r) + 1.0;
  } else if (problem.kernel() && problem.kernel()->name() == "triangle") {
    envelope_constant = 2.0 + 2.0 * std::exp(params.r);
  } else {
    throw std::invalid_argument(
        "decay_check: no envelope constant known for this kernel; provide kappa_override");
  }

  std::vector<double> times = params.t_list;
  std::sort(times.begin(), times.end());
  IntegratorConfig config = base;
  config.t_end = times.back();
  config.snapshot_times = times;
  const IntegrationOutcome outcome = run_to_completion(problem, config, "decay_check");

  const Grid& grid = problem.grid();
  const double radius = std::max(std::abs(grid.x_left()), std::abs(grid.x_right()));
  const double band_lo = params.band_lo_frac * radius;
  const double band_hi = params.band_hi_frac * radius;
  std::vector<index_t> band;
  for (index_t i = grid.i_min(); i <= grid.i_max(); ++i) {
    const double ax = std::abs(grid.point(i));
    if (ax >= band_lo && ax <= band_hi) band.push_back(i);
  }
  if (band.empty()) throw std::invalid_argument("decay_check: sample band contains no grid points");

  const double horizon = times.back();
  double c_phi = 0.0, c_psi = 0.0;
  for (index_t i : band) {
    const double wgt = std::exp(params.r * std::abs(grid.point(i)));
    c_phi = std::max(c_phi, std::abs(problem.initial_v()[i]) * wgt);
    c_psi = std::max(c_psi, std::abs(problem.initial_w()[i]) * wgt);
  }
  const double fitted_c = c_phi + horizon * c_psi;

  double kappa;
  if (params.kappa_override) {
    kappa = *params.kappa_override;
  } else {
    // K_M = max |f(z)/z| over the amplitude range reached by the run
    double amplitude = norm_linf(problem.initial_v());
    for (const auto& snap : outcome.snapshots) amplitude = std::max(amplitude, norm_linf(snap.v));
    double k_m = 0.0;
    if (amplitude == 0.0) {
      k_m = std::abs(problem.nonlinearity()(1e-8) / 1e-8);
    } else {
      for (int k = -1000; k <= 1000; ++k) {
        if (k == 0) continue;
        const double z = amplitude * static_cast<double>(k) / 1000.0;
        k_m = std::max(k_m, std::abs(problem.nonlinearity()(z) / z));
      }
    }
    kappa = envelope_constant * k_m * horizon;
  }

  DecayCheckReport report;
  report.r = params.r;
  report.fitted_C = fitted_c;
  report.kappa = kappa;
  for (std::size_t k = 0; k < outcome.snapshots.size(); ++k) {
    const double growth = std::exp(kappa * times[k]);
    for (index_t i : band) {
      const double envelope =
          fitted_c * std::exp(-params.r * std::abs(grid.point(i))) * growth;
      const double value = std::abs(outcome.snapshots[k].v[i]);
      ++report.samples_checked;
      if (envelope > 0.0) report.max_ratio = std::max(report.max_ratio, value / envelope);
      if (value > envelope * (1.0 + 1e-12) + 1e-300) ++report.violations;
    }
  }
  return report;
}

}  // namespace nlwave
