#include "nlwave/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dormand-Prince 5(4) tableau. The 5th-order solution is propagated; the
// 4th-order embedded solution only feeds the error estimate.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// b5 - b4 (error weights)
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

// PI step controller constants
constexpr double kSafety = 0.9;
constexpr double kGrowMax = 5.0;
constexpr double kShrinkMin = 0.2;
constexpr double kAlpha = 0.7 / 5.0;
constexpr double kBeta = 0.4 / 5.0;

class Stepper {
 public:
  Stepper(const Problem& problem, std::size_t n)
      : problem_(problem), n_(n), fv_(n), stage_(2 * n) {}

  /// dy = (w, B f(v)); returns false on non-finite f(v).
  bool rhs(std::span<const double> y, std::span<double> dy) {
    ++evals_;
    std::copy(y.begin() + static_cast<std::ptrdiff_t>(n_), y.end(), dy.begin());
    return problem_.acceleration_into(y.first(n_), fv_, dy.subspan(n_));
  }

  /// Classical RK4 step into y_out; k buffers are caller-provided.
  bool rk4(std::span<const double> y, double dt, std::span<double> k1, std::span<double> k2,
           std::span<double> k3, std::span<double> k4, std::span<double> y_out) {
    const std::size_t m = 2 * n_;
    bool ok = rhs(y, k1);
    for (std::size_t i = 0; i < m; ++i) stage_[i] = y[i] + 0.5 * dt * k1[i];
    ok = rhs(stage_, k2) && ok;
    for (std::size_t i = 0; i < m; ++i) stage_[i] = y[i] + 0.5 * dt * k2[i];
    ok = rhs(stage_, k3) && ok;
    for (std::size_t i = 0; i < m; ++i) stage_[i] = y[i] + dt * k3[i];
    ok = rhs(stage_, k4) && ok;
    for (std::size_t i = 0; i < m; ++i) {
      y_out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(y_out[i])) ok = false;
    }
    return ok;
  }

  /// One DP5 step. k1 must hold rhs(y) on entry (FSAL); on return k7 holds
  /// rhs(y_out). Returns false when any stage went non-finite.
  bool dp5(std::span<const double> y, double dt, std::array<std::vector<double>, 7>& k,
           std::span<double> y_out) {
    const std::size_t m = 2 * n_;
    bool ok = true;
    for (std::size_t i = 0; i < m; ++i) stage_[i] = y[i] + dt * kA21 * k[0][i];
    ok = rhs(stage_, k[1]) && ok;
    for (std::size_t i = 0; i < m; ++i) {
      stage_[i] = y[i] + dt * (kA31 * k[0][i] + kA32 * k[1][i]);
    }
    ok = rhs(stage_, k[2]) && ok;
    for (std::size_t i = 0; i < m; ++i) {
      stage_[i] = y[i] + dt * (kA41 * k[0][i] + kA42 * k[1][i] + kA43 * k[2][i]);
    }
    ok = rhs(stage_, k[3]) && ok;
    for (std::size_t i = 0; i < m; ++i) {
      stage_[i] = y[i] + dt * (kA51 * k[0][i] + kA52 * k[1][i] + kA53 * k[2][i] + kA54 * k[3][i]);
    }
    ok = rhs(stage_, k[4]) && ok;
    for (std::size_t i = 0; i < m; ++i) {
      stage_[i] = y[i] + dt * (kA61 * k[0][i] + kA62 * k[1][i] + kA63 * k[2][i] +
                               kA64 * k[3][i] + kA65 * k[4][i]);
    }
    ok = rhs(stage_, k[5]) && ok;
    for (std::size_t i = 0; i < m; ++i) {
      y_out[i] = y[i] + dt * (kB1 * k[0][i] + kB3 * k[2][i] + kB4 * k[3][i] + kB5 * k[4][i] +
                              kB6 * k[5][i]);
      if (!std::isfinite(y_out[i])) ok = false;
    }
    ok = rhs(y_out, k[6]) && ok;
    return ok;
  }

  /// Scaled RMS of the embedded error over all 2n components.
  double error_norm(std::span<const double> y, std::span<const double> y_new, double dt,
                    const std::array<std::vector<double>, 7>& k, double abs_tol,
                    double rel_tol) const {
    const std::size_t m = 2 * n_;
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double e = dt * (kE1 * k[0][i] + kE3 * k[2][i] + kE4 * k[3][i] + kE5 * k[4][i] +
                             kE6 * k[5][i] + kE7 * k[6][i]);
      const double scale = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double r = e / scale;
      sum += r * r;
    }
    const double rms = std::sqrt(sum / static_cast<double>(m));
    return std::isfinite(rms) ? rms : kInf;
  }

  std::uint64_t evals() const { return evals_; }

 private:
  const Problem& problem_;
  std::size_t n_;
  std::vector<double> fv_;
  std::vector<double> stage_;
  std::uint64_t evals_ = 0;
};

double linf_of_v(std::span<const double> y, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(y[i]);
    if (!(a <= m)) m = a;  // propagates NaN into the max as well
  }
  return m;
}

bool crossed(double linf, double threshold) { return !(linf < threshold); }

SystemState make_state(const Problem& problem, double t, std::span<const double> y,
                       bool diverged) {
  const std::size_t n = static_cast<std::size_t>(problem.grid().size());
  GridSequence v(problem.grid(), std::vector<double>(y.begin(), y.begin() + n));
  GridSequence w(problem.grid(), std::vector<double>(y.begin() + n, y.end()));
  if (diverged) {
    v.mark_diverged();
    w.mark_diverged();
  }
  return {t, std::move(v), std::move(w), diverged};
}

/// Bisection of the threshold crossing inside one accepted step, probing
/// with single partial steps from the pre-step state. Resolution 1e-6.
template <typename PartialStep>
double refine_crossing(double t0, double dt_acc, double threshold, PartialStep partial) {
  double lo = 0.0, hi = dt_acc;
  int iter = 0;
  while (hi - lo > 1e-6 && iter < 80) {
    const double mid = 0.5 * (lo + hi);
    const double norm = partial(mid);
    if (crossed(norm, threshold)) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++iter;
  }
  return t0 + 0.5 * (lo + hi);
}

struct TraceRecorder {
  double interval;
  double threshold;
  double next_t = 0.0;
  std::vector<TracePoint>* out;

  void record(double t, double linf, bool force) {
    const bool due = t >= next_t - 1e-15;
    const bool near_divergence = linf > 0.01 * threshold || !std::isfinite(linf);
    if (!(due || force || near_divergence)) return;
    if (!out->empty() && !(t > out->back().t)) return;  // keep times strictly increasing
    out->push_back({t, linf});
    while (next_t <= t) next_t += interval;
  }
};

void validate(const IntegratorConfig& config) {
  if (!(config.dt > 0.0)) throw std::invalid_argument("IntegratorConfig: dt must be > 0");
  if (!(config.rel_tol > 0.0) || !(config.abs_tol > 0.0)) {
    throw std::invalid_argument("IntegratorConfig: tolerances must be > 0");
  }
  if (!(config.t_end > 0.0)) throw std::invalid_argument("IntegratorConfig: t_end must be > 0");
  if (!(config.blowup_threshold > 0.0)) {
    throw std::invalid_argument("IntegratorConfig: blowup_threshold must be > 0");
  }
  if (!(config.min_step > 0.0)) {
    throw std::invalid_argument("IntegratorConfig: min_step must be > 0");
  }
}

std::vector<double> sorted_snapshots(const IntegratorConfig& config) {
  std::vector<double> times = config.snapshot_times;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::erase_if(times, [&](double t) { return t <= 0.0 || t > config.t_end * (1.0 + 1e-12); });
  return times;
}

}  // namespace

IntegrationOutcome integrate(const Problem& problem, const IntegratorConfig& config) {
  validate(config);

  const std::size_t n = static_cast<std::size_t>(problem.grid().size());
  const std::size_t m = 2 * n;
  std::vector<double> y(m);
  {
    auto v0 = problem.initial_v().values();
    auto w0 = problem.initial_w().values();
    std::copy(v0.begin(), v0.end(), y.begin());
    std::copy(w0.begin(), w0.end(), y.begin() + static_cast<std::ptrdiff_t>(n));
  }

  IntegrationOutcome outcome;
  Stepper stepper(problem, n);
  TraceRecorder trace{config.t_end / static_cast<double>(std::max<std::size_t>(config.trace_samples, 2) - 1),
                      config.blowup_threshold, 0.0, &outcome.trace};

  double t = 0.0;
  double linf = linf_of_v(y, n);
  trace.record(t, linf, true);

  if (crossed(linf, config.blowup_threshold)) {
    outcome.status = IntegrationStatus::blowup_detected;
    outcome.blowup_time_estimate = 0.0;
    outcome.final_state = make_state(problem, t, y, !std::isfinite(linf));
    outcome.stats.rhs_evaluations = stepper.evals();
    return outcome;
  }

  const std::vector<double> snapshots = sorted_snapshots(config);
  std::size_t next_snapshot = 0;

  std::array<std::vector<double>, 7> k;
  for (auto& ki : k) ki.assign(m, 0.0);
  std::vector<double> y_new(m), y_probe(m);
  std::vector<double> k1_scratch(m), k2_scratch(m), k3_scratch(m), k4_scratch(m);

  const bool adaptive = config.method == IntegrationMethod::rk45_adaptive;
  double dt = config.dt;
  double err_prev = 1.0;
  bool k1_fresh = false;
  // Once the threshold is crossed, integration continues toward the
  // singularity so the reported time is threshold-insensitive; the adaptive
  // step then collapses at the blow-up time.
  bool past_threshold = false;
  double crossing_time = 0.0;

  const double t_limit = config.t_end * (1.0 - 1e-14);
  while (t < t_limit) {
    // land exactly on snapshot times and on t_end
    double dt_step = std::min(dt, config.t_end - t);
    double target = -1.0;
    if (next_snapshot < snapshots.size() && t + dt_step >= snapshots[next_snapshot] - 1e-14) {
      target = snapshots[next_snapshot];
      dt_step = target - t;
    } else if (t + dt_step >= config.t_end * (1.0 - 1e-14)) {
      target = config.t_end;
      dt_step = target - t;
    }
    if (dt_step <= 0.0) {  // at or past the next snapshot time without a step to take
      if (next_snapshot < snapshots.size() && t >= snapshots[next_snapshot]) {
        // capture only exact landings; times passed inside a crossing step
        // stay missing rather than being mislabeled
        if (t == snapshots[next_snapshot]) {
          outcome.snapshots.push_back(make_state(problem, t, y, false));
        }
        ++next_snapshot;
        continue;
      }
      break;
    }

    bool ok;
    double err = 0.0;
    if (adaptive) {
      if (!k1_fresh) {
        stepper.rhs(y, k[0]);
        k1_fresh = true;
      }
      ok = stepper.dp5(y, dt_step, k, y_new);
      err = ok ? stepper.error_norm(y, y_new, dt_step, k, config.abs_tol, config.rel_tol) : kInf;
    } else {
      ok = stepper.rk4(y, dt_step, k1_scratch, k2_scratch, k3_scratch, k4_scratch, y_new);
      err = ok ? 0.0 : kInf;
    }

    if (adaptive && err > 1.0) {
      ++outcome.stats.steps_rejected;
      const double factor =
          err == kInf ? kShrinkMin
                      : std::clamp(kSafety * std::pow(err, -1.0 / 5.0), kShrinkMin, 1.0);
      dt = dt_step * factor;
      if (dt < config.min_step) {
        if (past_threshold) {
          // the step collapsed at the singularity: this is the blow-up time
          outcome.status = IntegrationStatus::blowup_detected;
          outcome.blowup_time_estimate = t;
        } else {
          outcome.status = IntegrationStatus::step_underflow;
          outcome.blowup_time_estimate = t;
        }
        break;
      }
      continue;
    }
    if (!adaptive && !ok) {
      // fixed-step overflow counts as a blow-up signal; refine inside the step
      const double t_star = refine_crossing(t, dt_step, config.blowup_threshold, [&](double tau) {
        return stepper.rk4(y, tau, k1_scratch, k2_scratch, k3_scratch, k4_scratch, y_probe)
                   ? linf_of_v(y_probe, n)
                   : kInf;
      });
      std::swap(y, y_new);
      t += dt_step;
      outcome.status = IntegrationStatus::blowup_detected;
      outcome.blowup_time_estimate = t_star;
      trace.record(t, linf_of_v(y, n), true);
      break;
    }

    // accepted
    ++outcome.stats.steps_accepted;
    const double t_prev = t;
    std::swap(y, y_new);
    t = target >= 0.0 ? target : t + dt_step;
    if (adaptive) {
      std::swap(k[0], k[6]);  // FSAL
      const double err_clamped = std::max(err, 1e-10);
      const double factor = std::clamp(
          kSafety * std::pow(err_clamped, -kAlpha) * std::pow(err_prev, kBeta), kShrinkMin,
          kGrowMax);
      dt = dt_step * factor;
      err_prev = err_clamped;
    }

    linf = linf_of_v(y, n);
    trace.record(t, linf, false);

    if (!past_threshold && crossed(linf, config.blowup_threshold)) {
      past_threshold = true;
      if (adaptive) {
        // record the crossing, then keep integrating toward the singularity
        std::array<std::vector<double>, 7> kp;
        for (auto& ki : kp) ki.assign(m, 0.0);
        stepper.rhs(y_new, kp[0]);  // y_new holds the pre-step state after the swap
        crossing_time = refine_crossing(t_prev, dt_step, config.blowup_threshold,
                                        [&](double tau) {
                                          return stepper.dp5(y_new, tau, kp, y_probe)
                                                     ? linf_of_v(y_probe, n)
                                                     : kInf;
                                        });
        continue;
      }
      // fixed-step runs cannot shrink into the singularity; report the
      // bisection-refined crossing directly
      const double t_star =
          refine_crossing(t_prev, dt_step, config.blowup_threshold, [&](double tau) {
            return stepper.rk4(y_new, tau, k1_scratch, k2_scratch, k3_scratch, k4_scratch,
                               y_probe)
                       ? linf_of_v(y_probe, n)
                       : kInf;
          });
      outcome.status = IntegrationStatus::blowup_detected;
      outcome.blowup_time_estimate = t_star;
      trace.record(t, linf, true);
      break;
    }

    if (target >= 0.0 && next_snapshot < snapshots.size() && target == snapshots[next_snapshot]) {
      outcome.snapshots.push_back(make_state(problem, t, y, false));
      ++next_snapshot;
    }
  }

  if (past_threshold && outcome.status == IntegrationStatus::completed) {
    // crossed the threshold but stayed integrable to t_end; report the
    // crossing itself as the estimate
    outcome.status = IntegrationStatus::blowup_detected;
    outcome.blowup_time_estimate = crossing_time;
  }

  const double final_linf = linf_of_v(y, n);
  outcome.final_state = make_state(problem, t, y, !std::isfinite(final_linf));
  if (outcome.status == IntegrationStatus::completed) {
    trace.record(t, final_linf, true);
  }
  outcome.stats.rhs_evaluations = stepper.evals();
  return outcome;
}

SystemState step_rk4(const Problem& problem, const SystemState& state, double dt) {
  if (!(dt != 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("step_rk4: dt must be nonzero and finite");
  }
  const std::size_t n = static_cast<std::size_t>(problem.grid().size());
  const std::size_t m = 2 * n;
  std::vector<double> y(m), y_out(m);
  std::vector<double> k1(m), k2(m), k3(m), k4(m);
  auto v = state.v.values();
  auto w = state.w.values();
  std::copy(v.begin(), v.end(), y.begin());
  std::copy(w.begin(), w.end(), y.begin() + static_cast<std::ptrdiff_t>(n));

  Stepper stepper(problem, n);
  const bool ok = stepper.rk4(y, dt, k1, k2, k3, k4, y_out);
  SystemState next = make_state(problem, state.t + dt, y_out, state.diverged || !ok);
  return next;
}

std::optional<double> detect_blowup(std::span<const TracePoint> trace, double threshold) {
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (!crossed(trace[k].linf_v, threshold)) continue;
    if (k == 0) return trace[0].t;
    const TracePoint& lo = trace[k - 1];
    const TracePoint& hi = trace[k];
    if (std::isfinite(hi.linf_v) && lo.linf_v > 0.0 && hi.linf_v > lo.linf_v) {
      // log-linear interpolation of the crossing inside the bracket
      const double frac = (std::log(threshold) - std::log(lo.linf_v)) /
                          (std::log(hi.linf_v) - std::log(lo.linf_v));
      return lo.t + (hi.t - lo.t) * std::clamp(frac, 0.0, 1.0);
    }
    return hi.t;
  }
  return std::nullopt;
}

}  // namespace nlwave
