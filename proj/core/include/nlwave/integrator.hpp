#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nlwave/problem.hpp"

namespace nlwave {

enum class IntegrationMethod { rk4_fixed, rk45_adaptive };
enum class IntegrationStatus { completed, blowup_detected, step_underflow };

struct IntegratorConfig {
  IntegrationMethod method = IntegrationMethod::rk45_adaptive;
  double dt = 1e-3;  // fixed step (rk4_fixed) or initial step (rk45_adaptive)
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double t_end = 1.0;
  double blowup_threshold = 1e8;
  double min_step = 1e-12;
  std::size_t trace_samples = 200;
  std::vector<double> snapshot_times;  // states captured exactly at these times
};

struct TracePoint {
  double t;
  double linf_v;
};

struct IntegrationStats {
  std::uint64_t steps_accepted = 0;
  std::uint64_t steps_rejected = 0;
  std::uint64_t rhs_evaluations = 0;
};

struct IntegrationOutcome {
  IntegrationStatus status = IntegrationStatus::completed;
  SystemState final_state;
  /// Present iff status != completed. For blowup_detected this is the
  /// threshold-crossing time refined by bisection to resolution 1e-6; for
  /// step_underflow it is the time the step size collapsed.
  std::optional<double> blowup_time_estimate;
  std::vector<TracePoint> trace;  // times strictly increasing
  std::vector<SystemState> snapshots;
  IntegrationStats stats;
};

/// Advances the first-order system (v' = w, w' = B f(v)) from t = 0 until
/// t_end, a blow-up threshold crossing, or adaptive step underflow.
IntegrationOutcome integrate(const Problem& problem, const IntegratorConfig& config);

/// One classical RK4 step (4 rhs evaluations). A diverged input state or
/// non-finite stage values mark the result as diverged.
SystemState step_rk4(const Problem& problem, const SystemState& state, double dt);

/// First time the trace exceeds the threshold, refined on the bracketing
/// samples by log-linear interpolation; nullopt if never exceeded.
std::optional<double> detect_blowup(std::span<const TracePoint> trace, double threshold);

}  // namespace nlwave
