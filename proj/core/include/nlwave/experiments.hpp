#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlwave/integrator.hpp"
#include "nlwave/kernel.hpp"
#include "nlwave/nonlinearity.hpp"
#include "nlwave/problem.hpp"

namespace nlwave {

struct Domain {
  double x_left;
  double x_right;
};

/// Solitary wave u(x,t) = A sech^2(B(x - c t - x0)) of the exponential-kernel
/// equation with quadratic nonlinearity; A = 3(c^2-1)/2, B = sqrt(A)/(sqrt(6) c).
class SolitaryWave {
 public:
  SolitaryWave(double speed, double crest_position);

  double c() const { return c_; }
  double x0() const { return x0_; }
  double amplitude() const { return amplitude_; }
  double width_param() const { return width_param_; }

 private:
  double c_;
  double x0_;
  double amplitude_;
  double width_param_;
};

double solitary_exact(const SolitaryWave& wave, double x, double t);

struct InitialData {
  std::function<double(double)> phi;
  std::function<double(double)> psi;
};

/// phi(x) = A sech^2(B(x-x0)), psi(x) = 2ABc sech^2(B(x-x0)) tanh(B(x-x0));
/// psi equals -c * phi' pointwise.
InitialData solitary_initial_data(const SolitaryWave& wave);

/// u(x,0) = 4((2/3)x^2 - 1) e^{-x^2/3}, u_t(x,0) = (x^2 - 1) e^{-x^2/2}.
InitialData blowup_initial_data();

/// max_i |exact(x_i, t) - numerical_i| over the grid.
double error_linf(const GridSequence& numerical,
                  const std::function<double(double, double)>& exact, double t);

struct ConvergenceRow {
  double h;
  index_t n_points;
  double error;
  double rate;  // log2(E_{2h}/E_h) from the previous row; NaN on the first row
};

struct ConvergenceReport {
  double t_eval;
  std::vector<ConvergenceRow> rows;
};

/// rate_k = log2(E_{k-1}/E_k) for errors listed coarsest-mesh first;
/// the first entry is NaN.
std::vector<double> convergence_rates(std::span<const double> errors);

/// Mesh-refinement study against the exact solitary wave on a fixed domain.
/// h_list must be a halving sequence, largest first. Any diverged run aborts
/// with std::runtime_error.
ConvergenceReport convergence_study(const Domain& domain, std::span<const double> h_list,
                                    double t_eval, const SolitaryWave& wave, const Kernel& kernel,
                                    const Nonlinearity& f, const IntegratorConfig& base);

/// Self-convergence fallback for kernels without exact solutions: each run is
/// compared on shared grid points against a reference run at h/4.
ConvergenceReport convergence_study_self(const Domain& domain, std::span<const double> h_list,
                                         double t_eval, const InitialData& data,
                                         const Kernel& kernel, const Nonlinearity& f,
                                         const IntegratorConfig& base);

struct DomainStudyRow {
  index_t n_half;  // N; the domain is [-N h, N h]
  Domain domain;
  std::vector<double> errors;  // one per requested time
  double max_error;
};

struct DomainStudyReport {
  std::vector<double> times;
  std::vector<DomainStudyRow> rows;
};

/// Fixed mesh size, growing symmetric domain [-N h, N h] for N in n_list;
/// reports the exact-solution error at each requested time.
DomainStudyReport domain_study(std::span<const index_t> n_list, double h,
                               std::span<const double> t_list, const SolitaryWave& wave,
                               const Kernel& kernel, const Nonlinearity& f,
                               const IntegratorConfig& base);

struct BlowupResult {
  std::string kernel_name;
  IntegrationStatus status;
  std::optional<double> t_star;
  std::vector<TracePoint> trace;
};

struct BlowupStudyReport {
  std::vector<BlowupResult> results;
};

/// Blow-up runs with the fixed initial data of blowup_initial_data() for each
/// kernel; a completed (non-blow-up) run is reported as such, not an error.
BlowupStudyReport blowup_study(std::span<const Kernel> kernels, double h, const Domain& domain,
                               double threshold, const Nonlinearity& f,
                               const IntegratorConfig& base);

struct BlowupRefinementRow {
  index_t n_half;
  double h;
  IntegrationStatus status;
  std::optional<double> t_star;
};

struct BlowupRefinementReport {
  std::vector<BlowupRefinementRow> rows;
};

/// Blow-up estimates on [-R, R] with h = R/N for each N in n_list.
BlowupRefinementReport blowup_refinement_study(const Kernel& kernel,
                                               std::span<const index_t> n_list,
                                               const Domain& domain, double threshold,
                                               const Nonlinearity& f,
                                               const IntegratorConfig& base);

struct DecayCheckParams {
  double r = 0.5;                  // probed decay rate of e^{-r|x|}
  std::vector<double> t_list;      // sample times after t = 0
  double band_lo_frac = 0.5;       // sample band |x| in [lo*R, hi*R]
  double band_hi_frac = 0.9;
  std::optional<double> kappa_override;  // envelope growth rate, else from the kernel
};

struct DecayCheckReport {
  double r = 0.0;
  double fitted_C = 0.0;   // envelope constant fitted at t = 0
  double kappa = 0.0;      // growth rate of the e^{kappa t} factor
  std::size_t violations = 0;
  std::size_t samples_checked = 0;
  double max_ratio = 0.0;  // max |u| / envelope over all checked samples
};

/// Verifies |u(x_i,t)| <= C e^{-r|x_i|} e^{kappa t} in the sample band, with
/// C fitted from the initial data and kappa from the kernel's envelope
/// constant. Supported kernels: "exp" (requires r < 1) and "triangle"
/// (any r > 0); other kernels need kappa_override.
DecayCheckReport decay_check(const Problem& problem, const DecayCheckParams& params,
                             const IntegratorConfig& base);

}  // namespace nlwave
