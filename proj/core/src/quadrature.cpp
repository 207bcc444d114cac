#include "nlwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlwave {

double trapezoid(const std::function<double(double)>& f, double a, double b,
                 std::size_t n_intervals) {
  if (n_intervals == 0 || !(a < b)) {
    throw std::invalid_argument("trapezoid: need a < b and at least one interval");
  }
  const double dx = (b - a) / static_cast<double>(n_intervals);
  double sum = 0.5 * (f(a) + f(b));
  for (std::size_t k = 1; k < n_intervals; ++k) {
    sum += f(a + dx * static_cast<double>(k));
  }
  return sum * dx;
}

double lp_norm_continuous(const std::function<double(double)>& f, double p, double a, double b,
                          double h_ref) {
  if (!(p >= 1.0)) throw std::domain_error("lp_norm_continuous: p must be >= 1");
  const auto n = static_cast<std::size_t>(std::ceil((b - a) / h_ref));
  const auto integrand = [&](double x) { return std::pow(std::abs(f(x)), p); };
  return std::pow(trapezoid(integrand, a, b, std::max<std::size_t>(n, 1)), 1.0 / p);
}

double linf_norm_sampled(const std::function<double(double)>& f, double a, double b,
                         double resolution) {
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / resolution)));
  const double dx = (b - a) / static_cast<double>(n);
  double m = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    m = std::max(m, std::abs(f(a + dx * static_cast<double>(k))));
  }
  return m;
}

QuadratureBoundReport quadrature_error_bound_check(const SmoothTestFunction& f, const Grid& grid) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  QuadratureBoundReport report;
  report.first_order_bound = nan;
  report.second_order_bound = nan;

  const double h = grid.h();
  double sum = 0.0;
  for (index_t i = grid.i_min(); i <= grid.i_max(); ++i) sum += f.f(grid.point(i));
  report.grid_sum = h * sum;
  report.reference_integral = f.integral;
  report.measured_error = std::abs(report.grid_sum - report.reference_integral);

  const double w = f.window;
  const double h_ref = h / 100.0;
  if (f.d1) {
    report.first_order_bound = h * lp_norm_continuous(f.d1, 1.0, -w, w, h_ref);
  }
  if (std::isfinite(f.second_deriv_tv)) {
    report.second_order_bound = h * h * f.second_deriv_tv;
  } else if (f.d2) {
    report.second_order_bound = h * h * lp_norm_continuous(f.d2, 1.0, -w, w, h_ref);
  }

  double tightest = std::numeric_limits<double>::infinity();
  if (std::isfinite(report.first_order_bound)) tightest = report.first_order_bound;
  if (std::isfinite(report.second_order_bound)) {
    tightest = std::min(tightest, report.second_order_bound);
  }
  if (std::isfinite(tightest)) {
    report.violated = report.measured_error > tightest * (1.0 + 1e-9) + 1e-15;
  }
  return report;
}

}  // namespace nlwave
