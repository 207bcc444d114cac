#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nlwave {

enum class DecayClass { compact, exponential, algebraic };

/// Even convolution kernel beta with unit integral. tv_mass is the total
/// variation |mu|(R) of the distributional second derivative beta''; the
/// scheme itself only ever samples beta, so no measure representation is kept.
class Kernel {
 public:
  Kernel(std::string name, std::function<double(double)> evaluate, double tv_mass,
         double support_radius, DecayClass decay_class,
         std::vector<std::string> warnings = {});

  double operator()(double x) const { return evaluate_(x); }
  const std::function<double(double)>& evaluate() const { return evaluate_; }

  const std::string& name() const { return name_; }
  double tv_mass() const { return tv_mass_; }
  /// Radius of the support; +inf for unbounded kernels.
  double support_radius() const { return support_radius_; }
  DecayClass decay_class() const { return decay_class_; }

  /// Construction-time diagnostics (e.g. failed evenness spot checks).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::string name_;
  std::function<double(double)> evaluate_;
  double tv_mass_;
  double support_radius_;
  DecayClass decay_class_;
  std::vector<std::string> warnings_;
};

/// beta1(x) = exp(-|x|)/2; beta'' = beta - delta, so tv_mass = 2.
Kernel kernel_exponential();
/// beta2(x) = 1/(pi*(1+x^2)); tv_mass = 3*sqrt(3)/(2*pi).
Kernel kernel_lorentzian();
/// beta3(x) = 1/(e^x + e^-x + 2); tv_mass = 2*sqrt(3)/9.
Kernel kernel_sech2();
/// beta4(x) = max(0, 1-|x|); beta'' has point masses 1, 2, 1, so tv_mass = 4.
Kernel kernel_triangular();

/// Wraps a user function. Evenness is spot-checked on 16 deterministic random
/// probe points (warning on violation); non-finite probe values are rejected.
Kernel kernel_custom(std::function<double(double)> evaluate, double tv_mass,
                     double support_radius, DecayClass decay_class,
                     std::string name = "custom");

/// Lookup by the config-file names "exp", "lorentz", "sech2", "triangle".
Kernel kernel_by_name(std::string_view name);

/// Piecewise-linear kernel from a two-column (x, beta(x)) text file. The
/// interpolant is exact at the nodes only; its tv_mass is the exact total
/// variation of the interpolant's slope (including the jumps to zero at the
/// table ends).
Kernel kernel_from_table(const std::filesystem::path& path);
Kernel kernel_from_table(std::istream& in, std::string name);

}  // namespace nlwave
