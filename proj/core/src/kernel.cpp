#include "nlwave/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nlwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Frozen from reference quadrature of |beta''| (closed-form second
// derivatives); regression-tested against the quadrature in the test suite.
constexpr double kTvMassLorentzian = 0.8269933431326881;  // 3*sqrt(3)/(2*pi)
constexpr double kTvMassSech2 = 0.3849001794597505;       // 2*sqrt(3)/9

}  // namespace

Kernel::Kernel(std::string name, std::function<double(double)> evaluate, double tv_mass,
               double support_radius, DecayClass decay_class, std::vector<std::string> warnings)
    : name_(std::move(name)),
      evaluate_(std::move(evaluate)),
      tv_mass_(tv_mass),
      support_radius_(support_radius),
      decay_class_(decay_class),
      warnings_(std::move(warnings)) {
  if (!evaluate_) throw std::invalid_argument("Kernel: evaluator must be callable");
  if (!(tv_mass_ >= 0.0)) throw std::invalid_argument("Kernel: tv_mass must be >= 0");
  if (!(support_radius_ > 0.0)) {
    throw std::invalid_argument("Kernel: support_radius must be positive");
  }
}

Kernel kernel_exponential() {
  return Kernel("exp", [](double x) { return 0.5 * std::exp(-std::abs(x)); }, 2.0, kInf,
                DecayClass::exponential);
}

Kernel kernel_lorentzian() {
  return Kernel("lorentz", [](double x) { return 1.0 / (std::numbers::pi * (1.0 + x * x)); },
                kTvMassLorentzian, kInf, DecayClass::algebraic);
}

Kernel kernel_sech2() {
  return Kernel("sech2", [](double x) { return 1.0 / (std::exp(x) + std::exp(-x) + 2.0); },
                kTvMassSech2, kInf, DecayClass::exponential);
}

Kernel kernel_triangular() {
  return Kernel("triangle", [](double x) { return std::max(0.0, 1.0 - std::abs(x)); }, 4.0, 1.0,
                DecayClass::compact);
}

Kernel kernel_custom(std::function<double(double)> evaluate, double tv_mass,
                     double support_radius, DecayClass decay_class, std::string name) {
  if (!evaluate) throw std::invalid_argument("kernel_custom: evaluator must be callable");
  const double probe_radius = std::isfinite(support_radius) ? support_radius : 10.0;
  std::mt19937 rng(0xC0FFEEu);
  std::uniform_real_distribution<double> dist(0.0, probe_radius);
  std::vector<std::string> warnings;
  bool uneven = false;
  for (int k = 0; k < 16; ++k) {
    const double x = dist(rng);
    const double plus = evaluate(x);
    const double minus = evaluate(-x);
    if (!std::isfinite(plus) || !std::isfinite(minus)) {
      std::ostringstream msg;
      msg << "kernel_custom: non-finite evaluation at probe point x=" << x;
      throw std::invalid_argument(msg.str());
    }
    const double scale = std::max({std::abs(plus), std::abs(minus), 1e-30});
    if (std::abs(plus - minus) > 1e-9 * scale) uneven = true;
  }
  if (uneven) {
    warnings.push_back("evenness check failed: evaluate(x) != evaluate(-x) at probe points");
  }
  return Kernel(std::move(name), std::move(evaluate), tv_mass, support_radius, decay_class,
                std::move(warnings));
}

Kernel kernel_by_name(std::string_view name) {
  if (name == "exp") return kernel_exponential();
  if (name == "lorentz") return kernel_lorentzian();
  if (name == "sech2") return kernel_sech2();
  if (name == "triangle") return kernel_triangular();
  throw std::invalid_argument("unknown kernel name '" + std::string(name) +
                              "' (expected exp, lorentz, sech2, triangle, or a table file)");
}

namespace {

/// Linear interpolant through sorted (x, y) nodes, zero outside the table.
class TabulatedEvaluator {
 public:
  TabulatedEvaluator(std::vector<double> xs, std::vector<double> ys)
      : xs_(std::move(xs)), ys_(std::move(ys)) {}

  double operator()(double x) const {
    if (x < xs_.front() || x > xs_.back()) return 0.0;
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.begin()) return ys_.front();
    if (it == xs_.end()) return ys_.back();
    const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
    const std::size_t lo = hi - 1;
    const double frac = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return ys_[lo] + (ys_[hi] - ys_[lo]) * frac;
  }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

}  // namespace

Kernel kernel_from_table(std::istream& in, std::string name) {
  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double x = 0.0, y = 0.0;
    if (row >> x >> y) {
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::invalid_argument("kernel_from_table: non-finite table entry");
      }
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("kernel_from_table: need at least two (x, beta(x)) rows");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw std::invalid_argument("kernel_from_table: x column must be strictly increasing");
    }
  }

  // The interpolant's second derivative is a sum of point masses, one per
  // slope change; the end slopes jump to zero outside the table.
  std::vector<double> slopes;
  slopes.reserve(xs.size() + 1);
  slopes.push_back(0.0);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    slopes.push_back((ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]));
  }
  slopes.push_back(0.0);
  double tv = 0.0;
  for (std::size_t i = 1; i < slopes.size(); ++i) tv += std::abs(slopes[i] - slopes[i - 1]);

  const double radius = std::max(std::abs(xs.front()), std::abs(xs.back()));
  std::vector<std::string> warnings;
  if (std::abs(ys.front()) > 1e-12 || std::abs(ys.back()) > 1e-12) {
    warnings.push_back("tabulated kernel does not decay to zero at the table ends");
  }
  return Kernel(std::move(name), TabulatedEvaluator(std::move(xs), std::move(ys)), tv, radius,
                DecayClass::compact, std::move(warnings));
}

Kernel kernel_from_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("kernel_from_table: cannot open '" + path.string() + "'");
  }
  return kernel_from_table(in, path.filename().string());
}

}  // namespace nlwave
