#include "nlwave/corpus.hpp"

#include <cmath>
#include <numbers>

namespace nlwave {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

std::vector<SmoothTestFunction> build_corpus() {
  std::vector<SmoothTestFunction> corpus;

  SmoothTestFunction gaussian;
  gaussian.name = "gaussian";
  gaussian.f = [](double x) { return std::exp(-x * x); };
  gaussian.d1 = [](double x) { return -2.0 * x * std::exp(-x * x); };
  gaussian.d2 = [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); };
  gaussian.d4 = [](double x) {
    const double x2 = x * x;
    return (16.0 * x2 * x2 - 48.0 * x2 + 12.0) * std::exp(-x2);
  };
  gaussian.window = 9.0;
  gaussian.integral = std::sqrt(std::numbers::pi);
  corpus.push_back(std::move(gaussian));

  SmoothTestFunction sech2;
  sech2.name = "sech2";
  sech2.f = [](double x) {
    const double s = sech(x);
    return s * s;
  };
  sech2.d1 = [](double x) {
    const double s = sech(x);
    return -2.0 * s * s * std::tanh(x);
  };
  sech2.d2 = [](double x) {
    const double s2 = sech(x) * sech(x);
    const double t = std::tanh(x);
    return 4.0 * s2 * t * t - 2.0 * s2 * s2;
  };
  sech2.d4 = [](double x) {
    const double s2 = sech(x) * sech(x);
    const double t2 = std::tanh(x) * std::tanh(x);
    return 16.0 * s2 * t2 * t2 - 88.0 * s2 * s2 * t2 + 16.0 * s2 * s2 * s2;
  };
  sech2.window = 22.0;
  sech2.integral = 2.0;
  corpus.push_back(std::move(sech2));

  SmoothTestFunction x_gaussian;
  x_gaussian.name = "x_gaussian";
  x_gaussian.f = [](double x) { return x * std::exp(-x * x); };
  x_gaussian.d1 = [](double x) { return (1.0 - 2.0 * x * x) * std::exp(-x * x); };
  x_gaussian.d2 = [](double x) { return (4.0 * x * x - 6.0) * x * std::exp(-x * x); };
  x_gaussian.d4 = [](double x) {
    const double x2 = x * x;
    return (16.0 * x2 * x2 - 80.0 * x2 + 60.0) * x * std::exp(-x2);
  };
  x_gaussian.window = 9.0;
  x_gaussian.integral = 0.0;
  corpus.push_back(std::move(x_gaussian));

  return corpus;
}

}  // namespace

const std::vector<SmoothTestFunction>& standard_corpus() {
  static const std::vector<SmoothTestFunction> corpus = build_corpus();
  return corpus;
}

}  // namespace nlwave
