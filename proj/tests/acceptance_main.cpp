// Acceptance suite: prints one PASS/FAIL line per criterion and returns the
// number of failures. `--only N` restricts to one criterion, `--include-slow`
// adds the two finest mesh rows to the convergence table.

#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nlwave/experiments.hpp"
#include "nlwave/integrator.hpp"
#include "nlwave/lemma_checks.hpp"
#include "nlwave/sequence_ops.hpp"
#include "oracles.hpp"

using namespace nlwave;

namespace {

struct CriterionResult {
  bool pass = true;
  std::string details;
};

struct Check {
  CriterionResult result;
  std::ostringstream log;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      result.pass = false;
      log << (log.tellp() > 0 ? "; " : "") << what;
    }
  }
  CriterionResult finish(const std::string& summary) {
    result.details = result.pass ? summary : log.str();
    return result;
  }
};

bool include_slow = false;

IntegratorConfig reference_tolerances() {
  IntegratorConfig config;
  config.rel_tol = 1e-10;
  config.abs_tol = 1e-10;
  return config;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

double round_sig3(double x) {
  if (x == 0.0) return 0.0;
  const double mag = std::pow(10.0, std::floor(std::log10(std::abs(x))) - 2.0);
  return std::round(x / mag) * mag;
}

// ---------------------------------------------------------------------------

CriterionResult criterion_table1() {
  std::vector<double> h_list{2.0, 1.0, 0.5, 0.25, 0.125};
  std::vector<double> expected{1.37663752, 5.40121525e-1, 1.47892030e-1, 3.75864211e-2,
                               9.43402186e-3};
  if (include_slow) {
    h_list.insert(h_list.end(), {0.0625, 0.03125});
    expected.insert(expected.end(), {2.36067921e-3, 5.90372954e-4});
  }

  const SolitaryWave wave(1.5, -15.0);
  const ConvergenceReport report =
      convergence_study({-30.0, 30.0}, h_list, 20.0, wave, kernel_exponential(),
                        nonlinearity_quadratic(), reference_tolerances());

  Check check;
  double rate_at_0125 = 0.0;
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const auto& row = report.rows[k];
    std::ostringstream what;
    what << "h=" << row.h << " E=" << row.error << " reference=" << expected[k];
    check.require(rel_diff(row.error, expected[k]) < 0.01, "off by >1%: " + what.str());
    if (row.h == 0.125) rate_at_0125 = row.rate;
  }
  check.require(std::abs(rate_at_0125 - 1.9942) <= 0.02,
                "order at h=0.125 is " + std::to_string(rate_at_0125) + ", want 1.9942 +- 0.02");
  std::ostringstream summary;
  summary << report.rows.size() << " rows within 1% of the reference table, order(h=0.125)="
          << rate_at_0125;
  return check.finish(summary.str());
}

CriterionResult criterion_table2() {
  const std::vector<double> t_list{5.0, 10.0, 15.0, 20.0};
  // reference per-time errors, rows N=160..240
  const std::map<index_t, std::vector<double>> expected{
      {160, {5.696e-1, 2.568e-1, 2.771e-1, 5.834e-1}},
      {180, {1.043e-1, 7.893e-2, 6.767e-2, 1.127e-1}},
      {200, {2.369e-2, 1.852e-2, 1.606e-2, 2.345e-2}},
      {220, {4.937e-3, 4.203e-3, 4.583e-3, 6.038e-3}},
      {240, {1.702e-3, 3.136e-3, 4.586e-3, 6.040e-3}},
  };

  const SolitaryWave wave(1.5, -15.0);
  Check check;

  // the N=160 run is evaluated on its own: under the literal zero-extension
  // truncation its trajectory sits on the blow-up side of a dynamical
  // threshold (independently confirmed), so the study-level abort on
  // divergence must not hide the remaining rows
  try {
    const std::vector<index_t> first{160};
    const DomainStudyReport r160 = domain_study(first, 0.1, t_list, wave, kernel_exponential(),
                                                nonlinearity_quadratic(), reference_tolerances());
    for (std::size_t k = 0; k < t_list.size(); ++k) {
      std::ostringstream what;
      what << "N=160 t=" << t_list[k] << " E=" << r160.rows[0].errors[k]
           << " reference=" << expected.at(160)[k];
      check.require(rel_diff(r160.rows[0].errors[k], expected.at(160)[k]) < 0.02,
                    "off by >2%: " + what.str());
    }
  } catch (const std::exception& e) {
    check.require(false, std::string("N=160: ") + e.what());
  }

  const std::vector<index_t> n_list{180, 200, 220, 240, 260, 280};
  const DomainStudyReport report = domain_study(n_list, 0.1, t_list, wave, kernel_exponential(),
                                                nonlinearity_quadratic(), reference_tolerances());
  std::vector<double> plateau;
  for (const auto& row : report.rows) {
    if (const auto it = expected.find(row.n_half); it != expected.end()) {
      for (std::size_t k = 0; k < t_list.size(); ++k) {
        std::ostringstream what;
        what << "N=" << row.n_half << " t=" << t_list[k] << " E=" << row.errors[k]
             << " reference=" << it->second[k];
        check.require(rel_diff(row.errors[k], it->second[k]) < 0.02, "off by >2%: " + what.str());
      }
    }
    if (row.n_half >= 240) plateau.push_back(row.max_error);
  }
  check.require(plateau.size() == 3, "missing plateau rows");
  for (double value : plateau) {
    check.require(round_sig3(value) == round_sig3(6.040e-3),
                  "plateau row " + std::to_string(value) + " does not round to 6.04e-3");
  }
  return check.finish("20 table entries within 2%, plateau rows agree at 3 significant figures");
}

CriterionResult criterion_blowup_times() {
  const std::vector<Kernel> kernels{kernel_exponential(), kernel_lorentzian(), kernel_sech2(),
                                    kernel_triangular()};
  const std::vector<double> reference{1.804484, 2.689993, 4.396459, 1.135569};

  IntegratorConfig base = reference_tolerances();
  base.t_end = 10.0;
  const BlowupStudyReport at_1e8 =
      blowup_study(kernels, 0.1, {-10.0, 10.0}, 1e8, nonlinearity_quadratic(), base);
  const BlowupStudyReport at_1e4 =
      blowup_study(kernels, 0.1, {-10.0, 10.0}, 1e4, nonlinearity_quadratic(), base);

  Check check;
  std::vector<double> t_star(4);
  for (std::size_t k = 0; k < kernels.size(); ++k) {
    const auto& result = at_1e8.results[k];
    check.require(result.status == IntegrationStatus::blowup_detected,
                  result.kernel_name + " did not blow up");
    if (!result.t_star) continue;
    t_star[k] = *result.t_star;
    std::ostringstream what;
    what << result.kernel_name << " t*=" << t_star[k] << " reference=" << reference[k];
    check.require(rel_diff(t_star[k], reference[k]) < 0.01, "off by >1%: " + what.str());

    const auto& low = at_1e4.results[k];
    check.require(low.t_star.has_value(), result.kernel_name + " missing 1e4 estimate");
    if (low.t_star) {
      check.require(std::abs(*low.t_star - t_star[k]) < 0.01,
                    result.kernel_name + " threshold sensitivity " +
                        std::to_string(std::abs(*low.t_star - t_star[k])));
    }
  }
  // strict ordering t*(b4) < t*(b1) < t*(b2) < t*(b3)
  check.require(t_star[3] < t_star[0] && t_star[0] < t_star[1] && t_star[1] < t_star[2],
                "regularization ordering violated");
  std::ostringstream summary;
  summary << "t* = {" << t_star[0] << ", " << t_star[1] << ", " << t_star[2] << ", " << t_star[3]
          << "}, ordering and threshold sensitivity hold";
  return check.finish(summary.str());
}

CriterionResult criterion_refinement() {
  const std::vector<index_t> n_list{2, 5, 10, 20, 40, 60, 80, 100};
  IntegratorConfig base = reference_tolerances();
  base.t_end = 10.0;
  const BlowupRefinementReport report = blowup_refinement_study(
      kernel_exponential(), n_list, {-10.0, 10.0}, 1e8, nonlinearity_quadratic(), base);

  Check check;
  std::map<index_t, double> t_star;
  for (const auto& row : report.rows) {
    check.require(row.t_star.has_value(), "N=" + std::to_string(row.n_half) + " did not blow up");
    if (row.t_star) t_star[row.n_half] = *row.t_star;
  }
  const std::vector<index_t> fine{20, 40, 60, 80, 100};
  for (std::size_t a = 0; a < fine.size(); ++a) {
    for (std::size_t b = a + 1; b < fine.size(); ++b) {
      const double diff = std::abs(t_star[fine[a]] - t_star[fine[b]]);
      check.require(diff < 1e-3, "N=" + std::to_string(fine[a]) + " vs N=" +
                                     std::to_string(fine[b]) + " differ by " +
                                     std::to_string(diff));
    }
  }
  check.require(std::abs(t_star[2] - t_star[100]) > 1e-2, "N=2 unexpectedly close to N=100");
  check.require(std::abs(t_star[5] - t_star[100]) > 1e-2, "N=5 unexpectedly close to N=100");
  std::ostringstream summary;
  summary << "fine-grid estimates agree within 1e-3 (t*(N=100)=" << t_star[100]
          << "), coarse N=2,5 visibly apart";
  return check.finish(summary.str());
}

CriterionResult criterion_lemma_suite() {
  const LemmaCheckReport report = run_lemma_checks();
  Check check;
  for (const auto& row : report.rows) {
    if (row.violated) {
      check.require(false, row.check + "/" + row.subject + " at h=" + std::to_string(row.h));
    }
  }
  std::ostringstream summary;
  summary << report.rows.size() << " bound checks, zero violations";
  return check.finish(summary.str());
}

CriterionResult criterion_lattice() {
  std::mt19937 rng(2024);
  Check check;
  for (const int m : {1, 2, 4}) {
    const double h = 1.0 / m;
    const Grid grid(h, -500, 499);  // 1000 points
    const KernelWeights w =
        second_difference_weights(kernel_triangular(), h, grid.i_max() - grid.i_min());
    const GridSequence g = oracles::random_sequence(grid, rng);
    const GridSequence out = apply_weights(w, g);
    double worst = 0.0, scale = 0.0;
    for (index_t i = grid.i_min(); i <= grid.i_max(); ++i) {
      const double lattice = g.value(i + m) - 2.0 * g.value(i) + g.value(i - m);
      worst = std::max(worst, std::abs(out[i] - lattice));
      scale = std::max(scale, std::abs(lattice));
    }
    check.require(worst / scale <= 1e-13, "m=" + std::to_string(m) + " relative deviation " +
                                              std::to_string(worst / scale));
  }
  return check.finish("h = 1, 1/2, 1/4 all reproduce the three-point lattice form");
}

CriterionResult criterion_conv_paths() {
  std::mt19937 rng(77);
  const Kernel kernels[] = {kernel_exponential(), kernel_lorentzian(), kernel_sech2(),
                            kernel_triangular()};
  Check check;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Kernel& kernel = kernels[trial % 4];
    const index_t n = 64 + (trial * 53) % 1400;
    const double h = 0.05 + 0.005 * (trial % 11);
    const Grid grid(h, -(n / 2), n - 1 - n / 2);
    const KernelWeights w = second_difference_weights(kernel, h, grid.i_max() - grid.i_min());
    const GridSequence g = oracles::random_sequence(grid, rng);
    const GridSequence direct = apply_weights(w, g, ConvPath::direct);
    const GridSequence fast = apply_weights(w, g, ConvPath::fft);
    const double rel = oracles::max_abs_diff(direct, fast) /
                       std::max(1e-300, oracles::max_abs(direct));
    worst = std::max(worst, rel);
  }
  check.require(worst <= 1e-12, "worst relative deviation " + std::to_string(worst));
  std::ostringstream summary;
  summary << "100 random pairs, worst fast/direct deviation " << worst;
  return check.finish(summary.str());
}

CriterionResult criterion_structure() {
  Check check;
  const Grid grid = Grid::from_domain(0.1, -10.0, 10.0);
  const InitialData data = blowup_initial_data();
  const Problem problem =
      make_problem(grid, kernel_exponential(), nonlinearity_quadratic(), data.phi, data.psi);

  // zero-state equilibrium
  {
    const Problem zero(grid, problem.weights(), problem.nonlinearity(),
                       GridSequence::zeros(grid), GridSequence::zeros(grid));
    const RhsResult result = rhs(zero, zero.initial_state());
    check.require(oracles::max_abs(result.dv) == 0.0 && oracles::max_abs(result.dw) == 0.0,
                  "zero state is not an equilibrium");
  }

  // spatial symmetry preservation (bitwise even rhs for even data)
  {
    const RhsResult result = rhs(problem, problem.initial_state());
    bool even = true;
    for (index_t i = 1; i <= grid.i_max(); ++i) {
      even = even && result.dw[i] == result.dw[-i];
    }
    check.require(even, "even data lost symmetry in the rhs");
  }

  // translation equivariance, exact away from boundaries
  {
    std::mt19937 rng(5);
    GridSequence v = GridSequence::zeros(grid);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    for (index_t i = -20; i <= 20; ++i) v[i] = dist(rng);
    GridSequence v_shift = GridSequence::zeros(grid);
    for (index_t i = -20; i <= 20; ++i) v_shift[i + 1] = v[i];
    const Problem p1(grid, problem.weights(), problem.nonlinearity(), v,
                     GridSequence::zeros(grid), ConvPath::direct);
    const Problem p2(grid, problem.weights(), problem.nonlinearity(), v_shift,
                     GridSequence::zeros(grid), ConvPath::direct);
    const GridSequence dw1 = rhs(p1, p1.initial_state()).dw;
    const GridSequence dw2 = rhs(p2, p2.initial_state()).dw;
    bool exact = true;
    for (index_t i = grid.i_min() + 25; i <= grid.i_max() - 25; ++i) {
      exact = exact && dw2[i + 1] == dw1[i];
    }
    check.require(exact, "translation equivariance broken");
  }

  // summation by parts
  {
    std::mt19937 rng(6);
    GridSequence u = GridSequence::zeros(grid);
    GridSequence v = GridSequence::zeros(grid);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (index_t i = grid.i_min() + 3; i <= grid.i_max() - 3; ++i) {
      u[i] = dist(rng);
      v[i] = dist(rng);
    }
    const double lhs = inner_product(diff_forward(u), v);
    const double rhs_ip = -inner_product(u, diff_backward(v));
    check.require(std::abs(lhs - rhs_ip) <= 1e-12 * std::max(1.0, std::abs(lhs)),
                  "summation by parts off by " + std::to_string(lhs - rhs_ip));
  }

  // determinism of a full integration
  {
    IntegratorConfig config = reference_tolerances();
    config.t_end = 10.0;
    const IntegrationOutcome a = integrate(problem, config);
    const IntegrationOutcome b = integrate(problem, config);
    bool identical = a.trace.size() == b.trace.size() &&
                     a.blowup_time_estimate == b.blowup_time_estimate &&
                     oracles::max_abs_diff(a.final_state.v, b.final_state.v) == 0.0;
    for (std::size_t k = 0; identical && k < a.trace.size(); ++k) {
      identical = a.trace[k].t == b.trace[k].t && a.trace[k].linf_v == b.trace[k].linf_v;
    }
    check.require(identical, "repeated runs are not bit-identical");
  }

  return check.finish("equilibrium, symmetry, translation, summation-by-parts, determinism");
}

CriterionResult criterion_temporal_order() {
  const Grid grid = Grid::from_domain(0.25, -30.0, 30.0);
  const SolitaryWave wave(1.5, -15.0);
  const InitialData data = solitary_initial_data(wave);
  const Problem problem =
      make_problem(grid, kernel_exponential(), nonlinearity_quadratic(), data.phi, data.psi);

  auto final_v = [&](double dt) {
    IntegratorConfig config;
    config.method = IntegrationMethod::rk4_fixed;
    config.dt = dt;
    config.t_end = 5.0;
    return integrate(problem, config).final_state.v;
  };
  const GridSequence reference = final_v(0.025);
  const double e1 = oracles::max_abs_diff(final_v(0.2), reference);
  const double e2 = oracles::max_abs_diff(final_v(0.1), reference);

  Check check;
  check.require(e2 > 0.0, "error at dt/2 vanished; cannot form a ratio");
  const double factor = e1 / e2;
  check.require(factor >= 11.0, "halving factor " + std::to_string(factor) + " < 11");
  std::ostringstream summary;
  summary << "dt halving shrinks the time error by " << factor << "x (>= 11 required)";
  return check.finish(summary.str());
}

CriterionResult criterion_decay_envelope() {
  const SolitaryWave wave(1.5, -15.0);
  const InitialData data = solitary_initial_data(wave);
  const Grid grid = Grid::from_domain(0.125, -30.0, 30.0);
  const Problem problem =
      make_problem(grid, kernel_exponential(), nonlinearity_quadratic(), data.phi, data.psi);

  DecayCheckParams params;
  params.r = 0.9 * std::min(1.0, 2.0 * wave.width_param());
  params.t_list = {2.5, 5.0, 7.5, 10.0};
  const DecayCheckReport report = decay_check(problem, params, reference_tolerances());

  Check check;
  check.require(report.violations == 0,
                std::to_string(report.violations) + " envelope violations");
  check.require(report.samples_checked > 0, "no samples in the band");
  std::ostringstream summary;
  summary << "r=" << report.r << ", " << report.samples_checked
          << " samples inside the envelope, max ratio " << report.max_ratio;
  return check.finish(summary.str());
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--include-slow") == 0) {
      include_slow = true;
    } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only.push_back(std::atoi(argv[++i]));
    }
  }

  struct Criterion {
    int id;
    const char* name;
    std::function<CriterionResult()> fn;
  };
  const std::vector<Criterion> criteria{
      {1, "solitary-wave convergence table", criterion_table1},
      {2, "domain-size error table", criterion_table2},
      {3, "blow-up times and ordering", criterion_blowup_times},
      {4, "blow-up mesh refinement", criterion_refinement},
      {5, "discretization-error bound suite", criterion_lemma_suite},
      {6, "lattice equivalence", criterion_lattice},
      {7, "convolution path equivalence", criterion_conv_paths},
      {8, "structural invariants", criterion_structure},
      {9, "fourth-order time integration", criterion_temporal_order},
      {10, "spatial decay envelope", criterion_decay_envelope},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), criterion.id) == only.end()) {
      continue;
    }
    CriterionResult result;
    try {
      result = criterion.fn();
    } catch (const std::exception& e) {
      result.pass = false;
      result.details = std::string("exception: ") + e.what();
    }
    std::cout << (result.pass ? "PASS" : "FAIL") << "  criterion " << criterion.id << ": "
              << criterion.name << " -- " << result.details << "\n";
    if (!result.pass) ++failures;
  }
  return failures;
}
