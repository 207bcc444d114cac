#pragma once

#include <string>
#include <vector>

namespace nlwave {

struct LemmaCheckOptions {
  std::vector<double> h_list{0.4, 0.2, 0.1, 0.05};
  /// Negative control for tests: breaks the forward-difference scale so the
  /// harness is seen to flag violations.
  bool corrupt_forward_difference = false;
};

struct LemmaCheckRow {
  std::string check;    // e.g. "step-extension-L1", "second-difference-sup"
  std::string subject;  // corpus function or kernel name
  double h;
  double measured;
  double bound;  // NaN for rate-only rows
  double rate;   // log2 decrease from the previous h; NaN on the first h
  bool violated;
};

struct LemmaCheckReport {
  std::vector<LemmaCheckRow> rows;
  std::size_t violation_count = 0;
};

/// Runs every discretization-error bound over the standard corpus plus the
/// stencil-mass bound for all four built-in kernels:
///   - step/linear extension errors vs h|u'|_Lp and h^2|u''|_Lp (p = 1, 2)
///   - first differences vs (h/2)|u''|_sup, second differences vs (h^2/12)|u4|_sup
///   - l_h^p difference errors: first/second order decrease under h-halving
///   - integral discretization vs h|u'|_L1 and h^2|u''|_L1
///   - sum_k |b_k| <= 2 tv_mass for the built-in kernels
LemmaCheckReport run_lemma_checks(const LemmaCheckOptions& options = {});

}  // namespace nlwave
