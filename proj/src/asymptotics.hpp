#pragma once

#include <optional>

#include "lengths.hpp"

namespace coarse {

struct profile_params {
  double r_max = 0;
  double width = 1.0;
  double r_min = 1.0;
  std::uint64_t budget = 0;            // 0 = default
  double degenerate_fraction = 0.5;    // error when more annuli than this are empty
};

struct annulus_stat {
  double lo = 0, hi = 0;
  std::size_t count = 0;
  bool skipped = true;
  double min_ratio = 0, max_ratio = 0;
  group_element argmin, argmax;
};

// Per-annulus extremes of l1(x)/l2(x) over {x : lo <= l2(x) < hi}.  Annuli
// are indexed by the denominator l2; the swapped estimate reuses the same
// sample through reciprocals, so alpha is exactly symmetric.
struct ratio_profile_result {
  length_ptr l1, l2;
  profile_params params;
  std::vector<annulus_stat> annuli;
  std::size_t zero_denominator_count = 0;  // l2(x) = 0, excluded (r_min > 0)
  std::size_t skipped_annuli = 0;
};

ratio_profile_result ratio_profile(const length_ptr& l1, const length_ptr& l2, const profile_params& p);
ratio_profile_result ratio_profile(length_evaluator& e1, length_evaluator& e2, const profile_params& p);

struct alpha_estimate_result {
  double alpha_hat = 0;    // log(limsup_hat) - log(liminf_hat), infinity if liminf_hat = 0
  double limsup_hat = 0;   // max per-annulus max over the last W annuli
  double liminf_hat = 0;   // min per-annulus min over the last W annuli
  int window = 0;
  group_element arg_limsup, arg_liminf;

  struct row {
    double r;  // outer radius of the last annulus in the window
    double alpha_hat, limsup_hat, liminf_hat;
  };
  // Same estimator over the window of W annuli ending at each successive
  // annulus; the last row is the headline estimate.
  std::vector<row> convergence;
  bool tail_nonincreasing = true;  // over the last (up to) 10 rows
  int tail_increases = 0;
};

// window = 0 picks the default ceil(#annuli / 4).
alpha_estimate_result alpha_estimate(const ratio_profile_result& profile, int window = 0);

// Symmetric alpha for an unordered pair: the denominator is canonicalized
// (by spec string), so both argument orders compute from the one profile and
// alpha_hat(a,b) == alpha_hat(b,a) holds bit-for-bit via the reciprocal
// identity limsup(a/b) = 1/liminf(b/a).
alpha_estimate_result alpha_symmetric(evaluator_pool& pool, const length_ptr& a, const length_ptr& b,
                                      const profile_params& p, int window = 0);

enum class verdict : std::uint8_t { holds, fails, inconclusive };
const char* to_string(verdict v);

// Heuristic finite-radius test of l1 <~ eta * l2 (limsup of the ratio at
// infinity at most eta).  Finite data cannot certify the limit; verdicts are
// labeled heuristic everywhere they are reported.
struct dominates_report {
  verdict result = verdict::inconclusive;
  double eta = 1;
  double tail_max = 0;      // max ratio over the tail window
  double trend_slope = 0;   // least-squares slope of per-annulus maxima over the tail
  std::optional<group_element> witness;
  double witness_ratio = 0;
  double witness_l2 = 0;
  bool heuristic = true;
};

dominates_report dominates(const length_ptr& l1, const length_ptr& l2, double eta,
                           const profile_params& p, int window = 0);

struct diameter_result {
  std::vector<length_ptr> family;
  std::vector<std::vector<double>> alpha;  // symmetric, zero diagonal
  double diameter = 0;
  std::size_t arg_i = 0, arg_j = 0;
};

diameter_result eccentricity_diameter(const std::vector<length_ptr>& family, const profile_params& p,
                                      int window = 0);

struct triangle_report {
  double a12 = 0, a23 = 0, a13 = 0;
  double margin = 0;            // a12 + a23 - a13
  bool symmetric_exact = true;  // alpha(i,j) == alpha(j,i) bit-for-bit
  bool nonnegative = true;
};

triangle_report pseudometric_axiom_check(const length_ptr& l1, const length_ptr& l2, const length_ptr& l3,
                                         const profile_params& p, int window = 0);

struct smoothing_row {
  double R;
  double sup_ratio;               // sup of l_A(x)/l(x) over enumerated x with l(x) >= R
  std::size_t count = 0;
  std::optional<group_element> argmax;
};

// Ratio tables for l_{B_l(R)} against l over a fixed enumeration ball.
std::vector<smoothing_row> smoothing_convergence(const length_ptr& l, const std::vector<double>& R_schedule,
                                                 double ball_radius, std::uint64_t budget = 0);

struct word_quotient_row {
  double r;
  std::size_t generator_count = 0;
  double alpha_hat = 0;    // alpha(r * rho_{B_l(r)}, l) from the window extremes
  double limsup_hat = 0;   // tail sup of r * rho / l; >= 1 since l <= r * rho
  double liminf_hat = 0;
  double log_limsup = 0;   // the quantity driven to 0 by the smoothing bound
};

std::vector<word_quotient_row> word_quotient_convergence(const length_ptr& l, const std::vector<double>& r_schedule,
                                                         const profile_params& p, int window = 0);

}  // namespace coarse
