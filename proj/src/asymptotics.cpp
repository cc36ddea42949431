#include "asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coarse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const profile_params& p) {
  if (!(p.r_min > 0)) fail(errc::domain, "r_min must be positive (excludes the pseudolength zero set)");
  if (!(p.width > 0)) fail(errc::domain, "annulus width must be positive");
  if (!(p.r_max > p.r_min)) fail(errc::domain, "r_max must exceed r_min");
}

}  // namespace

ratio_profile_result ratio_profile(length_evaluator& e1, length_evaluator& e2, const profile_params& p) {
  validate(p);
  if (!(e1.spec()->group == e2.spec()->group)) fail(errc::domain, "length functions live on different groups");

  ratio_profile_result res;
  res.l1 = e1.spec();
  res.l2 = e2.spec();
  res.params = p;

  std::size_t n_annuli = static_cast<std::size_t>(std::ceil((p.r_max - p.r_min) / p.width - kTol));
  if (n_annuli == 0) fail(errc::domain, "schedule contains no annuli");
  res.annuli.resize(n_annuli);
  for (std::size_t k = 0; k < n_annuli; ++k) {
    res.annuli[k].lo = p.r_min + static_cast<double>(k) * p.width;
    res.annuli[k].hi = std::min(p.r_max, p.r_min + static_cast<double>(k + 1) * p.width);
  }

  auto b2 = e2.ball(p.r_max);
  for (const auto& [x, v2] : b2.entries) {
    if (v2 == 0) {
      if (!is_identity(x)) ++res.zero_denominator_count;
      continue;
    }
    if (v2 < p.r_min) continue;
    auto k = static_cast<std::size_t>((v2 - p.r_min) / p.width);
    if (k >= n_annuli) k = n_annuli - 1;  // guard the v2 == r_max - eps edge
    double ratio = e1.evaluate(x) / v2;
    auto& a = res.annuli[k];
    ++a.count;
    if (a.skipped) {
      a.skipped = false;
      a.min_ratio = a.max_ratio = ratio;
      a.argmin = a.argmax = x;
    } else {
      if (ratio < a.min_ratio) {
        a.min_ratio = ratio;
        a.argmin = x;
      }
      if (ratio > a.max_ratio) {
        a.max_ratio = ratio;
        a.argmax = x;
      }
    }
  }
  for (const auto& a : res.annuli) {
    if (a.skipped) ++res.skipped_annuli;
  }
  if (static_cast<double>(res.skipped_annuli) > p.degenerate_fraction * static_cast<double>(n_annuli)) {
    fail(errc::domain, "degenerate schedule: " + std::to_string(res.skipped_annuli) + " of " +
                           std::to_string(n_annuli) + " annuli are empty");
  }
  return res;
}

ratio_profile_result ratio_profile(const length_ptr& l1, const length_ptr& l2, const profile_params& p) {
  length_evaluator e1(l1, p.budget), e2(l2, p.budget);
  return ratio_profile(e1, e2, p);
}

alpha_estimate_result alpha_estimate(const ratio_profile_result& profile, int window) {
  std::vector<const annulus_stat*> live;
  for (const auto& a : profile.annuli) {
    if (!a.skipped) live.push_back(&a);
  }
  int n = static_cast<int>(live.size());
  if (window <= 0) window = (n + 3) / 4;
  if (window < 1) window = 1;
  if (n < window) {
    fail(errc::domain, "profile has " + std::to_string(n) + " non-empty annuli, fewer than the window " +
                           std::to_string(window));
  }

  alpha_estimate_result res;
  res.window = window;
  for (int k = window; k <= n; ++k) {
    double hi = 0, lo = kInf;
    const annulus_stat* arg_hi = nullptr;
    const annulus_stat* arg_lo = nullptr;
    for (int j = k - window; j < k; ++j) {
      if (live[static_cast<std::size_t>(j)]->max_ratio > hi || !arg_hi) {
        hi = live[static_cast<std::size_t>(j)]->max_ratio;
        arg_hi = live[static_cast<std::size_t>(j)];
      }
      if (live[static_cast<std::size_t>(j)]->min_ratio < lo || !arg_lo) {
        lo = live[static_cast<std::size_t>(j)]->min_ratio;
        arg_lo = live[static_cast<std::size_t>(j)];
      }
    }
    double alpha = lo > 0 ? std::log(hi) - std::log(lo) : kInf;
    res.convergence.push_back({live[static_cast<std::size_t>(k - 1)]->hi, alpha, hi, lo});
    if (k == n) {
      res.alpha_hat = alpha;
      res.limsup_hat = hi;
      res.liminf_hat = lo;
      res.arg_limsup = arg_hi->argmax;
      res.arg_liminf = arg_lo->argmin;
    }
  }
  int tail = std::min<int>(10, static_cast<int>(res.convergence.size()));
  for (std::size_t i = res.convergence.size() - static_cast<std::size_t>(tail) + 1; i < res.convergence.size(); ++i) {
    if (res.convergence[i].alpha_hat > res.convergence[i - 1].alpha_hat + 1e-12) {
      res.tail_nonincreasing = false;
      ++res.tail_increases;
    }
  }
  return res;
}

alpha_estimate_result alpha_symmetric(evaluator_pool& pool, const length_ptr& a, const length_ptr& b,
                                      const profile_params& p, int window) {
  const length_ptr& num = a->to_string() <= b->to_string() ? a : b;
  const length_ptr& den = a->to_string() <= b->to_string() ? b : a;
  auto profile = ratio_profile(pool.get(num), pool.get(den), p);
  return alpha_estimate(profile, window);
}

const char* to_string(verdict v) {
  switch (v) {
    case verdict::holds: return "holds";
    case verdict::fails: return "fails";
    case verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

dominates_report dominates(const length_ptr& l1, const length_ptr& l2, double eta, const profile_params& p,
                           int window) {
  if (!(eta > 0)) fail(errc::domain, "eta must be positive");
  auto profile = ratio_profile(l1, l2, p);

  std::vector<const annulus_stat*> live;
  for (const auto& a : profile.annuli) {
    if (!a.skipped) live.push_back(&a);
  }
  int n = static_cast<int>(live.size());
  if (window <= 0) window = (n + 3) / 4;
  if (n < window) fail(errc::domain, "too few annuli for the requested window");

  dominates_report rep;
  rep.eta = eta;
  const annulus_stat* worst = nullptr;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int j = n - window; j < n; ++j) {
    const auto* a = live[static_cast<std::size_t>(j)];
    if (!worst || a->max_ratio > worst->max_ratio) worst = a;
    double x = 0.5 * (a->lo + a->hi);
    sx += x;
    sy += a->max_ratio;
    sxx += x * x;
    sxy += x * a->max_ratio;
  }
  double denom = window * sxx - sx * sx;
  rep.trend_slope = denom != 0 ? (window * sxy - sx * sy) / denom : 0.0;
  rep.tail_max = worst->max_ratio;

  if (rep.tail_max <= eta + kTol) {
    rep.result = verdict::holds;
  } else if (rep.trend_slope >= -kTol) {
    rep.result = verdict::fails;
    rep.witness = worst->argmax;
    rep.witness_ratio = worst->max_ratio;
    rep.witness_l2 = 0.5 * (worst->lo + worst->hi);
  } else {
    rep.result = verdict::inconclusive;
  }
  return rep;
}

diameter_result eccentricity_diameter(const std::vector<length_ptr>& family, const profile_params& p,
                                      int window) {
  if (family.empty()) fail(errc::domain, "diameter needs at least one length function");
  diameter_result res;
  res.family = family;
  std::size_t n = family.size();
  res.alpha.assign(n, std::vector<double>(n, 0.0));
  evaluator_pool pool(p.budget);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto est = alpha_symmetric(pool, family[i], family[j], p, window);
      res.alpha[i][j] = res.alpha[j][i] = est.alpha_hat;
      if (est.alpha_hat > res.diameter) {
        res.diameter = est.alpha_hat;
        res.arg_i = i;
        res.arg_j = j;
      }
    }
  }
  return res;
}

triangle_report pseudometric_axiom_check(const length_ptr& l1, const length_ptr& l2, const length_ptr& l3,
                                         const profile_params& p, int window) {
  evaluator_pool pool(p.budget);
  triangle_report rep;
  auto e12 = alpha_symmetric(pool, l1, l2, p, window);
  auto e23 = alpha_symmetric(pool, l2, l3, p, window);
  auto e13 = alpha_symmetric(pool, l1, l3, p, window);
  rep.a12 = e12.alpha_hat;
  rep.a23 = e23.alpha_hat;
  rep.a13 = e13.alpha_hat;
  rep.margin = rep.a12 + rep.a23 - rep.a13;
  // Swapped arguments reuse the same profile with reciprocal ratios
  // (limsup l2/l1 = 1/liminf l1/l2), so symmetry must be bit-for-bit.
  auto e21 = alpha_symmetric(pool, l2, l1, p, window);
  rep.symmetric_exact = (e21.alpha_hat == e12.alpha_hat);
  rep.nonnegative = rep.a12 >= 0 && rep.a23 >= 0 && rep.a13 >= 0;
  return rep;
}

std::vector<smoothing_row> smoothing_convergence(const length_ptr& l, const std::vector<double>& R_schedule,
                                                 double ball_radius, std::uint64_t budget) {
  if (R_schedule.empty()) fail(errc::domain, "empty R schedule");
  length_evaluator base(l, budget);
  auto b = base.ball(ball_radius);
  std::vector<smoothing_row> rows;
  for (double R : R_schedule) {
    if (!(R > 0) || !(R < ball_radius)) fail(errc::domain, "R values must lie in (0, ball_radius)");
    length_evaluator smooth(length_function::smoothed(l, R), budget);
    smoothing_row row{R, 0.0, 0, std::nullopt};
    for (const auto& [x, v] : b.entries) {
      if (v < R) continue;  // small-x noise excluded
      double ratio = smooth.evaluate(x) / v;
      ++row.count;
      if (ratio > row.sup_ratio) {
        row.sup_ratio = ratio;
        row.argmax = x;
      }
    }
    if (row.count == 0) fail(errc::domain, "no elements with l(x) >= R inside the enumeration ball");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<word_quotient_row> word_quotient_convergence(const length_ptr& l, const std::vector<double>& r_schedule,
                                                         const profile_params& p, int window) {
  if (r_schedule.empty()) fail(errc::domain, "empty r schedule");
  length_evaluator base(l, p.budget);
  std::vector<word_quotient_row> rows;
  for (double r : r_schedule) {
    auto ball = base.ball(r);
    std::vector<group_element> gens;
    for (const auto& e : ball.entries) {
      if (!is_identity(e.element)) gens.push_back(e.element);
    }
    if (gens.empty()) fail(errc::domain, "B(" + std::to_string(r) + ") contains no generators");
    auto word = length_function::word(symmetric_closure(l->group, std::move(gens)));
    // normalisation l <= r * rho_{B(r)}; alpha itself is scale invariant
    auto scaled = length_function::rescaled(word, r);
    length_evaluator num(scaled, p.budget);
    length_evaluator den(l, p.budget);
    auto profile = ratio_profile(num, den, p);
    auto est = alpha_estimate(profile, window);
    word_quotient_row row;
    row.r = r;
    row.generator_count = word->gens.elements.size();
    row.alpha_hat = est.alpha_hat;
    row.limsup_hat = est.limsup_hat;
    row.liminf_hat = est.liminf_hat;
    row.log_limsup = std::log(est.limsup_hat);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace coarse
