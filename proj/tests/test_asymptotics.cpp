#include <doctest.h>

#include <cmath>

#include "asymptotics.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

profile_params params(double r_max, double width = 1.0) {
  profile_params p;
  p.r_max = r_max;
  p.width = width;
  return p;
}

}  // namespace

TEST_CASE("ratio profile per-annulus extremes on Z^2") {
  auto zd = group_descriptor::parse("zd:2");
  auto l1 = length_function::parse(zd, "l1");
  auto linf = length_function::parse(zd, "linf");
  auto profile = ratio_profile(l1, linf, params(40));
  REQUIRE(profile.annuli.size() == 39);
  for (const auto& a : profile.annuli) {
    REQUIRE_FALSE(a.skipped);
    CHECK(a.min_ratio == 1.0);  // attained on the axes
    CHECK(a.max_ratio == 2.0);  // attained on the diagonal
    auto am = std::get<zd_elem>(a.argmin.data).coords;
    CHECK((am[0] == 0 || am[1] == 0));
    auto ax = std::get<zd_elem>(a.argmax.data).coords;
    CHECK(std::abs(ax[0]) == std::abs(ax[1]));
    CHECK(a.min_ratio <= a.max_ratio);
  }

  SUBCASE("witnesses reproduce their ratios") {
    length_evaluator e1(l1), e2(linf);
    for (const auto& a : profile.annuli) {
      CHECK(e1.evaluate(a.argmax) / e2.evaluate(a.argmax) == a.max_ratio);
      CHECK(e1.evaluate(a.argmin) / e2.evaluate(a.argmin) == a.min_ratio);
    }
  }
}

TEST_CASE("ratio profile of a length against itself is constant 1") {
  auto zd = group_descriptor::parse("zd:2");
  auto l1 = length_function::parse(zd, "l1");
  auto profile = ratio_profile(l1, l1, params(25));
  for (const auto& a : profile.annuli) {
    CHECK(a.min_ratio == 1.0);
    CHECK(a.max_ratio == 1.0);
  }
}

TEST_CASE("weighted norm ratio extremes") {
  auto zd = group_descriptor::parse("zd:2");
  auto w31 = length_function::parse(zd, "wnorm:3,1");
  auto l1 = length_function::parse(zd, "l1");
  auto profile = ratio_profile(w31, l1, params(30));
  for (const auto& a : profile.annuli) {
    CHECK(a.min_ratio == 1.0);  // at (0,k)
    CHECK(a.max_ratio == 3.0);  // at (k,0)
  }
  auto est = alpha_estimate(profile);
  CHECK(est.alpha_hat == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("alpha examples") {
  auto zd = group_descriptor::parse("zd:2");
  auto l1 = length_function::parse(zd, "l1");
  auto linf = length_function::parse(zd, "linf");

  auto est = alpha_estimate(ratio_profile(l1, linf, params(60)));
  CHECK(est.alpha_hat == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(est.limsup_hat == 2.0);
  CHECK(est.liminf_hat == 1.0);

  auto zero = alpha_estimate(ratio_profile(l1, l1, params(60)));
  CHECK(zero.alpha_hat == 0.0);

  SUBCASE("window semantics and convergence rows") {
    auto e = alpha_estimate(ratio_profile(l1, linf, params(60)), 10);
    CHECK(e.window == 10);
    CHECK(e.convergence.size() == 59 - 10 + 1);
    CHECK(e.convergence.back().alpha_hat == e.alpha_hat);
    CHECK(e.tail_nonincreasing);
    CHECK_THROWS_AS(alpha_estimate(ratio_profile(l1, linf, params(5)), 10), error);
  }
}

TEST_CASE("alpha is exactly symmetric and scale invariant") {
  auto zd = group_descriptor::parse("zd:2");
  auto l1 = length_function::parse(zd, "l1");
  auto linf = length_function::parse(zd, "linf");
  evaluator_pool pool;
  auto ab = alpha_symmetric(pool, l1, linf, params(50));
  auto ba = alpha_symmetric(pool, linf, l1, params(50));
  CHECK(ab.alpha_hat == ba.alpha_hat);  // bit-for-bit, via the reciprocal identity

  auto scaled = length_function::parse(zd, "scale:l1:0.5");
  auto self = alpha_symmetric(pool, l1, scaled, params(50));
  CHECK(self.alpha_hat == 0.0);  // alpha(l, c*l) = 0

  auto wordy = length_function::parse(zd, "word:std");
  auto w1 = alpha_symmetric(pool, wordy, l1, params(50));
  auto w2 = alpha_symmetric(pool, l1, wordy, params(50));
  CHECK(w1.alpha_hat == w2.alpha_hat);
}

TEST_CASE("profile entries agree with a ball re-read") {
  // evaluating l1 through a ball lookup must reproduce the recorded extremes
  auto zd = group_descriptor::parse("zd:2");
  auto l1 = length_function::parse(zd, "l1");
  auto linf = length_function::parse(zd, "linf");
  auto profile = ratio_profile(l1, linf, params(20));
  length_evaluator e1(l1);
  auto b = e1.ball(100.0);
  for (const auto& a : profile.annuli) {
    auto vmax = b.find(a.argmax);
    auto vmin = b.find(a.argmin);
    REQUIRE(vmax.has_value());
    REQUIRE(vmin.has_value());
    length_evaluator e2(linf);
    CHECK(*vmax / e2.evaluate(a.argmax) == a.max_ratio);
    CHECK(*vmin / e2.evaluate(a.argmin) == a.min_ratio);
  }
}

TEST_CASE("dominates verdicts") {
  auto zd = group_descriptor::parse("zd:2");
  auto l1 = length_function::parse(zd, "l1");
  auto linf = length_function::parse(zd, "linf");

  auto holds = dominates(linf, l1, 1.0, params(40));
  CHECK(holds.result == verdict::holds);
  CHECK(holds.heuristic);

  auto fails = dominates(l1, linf, 1.5, params(40));
  CHECK(fails.result == verdict::fails);
  REQUIRE(fails.witness.has_value());
  auto w = std::get<zd_elem>(fails.witness->data).coords;
  CHECK(std::abs(w[0]) == std::abs(w[1]));  // diagonal witness with ratio 2
  CHECK(fails.witness_ratio == 2.0);

  auto holds2 = dominates(l1, linf, 2.0, params(40));
  CHECK(holds2.result == verdict::holds);

  CHECK_THROWS_AS(dominates(l1, linf, -1.0, params(40)), error);

  SUBCASE("a decreasing tail that still exceeds eta is inconclusive") {
    // 4 * ceil(n/3) / n oscillates above 4/3 with a shrinking envelope
    auto z = group_descriptor::parse("z");
    auto quotient = length_function::parse(z, "scale:word:1,2,3:4");
    auto abs = length_function::parse(z, "l1");
    auto verdicts = dominates(quotient, abs, 1.34, params(400));
    CHECK(verdicts.result == verdict::inconclusive);
    CHECK(verdicts.tail_max > 1.34);
    CHECK(verdicts.trend_slope < 0);
    auto ok = dominates(quotient, abs, 1.35, params(400));
    CHECK(ok.result == verdict::holds);
  }
}

TEST_CASE("eccentricity diameter on closed-form norms") {
  auto zd = group_descriptor::parse("zd:2");
  auto l1 = length_function::parse(zd, "l1");
  auto l2 = length_function::parse(zd, "l2");
  auto linf = length_function::parse(zd, "linf");

  auto res = eccentricity_diameter({l1, l2, linf}, params(60));
  CHECK(res.alpha[0][1] == doctest::Approx(std::log(std::sqrt(2.0))).epsilon(1e-9));
  CHECK(res.alpha[1][2] == doctest::Approx(std::log(std::sqrt(2.0))).epsilon(1e-9));
  CHECK(res.alpha[0][2] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(res.diameter == res.alpha[0][2]);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(res.alpha[i][i] == 0.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK(res.alpha[i][j] == res.alpha[j][i]);
  }

  auto singleton = eccentricity_diameter({l1}, params(60));
  CHECK(singleton.diameter == 0.0);
}

TEST_CASE("pseudometric axiom check") {
  auto zd = group_descriptor::parse("zd:2");
  auto l1 = length_function::parse(zd, "l1");
  auto l2 = length_function::parse(zd, "l2");
  auto linf = length_function::parse(zd, "linf");

  auto rep = pseudometric_axiom_check(l1, l2, linf, params(60));
  CHECK(rep.symmetric_exact);
  CHECK(rep.nonnegative);
  // log sqrt2 + log sqrt2 = log 2: the triangle inequality is tight here
  CHECK(rep.margin == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep.margin >= -kTol);

  auto trivial = pseudometric_axiom_check(l1, l1, l1, params(40));
  CHECK(trivial.a12 == 0.0);
  CHECK(trivial.margin == 0.0);

  auto w31 = length_function::parse(zd, "wnorm:3,1");
  auto rep2 = pseudometric_axiom_check(w31, l1, linf, params(60));
  CHECK(rep2.margin >= -kTol);
  CHECK(rep2.a12 == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(rep2.a13 == doctest::Approx(std::log(4.0)).epsilon(1e-9));  // max at the diagonal
}

TEST_CASE("smoothing convergence tables") {
  auto z = group_descriptor::parse("z");
  auto abs = length_function::parse(z, "l1");
  auto rows = smoothing_convergence(abs, {2, 4, 8}, 50);
  for (const auto& r : rows) CHECK(r.sup_ratio == 1.0);  // subadditivity is tight on Z

  auto zd = group_descriptor::parse("zd:2");
  auto l2 = length_function::parse(zd, "l2");
  auto rows2 = smoothing_convergence(l2, {1.5, 2.5}, 25);
  CHECK(rows2[0].sup_ratio > rows2[1].sup_ratio);
  CHECK(rows2[0].sup_ratio >= (1.0 + std::sqrt(2.0)) / std::sqrt(5.0) - kTol);  // (2,1) is this bad
  length_evaluator s15(length_function::smoothed(l2, 1.5));
  length_evaluator s25(length_function::smoothed(l2, 2.5));
  auto x = parse_element(zd, "(2,1)");
  CHECK(s15.evaluate(x) == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK(s25.evaluate(x) == doctest::Approx(std::sqrt(5.0)));  // (2,1) itself is an edge at R=2.5

  auto dinf = group_descriptor::parse("dinf");
  auto word = length_function::parse(dinf, "word:std");
  auto rows3 = smoothing_convergence(word, {4}, 30);
  CHECK(rows3[0].sup_ratio == 1.0);  // word metrics are geodesic
}

TEST_CASE("word quotient convergence on Z") {
  auto z = group_descriptor::parse("z");
  auto abs = length_function::parse(z, "l1");
  auto rows = word_quotient_convergence(abs, {2, 4, 8}, params(1000));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].generator_count == 2);   // B(2) \ {0} = {+-1}
  CHECK(rows[1].generator_count == 6);   // {+-1,+-2,+-3}
  CHECK(rows[2].generator_count == 14);  // {+-1,...,+-7}

  // log sup of r*rho/l: exactly log 2 at r=2, near log(r/(r-1)) afterwards
  CHECK(rows[0].log_limsup == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(rows[0].alpha_hat == 0.0);  // the ratio is constantly 2
  CHECK(rows[1].log_limsup >= std::log(4.0 / 3.0) - kTol);
  CHECK(rows[1].log_limsup <= std::log(4.0 / 3.0) + 0.01);
  CHECK(rows[2].log_limsup >= std::log(8.0 / 7.0) - kTol);
  CHECK(rows[2].log_limsup <= std::log(8.0 / 7.0) + 0.01);
  CHECK(rows[0].log_limsup > rows[1].log_limsup);
  CHECK(rows[1].log_limsup > rows[2].log_limsup);
  for (const auto& r : rows) CHECK(r.liminf_hat >= 1.0 - kTol);  // l <= r * rho
}

TEST_CASE("word quotient convergence on Dinf decreases") {
  auto dinf = group_descriptor::parse("dinf");
  auto word = length_function::parse(dinf, "word:std");
  auto rows = word_quotient_convergence(word, {3, 5, 9}, params(600));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].log_limsup > rows[1].log_limsup);
  CHECK(rows[1].log_limsup > rows[2].log_limsup);
}

TEST_CASE("word metrics on Z are asymptotically close") {
  auto z = group_descriptor::parse("z");
  std::vector<length_ptr> family = {
      length_function::parse(z, "word:1"),
      length_function::parse(z, "word:1,2"),
      length_function::parse(z, "word:1,3"),
  };
  auto res = eccentricity_diameter(family, params(2000));
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      CHECK(res.alpha[i][j] <= 5e-3);
      CHECK(res.alpha[i][j] >= 0.0);
    }
  }
  evaluator_pool pool;
  auto tri = pseudometric_axiom_check(family[0], family[1], family[2], params(2000));
  CHECK(tri.margin >= -(kTol + 0.01));
}

TEST_CASE("degenerate schedules are rejected") {
  auto z = group_descriptor::parse("z");
  auto abs = length_function::parse(z, "l1");
  profile_params p = params(10, 0.25);  // integer lengths leave 3 of 4 annuli empty
  CHECK_THROWS_AS(ratio_profile(abs, abs, p), error);
  profile_params bad = params(5);
  bad.r_min = 0;
  CHECK_THROWS_AS(ratio_profile(abs, abs, bad), error);
}

TEST_CASE("pseudolength denominators exclude the zero set") {
  auto c4 = group_descriptor::parse("cmz2:4");
  auto l1 = length_function::parse(c4, "l1");
  auto linf = length_function::parse(c4, "linf");
  auto profile = ratio_profile(l1, linf, params(20));
  CHECK(profile.zero_denominator_count == 3);  // t, t^2, t^3
  auto est = alpha_estimate(profile);
  CHECK(est.alpha_hat == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}
