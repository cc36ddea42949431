#include <doctest.h>

#include <cmath>

#include "lengths.hpp"
#include "oracles.hpp"

using namespace coarse;

TEST_CASE("closed form evaluation") {
  auto c4 = group_descriptor::parse("cmz2:4");
  length_evaluator l1(length_function::parse(c4, "l1"));
  CHECK(l1.evaluate(parse_element(c4, "(t^2,(-3,5))")) == 8.0);
  CHECK(l1.evaluate(parse_element(c4, "(t^1,(0,0))")) == 0.0);  // pseudolength: rotations vanish
  CHECK(l1.spec()->pseudo);

  length_evaluator linf(length_function::parse(c4, "linf"));
  CHECK(linf.evaluate(parse_element(c4, "(t^2,(-3,5))")) == 5.0);

  auto zd = group_descriptor::parse("zd:2");
  length_evaluator w31(length_function::parse(zd, "wnorm:3,1"));
  CHECK(w31.evaluate(parse_element(zd, "(2,-3)")) == 9.0);
  CHECK_FALSE(w31.spec()->pseudo);

  length_evaluator l2(length_function::parse(zd, "l2"));
  CHECK(l2.evaluate(parse_element(zd, "(3,4)")) == 5.0);

  auto f2 = group_descriptor::parse("free:2");
  length_evaluator fw(length_function::parse(f2, "l1"));
  CHECK(fw.evaluate(parse_element(f2, "abA")) == 3.0);
}

TEST_CASE("word length via exploration matches the BFS oracle") {
  auto zd = group_descriptor::parse("zd:2");
  auto gens = parse_generating_set(zd, "std");
  length_evaluator word(length_function::word(gens));
  auto x = parse_element(zd, "(3,4)");
  CHECK(word.evaluate(x) == 7.0);
  CHECK(oracle::bfs_word_length(gens.elements, x, 8) == 7);

  auto c4 = group_descriptor::parse("cmz2:4");
  auto cgens = parse_generating_set(c4, "t,e1");
  length_evaluator cword(length_function::word(cgens));
  auto y = parse_element(c4, "(t^0,(2,3))");
  CHECK(cword.evaluate(y) == 7.0);  // witness e1 e1 t e1 e1 e1 t^-1
  CHECK(oracle::bfs_word_length(cgens.elements, y, 8) == 7);
}

TEST_CASE("smoothed length via dijkstra") {
  auto zd = group_descriptor::parse("zd:2");
  auto l2 = length_function::parse(zd, "l2");
  length_evaluator smooth(length_function::smoothed(l2, 1.5));
  auto x = parse_element(zd, "(2,1)");
  double expected = 1.0 + std::sqrt(2.0);  // diagonal then axis step
  CHECK(smooth.evaluate(x) == doctest::Approx(expected).epsilon(1e-12));
  // the base norm is strictly smaller: l <= l_A can be strict
  length_evaluator base(l2);
  CHECK(base.evaluate(x) == doctest::Approx(std::sqrt(5.0)));
  CHECK(base.evaluate(x) < smooth.evaluate(x));

  // oracle: same value from a plain dijkstra over the brute-forced edge set
  std::vector<std::pair<group_element, double>> edges;
  for (std::int64_t a = -1; a <= 1; ++a) {
    for (std::int64_t b = -1; b <= 1; ++b) {
      if (a == 0 && b == 0) continue;
      double v = std::hypot(double(a), double(b));
      if (v < 1.5) edges.push_back({group_element{zd, zd_elem{{a, b}}}, v});
    }
  }
  CHECK(edges.size() == 8);
  auto via_oracle = oracle::dijkstra_length(edges, x, 10.0);
  REQUIRE(via_oracle.has_value());
  CHECK(*via_oracle == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("zero-weight smoothing edges from a pseudolength base") {
  auto c4 = group_descriptor::parse("cmz2:4");
  auto l1 = length_function::parse(c4, "l1");
  length_evaluator smooth(length_function::smoothed(l1, 1.5));
  CHECK(smooth.evaluate(parse_element(c4, "(t^1,(0,0))")) == 0.0);
  CHECK(smooth.evaluate(parse_element(c4, "(t^1,(5,0))")) == 5.0);  // rotations ride free
}

TEST_CASE("ball enumeration examples") {
  auto z = group_descriptor::parse("z");
  length_evaluator abs(length_function::parse(z, "l1"));
  auto b = abs.ball(3.5);
  CHECK(b.entries.size() == 7);  // -3..3
  CHECK(to_string(b.entries[0].element) == "0");

  auto zd = group_descriptor::parse("zd:2");
  length_evaluator linf(length_function::parse(zd, "linf"));
  CHECK(linf.ball(2.5).entries.size() == 25);
  CHECK(oracle::lattice_ball_count_2d('i', 2.5) == 25);

  auto f2 = group_descriptor::parse("free:2");
  length_evaluator fw(length_function::parse(f2, "l1"));
  CHECK(fw.ball(3.5).entries.size() == 53);  // 1 + 4 + 12 + 36
  length_evaluator fword(length_function::word(parse_generating_set(f2, "std")));
  CHECK(fword.ball(3.5).entries.size() == 53);
}

TEST_CASE("ball entries are sorted, indexed and consistent with evaluate") {
  auto zd = group_descriptor::parse("zd:2");
  length_evaluator l2(length_function::parse(zd, "l2"));
  auto b = l2.ball(6.0);
  for (std::size_t i = 1; i < b.entries.size(); ++i) {
    bool ordered = b.entries[i - 1].value < b.entries[i].value ||
                   (b.entries[i - 1].value == b.entries[i].value && b.entries[i - 1].element < b.entries[i].element);
    CHECK(ordered);
  }
  for (const auto& e : b.entries) {
    CHECK(l2.evaluate(e.element) == e.value);
    CHECK(b.find(e.element) == e.value);
  }
  CHECK_FALSE(b.find(parse_element(zd, "(6,6)")).has_value());
  // frontier statistics: unit annulus counts sum to the ball size
  std::size_t total = 0;
  for (auto [_, c] : b.annulus_counts) total += c;
  CHECK(total == b.entries.size());
}

TEST_CASE("annulus examples") {
  auto z = group_descriptor::parse("z");
  length_evaluator abs(length_function::parse(z, "l1"));
  auto ring = abs.annulus(3, 5);
  REQUIRE(ring.size() == 4);  // -4,-3,3,4
  for (const auto& e : ring) CHECK((e.value == 3.0 || e.value == 4.0));

  auto zd = group_descriptor::parse("zd:2");
  length_evaluator l1(length_function::parse(zd, "l1"));
  CHECK(l1.annulus(2, 3).size() == 8);

  auto c4 = group_descriptor::parse("cmz2:4");
  length_evaluator linf(length_function::parse(c4, "linf"));
  CHECK(linf.annulus(1, 2).size() == 32);  // 4 rotations x 8 lattice points

  CHECK_THROWS_AS(abs.annulus(0, 3), error);
  CHECK_THROWS_AS(abs.annulus(3, 2), error);
}

TEST_CASE("rescale to unit") {
  auto z = group_descriptor::parse("z");
  auto scaled3 = length_function::parse(z, "scale:l1:3");
  auto res = rescale_to_unit(scaled3, parse_element(z, "1"), 100);
  CHECK(res.lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(res.ratios.size() == 100);
  CHECK(res.ratios.front() == 3.0);

  auto c4 = group_descriptor::parse("cmz2:4");
  auto word = length_function::word(parse_generating_set(c4, "t,e1"));
  auto res2 = rescale_to_unit(word, parse_element(c4, "e1"), 50);
  CHECK(res2.lambda == 1.0);  // rho(n e1) = n on this generating set

  auto zd = group_descriptor::parse("zd:2");
  auto res3 = rescale_to_unit(length_function::parse(zd, "l1"), parse_element(zd, "(1,1)"), 40);
  CHECK(res3.lambda == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(rescale_to_unit(word, parse_element(c4, "t"), 10), error);  // finite order
}

TEST_CASE("length axioms hold on samples") {
  struct instance {
    const char* group;
    const char* spec;
  };
  const instance catalog[] = {
      {"z", "l1"},          {"z", "word:1,2"},        {"zd:2", "l1"},     {"zd:2", "l2"},
      {"zd:2", "linf"},     {"zd:2", "wnorm:3,1"},    {"zd:2", "word:std"}, {"zd:2", "smooth:l2:1.5"},
      {"cmz2:4", "l1"},     {"cmz2:4", "linf"},       {"cmz2:4", "word:t,e1"}, {"dinf", "word:std"},
      {"free:2", "l1"},     {"zd:2", "scale:l1:2.5"},
  };
  for (const auto& inst : catalog) {
    CAPTURE(inst.group);
    CAPTURE(inst.spec);
    auto g = group_descriptor::parse(inst.group);
    auto lf = length_function::parse(g, inst.spec);
    length_evaluator ev(lf);
    CHECK(ev.evaluate(identity(g)) == 0.0);
    auto ball = ev.ball(6.5);
    rng r(99);
    for (int i = 0; i < 1'000; ++i) {
      const auto& x = ball.entries[r.below(ball.entries.size())].element;
      const auto& y = ball.entries[r.below(ball.entries.size())].element;
      double lx = ev.evaluate(x), ly = ev.evaluate(y);
      CHECK(ev.evaluate(invert(x)) == doctest::Approx(lx).epsilon(1e-12));
      CHECK(ev.evaluate(multiply(x, y)) <= lx + ly + kTol);
      if (!lf->pseudo && !is_identity(x)) CHECK(lx > 0);
    }
  }
}

TEST_CASE("smoothing sandwich") {
  // (r/2) rho_A - r/2 <= l_A <= r rho_A with A the open base ball of radius r
  struct instance {
    const char* group;
    const char* base;
    double r;
  };
  const instance catalog[] = {
      {"zd:2", "l2", 1.5},
      {"zd:2", "l2", 2.5},
      {"z", "l1", 3},
      {"cmz2:4", "l1", 1.5},
      {"dinf", "word:std", 4},
  };
  for (const auto& inst : catalog) {
    CAPTURE(inst.group);
    CAPTURE(inst.base);
    CAPTURE(inst.r);
    auto g = group_descriptor::parse(inst.group);
    auto base = length_function::parse(g, inst.base);
    length_evaluator base_ev(base);
    auto smooth = length_function::smoothed(base, inst.r);
    length_evaluator smooth_ev(smooth);

    std::vector<group_element> agens;
    for (const auto& e : base_ev.ball(inst.r).entries) {
      if (!is_identity(e.element)) agens.push_back(e.element);
    }
    length_evaluator rho(length_function::word(symmetric_closure(g, agens)));

    auto probe = smooth_ev.ball(30.0);
    REQUIRE(probe.entries.size() > 10);
    for (const auto& [x, la] : probe.entries) {
      double rho_a = rho.evaluate(x);
      CHECK(la >= (inst.r / 2) * rho_a - inst.r / 2 - kTol);
      CHECK(la <= inst.r * rho_a + kTol);
      CHECK(la >= base_ev.evaluate(x) - kTol);  // subadditivity: l <= l_A
    }
  }
}

TEST_CASE("word length equals unit-weight smoothing") {
  // cross-oracle: BFS word metric == dijkstra with constant weight 1 edges;
  // smoothing the word metric at radius 1.5 makes every generator a
  // unit-weight edge, so both library routes must agree as well
  const char* groups[] = {"z", "zd:2", "dinf", "cmz2:4", "cmz2:2", "free:2"};
  for (const char* spec : groups) {
    CAPTURE(spec);
    auto g = group_descriptor::parse(spec);
    auto gens = parse_generating_set(g, "std");
    auto word = length_function::word(gens);
    length_evaluator word_ev(word);
    length_evaluator unit_smooth_ev(length_function::smoothed(word, 1.5));
    auto ball = word_ev.ball(8.0);
    for (const auto& [x, v] : ball.entries) {
      auto via_bfs = oracle::bfs_word_length(gens.elements, x, 8);
      REQUIRE(via_bfs.has_value());
      CHECK(static_cast<double>(*via_bfs) == v);
      CHECK(unit_smooth_ev.evaluate(x) == v);
    }
  }
}

TEST_CASE("budget errors carry the explored radius") {
  auto zd = group_descriptor::parse("zd:2");
  length_evaluator word(length_function::word(parse_generating_set(zd, "std")), 50);
  try {
    word.ball(50.0);
    FAIL("expected budget error");
  } catch (const error& e) {
    CHECK(e.code() == errc::budget);
    CHECK(e.radius_reached.has_value());
    CHECK(*e.radius_reached < 50.0);
  }
  length_evaluator direct(length_function::parse(zd, "l1"), 100);
  CHECK_THROWS_AS(direct.ball(100.0), error);
}

TEST_CASE("budget errors carry the best tentative bound for point queries") {
  // budget 20 trips while settling the word-length-3 sphere; (-4,0) is
  // already on the frontier via (-3,0), so the error reports the bound 4
  auto zd = group_descriptor::parse("zd:2");
  length_evaluator word(length_function::word(parse_generating_set(zd, "std")), 20);
  try {
    word.evaluate(parse_element(zd, "(-4,0)"));
    FAIL("expected budget error");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::budget);
    REQUIRE(e.upper_bound.has_value());
    CHECK(*e.upper_bound == 4.0);
  }
}

TEST_CASE("length spec parsing errors") {
  auto zd = group_descriptor::parse("zd:2");
  CHECK_THROWS_AS(length_function::parse(zd, "l3"), error);
  CHECK_THROWS_AS(length_function::parse(zd, "wnorm:1"), error);      // wrong arity
  CHECK_THROWS_AS(length_function::parse(zd, "wnorm:0,1"), error);    // nonpositive weight
  CHECK_THROWS_AS(length_function::parse(zd, "smooth:l2:0"), error);  // zero radius
  auto dinf = group_descriptor::parse("dinf");
  CHECK_THROWS_AS(length_function::parse(dinf, "l1"), error);  // no closed form on dinf
  CHECK(length_function::parse(zd, "smooth:scale:l2:2:1.5")->to_string() == "smooth:scale:l2:2:1.5");
}
