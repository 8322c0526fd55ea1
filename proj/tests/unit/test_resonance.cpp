#include "doctest.h"

#include <cmath>
#include <numbers>

#include "zk/covering.hpp"
#include "zk/resonance.hpp"

using namespace zk;

TEST_CASE("triangle vertices are exactly resonant") {
  for (long p : {4L, 64L, 128L, 1000L}) {
    auto t = FrequencyTriple::make(0, p, -p / 2.0, -p / 2);
    CHECK(triple_delta(t) == 0);
    auto th = thetas(t);
    CHECK(th[0] == doctest::Approx(double(p)));
    CHECK(th[1] == doctest::Approx(double(p)));
    CHECK(th[2] == doctest::Approx(double(p)));
  }
}

TEST_CASE("derivative of Delta along nu") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    double nu = rng.uniform(-50, 50), zeta = rng.uniform(-50, 50);
    long k = rng.integer(-50, 50), m = rng.integer(-50, 50);
    double e = 1e-4;
    double d = (triple_delta(FrequencyTriple::make(nu + e, k, zeta, m)) -
                triple_delta(FrequencyTriple::make(nu - e, k, zeta, m))) / (2 * e);
    auto th = thetas(FrequencyTriple::make(nu, k, zeta, m));
    double want = th[0] * th[0] - th[2] * th[2];
    CHECK(d == doctest::Approx(want).epsilon(1e-6).scale(1e3));
  }
}

TEST_CASE("bad expansion constant") {
  Rng rng(6);
  CHECK(measure_bad_expansion_constant(rng, 5000, 1024) <= kBadExpansionConstant);
}

TEST_CASE("exact triangle is Bad") {
  auto t = FrequencyTriple::make(0, 128, -64, -64);
  auto c = classify(t);
  CHECK(c.tag == Classification::Tag::bad);
  CHECK(in_bad_box(t));
  CHECK(is_bad(t, TimeTriple{}));
}

TEST_CASE("a halving floor of 1/4 lets Bad escape the box") {
  // equal-theta triples rotated slightly off the axis triangle (0,p), (-p/2,-p/2), (p/2,-p/2)
  ResonanceConstants loose;
  loose.beta = 0.25;
  bool found = false;
  for (int i = 1; i < 2000 && !found; ++i) {
    auto t = equilateral_triple(4096, std::numbers::pi / 2 + i * 1e-5);
    if (!t) continue;
    auto c = classify(*t, loose);
    if (c.tag == Classification::Tag::bad && !in_bad_box(*t)) {
      found = true;
      CHECK(classify(*t).tag != Classification::Tag::bad);
    }
  }
  CHECK(found);
}

TEST_CASE("partition on sampled triples") {
  Rng rng(7);
  for (int i = 0; i < 3000; ++i) {
    auto t = sample_mixture_triple(rng, 1 << 14);
    auto c = classify(t);
    CHECK(c.tag != Classification::Tag::out_of_range);
    if (c.tag == Classification::Tag::bad) CHECK(in_bad_box(t));
    if (c.tag == Classification::Tag::m_interaction) CHECK((c.kind == 1 || c.kind == 2));
  }
}

TEST_CASE("localization and lower bound hold on samples") {
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    auto s = sample_localization(rng, 1, 1e4);
    CHECK(localization_check(s.w1, s.w2, s.w3, s.eps) == Verdict::holds);
    CHECK(coro_lower_bound_check(sample_coro_triple(rng, 1 << 14)) != Verdict::violated);
  }
  // not a zero-sum triple
  CHECK(localization_check({1, 0}, {1, 0}, {1, 0}, 0.001) == Verdict::precondition_failed);
}

TEST_CASE("small-constant covering") {
  ResonanceConstants k;
  k.C = 1;
  k.C2 = 8;
  k.c = 0.5;
  double M = 2, N_min = 256;
  auto cov = cover_SM(M, N_min, k);
  CHECK(!cov.boxes().empty());
  auto per = cov.boxes_per_line();
  for (long n : per) CHECK(n <= cov.count_constant() * N_min / M);
  int nb = (int)cov.boxes().size();
  for (int a = 0; a < nb; a += nb / 16) CHECK(cov.multiplicity(a) <= cov.multiplicity_bound());
  // every triple stopping at M is covered
  Rng rng(9);
  int stopped = 0;
  for (int i = 0; i < 20000 && stopped < 300; ++i) {
    auto t = sample_mixture_triple(rng, N_min);
    auto c = classify(t, k);
    if (c.tag != Classification::Tag::m_interaction || c.M != M || c.N_min != N_min) continue;
    ++stopped;
    CHECK(cov.covers(t));
  }
  CHECK(stopped > 0);
}
