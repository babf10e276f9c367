#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nvsa/bipolar.hpp"
#include "nvsa/fhrr.hpp"
#include "nvsa/rng.hpp"

using namespace nvsa;

namespace {

constexpr double kPi = std::numbers::pi;

PhasorVector shifted(PhasorVector v, double delta) {
  for (double& a : v.angles) a = canon_angle(a + delta);
  return v;
}

}  // namespace

TEST_CASE("bipolar_random is deterministic and balanced") {
  const auto a = bipolar_random(7, 512);
  const auto b = bipolar_random(7, 512);
  CHECK(a == b);
  CHECK(a.dim() == 512);
  for (auto e : a.elems) CHECK((e == 1 || e == -1));

  const auto c = bipolar_random(8, 512);
  CHECK(std::abs(cosine_sim(a, c)) < 0.2);

  double mean = 0.0;
  for (auto e : a.elems) mean += e;
  mean /= 512.0;
  CHECK(std::abs(mean) < 0.15);

  CHECK_THROWS(bipolar_random(7, 0));
}

TEST_CASE("bipolar_bind is a self-inverse elementwise product") {
  const auto x = bipolar_random(1, 512);
  const auto y = bipolar_random(2, 512);

  const auto xx = bipolar_bind(x, x);
  for (auto e : xx.elems) CHECK(e == 1);

  CHECK(bipolar_bind(x, xx) == x);  // all-ones is the identity

  for (int t = 0; t < 1000; ++t) {
    const auto u = bipolar_random(hash_combine(100, t), 512);
    const auto v = bipolar_random(hash_combine(200, t), 512);
    CHECK(std::abs(cosine_sim(bipolar_bind(u, v), u)) < 0.2);
  }

  BipolarVector short_vec{std::vector<std::int8_t>(16, 1)};
  CHECK_THROWS(bipolar_bind(x, short_vec));
  (void)y;
}

TEST_CASE("bipolar_bundle keeps constituents similar") {
  const auto x = bipolar_random(11, 512);
  const auto y = bipolar_random(12, 512);

  CHECK(bipolar_bundle(std::vector<BipolarVector>{x}) == x);

  // A doubled constituent dominates the sign of every element, so the
  // bundle is exactly that constituent.
  for (int t = 0; t < 100; ++t) {
    const auto a = bipolar_random(hash_combine(300, t), 512);
    const auto b = bipolar_random(hash_combine(400, t), 512);
    const auto s = bipolar_bundle(std::vector<BipolarVector>{a, a, b});
    CHECK(s == a);
    CHECK(cosine_sim(s, a) > cosine_sim(s, b));
  }

  // k = 3: expected similarity to a constituent is C(2,1)/2^2 = 0.5.
  double acc = 0.0, fresh = 0.0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto a = bipolar_random(hash_combine(500, t), 512);
    const auto b = bipolar_random(hash_combine(600, t), 512);
    const auto c = bipolar_random(hash_combine(700, t), 512);
    const auto s = bipolar_bundle(std::vector<BipolarVector>{a, b, c});
    acc += cosine_sim(s, a);
    fresh += cosine_sim(s, bipolar_random(hash_combine(800, t), 512));
  }
  CHECK(acc / trials == doctest::Approx(0.5).epsilon(0.05));
  CHECK(std::abs(fresh / trials) < 0.02);

  CHECK_THROWS(bipolar_bundle(std::vector<BipolarVector>{}));
  (void)y;
}

TEST_CASE("bundle tie-break is deterministic") {
  const auto a = bipolar_random(21, 512);
  const auto b = bipolar_random(22, 512);
  const auto s1 = bipolar_bundle(std::vector<BipolarVector>{a, b});
  const auto s2 = bipolar_bundle(std::vector<BipolarVector>{a, b});
  CHECK(s1 == s2);
  for (auto e : s1.elems) CHECK((e == 1 || e == -1));
}

TEST_CASE("cosine_sim endpoints and random magnitude") {
  const auto x = bipolar_random(31, 512);
  CHECK(cosine_sim(x, x) == doctest::Approx(1.0));
  CHECK(cosine_sim(x, bipolar_negate(x)) == doctest::Approx(-1.0));

  // Mean |sim| of independent pairs: half-normal, sigma*sqrt(2/pi) ~ 0.035.
  double mean_abs = 0.0;
  const int pairs = 1000;
  for (int t = 0; t < pairs; ++t) {
    const auto a = bipolar_random(hash_combine(900, t), 512);
    const auto b = bipolar_random(hash_combine(1000, t), 512);
    mean_abs += std::abs(cosine_sim(a, b));
  }
  mean_abs /= pairs;
  CHECK(mean_abs == doctest::Approx(0.035).epsilon(0.35));
}

TEST_CASE("bipolar quasi-orthogonality over 1000 pairs") {
  double max_abs = 0.0, mean_abs = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto a = bipolar_random(hash_combine(1100, t), 512);
    const auto b = bipolar_random(hash_combine(1200, t), 512);
    const double s = std::abs(cosine_sim(a, b));
    max_abs = std::max(max_abs, s);
    mean_abs += s;
  }
  CHECK(max_abs < 0.2);
  CHECK(mean_abs / 1000 < 0.06);
}

TEST_CASE("bundling preserves similarity for k <= 9") {
  int ok = 0;
  const int trials = 1000;
  CounterRng rng(42, hash_str("test.bundle-k"));
  for (int t = 0; t < trials; ++t) {
    const int k = 2 + static_cast<int>(rng.next_below(8));  // 2..9
    std::vector<BipolarVector> vs;
    for (int i = 0; i < k; ++i) {
      vs.push_back(bipolar_random(hash_combine(hash_combine(1300, t), i), 512));
    }
    const auto s = bipolar_bundle(vs);
    const auto fresh = bipolar_random(hash_combine(1400, t), 512);
    const int pick = static_cast<int>(rng.next_below(k));
    if (cosine_sim(s, vs[pick]) > cosine_sim(s, fresh) + 0.1) ++ok;
  }
  CHECK(ok >= 990);
}

TEST_CASE("bipolar codebook regenerates bit-identically") {
  const auto cb1 = make_codebook("letters", 99, 26, 512);
  const auto cb2 = make_codebook("letters", 99, 26, 512);
  REQUIRE(cb1.size() == 26);
  for (std::size_t i = 0; i < 26; ++i) CHECK(cb1.at(i) == cb2.at(i));
  const auto other = make_codebook("digits", 99, 26, 512);
  CHECK(cb1.at(0) != other.at(0));
}

TEST_CASE("fhrr_random determinism, range, and uniformity") {
  const auto a = fhrr_random(3, 1024);
  CHECK(a == fhrr_random(3, 1024));
  for (double ang : a.angles) {
    CHECK(ang > -kPi);
    CHECK(ang <= kPi);
  }
  CHECK(std::abs(fhrr_sim(a, fhrr_random(4, 1024))) < 0.15);
  CHECK_THROWS(fhrr_random(3, 0));

  // Chi-squared uniformity of angles, 16 bins, alpha = 0.01 (df 15 -> 30.58).
  const auto big = fhrr_random(5, 8192);
  std::vector<int> bins(16, 0);
  for (double ang : big.angles) {
    int b = static_cast<int>((ang + kPi) / (2 * kPi) * 16);
    b = std::min(std::max(b, 0), 15);
    ++bins[b];
  }
  const double expected = 8192.0 / 16.0;
  double chi2 = 0.0;
  for (int c : bins) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 30.58);
}

TEST_CASE("fhrr bind/unbind are exact group operations") {
  const auto a = fhrr_random(10, 1024);
  const auto b = fhrr_random(11, 1024);

  const auto ab = fhrr_bind(a, b);
  const auto back = fhrr_unbind(ab, b);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    CHECK(std::abs(canon_angle(back.angles[i] - a.angles[i])) < 1e-9);
  }

  CHECK(fhrr_bind(a, fhrr_identity(1024)) == a);
  CHECK(std::abs(fhrr_sim(ab, a)) < 0.15);

  PhasorVector small{std::vector<double>(8, 0.0)};
  CHECK_THROWS(fhrr_bind(a, small));
}

TEST_CASE("fhrr_bundle_weighted edge cases and weighting") {
  const auto a = fhrr_random(20, 1024);
  const auto b = fhrr_random(21, 1024);

  CHECK(fhrr_bundle_weighted({0.0, 1.0}, std::vector<PhasorVector>{b, a}) == a);

  const auto dup = fhrr_bundle_weighted({0.5, 0.5}, std::vector<PhasorVector>{a, a});
  for (std::size_t i = 0; i < a.dim(); ++i) {
    CHECK(std::abs(canon_angle(dup.angles[i] - a.angles[i])) < 1e-9);
  }

  for (int t = 0; t < 100; ++t) {
    const auto u = fhrr_random(hash_combine(2000, t), 1024);
    const auto v = fhrr_random(hash_combine(2100, t), 1024);
    const auto s = fhrr_bundle_weighted({0.9, 0.1}, std::vector<PhasorVector>{u, v});
    CHECK(fhrr_sim(s, u) > fhrr_sim(s, v));
    CHECK(fhrr_sim(s, v) > 0.0);
  }

  CHECK_THROWS(fhrr_bundle_weighted({0.0, 0.0}, std::vector<PhasorVector>{a, b}));
  CHECK_THROWS(fhrr_bundle_weighted({1.0}, std::vector<PhasorVector>{a, b}));
  CHECK_THROWS(fhrr_bundle_weighted({-1.0, 2.0}, std::vector<PhasorVector>{a, b}));
}

TEST_CASE("fhrr_sim endpoints and noise floor") {
  const auto a = fhrr_random(30, 1024);
  CHECK(fhrr_sim(a, a) == doctest::Approx(1.0));
  CHECK(fhrr_sim(a, shifted(a, kPi)) == doctest::Approx(-1.0));

  const auto x = fhrr_random(31, 8192);
  const auto y = fhrr_random(32, 8192);
  CHECK(std::abs(fhrr_sim(x, y)) < 0.04);
}

TEST_CASE("fractional power encoding is an exact homomorphism") {
  const auto e = fhrr_random(40, 1024);

  CHECK(fractional_power(e, 0.0) == fhrr_identity(1024));
  CHECK(fractional_power(e, 1.0) == e);

  const auto e5a = fhrr_bind(fractional_power(e, 2.0), fractional_power(e, 3.0));
  const auto e5b = fractional_power(e, 5.0);
  for (std::size_t i = 0; i < e.dim(); ++i) {
    CHECK(std::abs(canon_angle(e5a.angles[i] - e5b.angles[i])) < 1e-9);
  }
}

TEST_CASE("fhrr quasi-orthogonality over 1000 pairs") {
  double max_abs = 0.0, mean_abs = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto a = fhrr_random(hash_combine(3000, t), 1024);
    const auto b = fhrr_random(hash_combine(3100, t), 1024);
    const double s = std::abs(fhrr_sim(a, b));
    max_abs = std::max(max_abs, s);
    mean_abs += s;
  }
  CHECK(max_abs < 0.2);
  CHECK(mean_abs / 1000 < 0.06);
}

TEST_CASE("fhrr codebooks: construction and regeneration") {
  const auto disc = make_fhrr_codebook(FhrrCodebook::Kind::Discrete, "attr", 7, 6, 1024);
  const auto disc2 = make_fhrr_codebook(FhrrCodebook::Kind::Discrete, "attr", 7, 6, 1024);
  REQUIRE(disc.size() == 6);
  for (std::size_t v = 1; v <= 6; ++v) CHECK(disc.value(v) == disc2.value(v));

  const auto cont =
      make_fhrr_codebook(FhrrCodebook::Kind::Continuous, "attr", 7, 6, 1024);
  for (std::size_t v = 1; v <= 6; ++v) {
    const auto expect = fractional_power(cont.base, static_cast<double>(v));
    CHECK(cont.value(v) == expect);
  }
}
