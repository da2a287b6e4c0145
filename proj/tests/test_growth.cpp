#include <doctest.h>

#include <cmath>
#include <random>

#include "freegroup/errors.hpp"
#include "freegroup/glue.hpp"
#include "freegroup/growth.hpp"
#include "oracles.hpp"

using namespace freegroup;
using doctest::Approx;

namespace {

  Word w2(char const* s) {
    return parse_reduce(s, 2);
  }

  CoreGraph fold_words(std::initializer_list<char const*> ws, int d) {
    std::vector<Word> gens;
    for (auto const* w : ws) {
      gens.push_back(parse_reduce(w, d));
    }
    return fold(gens, d);
  }

  CoreGraph sample_core() {
    return fold_words({"a1 a2 a1^-1", "a1 a1 a1 a2 a2 a1^-1 a1^-1"}, 2);
  }

  CoreGraph bouquet(int d) {
    std::vector<Word> gens;
    for (int i = 1; i <= d; ++i) {
      gens.push_back(Word{Letter(i, 1)});
    }
    return fold(gens, d);
  }

  // <a1, a2^n a1 a2^-n>: two a1-loops joined by an a2-path of length n
  CoreGraph barbell(int n) {
    Word an = power(w2("a2"), n);
    return fold(std::vector<Word>{w2("a1"), conjugate(w2("a1"), an)}, 2);
  }

  std::vector<BigInt> big(std::initializer_list<int> xs) {
    return {xs.begin(), xs.end()};
  }

}  // namespace

TEST_CASE("cycle_counts") {
  CHECK(cycle_counts(fold_words({"a1"}, 2), 5) == big({1, 3, 5, 7, 9, 11}));
  CHECK(cycle_counts(fold_words({"a1 a2"}, 2), 5) == big({1, 1, 3, 3, 5, 5}));
  CHECK(cycle_counts(bouquet(2), 3) == big({1, 5, 17, 53}));
  CHECK(cycle_counts(CoreGraph(2), 4) == big({1, 1, 1, 1, 1}));
  auto f = cycle_counts(sample_core(), 12);
  for (std::size_t r = 0; r <= 12; ++r) {
    CHECK(f[r] == frozen::sample_counts[r]);
  }
  // 2 3^R - 1 for the whole of F_2, well past 64 bits
  auto big_counts = cycle_counts(bouquet(2), 100);
  BigInt three    = 1;
  for (int r = 0; r < 100; ++r) {
    three *= 3;
  }
  CHECK(big_counts[100] == 2 * three - 1);
  CHECK(log_of(three) == Approx(100 * std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("property: cycle counts match enumeration") {
  std::mt19937 rng(31);
  for (int t = 0; t < 40; ++t) {
    int  d = 2 + t % 2;
    auto g = oracle::random_core(rng, d, 8, 0);
    std::size_t const R = d == 2 ? 10 : 8;
    auto fast  = cycle_counts(g, R);
    auto naive = oracle::naive_counts(g, R);
    for (std::size_t r = 0; r <= R; ++r) {
      CHECK(fast[r] == naive[r]);
    }
  }
}

TEST_CASE("spectral exponent") {
  for (int d = 2; d <= 4; ++d) {
    CHECK(spectral_exponent(bouquet(d), 1e-12)
          == Approx(std::log(2.0 * d - 1)).epsilon(1e-10));
  }
  CHECK(spectral_exponent(bouquet(1), 1e-10) == 0.0);
  CHECK(spectral_exponent(fold_words({"a1 a2 a1^-1 a2"}, 2), 1e-10) == 0.0);
  CHECK(spectral_exponent(CoreGraph(3), 1e-10) == 0.0);
  CHECK(spectral_exponent(sample_core(), 1e-12)
        == Approx(frozen::sample_delta).epsilon(1e-10));
  for (int n = 1; n <= 5; ++n) {
    CHECK(spectral_exponent(barbell(n), 1e-12)
          == Approx(frozen::barbell_delta[static_cast<std::size_t>(n)])
                 .epsilon(1e-10));
  }
  // the path of length 4 is ln(1/x_5), not ln(1/x_4)
  CHECK(spectral_exponent(barbell(4), 1e-12)
        == Approx(frozen::kwon_park_delta[5]).epsilon(1e-10));
  auto glued = glue(sample_core(), sample_core(), w2("a1 a1 a1 a1"));
  CHECK(spectral_exponent(glued, 1e-12)
        == Approx(frozen::sample_a1_4_delta).epsilon(1e-10));
}

TEST_CASE("exponent_below brackets the exponent") {
  auto g = sample_core();
  CHECK(exponent_below(g, frozen::sample_delta + 1e-9));
  CHECK_FALSE(exponent_below(g, frozen::sample_delta - 1e-9));
  CHECK_FALSE(exponent_below(g, 0.0));
  CHECK(exponent_below(fold_words({"a1"}, 2), 1e-12));
}

TEST_CASE("hashimoto power iteration cross-check") {
  std::mt19937 rng(32);
  for (int t = 0; t < 20; ++t) {
    auto g  = oracle::random_core(rng, 2 + t % 2, 8, 2);
    auto pi = hashimoto_power_iteration(g, 1e-11);
    CHECK(pi.residual <= 1e-11);
    CHECK(std::log(pi.lambda)
          == Approx(spectral_exponent(g, 1e-12)).epsilon(1e-8));
  }
  CHECK_THROWS_AS((void)hashimoto_power_iteration(sample_core(), 1e-12, 3),
                  ConvergenceError);
}

TEST_CASE("critical_exponent") {
  auto e = critical_exponent(bouquet(2), 1e-10);
  CHECK(e.delta == Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(e.lambda == Approx(std::exp(e.delta)).epsilon(1e-15));
  CHECK(e.method_agreement < 1e-3);
  CHECK(e.counts.size() == 61);
  CHECK_FALSE(e.cyclic);

  auto c = critical_exponent(fold_words({"a1 a2 a1"}, 2), 1e-10);
  CHECK(c.cyclic);
  CHECK(c.delta == 0.0);
  CHECK(c.lambda == 1.0);

  auto k = critical_exponent(sample_core(), 1e-10, {40, true});
  REQUIRE(k.coornaert_k);
  CHECK(*k.coornaert_k >= 1.0);
}

TEST_CASE("property: growth estimates") {
  std::mt19937 rng(33);
  for (int t = 0; t < 25; ++t) {
    int  d  = 2 + t % 2;
    auto g  = oracle::random_core(rng, d, 8, 2);
    auto e  = critical_exponent(g, 1e-10, {60, false});
    auto e2 = critical_exponent(g, 1e-10, {240, false});
    CHECK(e.method_agreement <= 0.05);
    CHECK(e2.method_agreement <= e.method_agreement + 1e-9);
    CHECK(e.delta >= 0.0);
    CHECK(e.delta <= std::log(2.0 * d - 1) + 1e-9);
    CHECK(e.counts[0] == 1);
    for (std::size_t r = 1; r < e.counts.size(); ++r) {
      CHECK(e.counts[r] >= e.counts[r - 1]);
    }
  }
}

TEST_CASE("property: exponent is monotone under inclusion") {
  std::mt19937 rng(34);
  for (int t = 0; t < 60; ++t) {
    int  d     = 2 + t % 2;
    auto gens  = oracle::random_generators(rng, d, 3, 6);
    auto small = fold(gens, d);
    gens.push_back(oracle::random_word(rng, d, 1, 6));
    auto large = fold(gens, d);
    for (auto const& w : free_basis(small)) {
      REQUIRE(membership(w, large));
    }
    CHECK(spectral_exponent(small, 1e-10)
          <= spectral_exponent(large, 1e-10) + 1e-9);
  }
}

TEST_CASE("coornaert constant") {
  // c(R) = 2 3^R - 1, so the constant tends to 2
  CHECK(coornaert_constant(bouquet(2), 20) == Approx(2.0).epsilon(1e-6));
  double const k20 = coornaert_constant(sample_core(), 20);
  double const k30 = coornaert_constant(sample_core(), 30);
  CHECK(k20 >= 1.0);
  CHECK(std::abs(k30 - k20) / k20 < 0.05);
  CHECK_THROWS_AS((void)coornaert_constant(fold_words({"a1"}, 2), 20),
                  HypothesisError);
  CHECK_THROWS_AS((void)coornaert_constant(CoreGraph(2), 20), HypothesisError);

  // sandwich holds at every scale by construction
  auto counts = cycle_counts(sample_core(), 30);
  for (std::size_t r = 0; r <= 30; ++r) {
    double const e = std::exp(frozen::sample_delta * static_cast<double>(r));
    double const c = static_cast<double>(counts[r]);
    CHECK(c <= k30 * e * (1 + 1e-9));
    CHECK(c >= e / k30 * (1 - 1e-9));
  }
}

TEST_CASE("kwon_park") {
  auto one = kwon_park(1, 1e-15);
  CHECK(one.root == Approx(1.0 / 3).epsilon(1e-13));
  CHECK(one.delta == Approx(std::log(3.0)).epsilon(1e-12));
  auto two = kwon_park(2, 1e-15);
  CHECK(two.root == 0.5);
  CHECK(two.delta == Approx(std::log(2.0)).epsilon(1e-14));
  for (int n = 1; n <= 6; ++n) {
    auto r = kwon_park(n, 1e-14);
    CHECK(r.n == n);
    CHECK(r.root == Approx(frozen::kwon_park_root[static_cast<std::size_t>(n)])
                        .epsilon(1e-12));
    CHECK(r.delta
          == Approx(frozen::kwon_park_delta[static_cast<std::size_t>(n)])
                 .epsilon(1e-12));
    CHECK(std::abs(kwon_park_polynomial(n, r.root)) < 1e-12);
  }
  CHECK(kwon_park(12, 1e-14).root
        == Approx(frozen::kwon_park_root_12).epsilon(1e-12));
  CHECK(kwon_park(13, 1e-14).delta
        == Approx(frozen::kwon_park_delta_13).epsilon(1e-12));
  // the even case has the same root after clearing t + 1
  CHECK(kwon_park_polynomial(4, 0.3) * 1.3 == Approx(2 * std::pow(0.3, 4) + 0.3 - 1));
  CHECK_THROWS_AS((void)kwon_park(0, 1e-10), Error);
}

TEST_CASE("property: kwon_park bounds") {
  for (int n = 2; n <= 40; ++n) {
    auto r = kwon_park(n, 1e-14);
    CHECK(std::exp(-1.0 / std::sqrt(n)) <= r.root);
    CHECK(r.root <= std::exp(-1.0 / n));
  }
  // the lower bound fails at n = 1
  CHECK(kwon_park(1, 1e-14).root < std::exp(-1.0));
}

TEST_CASE("cr_estimate_rhs") {
  SUBCASE("only i = 0 survives below 2J") {
    auto base = cycle_counts(sample_core(), 12);
    for (std::size_t R = 0; R < 6; ++R) {
      CHECK(cr_estimate_rhs(base, 5, 3, R) == base[R]);
    }
  }
  SUBCASE("trivial base, |g| = 2J") {
    std::vector<BigInt> ones(40, 1);
    auto binom = [](std::size_t n, std::size_t k) {
      BigInt b = 1;
      for (std::size_t i = 1; i <= k; ++i) {
        b = b * (n - k + i) / i;
      }
      return b;
    };
    for (std::size_t J = 1; J <= 3; ++J) {
      for (std::size_t R = 0; R <= 20; ++R) {
        BigInt want = 0;
        for (std::size_t i = 0; i <= R / (2 * J); ++i) {
          want += binom(R + 2 * i, 2 * i);
        }
        CHECK(cr_estimate_rhs(ones, 2 * J, J, R) == want);
      }
    }
  }
  SUBCASE("sample core along a1^4") {
    auto g     = sample_core();
    auto glued = glue(g, g, w2("a1 a1 a1 a1"));
    auto base  = cycle_counts(g, 40);
    CHECK(cr_estimate_rhs(base, 4, 1, 8) >= cycle_counts(glued, 8)[8]);
    CHECK(cr_estimate_required_length(4, 1, 8) == 8 + 2 * 4 * 2 + 1);
  }
  SUBCASE("errors") {
    std::vector<BigInt> few(3, 1);
    CHECK_THROWS_AS((void)cr_estimate_rhs(few, 10, 2, 8), Error);
    CHECK_THROWS_AS((void)cr_estimate_rhs(few, 2, 0, 1), Error);
  }
}

TEST_CASE("property: counting bound") {
  std::mt19937 rng(35);
  int          cases = 0;
  while (cases < 20) {
    int  d = 2 + cases % 2;
    auto g = oracle::random_core(rng, d, 8, 1);
    auto w = oracle::random_word(rng, d, 1, 8);
    auto split = connector_decompose(g, g, w);
    if (!split) {
      continue;
    }
    ++cases;
    auto glued = glue(g, g, *split);
    std::size_t const need =
        cr_estimate_required_length(w.size(), split->J, 12);
    auto base   = cycle_counts(g, need);
    auto counts = cycle_counts(glued, 12);
    for (std::size_t R = 0; R <= 12; ++R) {
      CHECK(counts[R] <= cr_estimate_rhs(base, w.size(), split->J, R));
    }
  }
}
