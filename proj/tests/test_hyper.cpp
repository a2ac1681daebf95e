#include <doctest.h>

#include <random>

#include "isoslope/error.hpp"
#include "isoslope/hyper.hpp"
#include "oracles.hpp"

using namespace isoslope;
using namespace isoslope::hyper;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::MalformedInput;
}

std::vector<Rational> rats(std::initializer_list<std::pair<long, long>> xs) {
  std::vector<Rational> out;
  for (auto [a, b] : xs) out.push_back(make_rational(a, b));
  return out;
}

}  // namespace

TEST_CASE("datum validation, ordering and duality") {
  CHECK(kind_of([] { HypergeometricDatum(4, {1}); }) == ErrorKind::InvalidDatum);
  CHECK(kind_of([] { HypergeometricDatum(2, {1}); }) == ErrorKind::InvalidDatum);
  CHECK(kind_of([] { HypergeometricDatum(7, {}); }) == ErrorKind::InvalidDatum);
  CHECK(kind_of([] { HypergeometricDatum(7, {0, 1}); }) == ErrorKind::InvalidDatum);
  CHECK(kind_of([] { HypergeometricDatum(7, {6}); }) == ErrorKind::InvalidDatum);

  const HypergeometricDatum d(31, {24, 6, 18, 12});
  CHECK(d.describe() == "p=31 c=6,12,18,24");
  CHECK(d.is_self_dual());
  CHECK(dual_datum(d) == d);
  const HypergeometricDatum e(7, {1, 1, 2});
  CHECK_FALSE(e.is_self_dual());
  CHECK(dual_datum(e) == HypergeometricDatum(7, {4, 5, 5}));
  CHECK(dual_datum(dual_datum(e)) == e);
}

TEST_CASE("strategy names") {
  for (auto s : {Strategy::Auto, Strategy::Full, Strategy::DetCompletion, Strategy::SelfDual, Strategy::DualPair}) {
    CHECK(parse_strategy(to_string(s)) == s);
  }
  CHECK(parse_strategy("det") == Strategy::DetCompletion);
  CHECK_THROWS_AS(parse_strategy("fastest"), Error);
}

TEST_CASE("binomials mod p by Lucas") {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {3u, 5u, 7u, 13u, 31u}) {
    for (int t = 0; t < 300; ++t) {
      const std::uint64_t n = rng() % 5000;
      const std::uint64_t k = rng() % (n + 3);
      CHECK(binomial_mod_p(n, k, p) == oracle::binomial_mod(n, k, p));
    }
  }
}

TEST_CASE("u_c coefficients") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t p = std::vector<std::uint32_t>{5, 7, 11, 13, 31}[rng() % 5];
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<int> c(n);
    for (auto& ci : c) ci = 1 + static_cast<int>(rng() % (p - 2));
    const HypergeometricDatum d(p, c);
    const auto u = u_poly(d);
    REQUIRE(u.p == p);
    REQUIRE(!u.coeffs.empty());
    CHECK(u.coeffs[0] == 1);
    for (std::size_t r = 0; r < p; ++r) {
      long long prod = (n * r) % 2 ? p - 1 : 1;
      for (int ci : c) prod = prod * oracle::binomial(ci, r) % p;
      const std::uint32_t got = r < u.coeffs.size() ? u.coeffs[r] : 0;
      CHECK(got == static_cast<std::uint32_t>(prod));
    }
  }
  // Quintic at p = 31: u vanishes at no more than its degree many points.
  const HypergeometricDatum q(31, {6, 12, 18, 24});
  const auto f = arith::field_create(31, 1);
  int roots = 0;
  for (arith::Elem x = 2; x < 31; ++x) roots += evaluate(*f, u_poly(q), x) == 0;
  CHECK(roots <= 6);
}

TEST_CASE("u factorization over extensions") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int c1 = 1; c1 <= static_cast<int>(p) - 2; ++c1) {
      for (int m = 1; m <= 3; ++m) CHECK(u_factorization_check(HypergeometricDatum(p, {c1, 1}), m));
    }
  }
  CHECK_THROWS_AS(u_factorization_check(HypergeometricDatum(5, {1}), 0), Error);
}

TEST_CASE("points") {
  const auto f2 = arith::field_create(5, 2);
  CHECK_THROWS_AS(PointSpec(f2, 0), Error);
  CHECK_THROWS_AS(PointSpec(f2, 1), Error);
  CHECK_THROWS_AS(PointSpec(f2, 3), Error);  // lies in F_5
  const auto pt = PointSpec::canonical(f2, 7);
  CHECK(pt.x() == f2->canonical(7));
  CHECK(pt.degree() == 2);
  const HypergeometricDatum d(7, {1});
  CHECK_THROWS_AS(u_norm_eval(d, pt), Error);
}

TEST_CASE("traces over F_p match direct character sums") {
  for (std::uint32_t p : {5u, 7u, 11u}) {
    const auto f = arith::field_create(p, 1);
    for (const auto& c : std::vector<std::vector<int>>{{1}, {1, 2}, {2, 3}, {1, 1, 3}, {1, 2, 3}}) {
      if (c.back() > static_cast<int>(p) - 2) continue;
      const HypergeometricDatum d(p, c);
      const int n = d.rank();
      for (arith::Elem x = 2; x < p; ++x) {
        const PointSpec pt(f, x);
        const auto t = frobenius_trace(d, pt, 1, 4);
        mpz_class expect = oracle::prime_character_sum(p, std::vector<int>(d.c().begin(), d.c().end()), x, 4);
        if (n % 2 == 0) expect = oracle::mod(-expect, oracle::ipow(p, 4));
        CHECK(t.value() == expect);
        // Mod p the trace is the norm of u_c(x).
        CHECK(oracle::mod(t.value(), p) == u_norm_eval(d, pt));
      }
    }
  }
}

TEST_CASE("convolution and enumeration engines agree") {
  Workspace ws(2);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {5, 2}, {3, 3}, {7, 1}}) {
    const auto f = arith::field_create(p, m);
    const HypergeometricDatum d(p, {1, static_cast<int>(p) - 2});
    for (arith::Elem x : std::vector<arith::Elem>{p + 1, f->generator(), static_cast<arith::Elem>(f->order() - 1)}) {
      if (x >= f->order() || x == 1 || f->degree_of(x) != m) continue;
      const PointSpec pt(f, x);
      for (int j = 1; j <= 2; ++j) {
        const auto a = frobenius_trace(d, pt, j, 5, TraceEngine::Convolution, &ws);
        const auto b = frobenius_trace(d, pt, j, 5, TraceEngine::Enumeration);
        const auto c = frobenius_trace(d, pt, j, 5, TraceEngine::Convolution);
        CHECK(a == b);
        CHECK(a == c);
      }
    }
  }
}

TEST_CASE("precision and strategy bookkeeping") {
  CHECK(traces_needed(Strategy::Full, 4) == 4);
  CHECK(traces_needed(Strategy::DetCompletion, 4) == 3);
  CHECK(traces_needed(Strategy::SelfDual, 5) == 3);
  CHECK(traces_needed(Strategy::DualPair, 4) == 2);
  CHECK(default_precision(Strategy::SelfDual, 4, 1) == 8);
  CHECK(default_precision(Strategy::Full, 4, 2) == 26);
  const HypergeometricDatum sd(7, {2, 4});
  const HypergeometricDatum nsd(7, {1, 2});
  CHECK(resolve_strategy(Strategy::Auto, sd) == Strategy::SelfDual);
  CHECK(resolve_strategy(Strategy::Auto, nsd) == Strategy::DualPair);
  CHECK(resolve_strategy(Strategy::Full, sd) == Strategy::Full);
}

TEST_CASE("slope errors") {
  const auto f5 = arith::field_create(5, 1);
  const auto f7 = arith::field_create(7, 1);
  const HypergeometricDatum big(5, {1, 1, 2, 2, 3});
  CHECK(kind_of([&] { char_poly_valuations(big, PointSpec(f5, 2), Strategy::Full, 10); }) ==
        ErrorKind::RankTooLargeForP);
  const HypergeometricDatum nsd(7, {1, 2});
  CHECK(kind_of([&] { char_poly_valuations(nsd, PointSpec(f7, 3), Strategy::SelfDual, 10); }) ==
        ErrorKind::StrategyUnavailable);
  CHECK(kind_of([&] { char_poly_valuations(nsd, PointSpec(f5, 3), Strategy::Full, 10); }) ==
        ErrorKind::FieldMismatch);

  // Precision 1 cannot see any valuation beyond 0.
  const HypergeometricDatum q(31, {6, 12, 18, 24});
  const auto f31 = arith::field_create(31, 1);
  SlopeOptions opt;
  opt.precision = 1;
  try {
    slopes_at_point(q, PointSpec(f31, 4), opt);
    FAIL("expected PrecisionInsufficient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrecisionInsufficient);
    REQUIRE(e.suggested_precision());
    CHECK(*e.suggested_precision() == 2);
  }
}

TEST_CASE("quintic slopes at p = 31") {
  const HypergeometricDatum q(31, {6, 12, 18, 24});
  const auto f = arith::field_create(31, 1);
  Workspace ws;
  const auto at = [&](arith::Elem x, Strategy s = Strategy::Auto) {
    SlopeOptions opt;
    opt.strategy = s;
    return slopes_at_point(q, PointSpec(f, x), opt, &ws);
  };
  const auto r4 = at(4);
  CHECK(r4.slopes.values == rats({{5, 2}, {5, 2}, {1, 2}, {1, 2}}));
  CHECK(r4.gaps.max_gap == 2);
  CHECK(r4.gaps.violates_small_gaps);
  CHECK(r4.strategy == Strategy::SelfDual);
  CHECK(r4.precision == 8);
  CHECK(r4.valuations.size() == 5);
  CHECK(at(17).slopes == r4.slopes);
  CHECK(at(2).slopes.values == rats({{3, 1}, {2, 1}, {1, 1}, {0, 1}}));
  CHECK_FALSE(at(2).gaps.violates_small_gaps);
  // x = 5 has u_c(x) != 0 yet a middle slope pair of 3/2.
  const auto r5 = at(5);
  CHECK_FALSE(r5.u_c_zero);
  CHECK(r5.slopes.values == rats({{3, 1}, {3, 2}, {3, 2}, {0, 1}}));
}

TEST_CASE("fast path matches the full computation") {
  Workspace ws;
  for (std::uint32_t p : {5u, 7u}) {
    const auto f = arith::field_create(p, 1);
    for (const auto& c : std::vector<std::vector<int>>{{1, 2}, {1, 2, 3}, {2, 2, 3}}) {
      const HypergeometricDatum d(p, c);
      for (arith::Elem x = 2; x < p; ++x) {
        const PointSpec pt(f, x);
        const auto quick = slopes_at_point(d, pt, {}, &ws);
        SlopeOptions slow_opt;
        slow_opt.allow_fast_path = false;
        const auto slow = slopes_at_point(d, pt, slow_opt, &ws);
        CHECK_FALSE(slow.fast_path);
        CHECK(quick.slopes == slow.slopes);
        CHECK(quick.fast_path == (!quick.u_c_zero && !quick.u_cdual_zero));
        if (quick.fast_path) {
          CHECK(quick.precision == 0);
          CHECK(quick.valuations.empty());
        }
      }
    }
  }
}

TEST_CASE("rank one") {
  // E_c of rank 1 over F_p: a single slope equal to 0 or v of a unit-free sum.
  const HypergeometricDatum d(7, {3});
  const auto f = arith::field_create(7, 1);
  for (arith::Elem x = 2; x < 7; ++x) {
    const auto r = slopes_at_point(d, PointSpec(f, x));
    REQUIRE(r.slopes.values.size() == 1);
    CHECK(r.slopes.values[0] == 0);
    CHECK(r.gaps.gaps.empty());
    CHECK(r.gaps.max_gap == 0);
  }
}
