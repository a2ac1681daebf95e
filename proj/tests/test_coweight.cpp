#include <doctest.h>

#include <random>

#include "isoslope/coweight.hpp"
#include "isoslope/error.hpp"
#include "isoslope/hyper.hpp"

using namespace isoslope;
using namespace isoslope::coweight;

namespace {

RationalCoweight cw(std::initializer_list<std::pair<long, long>> xs) {
  RationalCoweight out;
  for (auto [a, b] : xs) out.coords.push_back(make_rational(a, b));
  return out;
}

RationalCoweight ints(std::initializer_list<long> xs) {
  RationalCoweight out;
  for (long x : xs) out.coords.push_back(make_rational(x));
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::MalformedInput;
}

// Random descending coweight for GL(n) or SL(n) with small denominators.
RationalCoweight random_dominant(std::mt19937_64& rng, int n, bool traceless) {
  RationalCoweight l;
  Rational x = make_rational(static_cast<long>(rng() % 7), 1);
  for (int i = 0; i < n; ++i) {
    l.coords.push_back(x);
    x -= make_rational(static_cast<long>(rng() % 7), 1 + rng() % 3);
  }
  if (traceless) {
    Rational mean = 0;
    for (const auto& v : l.coords) mean += v;
    mean /= n;
    for (auto& v : l.coords) v -= mean;
  }
  return l;
}

}  // namespace

TEST_CASE("root data") {
  const auto g = RootDatum::gl(3);
  CHECK(g.describe() == "GL3");
  CHECK(g.rank() == 2);
  CHECK(g.dimension() == 3);
  CHECK(RootDatum::sl(4).describe() == "SL4");
  const auto c = RootDatum::from_cartan({{2, -1}, {-1, 2}});
  CHECK(c.describe() == "cartan(2)");
  // Pairing consistency <alpha_i, alphacheck_j> = A_ji.
  for (const auto& d : {RootDatum::gl(4), RootDatum::sl(3), RootDatum::from_cartan({{2, -2}, {-1, 2}})}) {
    for (int i = 0; i < d.rank(); ++i) {
      for (int j = 0; j < d.rank(); ++j) {
        CHECK(pairing(d.simple_roots()[i], {d.simple_coroots()[j]}) == d.cartan()[j][i]);
      }
    }
  }
  CHECK_THROWS_AS(RootDatum::from_cartan({{2, 1}, {-1, 2}}), Error);
  CHECK_THROWS_AS(RootDatum::from_cartan({{2, -1}, {0, 2}}), Error);
  CHECK_THROWS_AS(RootDatum::from_cartan({{1}}), Error);
  CHECK_THROWS_AS(RootDatum::from_cartan({{2, -1}}), Error);
}

TEST_CASE("membership") {
  CHECK(kind_of([] { require_member(ints({1, 2}), RootDatum::gl(3)); }) == ErrorKind::DatumMismatch);
  CHECK(kind_of([] { require_member(ints({1, 0}), RootDatum::sl(2)); }) == ErrorKind::DatumMismatch);
  require_member(ints({1, -1}), RootDatum::sl(2));
}

TEST_CASE("dominance order") {
  const auto g3 = RootDatum::gl(3);
  CHECK(dominance_leq(ints({1, 1, 1}), ints({2, 1, 0}), g3));
  CHECK_FALSE(dominance_leq(ints({2, 1, 0}), ints({1, 1, 1}), g3));
  CHECK(coroot_coordinates(ints({1, 1, 1}), ints({2, 1, 0}), g3) == RationalVector{1, 1});
  CHECK(kind_of([] { dominance_leq(ints({1, 0}), ints({0, 0}), RootDatum::gl(2)); }) ==
        ErrorKind::NotInCorootSpan);

  std::mt19937_64 rng(5);
  const auto sl4 = RootDatum::sl(4);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_dominant(rng, 4, true);
    const auto b = random_dominant(rng, 4, true);
    const auto c = random_dominant(rng, 4, true);
    CHECK(dominance_leq(a, a, sl4));
    if (dominance_leq(a, b, sl4) && dominance_leq(b, a, sl4)) CHECK(a == b);
    if (dominance_leq(a, b, sl4) && dominance_leq(b, c, sl4)) CHECK(dominance_leq(a, c, sl4));
    // For SL(n) the order is the partial-sum order.
    bool partial = true;
    Rational sa = 0, sb = 0;
    for (int i = 0; i < 4; ++i) {
      sa += a.coords[i];
      sb += b.coords[i];
      partial = partial && sa <= sb;
    }
    CHECK(dominance_leq(a, b, sl4) == partial);
  }
}

TEST_CASE("small gaps") {
  const auto r = small_gaps(ints({2, 1, 0}), RootDatum::gl(3));
  CHECK(r.holds);
  CHECK(r.i_le1 == std::vector<int>{1, 2});
  CHECK(r.levi_is_whole_group());
  const auto q = small_gaps(cw({{5, 2}, {5, 2}, {1, 2}, {1, 2}}), RootDatum::gl(4));
  CHECK_FALSE(q.holds);
  CHECK(q.violating == std::vector<int>{2});
  CHECK(q.i_le1 == std::vector<int>{1, 3});
  CHECK_FALSE(q.levi_is_whole_group());
  CHECK(small_gaps(ints({3, 3, 3, 3, 3}), RootDatum::gl(5)).holds);
  CHECK(kind_of([] { small_gaps(ints({0, 1}), RootDatum::gl(2)); }) == ErrorKind::NotDominant);

  // GL(n): same predicate as the gap profile of the slope vector.
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const auto l = random_dominant(rng, n, false);
    CHECK(small_gaps(l, RootDatum::gl(n)).holds == !hyper::gap_profile({l.coords}).violates_small_gaps);
  }
}

TEST_CASE("rho check") {
  CHECK(rho_check(RootDatum::sl(3)) == ints({1, 0, -1}));
  CHECK(rho_check(RootDatum::sl(2)) == cw({{1, 2}, {-1, 2}}));
  CHECK(kind_of([] { rho_check(RootDatum::gl(3)); }) == ErrorKind::UnsupportedDatum);
  // B2 in the coroot basis: positive coroots a, b, a+b, a+2b or 2a+b.
  CHECK(positive_coroots(RootDatum::from_cartan({{2, -2}, {-1, 2}})).size() == 4);
  CHECK(positive_coroots(RootDatum::from_cartan({{2, -3}, {-1, 2}})).size() == 6);
  CHECK(positive_coroots(RootDatum::from_cartan({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})).size() == 6);
  CHECK(kind_of([] { positive_coroots(RootDatum::from_cartan({{2, -3}, {-3, 2}})); }) ==
        ErrorKind::UnsupportedDatum);
  // A2 from its Cartan matrix: rho-check is a1 + a2 in the coroot basis.
  CHECK(rho_check(RootDatum::from_cartan({{2, -1}, {-1, 2}})) == ints({1, 1}));
}

TEST_CASE("Lafforgue bound") {
  CHECK(lafforgue_bound_check({{2, 1, 0}}, 1));
  CHECK(lafforgue_bound_check({cw({{5, 2}, {5, 2}, {1, 2}, {1, 2}}).coords}, make_rational(3, 2)));
  CHECK_FALSE(lafforgue_bound_check({{3, 0, 0}}, 1));
}

TEST_CASE("Hecke Newton functions") {
  const auto n0 = hecke_newton({0, 0, 0});
  CHECK(n0.values == RationalVector{0, -1, -1, 0});
  CHECK(newton_to_slopes(n0, 0).values == RationalVector{1, 0, -1});
  CHECK(hecke_newton({1, 1, 0}).values == RationalVector{0, 0, 0, 0});
  CHECK(newton_to_slopes({{0, 0, 0, 0}}, 0).values == RationalVector{0, 0, 0});
  CHECK(kind_of([] { newton_to_slopes({{1, 0}}, 0); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([] { newton_to_slopes({{0, 1}}, 0); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([] { newton_to_slopes({{0, 1, 0}}, 0); }) == ErrorKind::NonConvexInput);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto l = random_dominant(rng, n, false);
    const polygon::SlopeVector s{l.coords};
    const auto v = slopes_to_hecke_valuations(s);
    const auto newt = hecke_newton(v);
    CHECK(newton_to_slopes(newt, v.back()) == s);
  }
  // Integral valuations with v(t_n) = 0 keep Newt(r) >= r(r-n)/2.
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng() % 6);
    RationalVector v(n);
    for (int r = 0; r + 1 < n; ++r) v[r] = static_cast<long>(rng() % 4);
    v[n - 1] = 0;
    const auto newt = hecke_newton(v);
    for (int r = 0; r <= n; ++r) CHECK(newt.values[r] >= make_rational(r * (r - n), 2));
  }
}

TEST_CASE("PGL(3) regions") {
  const Rational third = make_rational(1, 3);
  CHECK(pgl3_region(third, third) == Pgl3Region::Both);
  CHECK(pgl3_region(0, 0) == Pgl3Region::B);
  CHECK(pgl3_region(2, make_rational(1, 10)) == Pgl3Region::Outside);
  CHECK(pgl3_region(1, 3) == Pgl3Region::A);
  CHECK(pgl3_region(make_rational(1, 5), make_rational(1, 5)) == Pgl3Region::B);
  CHECK(pgl3_region(make_rational(1, 5), make_rational(2, 5)) == Pgl3Region::B);
  CHECK(pgl3_region(make_rational(1, 5), make_rational(2, 5) + make_rational(1, 100)) == Pgl3Region::Outside);
  CHECK(to_string(Pgl3Region::Both) == "A&B");
  CHECK(to_string(Pgl3Region::Outside) == "outside");
}

TEST_CASE("cohomological slope interval") {
  CHECK(cohomology_slope_interval(0, 0, 3, 3) == Interval{0, 3});
  CHECK(cohomology_slope_interval(make_rational(1, 2), 2, 0, 4) == Interval{make_rational(1, 2), 2});
  CHECK(cohomology_slope_interval(0, 1, 6, 3) == Interval{3, 4});
  CHECK_THROWS_AS(cohomology_slope_interval(1, 0, 0, 1), Error);
  CHECK_THROWS_AS(cohomology_slope_interval(0, 0, 3, 1), Error);
  CHECK_THROWS_AS(cohomology_slope_interval(0, 0, 0, -1), Error);
}
