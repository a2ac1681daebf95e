#pragma once

// Root data, rational coweights and the slope statements phrased in them:
// dominance, small gaps, rho-check, the r(n-r)/2 bound, Hecke Newton
// functions, the PGL(3) slope region and cohomological slope intervals.

#include <string>
#include <vector>

#include "isoslope/polygon.hpp"
#include "isoslope/rational.hpp"

namespace isoslope::coweight {

using IntMatrix = std::vector<std::vector<int>>;
using RationalVector = std::vector<Rational>;

enum class DatumType { GL, SL, FromCartan };

// Simple roots and coroots live in one coordinate space with the dot
// product as pairing, so that <alpha_i, alphacheck_j> = A_{ji}.
//   GL(n), SL(n): n coordinates, alpha_i = alphacheck_i = e_i - e_{i+1}.
//   FromCartan:   coordinates in the simple coroot basis, alphacheck_j = e_j
//                 and alpha_i = (A_{1i}, ..., A_{ri}).
class RootDatum {
 public:
  static RootDatum gl(int n);
  static RootDatum sl(int n);
  // Throws MalformedInput unless A is a generalized Cartan matrix.
  static RootDatum from_cartan(IntMatrix cartan);

  DatumType type() const noexcept { return type_; }
  int rank() const noexcept { return static_cast<int>(cartan_.size()); }  // simple roots
  int dimension() const noexcept { return dimension_; }                     // coordinates
  const IntMatrix& cartan() const noexcept { return cartan_; }
  const std::vector<RationalVector>& simple_roots() const noexcept { return roots_; }
  const std::vector<RationalVector>& simple_coroots() const noexcept { return coroots_; }
  std::string describe() const;  // "GL4", "SL3", "cartan(2)"

  bool operator==(const RootDatum&) const = default;

 private:
  DatumType type_ = DatumType::GL;
  int dimension_ = 0;
  IntMatrix cartan_;
  std::vector<RationalVector> roots_;
  std::vector<RationalVector> coroots_;
};

struct RationalCoweight {
  RationalVector coords;
  bool operator==(const RationalCoweight&) const = default;
};

// Throws DatumMismatch when the coordinate count is wrong, or when an SL(n)
// coweight does not sum to zero.
void require_member(const RationalCoweight& lambda, const RootDatum& datum);

Rational pairing(const RationalVector& root, const RationalCoweight& lambda);
std::vector<Rational> simple_pairings(const RationalCoweight& lambda, const RootDatum& datum);
bool is_dominant(const RationalCoweight& lambda, const RootDatum& datum);

// Coefficients k with lambda2 - lambda1 = sum k_j alphacheck_j.
// Throws NotInCorootSpan when no such k exists.
RationalVector coroot_coordinates(const RationalCoweight& lambda1, const RationalCoweight& lambda2,
                                  const RootDatum& datum);
bool dominance_leq(const RationalCoweight& lambda1, const RationalCoweight& lambda2,
                   const RootDatum& datum);

struct SmallGapsResult {
  bool holds = true;
  std::vector<int> violating;  // 1-based simple root indices with pairing > 1
  std::vector<int> i_le1;      // 1-based indices with pairing <= 1
  bool levi_is_whole_group() const noexcept { return violating.empty(); }
};

// Throws NotDominant.
SmallGapsResult small_gaps(const RationalCoweight& lambda, const RootDatum& datum);

// Positive coroots in the simple coroot basis, generated by simple
// reflections. Throws UnsupportedDatum for infinite root systems.
std::vector<std::vector<int>> positive_coroots(const RootDatum& datum);

// Half the sum of the positive coroots. GL(n) is not semisimple: UnsupportedDatum.
RationalCoweight rho_check(const RootDatum& datum);

// sum_{i<=r} a_i - r A <= r(n-r)/2 for r = 1..n-1.
bool lafforgue_bound_check(const polygon::SlopeVector& slopes, const Rational& mean);

struct NewtonFunction {
  std::vector<Rational> values;  // Newt(0..n)
  bool operator==(const NewtonFunction&) const = default;
};

// Biggest convex function through (0,0) below (r, v_r + r(r-n)/2), r = 1..n.
NewtonFunction hecke_newton(const std::vector<Rational>& t_valuations);

// a_k = Newt(n-k+1) - Newt(n-k). Throws MalformedInput unless Newt(0) = 0 and
// Newt(n) = v_tn, NonConvexInput if the result is not descending.
polygon::SlopeVector newton_to_slopes(const NewtonFunction& newt, const Rational& v_tn);

// v_r with hecke_newton(v) reproducing the given slopes; inverse of the above.
std::vector<Rational> slopes_to_hecke_valuations(const polygon::SlopeVector& slopes);

enum class Pgl3Region { A, B, Both, Outside };
std::string to_string(Pgl3Region region);  // "A", "B", "A&B", "outside"

// A: y1 >= 1/3 and y2 >= 1/3.  B: 0 <= y1/2 <= y2 <= 2 y1.
Pgl3Region pgl3_region(const Rational& y1, const Rational& y2);

struct Interval {
  Rational lo;
  Rational hi;
  bool operator==(const Interval&) const = default;
};

// [r + max(0, i-n), s + min(i, n)]. Throws MalformedInput unless r <= s,
// n >= 0 and 0 <= i <= 2n.
Interval cohomology_slope_interval(const Rational& r, const Rational& s, int i, int n);

}  // namespace isoslope::coweight
