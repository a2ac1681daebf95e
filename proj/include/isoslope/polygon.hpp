#pragma once

// Newton polygons over exact rationals.

#include <span>
#include <utility>
#include <vector>

#include "isoslope/padic.hpp"
#include "isoslope/rational.hpp"

namespace isoslope::polygon {

struct HullPoint {
  int index = 0;
  Valuation val;
};

struct Vertex {
  int index = 0;
  Rational value;
  bool operator==(const Vertex&) const = default;
};

struct NewtonPolygon {
  std::vector<Vertex> vertices;  // strict corners, increasing index
  std::vector<Rational> slopes;  // ascending, one entry per unit of length

  int length() const noexcept { return vertices.empty() ? 0 : vertices.back().index; }
  // Piecewise-linear value at integer abscissa r in [0, length()].
  Rational value_at(int r) const;
};

struct SlopeVector {
  std::vector<Rational> values;  // descending
  bool operator==(const SlopeVector&) const = default;
};

// Lower convex hull of the Exact points; AtLeast points only certify.
// Every index 0..n must be present exactly once, with index 0 Exact(0) and
// index n Exact. Throws PrecisionInsufficient when an AtLeast bound lies
// strictly below the hull, MalformedInput on shape violations.
NewtonPolygon lower_hull(std::span<const HullPoint> points);

// Ascending slopes divided by degree_scale, reversed.
SlopeVector slopes_descending(const NewtonPolygon& polygon, int degree_scale);

// Largest convex function on {0..n} with value 0 at 0 and below the given
// ceilings. The ceiling list must contain (0, 0); other indices may be absent.
std::vector<Rational> biggest_convex_minorant(std::span<const Vertex> ceilings);

}  // namespace isoslope::polygon
