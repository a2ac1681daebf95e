#include "isoslope/polygon.hpp"

#include <algorithm>
#include <string>

#include "isoslope/error.hpp"

namespace isoslope::polygon {

namespace {

// Monotone-chain lower hull; collinear points are dropped so every kept
// vertex is a strict corner.
std::vector<Vertex> lower_chain(std::vector<Vertex> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vertex& a, const Vertex& b) { return a.index < b.index; });
  std::vector<Vertex> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // Drop b unless a -> b -> pt turns strictly left (counter-clockwise).
      const Rational cross = Rational(b.index - a.index) * (pt.value - a.value) -
                             (b.value - a.value) * Rational(pt.index - a.index);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  return hull;
}

}  // namespace

Rational NewtonPolygon::value_at(int r) const {
  if (vertices.empty() || r < vertices.front().index || r > vertices.back().index) {
    throw Error(ErrorKind::MalformedInput, "abscissa " + std::to_string(r) + " outside the polygon");
  }
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
    const auto& a = vertices[k];
    const auto& b = vertices[k + 1];
    if (r <= b.index) {
      return a.value + (b.value - a.value) * make_rational(r - a.index, b.index - a.index);
    }
  }
  return vertices.back().value;
}

NewtonPolygon lower_hull(std::span<const HullPoint> points) {
  if (points.empty()) throw Error(ErrorKind::MalformedInput, "no points");
  int n = 0;
  for (const auto& pt : points) n = std::max(n, pt.index);
  std::vector<const HullPoint*> by_index(n + 1, nullptr);
  for (const auto& pt : points) {
    if (pt.index < 0) throw Error(ErrorKind::MalformedInput, "negative index");
    if (by_index[pt.index] != nullptr) {
      throw Error(ErrorKind::MalformedInput, "duplicate index " + std::to_string(pt.index));
    }
    by_index[pt.index] = &pt;
  }
  for (int r = 0; r <= n; ++r) {
    if (by_index[r] == nullptr) {
      throw Error(ErrorKind::MalformedInput, "missing index " + std::to_string(r));
    }
  }
  if (!by_index[0]->val.is_exact() || by_index[0]->val.value != 0) {
    throw Error(ErrorKind::MalformedInput, "index 0 must be Exact(0)");
  }
  if (!by_index[n]->val.is_exact()) {
    throw Error(ErrorKind::MalformedInput, "last index must be Exact");
  }

  std::vector<Vertex> exact;
  for (const auto& pt : points) {
    if (pt.val.is_exact()) exact.push_back({pt.index, pt.val.value});
  }
  NewtonPolygon poly;
  poly.vertices = lower_chain(std::move(exact));

  for (const auto& pt : points) {
    if (pt.val.is_exact()) continue;
    const Rational h = poly.value_at(pt.index);
    if (pt.val.value < h) {
      throw Error(ErrorKind::PrecisionInsufficient,
                  "censored coefficient at index " + std::to_string(pt.index) + " (>= " +
                      to_string(pt.val.value) + ") cannot be certified against hull value " +
                      to_string(h));
    }
  }

  for (std::size_t k = 0; k + 1 < poly.vertices.size(); ++k) {
    const auto& a = poly.vertices[k];
    const auto& b = poly.vertices[k + 1];
    const Rational s = (b.value - a.value) / Rational(b.index - a.index);
    for (int i = a.index; i < b.index; ++i) poly.slopes.push_back(s);
  }
  return poly;
}

SlopeVector slopes_descending(const NewtonPolygon& polygon, int degree_scale) {
  if (degree_scale < 1) throw Error(ErrorKind::MalformedInput, "degree scale must be positive");
  SlopeVector out;
  out.values.reserve(polygon.slopes.size());
  for (auto it = polygon.slopes.rbegin(); it != polygon.slopes.rend(); ++it) {
    out.values.push_back(*it / Rational(degree_scale));
  }
  return out;
}

std::vector<Rational> biggest_convex_minorant(std::span<const Vertex> ceilings) {
  bool has_origin = false;
  int n = 0;
  for (const auto& c : ceilings) {
    if (c.index < 0) throw Error(ErrorKind::MalformedInput, "negative index");
    if (c.index == 0) {
      if (c.value != 0) throw Error(ErrorKind::MalformedInput, "value at 0 must be 0");
      has_origin = true;
    }
    n = std::max(n, c.index);
  }
  if (!has_origin) throw Error(ErrorKind::MalformedInput, "ceiling list must contain (0, 0)");
  // Several ceilings at one index: only the lowest binds.
  std::vector<Vertex> pts;
  for (const auto& c : ceilings) {
    auto it = std::find_if(pts.begin(), pts.end(), [&](const Vertex& v) { return v.index == c.index; });
    if (it == pts.end()) {
      pts.push_back(c);
    } else if (c.value < it->value) {
      it->value = c.value;
    }
  }
  NewtonPolygon poly;
  poly.vertices = lower_chain(std::move(pts));
  std::vector<Rational> out;
  out.reserve(n + 1);
  for (int r = 0; r <= n; ++r) out.push_back(poly.value_at(r));
  return out;
}

}  // namespace isoslope::polygon
