#include "isoslope/coweight.hpp"

#include <algorithm>
#include <set>

#include "isoslope/error.hpp"

namespace isoslope::coweight {

namespace {

constexpr std::size_t kMaxPositiveRoots = 4096;
// No finite root system has a coroot coefficient above 6 (E8).
constexpr int kMaxCoefficient = 6;

IntMatrix type_a_cartan(int rank) {
  IntMatrix a(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) {
    a[i][i] = 2;
    if (i + 1 < rank) a[i][i + 1] = a[i + 1][i] = -1;
  }
  return a;
}

RationalVector difference_vector(int n, int i) {
  RationalVector v(n, 0);
  v[i] = 1;
  v[i + 1] = -1;
  return v;
}

}  // namespace

RootDatum RootDatum::gl(int n) {
  if (n < 1) throw Error(ErrorKind::MalformedInput, "GL(n) needs n >= 1");
  RootDatum d;
  d.type_ = DatumType::GL;
  d.dimension_ = n;
  d.cartan_ = type_a_cartan(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    d.roots_.push_back(difference_vector(n, i));
    d.coroots_.push_back(difference_vector(n, i));
  }
  return d;
}

RootDatum RootDatum::sl(int n) {
  RootDatum d = gl(n);
  d.type_ = DatumType::SL;
  return d;
}

RootDatum RootDatum::from_cartan(IntMatrix cartan) {
  const std::size_t r = cartan.size();
  for (std::size_t i = 0; i < r; ++i) {
    if (cartan[i].size() != r) throw Error(ErrorKind::MalformedInput, "Cartan matrix must be square");
    if (cartan[i][i] != 2) throw Error(ErrorKind::MalformedInput, "Cartan diagonal entries must be 2");
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      if (cartan[i][j] > 0) throw Error(ErrorKind::MalformedInput, "off-diagonal Cartan entries must be <= 0");
      if ((cartan[i][j] == 0) != (cartan[j][i] == 0)) {
        throw Error(ErrorKind::MalformedInput, "Cartan zero pattern must be symmetric");
      }
    }
  }
  RootDatum d;
  d.type_ = DatumType::FromCartan;
  d.dimension_ = static_cast<int>(r);
  d.cartan_ = std::move(cartan);
  for (std::size_t i = 0; i < r; ++i) {
    RationalVector root(r), coroot(r, 0);
    for (std::size_t j = 0; j < r; ++j) root[j] = d.cartan_[j][i];
    coroot[i] = 1;
    d.roots_.push_back(std::move(root));
    d.coroots_.push_back(std::move(coroot));
  }
  return d;
}

std::string RootDatum::describe() const {
  switch (type_) {
    case DatumType::GL: return "GL" + std::to_string(dimension_);
    case DatumType::SL: return "SL" + std::to_string(dimension_);
    case DatumType::FromCartan: break;
  }
  return "cartan(" + std::to_string(rank()) + ")";
}

void require_member(const RationalCoweight& lambda, const RootDatum& datum) {
  if (static_cast<int>(lambda.coords.size()) != datum.dimension()) {
    throw Error(ErrorKind::DatumMismatch, "coweight has " + std::to_string(lambda.coords.size()) +
                                              " coordinates, " + datum.describe() + " needs " +
                                              std::to_string(datum.dimension()));
  }
  if (datum.type() == DatumType::SL) {
    Rational sum = 0;
    for (const auto& x : lambda.coords) sum += x;
    if (sum != 0) throw Error(ErrorKind::DatumMismatch, "SL(n) coweights must sum to 0");
  }
}

Rational pairing(const RationalVector& root, const RationalCoweight& lambda) {
  if (root.size() != lambda.coords.size()) throw Error(ErrorKind::DatumMismatch, "pairing size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < root.size(); ++i) s += root[i] * lambda.coords[i];
  return s;
}

std::vector<Rational> simple_pairings(const RationalCoweight& lambda, const RootDatum& datum) {
  require_member(lambda, datum);
  std::vector<Rational> out;
  for (const auto& root : datum.simple_roots()) out.push_back(pairing(root, lambda));
  return out;
}

bool is_dominant(const RationalCoweight& lambda, const RootDatum& datum) {
  const auto pr = simple_pairings(lambda, datum);
  return std::all_of(pr.begin(), pr.end(), [](const Rational& x) { return x >= 0; });
}

RationalVector coroot_coordinates(const RationalCoweight& lambda1, const RationalCoweight& lambda2,
                                  const RootDatum& datum) {
  require_member(lambda1, datum);
  require_member(lambda2, datum);
  const int rows = datum.dimension();
  const int cols = datum.rank();
  // Augmented system [coroots | lambda2 - lambda1], one row per coordinate.
  std::vector<RationalVector> m(rows, RationalVector(cols + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m[i][j] = datum.simple_coroots()[j][i];
    m[i][cols] = lambda2.coords[i] - lambda1.coords[i];
  }
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = row;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == row || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (int j = col; j <= cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int i = row; i < rows; ++i) {
    if (m[i][cols] != 0) {
      throw Error(ErrorKind::NotInCorootSpan, "difference is not in the span of the simple coroots");
    }
  }
  RationalVector k(cols, 0);
  for (int i = 0; i < row; ++i) k[pivot_col[i]] = m[i][cols];
  return k;
}

bool dominance_leq(const RationalCoweight& lambda1, const RationalCoweight& lambda2, const RootDatum& datum) {
  const auto k = coroot_coordinates(lambda1, lambda2, datum);
  return std::all_of(k.begin(), k.end(), [](const Rational& x) { return x >= 0; });
}

SmallGapsResult small_gaps(const RationalCoweight& lambda, const RootDatum& datum) {
  const auto pr = simple_pairings(lambda, datum);
  SmallGapsResult res;
  for (std::size_t i = 0; i < pr.size(); ++i) {
    if (pr[i] < 0) {
      throw Error(ErrorKind::NotDominant,
                  "pairing with simple root " + std::to_string(i + 1) + " is " + isoslope::to_string(pr[i]));
    }
  }
  for (std::size_t i = 0; i < pr.size(); ++i) {
    if (pr[i] > 1) {
      res.violating.push_back(static_cast<int>(i) + 1);
    } else {
      res.i_le1.push_back(static_cast<int>(i) + 1);
    }
  }
  res.holds = res.violating.empty();
  return res;
}

std::vector<std::vector<int>> positive_coroots(const RootDatum& datum) {
  const int r = datum.rank();
  const auto& a = datum.cartan();
  // <alpha_i, sum_j k_j alphacheck_j> = sum_j k_j A_{ji}.
  auto reflect = [&](std::vector<int> k, int i) {
    int pr = 0;
    for (int j = 0; j < r; ++j) pr += k[j] * a[j][i];
    k[i] -= pr;
    return k;
  };
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int i = 0; i < r; ++i) {
      auto next = reflect(queue[head], i);
      if (std::any_of(next.begin(), next.end(), [](int x) { return x < 0; })) continue;
      if (seen.insert(next).second) {
        const bool too_big = std::any_of(next.begin(), next.end(), [](int x) { return x > kMaxCoefficient; });
        if (too_big || seen.size() > kMaxPositiveRoots) {
          throw Error(ErrorKind::UnsupportedDatum, datum.describe() + " does not have a finite root system");
        }
        queue.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

RationalCoweight rho_check(const RootDatum& datum) {
  if (datum.type() == DatumType::GL) {
    throw Error(ErrorKind::UnsupportedDatum, "rho-check needs a semisimple datum; GL(n) is not");
  }
  RationalCoweight rho{RationalVector(datum.dimension(), 0)};
  for (const auto& k : positive_coroots(datum)) {
    for (int j = 0; j < datum.rank(); ++j) {
      if (k[j] == 0) continue;
      for (int c = 0; c < datum.dimension(); ++c) rho.coords[c] += k[j] * datum.simple_coroots()[j][c];
    }
  }
  for (auto& x : rho.coords) x /= 2;
  return rho;
}

bool lafforgue_bound_check(const polygon::SlopeVector& slopes, const Rational& mean) {
  const int n = static_cast<int>(slopes.values.size());
  Rational partial = 0;
  for (int r = 1; r < n; ++r) {
    partial += slopes.values[r - 1];
    if (partial - r * mean > make_rational(r * (n - r), 2)) return false;
  }
  return true;
}

NewtonFunction hecke_newton(const std::vector<Rational>& t_valuations) {
  const int n = static_cast<int>(t_valuations.size());
  if (n < 1) throw Error(ErrorKind::MalformedInput, "need at least one Hecke valuation");
  std::vector<polygon::Vertex> ceilings{{0, Rational(0)}};
  for (int r = 1; r <= n; ++r) ceilings.push_back({r, t_valuations[r - 1] + make_rational(r * (r - n), 2)});
  return {polygon::biggest_convex_minorant(ceilings)};
}

polygon::SlopeVector newton_to_slopes(const NewtonFunction& newt, const Rational& v_tn) {
  const auto& v = newt.values;
  const int n = static_cast<int>(v.size()) - 1;
  if (n < 1) throw Error(ErrorKind::MalformedInput, "Newton function needs values at 0..n, n >= 1");
  if (v[0] != 0) throw Error(ErrorKind::MalformedInput, "Newt(0) must be 0");
  if (v[n] != v_tn) {
    throw Error(ErrorKind::MalformedInput, "Newt(n) = " + isoslope::to_string(v[n]) + " differs from v(t_n) = " + isoslope::to_string(v_tn));
  }
  polygon::SlopeVector s;
  for (int k = 1; k <= n; ++k) s.values.push_back(v[n - k + 1] - v[n - k]);
  for (int k = 1; k < n; ++k) {
    if (s.values[k - 1] < s.values[k]) {
      throw Error(ErrorKind::NonConvexInput, "recovered slopes are not descending at index " + std::to_string(k));
    }
  }
  return s;
}

std::vector<Rational> slopes_to_hecke_valuations(const polygon::SlopeVector& slopes) {
  const int n = static_cast<int>(slopes.values.size());
  // Newt(r) is the sum of the r smallest slopes.
  std::vector<Rational> out;
  Rational newt = 0;
  for (int r = 1; r <= n; ++r) {
    newt += slopes.values[n - r];
    out.push_back(newt - make_rational(r * (r - n), 2));
  }
  return out;
}

std::string to_string(Pgl3Region region) {
  switch (region) {
    case Pgl3Region::A: return "A";
    case Pgl3Region::B: return "B";
    case Pgl3Region::Both: return "A&B";
    case Pgl3Region::Outside: return "outside";
  }
  return "outside";
}

Pgl3Region pgl3_region(const Rational& y1, const Rational& y2) {
  const Rational third = make_rational(1, 3);
  const bool in_a = y1 >= third && y2 >= third;
  const bool in_b = 0 <= y1 / 2 && y1 / 2 <= y2 && y2 <= 2 * y1;
  if (in_a && in_b) return Pgl3Region::Both;
  if (in_a) return Pgl3Region::A;
  if (in_b) return Pgl3Region::B;
  return Pgl3Region::Outside;
}

Interval cohomology_slope_interval(const Rational& r, const Rational& s, int i, int n) {
  if (n < 0) throw Error(ErrorKind::MalformedInput, "dimension must be >= 0");
  if (r > s) throw Error(ErrorKind::MalformedInput, "need r <= s");
  if (i < 0 || i > 2 * n) throw Error(ErrorKind::MalformedInput, "degree i must lie in [0, 2n]");
  return {r + std::max(0, i - n), s + std::min(i, n)};
}

}  // namespace isoslope::coweight
