#include <algorithm>
#include <stdexcept>

#include "isoslope/error.hpp"
#include "isoslope/hyper.hpp"

namespace isoslope::hyper {

namespace {

int ceil_half(int n) { return (n + 1) / 2; }

// Newton's identities: r b_r = -sum_{j=1}^r T_j b_{r-j}, b_0 = 1.
std::vector<PadicResidue> elementary_from_power_sums(const std::vector<PadicResidue>& power_sums,
                                                     std::uint32_t p, int precision) {
  std::vector<PadicResidue> b{PadicResidue::from_int(p, precision, 1)};
  for (std::size_t r = 1; r <= power_sums.size(); ++r) {
    PadicResidue acc = PadicResidue::from_int(p, precision, 0);
    for (std::size_t j = 1; j <= r; ++j) acc = acc + power_sums[j - 1] * b[r - j];
    b.push_back((-acc).div_unit(static_cast<long>(r)));
  }
  return b;
}

std::vector<PadicResidue> coefficients(const HypergeometricDatum& datum, const PointSpec& point, int count,
                                       int precision, Workspace& ws) {
  std::vector<PadicResidue> traces;
  for (int j = 1; j <= count; ++j) {
    traces.push_back(ws.traces(datum, point.degree() * j, point.degree(), precision)->at(point.x()));
  }
  return elementary_from_power_sums(traces, datum.p(), precision);
}

// Combine a directly computed valuation with one implied by duality.
Valuation merge(const Valuation& direct, const Valuation& derived, int index) {
  if (direct.is_exact() && derived.is_exact()) {
    if (direct.value != derived.value) {
      throw std::logic_error("duality check failed at coefficient " + std::to_string(index));
    }
    return direct;
  }
  if (direct.is_exact()) {
    if (direct.value < derived.value) {
      throw std::logic_error("duality bound violated at coefficient " + std::to_string(index));
    }
    return direct;
  }
  if (derived.is_exact()) {
    if (derived.value < direct.value) {
      throw std::logic_error("duality bound violated at coefficient " + std::to_string(index));
    }
    return derived;
  }
  return Valuation::at_least(std::max(direct.value, derived.value));
}

}  // namespace

int traces_needed(Strategy s, int n) {
  switch (s) {
    case Strategy::Full: return n;
    case Strategy::DetCompletion: return n - 1;
    case Strategy::SelfDual:
    case Strategy::DualPair: return ceil_half(n);
    case Strategy::Auto: break;
  }
  throw std::logic_error("unresolved strategy");
}

int default_precision(Strategy strategy, int n, int m) {
  switch (strategy) {
    case Strategy::SelfDual:
    case Strategy::DualPair: return m * ceil_half(n) * (n - 1) + 2;
    case Strategy::Full:
    case Strategy::DetCompletion: return m * n * (n - 1) + 2;
    case Strategy::Auto: break;
  }
  throw std::logic_error("default_precision needs a resolved strategy");
}

Strategy resolve_strategy(Strategy requested, const HypergeometricDatum& datum) {
  if (requested != Strategy::Auto) return requested;
  return datum.is_self_dual() ? Strategy::SelfDual : Strategy::DualPair;
}

CharPolyData char_poly_valuations(const HypergeometricDatum& datum, const PointSpec& point,
                                  Strategy strategy, int precision, Workspace* workspace) {
  const int n = datum.rank();
  const int m = point.degree();
  const std::uint32_t p = datum.p();
  if (point.field().p() != p) throw Error(ErrorKind::FieldMismatch, "point and datum primes differ");
  if (p <= static_cast<std::uint32_t>(n)) {
    throw Error(ErrorKind::RankTooLargeForP,
                "rank " + std::to_string(n) + " needs p > n for Newton's identities");
  }
  strategy = resolve_strategy(strategy, datum);
  if (strategy == Strategy::SelfDual && !datum.is_self_dual()) {
    throw Error(ErrorKind::StrategyUnavailable, datum.describe() + " is not self-dual");
  }
  if (precision < 1) throw Error(ErrorKind::MalformedInput, "precision must be >= 1");

  Workspace local;
  Workspace& ws = workspace ? *workspace : local;

  CharPolyData data;
  data.n = n;
  data.m = m;
  data.strategy = strategy;
  data.precision = precision;
  data.valuations.assign(n + 1, Valuation::at_least(Rational(0)));
  data.residues.assign(n + 1, std::nullopt);
  data.dual_residues.assign(n + 1, std::nullopt);

  const int count = traces_needed(strategy, n);
  const auto b = coefficients(datum, point, count, precision, ws);
  std::vector<bool> known(n + 1, false);
  for (int r = 0; r <= count; ++r) {
    data.residues[r] = b[r];
    data.valuations[r] = valuation(b[r]);
    known[r] = true;
  }

  // |det| = q^{n(n-1)/2} up to a root of unity.
  const Rational det_val(m * n * (n - 1) / 2);
  if (known[n]) {
    const auto& v = data.valuations[n];
    if ((v.is_exact() && v.value != det_val) || (!v.is_exact() && v.value > det_val)) {
      throw std::logic_error("determinant valuation " + isoslope::to_string(v) + " != " + isoslope::to_string(det_val));
    }
  }
  data.valuations[n] = Valuation::exact(det_val);
  known[n] = true;

  if (strategy == Strategy::SelfDual || strategy == Strategy::DualPair) {
    // Reciprocal roots pair as gamma <-> q^{n-1}/gamma' (gamma' for c'):
    // v(b_{n-r}) = m (n(n-1)/2 - r(n-1)) + v(b'_r).
    std::vector<Valuation> partner;
    if (strategy == Strategy::SelfDual) {
      for (int r = 0; r <= count; ++r) partner.push_back(data.valuations[r]);
    } else {
      const auto bd = coefficients(dual_datum(datum), point, count, precision, ws);
      for (int r = 0; r <= count; ++r) {
        data.dual_residues[r] = bd[r];
        partner.push_back(valuation(bd[r]));
      }
    }
    for (int r = 0; r <= count; ++r) {
      const int target = n - r;
      const Valuation derived = partner[r] + Rational(m * (n * (n - 1) / 2 - r * (n - 1)));
      data.valuations[target] = known[target] ? merge(data.valuations[target], derived, target) : derived;
      known[target] = true;
    }
  }
  if (!std::all_of(known.begin(), known.end(), [](bool k) { return k; })) {
    throw std::logic_error("strategy left a coefficient undetermined");
  }
  return data;
}

GapProfile gap_profile(const polygon::SlopeVector& slopes) {
  GapProfile g;
  g.max_gap = 0;
  const auto& a = slopes.values;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    g.gaps.push_back(a[i] - a[i + 1]);
    if (i == 0 || g.gaps.back() > g.max_gap) g.max_gap = g.gaps.back();
  }
  g.violates_small_gaps = g.max_gap > 1;
  return g;
}

SlopeReport slopes_at_point(const HypergeometricDatum& datum, const PointSpec& point,
                            const SlopeOptions& options, Workspace* workspace) {
  const int n = datum.rank();
  const int m = point.degree();
  SlopeReport report;
  report.x = point.x();
  report.degree = m;
  report.u_c_zero = u_norm_eval(datum, point) == 0;
  report.u_cdual_zero = u_norm_eval(dual_datum(datum), point) == 0;

  // For n <= 3 the two endpoint criteria and the sum rule pin every slope.
  if (options.allow_fast_path && n <= 3 && !report.u_c_zero && !report.u_cdual_zero) {
    report.fast_path = true;
    for (int i = 1; i <= n; ++i) report.slopes.values.push_back(Rational(n - i));
    report.gaps = gap_profile(report.slopes);
    return report;
  }

  const Strategy strategy = resolve_strategy(options.strategy, datum);
  const int precision = options.precision.value_or(default_precision(strategy, n, m));
  const CharPolyData data = char_poly_valuations(datum, point, strategy, precision, workspace);

  std::vector<polygon::HullPoint> pts;
  for (int r = 0; r <= n; ++r) pts.push_back({r, data.valuations[r]});
  polygon::NewtonPolygon poly;
  try {
    poly = polygon::lower_hull(pts);
  } catch (Error& e) {
    if (e.kind() == ErrorKind::PrecisionInsufficient) e.with_suggested_precision(2 * precision);
    throw;
  }
  report.strategy = strategy;
  report.precision = precision;
  report.valuations = data.valuations;
  report.slopes = polygon::slopes_descending(poly, m);
  report.gaps = gap_profile(report.slopes);
  return report;
}

}  // namespace isoslope::hyper
