#include <algorithm>

#include "isoslope/error.hpp"
#include "isoslope/hyper.hpp"
#include "isoslope/kernels.hpp"

namespace isoslope::hyper {

namespace {

using arith::Elem;
using arith::ExtField;
using arith::FieldPtr;

mpz_class prime_power(std::uint32_t p, int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(n));
  return r;
}

void require_tables(const ExtField& f) {
  if (!f.has_tables()) {
    throw Error(ErrorKind::DegreeTooLarge, "F_" + std::to_string(f.order()) +
                                               " exceeds the dlog table limit " +
                                               std::to_string(arith::table_limit()));
  }
}

// Character values f_i(a) = tau(N(1 - g^a))^{c_i} indexed by discrete log a
// in F_Q, with f_i(0) = 0 (extension by zero at x_i = 1).
std::vector<std::vector<mpz_class>> dlog_characters(const HypergeometricDatum& datum,
                                                    const ExtField& big, int precision) {
  const std::uint32_t p = datum.p();
  const std::uint64_t len = big.order() - 1;
  const mpz_class mod = prime_power(p, precision);
  // z = tau(N(g)) is a primitive (p-1)-st root of unity mod p^N.
  const PadicResidue z = teichmuller(p, big.norm(big.generator()), precision);
  std::vector<mpz_class> zpow(p - 1);
  {
    PadicResidue acc = PadicResidue::from_int(p, precision, 1);
    for (std::uint32_t e = 0; e + 1 < p; ++e) {
      zpow[e] = acc.value();
      acc = acc * z;
    }
  }
  std::vector<std::uint32_t> log_one_minus(len, 0);
  for (std::uint64_t a = 1; a < len; ++a) {
    log_one_minus[a] = static_cast<std::uint32_t>(big.dlog(big.sub(1, big.exp(a))) % (p - 1));
  }
  std::vector<std::vector<mpz_class>> out;
  for (int ci : datum.c()) {
    std::vector<mpz_class> f(len, 0);
    for (std::uint64_t a = 1; a < len; ++a) {
      f[a] = zpow[(static_cast<std::uint64_t>(ci) * log_one_minus[a]) % (p - 1)];
    }
    out.push_back(std::move(f));
  }
  return out;
}

// Iterated convolution f_1 * ... * f_n, evaluated at the requested indices.
// Intermediate results are only formed on Frobenius orbit representatives.
template <class Ring, class Value>
std::vector<Value> convolve_all(const Ring& ring, const std::vector<std::vector<Value>>& f,
                                std::span<const std::uint64_t> outputs, std::uint32_t p, int threads) {
  const std::size_t n = f.size();
  if (n == 1) {
    std::vector<Value> out;
    for (std::uint64_t s : outputs) out.push_back(f[0][s]);
    return out;
  }
  std::vector<Value> h = f[0];
  if (n > 2) {
    const auto orbits = kernels::frobenius_orbits(h.size(), p);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const auto at_reps = kernels::cyclic_convolve_at(ring, std::span<const Value>(h),
                                                       std::span<const Value>(f[i]), orbits.reps, threads);
      for (std::size_t s = 0; s < h.size(); ++s) h[s] = at_reps[orbits.slot_of[s]];
    }
  }
  return kernels::cyclic_convolve_at(ring, std::span<const Value>(h), std::span<const Value>(f[n - 1]),
                                     outputs, threads);
}

std::vector<std::uint64_t> to_u64(const std::vector<mpz_class>& v) {
  std::vector<std::uint64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_ui();
  return out;
}

}  // namespace

TraceTable::TraceTable(FieldPtr subfield, std::uint32_t p, int precision, std::vector<mpz_class> values)
    : subfield_(std::move(subfield)), p_(p), precision_(precision), values_(std::move(values)) {}

PadicResidue TraceTable::at(Elem x) const {
  if (x == 0) throw Error(ErrorKind::MalformedInput, "no trace at x = 0");
  return {p_, precision_, values_.at(subfield_->dlog(x))};
}

FieldPtr Workspace::field(std::uint32_t p, int m) {
  std::lock_guard lock(mutex_);
  auto& slot = fields_[{p, m}];
  if (!slot) slot = arith::field_create(p, m);
  return slot;
}

std::shared_ptr<const TraceTable> Workspace::traces(const HypergeometricDatum& datum, int total_degree,
                                                    int sub_degree, int precision) {
  if (total_degree % sub_degree != 0) {
    throw Error(ErrorKind::FieldMismatch, "subfield degree must divide the total degree");
  }
  const auto key = std::make_tuple(datum, total_degree, sub_degree, precision);
  {
    std::lock_guard lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  }
  const FieldPtr big = field(datum.p(), total_degree);
  const FieldPtr small = field(datum.p(), sub_degree);
  require_tables(*big);
  require_tables(*small);
  const arith::Embedding embed(small, big);

  const std::uint64_t len = big->order() - 1;
  const std::uint64_t small_len = small->order() - 1;
  const std::uint64_t e = big->dlog(embed(small->generator()));
  const auto small_orbits = kernels::frobenius_orbits(small_len, datum.p());
  std::vector<std::uint64_t> outputs;
  for (std::uint64_t k : small_orbits.reps) {
    outputs.push_back(static_cast<std::uint64_t>((unsigned __int128){e} * k % len));
  }

  const auto chars = dlog_characters(datum, *big, precision);
  const mpz_class mod = prime_power(datum.p(), precision);
  std::vector<mpz_class> at_reps;
  if (mod < mpz_class(std::to_string(kernels::kU64RingLimit))) {
    std::vector<std::vector<std::uint64_t>> f;
    for (const auto& fi : chars) f.push_back(to_u64(fi));
    const auto vals = convolve_all(kernels::U64Ring{mod.get_ui()}, f, outputs, datum.p(), threads_);
    for (std::uint64_t v : vals) at_reps.emplace_back(std::to_string(v));
  } else {
    at_reps = convolve_all(kernels::BigRing{mod}, chars, outputs, datum.p(), threads_);
  }

  const bool negate = datum.rank() % 2 == 0;  // (-1)^{n-1}
  std::vector<mpz_class> values(small_len);
  for (std::uint64_t k = 0; k < small_len; ++k) {
    mpz_class v = at_reps[small_orbits.slot_of[k]];
    if (negate && v != 0) v = mod - v;
    values[k] = v;
  }
  auto table = std::make_shared<const TraceTable>(small, datum.p(), precision, std::move(values));
  std::lock_guard lock(mutex_);
  return tables_.emplace(key, std::move(table)).first->second;
}

namespace {

// Direct enumeration over (x_1, ..., x_{n-1}) with x_n = x / (x_1 ... x_{n-1}).
// Serial reference for the convolution engine; characters are evaluated on
// field elements through the norm map, without discrete logs.
PadicResidue trace_by_enumeration(const HypergeometricDatum& datum, const ExtField& big, Elem x,
                                  int precision) {
  const std::uint32_t p = datum.p();
  const int n = datum.rank();
  const std::uint64_t q = big.order();
  const mpz_class mod = prime_power(p, precision);

  // chi[i][y] = tau(N(1 - y))^{c_i}, zero at y = 1.
  std::vector<std::vector<mpz_class>> chi(n, std::vector<mpz_class>(q, 0));
  std::vector<PadicResidue> tau;
  for (std::uint32_t u = 0; u < p; ++u) tau.push_back(teichmuller(p, u, precision));
  for (std::uint64_t y = 1; y < q; ++y) {
    const std::uint32_t nm = big.norm(big.sub(1, static_cast<Elem>(y)));
    for (int i = 0; i < n; ++i) chi[i][y] = tau[nm].pow(static_cast<std::uint64_t>(datum.c()[i])).value();
  }

  mpz_class total = 0;
  std::vector<Elem> prefix(n, 1);
  std::vector<mpz_class> weight(n, 1);
  std::vector<Elem> cur(n, 0);
  // Depth-first walk over x_1..x_{n-1}.
  auto walk = [&](auto&& self, int depth) -> void {
    if (depth == n - 1) {
      const Elem last = big.mul(x, big.inv(prefix[depth]));
      mpz_class term = weight[depth] * chi[depth][last];
      total += term;
      return;
    }
    for (std::uint64_t y = 1; y < q; ++y) {
      const mpz_class& v = chi[depth][y];
      if (v == 0) continue;
      prefix[depth + 1] = big.mul(prefix[depth], static_cast<Elem>(y));
      weight[depth + 1] = weight[depth] * v % mod;
      self(self, depth + 1);
    }
  };
  walk(walk, 0);
  mpz_fdiv_r(total.get_mpz_t(), total.get_mpz_t(), mod.get_mpz_t());
  if (n % 2 == 0 && total != 0) total = mod - total;
  return {p, precision, total};
}

}  // namespace

PadicResidue frobenius_trace(const HypergeometricDatum& datum, const PointSpec& point, int j,
                             int precision, TraceEngine engine, Workspace* workspace) {
  if (j < 1) throw Error(ErrorKind::MalformedInput, "trace power j must be >= 1");
  if (precision < 1) throw Error(ErrorKind::MalformedInput, "precision must be >= 1");
  if (point.field().p() != datum.p()) {
    throw Error(ErrorKind::FieldMismatch, "point and datum live over different primes");
  }
  Workspace local;
  Workspace& ws = workspace ? *workspace : local;
  const int m = point.degree();
  if (engine == TraceEngine::Convolution) {
    return ws.traces(datum, m * j, m, precision)->at(point.x());
  }
  const FieldPtr big = ws.field(datum.p(), m * j);
  const arith::Embedding embed(point.field_ptr(), big);
  return trace_by_enumeration(datum, *big, embed(point.x()), precision);
}

}  // namespace isoslope::hyper
