#include "isoslope/arith.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "isoslope/error.hpp"
#include "isoslope/fp_poly.hpp"

namespace isoslope::arith {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) noexcept {
  if (mod == 1) return 0;
  unsigned __int128 r = 1;
  unsigned __int128 b = base % mod;
  while (exp != 0) {
    if (exp & 1) r = r * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

std::uint64_t initial_table_limit() noexcept {
  if (const char* env = std::getenv("ISOSLOPE_TABLE_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 21;
}

std::atomic<std::uint64_t>& table_limit_slot() noexcept {
  static std::atomic<std::uint64_t> slot{initial_table_limit()};
  return slot;
}

}  // namespace

std::uint64_t table_limit() noexcept { return table_limit_slot().load(std::memory_order_relaxed); }

void set_table_limit(std::uint64_t limit) noexcept {
  table_limit_slot().store(limit, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw Error(ErrorKind::MalformedInput, "inverse of zero in F_p");
  return pow(a, p_ - 2);
}

std::uint32_t PrimeField::primitive_root() const {
  if (p_ == 2) return 1;
  const auto factors = prime_factors(p_ - 1);
  for (std::uint32_t g = 2; g < p_; ++g) {
    if (std::all_of(factors.begin(), factors.end(),
                    [&](std::uint64_t l) { return pow(g, (p_ - 1) / l) != 1; })) {
      return g;
    }
  }
  return 1;
}

// ---------------------------------------------------------------------------

void ExtField::check(Elem x) const {
  if (!contains(x)) {
    throw Error(ErrorKind::FieldMismatch,
                "element " + std::to_string(x) + " does not lie in F_" + std::to_string(q_));
  }
}

std::vector<std::uint32_t> ExtField::coeffs(Elem x) const {
  std::vector<std::uint32_t> c(m_, 0);
  for (int k = 0; k < m_; ++k) {
    c[k] = x % p_;
    x /= p_;
  }
  return c;
}

Elem ExtField::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > static_cast<std::size_t>(m_)) {
    throw Error(ErrorKind::FieldMismatch, "too many coefficients for F_" + std::to_string(q_));
  }
  std::uint64_t v = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] >= p_) throw Error(ErrorKind::FieldMismatch, "coefficient not reduced mod p");
    v = v * p_ + c[k];
  }
  return static_cast<Elem>(v);
}

Elem ExtField::add(Elem a, Elem b) const noexcept {
  Elem r = 0;
  Elem scale = 1;
  for (int k = 0; k < m_; ++k) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Elem ExtField::neg(Elem a) const noexcept {
  Elem r = 0;
  Elem scale = 1;
  for (int k = 0; k < m_; ++k) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

Elem ExtField::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

std::vector<std::uint32_t> ExtField::poly_mul_mod(std::span<const std::uint32_t> a,
                                                  std::span<const std::uint32_t> b) const {
  std::vector<std::uint64_t> acc(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
  }
  for (int d = 2 * m_ - 2; d >= m_; --d) {
    const std::uint64_t c = acc[d];
    if (c == 0) continue;
    for (int i = 0; i <= m_; ++i) {
      acc[d - m_ + i] = (acc[d - m_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
  }
  std::vector<std::uint32_t> r(m_);
  for (int k = 0; k < m_; ++k) r[k] = static_cast<std::uint32_t>(acc[k]);
  return r;
}

Elem ExtField::mul_poly(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (m_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  return from_coeffs(poly_mul_mod(ca, cb));
}

Elem ExtField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (m_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
  if (has_tables()) {
    std::uint64_t k = std::uint64_t{log_[a]} + log_[b];
    if (k >= q_ - 1) k -= q_ - 1;
    return exp_[k];
  }
  return mul_poly(a, b);
}

Elem ExtField::pow(Elem a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  if (has_tables()) {
    const std::uint64_t k =
        static_cast<std::uint64_t>((unsigned __int128){log_[a]} * (e % (q_ - 1)) % (q_ - 1));
    return exp_[k];
  }
  Elem r = 1;
  Elem b = a;
  while (e != 0) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e != 0) b = mul(b, b);
  }
  return r;
}

Elem ExtField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::MalformedInput, "inverse of zero");
  if (has_tables()) return exp_[log_[a] == 0 ? 0 : (q_ - 1) - log_[a]];
  return pow(a, q_ - 2);
}

std::uint64_t ExtField::dlog(Elem a) const {
  check(a);
  if (!has_tables()) {
    throw Error(ErrorKind::DegreeTooLarge,
                "F_" + std::to_string(q_) + " exceeds the dlog table limit " +
                    std::to_string(table_limit()));
  }
  if (a == 0) throw Error(ErrorKind::MalformedInput, "discrete log of zero");
  return log_[a];
}

Elem ExtField::exp(std::uint64_t k) const {
  if (!has_tables()) return pow(generator_, k);
  return exp_[k % (q_ - 1)];
}

std::uint32_t ExtField::norm(Elem y) const {
  check(y);
  if (y == 0) return 0;
  return pow(y, (q_ - 1) / (p_ - 1));
}

int ExtField::degree_of(Elem x) const {
  check(x);
  Elem y = frobenius(x);
  int d = 1;
  while (y != x) {
    y = frobenius(y);
    ++d;
  }
  return d;
}

Elem ExtField::canonical(Elem x) const {
  check(x);
  if (x == 0) return 0;
  std::uint64_t best = dlog(x);
  Elem best_elem = x;
  for (Elem y = frobenius(x); y != x; y = frobenius(y)) {
    const std::uint64_t k = dlog(y);
    if (k < best) {
      best = k;
      best_elem = y;
    }
  }
  return best_elem;
}

// ---------------------------------------------------------------------------

FieldPtr field_create(std::uint32_t p, int m) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorKind::MalformedInput, "extension degree must be >= 1");
  unsigned __int128 q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    if (q > kHardFieldCap) {
      throw Error(ErrorKind::DegreeTooLarge,
                  std::to_string(p) + "^" + std::to_string(m) + " exceeds the field size cap");
    }
  }

  auto f = std::shared_ptr<ExtField>(new ExtField());
  f->p_ = p;
  f->m_ = m;
  f->q_ = static_cast<std::uint64_t>(q);

  // Monic irreducible with the smallest encoding of the lower coefficients.
  const std::uint64_t q64 = f->q_;
  for (std::uint64_t code = 0; code < q64; ++code) {
    fp_poly::Poly cand(m + 1, 0);
    std::uint64_t c = code;
    for (int k = 0; k < m; ++k) {
      cand[k] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    cand[m] = 1;
    if (fp_poly::is_irreducible(cand, p)) {
      f->modulus_ = std::move(cand);
      break;
    }
  }
  if (f->modulus_.empty()) throw std::logic_error("no irreducible polynomial found");

  // Smallest element of order q-1.
  const auto factors = prime_factors(q64 - 1);
  Elem gen = 0;
  for (std::uint64_t cand = 1; cand < q64; ++cand) {
    const Elem g = static_cast<Elem>(cand);
    const bool primitive = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t l) {
      return f->pow(g, (q64 - 1) / l) != 1;
    });
    if (primitive) {
      gen = g;
      break;
    }
  }
  if (gen == 0) throw std::logic_error("no generator found");
  f->generator_ = gen;

  if (q64 <= table_limit()) {
    f->exp_.resize(q64 - 1);
    f->log_.assign(q64, 0);
    Elem x = 1;
    for (std::uint64_t k = 0; k + 1 < q64; ++k) {
      f->exp_[k] = x;
      f->log_[x] = static_cast<std::uint32_t>(k);
      x = f->mul_poly(x, gen);
    }
    if (x != 1) throw std::logic_error("generator order check failed");
  }
  return f;
}

// ---------------------------------------------------------------------------

Embedding::Embedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
  if (small_->p() != big_->p() || big_->degree() % small_->degree() != 0) {
    throw Error(ErrorKind::FieldMismatch, "no embedding F_" + std::to_string(small_->order()) +
                                              " -> F_" + std::to_string(big_->order()));
  }
  const int d = small_->degree();
  if (d == 1) return;  // constants map to themselves

  // Root of the small modulus in the big field; smallest dlog among the
  // subfield elements for determinism.
  const auto mod = small_->modulus();
  const std::uint64_t qb = big_->order();
  const std::uint64_t step = (qb - 1) / (small_->order() - 1);
  Elem root = 0;
  bool found = false;
  for (std::uint64_t k = 0; k < small_->order() - 1 && !found; ++k) {
    const Elem cand = big_->exp(k * step);
    Elem acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = big_->add(big_->mul(acc, cand), mod[i]);
    if (acc == 0) {
      root = cand;
      found = true;
    }
  }
  if (!found) throw std::logic_error("embedding root not found");
  root_powers_.resize(d);
  Elem r = 1;
  for (int k = 0; k < d; ++k) {
    root_powers_[k] = r;
    r = big_->mul(r, root);
  }
}

Elem Embedding::operator()(Elem x) const {
  small_->check(x);
  if (root_powers_.empty()) return x;
  const auto c = small_->coeffs(x);
  Elem acc = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != 0) acc = big_->add(acc, big_->mul(c[k], root_powers_[k]));
  }
  return acc;
}

}  // namespace isoslope::arith
