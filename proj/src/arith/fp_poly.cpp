#include "isoslope/fp_poly.hpp"

#include <stdexcept>

#include "isoslope/arith.hpp"

namespace isoslope::fp_poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly add(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::uint32_t x = i < a.size() ? a[i] : 0;
    const std::uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = (x + y) % p;
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::uint32_t x = i < a.size() ? a[i] : 0;
    const std::uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = (x + p - y) % p;
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  // Reduce every so often so the 64-bit accumulators cannot overflow.
  const std::uint64_t sq = std::uint64_t{p - 1} * (p - 1);
  const std::size_t batch = sq == 0 ? a.size() : std::max<std::uint64_t>(1, (~std::uint64_t{0} / 2) / sq);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) {
      for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += std::uint64_t{a[i]} * b[j];
    }
    if ((i + 1) % batch == 0) {
      for (auto& v : acc) v %= p;
    }
  }
  Poly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint32_t>(acc[i] % p);
  trim(r);
  return r;
}

Poly pow(Poly a, std::uint64_t e, std::uint32_t p) {
  Poly r{1};
  while (e != 0) {
    if (e & 1) r = mul(r, a, p);
    e >>= 1;
    if (e != 0) a = mul(a, a, p);
  }
  return r;
}

Poly mod(Poly a, const Poly& b, std::uint32_t p) {
  if (b.empty()) throw std::invalid_argument("fp_poly::mod by zero polynomial");
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv =
      static_cast<std::uint32_t>(arith::pow_mod(b.back(), p - 2, p));
  while (a.size() > db) {
    const std::size_t shift = a.size() - 1 - db;
    const std::uint64_t f = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - f * b[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t inv = arith::pow_mod(a.back(), p - 2, p);
    for (auto& c : a) c = static_cast<std::uint32_t>(c * inv % p);
  }
  return a;
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  return mod(mul(a, b, p), m, p);
}

Poly pow_mod(Poly a, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r = mod(Poly{1}, m, p);
  a = mod(std::move(a), m, p);
  while (e != 0) {
    if (e & 1) r = mul_mod(r, a, m, p);
    e >>= 1;
    if (e != 0) a = mul_mod(a, a, m, p);
  }
  return r;
}

namespace {

// X^{p^k} mod f by k successive p-th powers.
Poly x_pow_p_pow(std::uint64_t k, const Poly& f, std::uint32_t p) {
  Poly x = mod(Poly{0, 1}, f, p);
  for (std::uint64_t i = 0; i < k; ++i) x = pow_mod(x, p, f, p);
  return x;
}

}  // namespace

bool is_irreducible(const Poly& f, std::uint32_t p) {
  if (f.size() < 2 || f.back() != 1) return false;
  const std::uint64_t m = f.size() - 1;
  if (m == 1) return true;
  const Poly x{0, 1};
  if (sub(x_pow_p_pow(m, f, p), x, p) != Poly{}) return false;
  for (std::uint64_t l : arith::prime_factors(m)) {
    const Poly g = gcd(f, sub(x_pow_p_pow(m / l, f, p), x, p), p);
    if (g != Poly{1}) return false;
  }
  return true;
}

}  // namespace isoslope::fp_poly
