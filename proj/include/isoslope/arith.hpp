#pragma once

// Prime and extension finite fields F_{p^m}, with optional discrete-log tables.
//
// Elements of F_{p^m} are encoded as integers sum_k a_k p^k, where
// a_0 + a_1 t + ... + a_{m-1} t^{m-1} is the residue modulo the field's
// defining polynomial. The prime field F_p therefore embeds as the encodings
// 0..p-1 in every extension.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace isoslope::arith {

using Elem = std::uint32_t;

bool is_prime(std::uint64_t n) noexcept;

// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) noexcept;

// Field sizes above this are refused outright.
inline constexpr std::uint64_t kHardFieldCap = std::uint64_t{1} << 31;

// Largest field size for which dlog/exp tables are built. Defaults to 2^21,
// overridable through ISOSLOPE_TABLE_LIMIT or set_table_limit().
std::uint64_t table_limit() noexcept;
void set_table_limit(std::uint64_t limit) noexcept;

class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);  // throws Error(NotPrime)

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return (a + p_ - b) % p_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const;  // throws on zero
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept {
    return static_cast<std::uint32_t>(pow_mod(a, e, p_));
  }
  // Smallest primitive root.
  std::uint32_t primitive_root() const;

 private:
  std::uint32_t p_;
};

class ExtField {
 public:
  std::uint32_t p() const noexcept { return p_; }
  int degree() const noexcept { return m_; }
  std::uint64_t order() const noexcept { return q_; }  // q = p^m
  std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }
  Elem generator() const noexcept { return generator_; }
  bool has_tables() const noexcept { return !exp_.empty(); }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  bool contains(Elem x) const noexcept { return x < q_; }
  void check(Elem x) const;  // throws Error(FieldMismatch)

  std::vector<std::uint32_t> coeffs(Elem x) const;
  Elem from_coeffs(std::span<const std::uint32_t> c) const;

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }
  // Multiplication by polynomial arithmetic, bypassing any tables.
  Elem mul_poly(Elem a, Elem b) const;

  // Discrete log base generator(); requires tables (Error(DegreeTooLarge) otherwise).
  std::uint64_t dlog(Elem a) const;
  Elem exp(std::uint64_t k) const;

  // N_{F_q/F_p}(y) = y^((q-1)/(p-1)); returned as an element of F_p (0..p-1).
  std::uint32_t norm(Elem y) const;

  // Size of the Frobenius orbit of x, i.e. the degree of F_p(x) over F_p.
  int degree_of(Elem x) const;
  // Member of the Frobenius orbit of x with the smallest discrete log.
  Elem canonical(Elem x) const;

  friend std::shared_ptr<const ExtField> field_create(std::uint32_t p, int m);

 private:
  ExtField() = default;
  std::vector<std::uint32_t> poly_mul_mod(std::span<const std::uint32_t> a,
                                          std::span<const std::uint32_t> b) const;

  std::uint32_t p_ = 0;
  int m_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;  // monic, length m+1, low degree first
  Elem generator_ = 0;
  std::vector<Elem> exp_;               // exp_[k] = g^k, k < q-1
  std::vector<std::uint32_t> log_;      // log_[x] for x != 0
};

using FieldPtr = std::shared_ptr<const ExtField>;

// Deterministic construction: the modulus is the monic irreducible with the
// smallest encoding of its lower coefficients, the generator the smallest
// encoding of multiplicative order q-1. Throws NotPrime / DegreeTooLarge.
FieldPtr field_create(std::uint32_t p, int m);

// A field homomorphism F_{p^d} -> F_{p^D}, d | D.
class Embedding {
 public:
  Embedding(FieldPtr small, FieldPtr big);
  Elem operator()(Elem x) const;
  const ExtField& small() const noexcept { return *small_; }
  const ExtField& big() const noexcept { return *big_; }

 private:
  FieldPtr small_;
  FieldPtr big_;
  std::vector<Elem> root_powers_;  // image of t^k, k < d
};

}  // namespace isoslope::arith
