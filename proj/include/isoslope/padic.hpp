#pragma once

// Truncated p-adic integers Z/p^N, Teichmueller lifts, and censored valuations.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "isoslope/arith.hpp"
#include "isoslope/rational.hpp"

namespace isoslope {

class PadicResidue {
 public:
  // value is reduced into [0, p^N).
  PadicResidue(std::uint32_t p, int precision, const mpz_class& value);
  static PadicResidue from_int(std::uint32_t p, int precision, long value);

  std::uint32_t prime() const noexcept { return p_; }
  int precision() const noexcept { return n_; }
  const mpz_class& value() const noexcept { return value_; }
  mpz_class modulus() const;
  bool is_zero() const noexcept { return value_ == 0; }

  // Integer representative in (-p^N/2, p^N/2].
  mpz_class centered() const;

  PadicResidue operator+(const PadicResidue& o) const;
  PadicResidue operator-(const PadicResidue& o) const;
  PadicResidue operator*(const PadicResidue& o) const;
  PadicResidue operator-() const;
  PadicResidue pow(std::uint64_t e) const;
  // Division by an integer prime to p; throws MalformedInput otherwise.
  PadicResidue div_unit(long d) const;
  // Reduction to a smaller precision.
  PadicResidue narrow(int precision) const;

  bool operator==(const PadicResidue& o) const = default;

 private:
  void require_compatible(const PadicResidue& o) const;

  std::uint32_t p_;
  int n_;
  mpz_class value_;
};

// Exact(v), or AtLeast(v) when the quantity vanished at the working precision.
struct Valuation {
  enum class Kind { Exact, AtLeast };
  Kind kind = Kind::Exact;
  Rational value;

  static Valuation exact(Rational v) { return {Kind::Exact, std::move(v)}; }
  static Valuation at_least(Rational v) { return {Kind::AtLeast, std::move(v)}; }
  bool is_exact() const noexcept { return kind == Kind::Exact; }

  Valuation operator+(const Rational& shift) const { return {kind, value + shift}; }
  bool operator==(const Valuation& o) const { return kind == o.kind && value == o.value; }
};

std::string to_string(const Valuation& v);  // "2" or ">=8"

Valuation valuation(const PadicResidue& r);

// The (p-1)-st root of unity congruent to y mod p (0 for y = 0).
PadicResidue teichmuller(std::uint32_t p, std::uint32_t y, int precision);

// tau(N(y))^c mod p^N; zero when y = 0.
PadicResidue char_value(const arith::ExtField& field, int c, arith::Elem y, int precision);

}  // namespace isoslope
