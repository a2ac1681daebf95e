#include "isoslope/padic.hpp"

#include "isoslope/error.hpp"

namespace isoslope {

namespace {

mpz_class prime_power(std::uint32_t p, int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(n));
  return r;
}

}  // namespace

PadicResidue::PadicResidue(std::uint32_t p, int precision, const mpz_class& value)
    : p_(p), n_(precision) {
  if (precision < 1) throw Error(ErrorKind::MalformedInput, "precision must be >= 1");
  const mpz_class mod = prime_power(p, precision);
  mpz_fdiv_r(value_.get_mpz_t(), value.get_mpz_t(), mod.get_mpz_t());
}

PadicResidue PadicResidue::from_int(std::uint32_t p, int precision, long value) {
  return PadicResidue(p, precision, mpz_class(value));
}

mpz_class PadicResidue::modulus() const { return prime_power(p_, n_); }

mpz_class PadicResidue::centered() const {
  const mpz_class mod = modulus();
  if (2 * value_ > mod) return value_ - mod;
  return value_;
}

void PadicResidue::require_compatible(const PadicResidue& o) const {
  if (p_ != o.p_ || n_ != o.n_) {
    throw Error(ErrorKind::FieldMismatch, "residues mod " + std::to_string(p_) + "^" +
                                              std::to_string(n_) + " and " +
                                              std::to_string(o.p_) + "^" + std::to_string(o.n_));
  }
}

PadicResidue PadicResidue::operator+(const PadicResidue& o) const {
  require_compatible(o);
  return {p_, n_, value_ + o.value_};
}

PadicResidue PadicResidue::operator-(const PadicResidue& o) const {
  require_compatible(o);
  return {p_, n_, value_ - o.value_};
}

PadicResidue PadicResidue::operator*(const PadicResidue& o) const {
  require_compatible(o);
  return {p_, n_, value_ * o.value_};
}

PadicResidue PadicResidue::operator-() const { return {p_, n_, -value_}; }

PadicResidue PadicResidue::pow(std::uint64_t e) const {
  mpz_class r;
  const mpz_class mod = modulus();
  const mpz_class ee(std::to_string(e));
  mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), ee.get_mpz_t(), mod.get_mpz_t());
  return {p_, n_, r};
}

PadicResidue PadicResidue::div_unit(long d) const {
  if (d % static_cast<long>(p_) == 0) {
    throw Error(ErrorKind::MalformedInput,
                "division by " + std::to_string(d) + ", which is not a unit mod " + std::to_string(p_));
  }
  const mpz_class mod = modulus();
  mpz_class dd(d);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), dd.get_mpz_t(), mod.get_mpz_t());
  return {p_, n_, value_ * inv};
}

PadicResidue PadicResidue::narrow(int precision) const {
  if (precision > n_) {
    throw Error(ErrorKind::MalformedInput, "cannot widen a residue from precision " +
                                               std::to_string(n_) + " to " + std::to_string(precision));
  }
  return {p_, precision, value_};
}

std::string to_string(const Valuation& v) {
  return (v.is_exact() ? std::string() : std::string(">=")) + to_string(v.value);
}

Valuation valuation(const PadicResidue& r) {
  if (r.is_zero()) return Valuation::at_least(Rational(r.precision()));
  const mpz_class p(r.prime());
  mpz_class v = r.value();
  long k = 0;
  while (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
    v /= p;
    ++k;
  }
  return Valuation::exact(Rational(k));
}

PadicResidue teichmuller(std::uint32_t p, std::uint32_t y, int precision) {
  PadicResidue t(p, precision, mpz_class(y % p));
  // t^(p^k) is fixed mod p^(k+1); N-1 steps reach the lift mod p^N.
  for (int i = 1; i < precision; ++i) t = t.pow(p);
  return t;
}

PadicResidue char_value(const arith::ExtField& field, int c, arith::Elem y, int precision) {
  field.check(y);
  if (y == 0) return PadicResidue(field.p(), precision, 0);
  return teichmuller(field.p(), field.norm(y), precision).pow(static_cast<std::uint64_t>(c));
}

}  // namespace isoslope
