#include <algorithm>
#include <sstream>

#include "isoslope/error.hpp"
#include "isoslope/hyper.hpp"

namespace isoslope::hyper {

HypergeometricDatum::HypergeometricDatum(std::uint32_t p, std::vector<int> c) : p_(p), c_(std::move(c)) {
  if (!arith::is_prime(p) || p < 3) {
    throw Error(ErrorKind::InvalidDatum, "p = " + std::to_string(p) + " must be a prime >= 3");
  }
  if (c_.empty()) throw Error(ErrorKind::InvalidDatum, "exponent list is empty");
  for (int ci : c_) {
    if (ci < 1 || ci > static_cast<int>(p) - 2) {
      throw Error(ErrorKind::InvalidDatum, "exponent " + std::to_string(ci) + " outside [1, " +
                                               std::to_string(p - 2) + "]");
    }
  }
  std::sort(c_.begin(), c_.end());
}

bool HypergeometricDatum::is_self_dual() const { return dual_datum(*this) == *this; }

std::string HypergeometricDatum::describe() const {
  std::ostringstream os;
  os << "p=" << p_ << " c=";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  return os.str();
}

HypergeometricDatum dual_datum(const HypergeometricDatum& datum) {
  std::vector<int> c;
  for (int ci : datum.c()) c.push_back(static_cast<int>(datum.p()) - 1 - ci);
  return {datum.p(), std::move(c)};
}

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  // Lucas: binom(n, k) = prod binom(n_j, k_j) over base-p digits.
  std::uint64_t result = 1;
  while (n != 0 || k != 0) {
    const std::uint64_t nj = n % p;
    const std::uint64_t kj = k % p;
    if (kj > nj) return 0;
    // binom(nj, kj) mod p with nj < p: numerator and denominator are units.
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::uint64_t i = 0; i < kj; ++i) {
      num = num * ((nj - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    result = result * num % p * arith::pow_mod(den, p - 2, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

UPoly u_poly_from_exponents(std::uint32_t p, std::span<const std::uint64_t> exponents) {
  UPoly u;
  u.p = p;
  if (exponents.empty()) {
    u.coeffs = {1};
    return u;
  }
  const std::uint64_t top = *std::min_element(exponents.begin(), exponents.end());
  const bool odd_rank = exponents.size() % 2 == 1;
  u.coeffs.assign(top + 1, 0);
  for (std::uint64_t r = 0; r <= top; ++r) {
    std::uint64_t prod = 1;
    for (std::uint64_t e : exponents) {
      prod = prod * binomial_mod_p(e, r, p) % p;
      if (prod == 0) break;
    }
    // (-1)^{nr} is -1 exactly when n and r are both odd.
    if (odd_rank && r % 2 == 1) prod = (p - prod) % p;
    u.coeffs[r] = static_cast<std::uint32_t>(prod);
  }
  fp_poly::trim(u.coeffs);
  return u;
}

UPoly u_poly(const HypergeometricDatum& datum) {
  std::vector<std::uint64_t> e(datum.c().begin(), datum.c().end());
  return u_poly_from_exponents(datum.p(), e);
}

arith::Elem evaluate(const arith::ExtField& field, const UPoly& u, arith::Elem x) {
  if (field.p() != u.p) throw Error(ErrorKind::FieldMismatch, "polynomial and field characteristics differ");
  field.check(x);
  arith::Elem acc = 0;
  for (std::size_t i = u.coeffs.size(); i-- > 0;) acc = field.add(field.mul(acc, x), u.coeffs[i]);
  return acc;
}

bool u_factorization_check(const HypergeometricDatum& datum, int m) {
  if (m < 1) throw Error(ErrorKind::MalformedInput, "m must be >= 1");
  const std::uint32_t p = datum.p();
  std::uint64_t repunit = 0;
  std::uint64_t pj = 1;
  for (int j = 0; j < m; ++j) {
    repunit += pj;
    pj *= p;
  }
  std::vector<std::uint64_t> tilde;
  for (int ci : datum.c()) tilde.push_back(static_cast<std::uint64_t>(ci) * repunit);
  const UPoly lhs = u_poly_from_exponents(p, tilde);

  const UPoly base = u_poly(datum);
  fp_poly::Poly rhs{1};
  std::uint64_t power = 1;
  for (int j = 0; j < m; ++j) {
    rhs = fp_poly::mul(rhs, fp_poly::pow(base.coeffs, power, p), p);
    power *= p;
  }
  return lhs.coeffs == rhs;
}

// ---------------------------------------------------------------------------

PointSpec::PointSpec(arith::FieldPtr field, arith::Elem x) : field_(std::move(field)), x_(x) {
  field_->check(x_);
  if (x_ == 0 || x_ == 1) {
    throw Error(ErrorKind::MalformedInput, "x must lie in G_m minus {1}");
  }
  if (field_->degree_of(x_) != field_->degree()) {
    throw Error(ErrorKind::MalformedInput,
                "x = " + std::to_string(x_) + " has degree " + std::to_string(field_->degree_of(x_)) +
                    ", not " + std::to_string(field_->degree()));
  }
}

PointSpec PointSpec::canonical(arith::FieldPtr field, arith::Elem x) {
  const arith::Elem rep = field->degree() == 1 ? x : field->canonical(x);
  return {std::move(field), rep};
}

std::uint32_t u_norm_eval(const HypergeometricDatum& datum, const PointSpec& point) {
  if (point.field().p() != datum.p()) {
    throw Error(ErrorKind::FieldMismatch, "point and datum live over different primes");
  }
  return point.field().norm(evaluate(point.field(), u_poly(datum), point.x()));
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::Full: return "full";
    case Strategy::DetCompletion: return "det";
    case Strategy::SelfDual: return "selfdual";
    case Strategy::DualPair: return "dualpair";
  }
  return "auto";
}

Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::Auto;
  if (s == "full") return Strategy::Full;
  if (s == "det") return Strategy::DetCompletion;
  if (s == "selfdual") return Strategy::SelfDual;
  if (s == "dualpair") return Strategy::DualPair;
  throw Error(ErrorKind::MalformedInput, "unknown strategy '" + s + "'");
}

}  // namespace isoslope::hyper
