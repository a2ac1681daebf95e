#pragma once

// Dense polynomials over F_p, low degree first, no trailing zeros
// (the zero polynomial is the empty vector).

#include <cstdint>
#include <vector>

namespace isoslope::fp_poly {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a);
Poly add(const Poly& a, const Poly& b, std::uint32_t p);
Poly sub(const Poly& a, const Poly& b, std::uint32_t p);
Poly mul(const Poly& a, const Poly& b, std::uint32_t p);
Poly pow(Poly a, std::uint64_t e, std::uint32_t p);
// Remainder of a modulo a nonzero b.
Poly mod(Poly a, const Poly& b, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p);
Poly pow_mod(Poly a, std::uint64_t e, const Poly& m, std::uint32_t p);

// Rabin's test: f monic of degree m >= 1 is irreducible iff
// X^{p^m} = X mod f and gcd(X^{p^{m/l}} - X, f) = 1 for every prime l | m.
bool is_irreducible(const Poly& f, std::uint32_t p);

}  // namespace isoslope::fp_poly
