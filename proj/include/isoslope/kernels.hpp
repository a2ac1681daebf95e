#pragma once

// Cyclic convolution kernels over Z/M, the hot loop of the trace engine.
//
// Two value representations: U64Ring for moduli below 2^63 (products are
// accumulated lazily in 128 bits), BigRing for anything larger. Each comes
// with a serial full-length reference and an OpenMP kernel that evaluates
// only selected output indices.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

namespace isoslope::kernels {

struct U64Ring {
  std::uint64_t modulus;  // < 2^63
};

struct BigRing {
  mpz_class modulus;
};

inline constexpr std::uint64_t kU64RingLimit = std::uint64_t{1} << 63;

// out[s] = sum_i a[i] * b[(s - i) mod L] for every s, schoolbook, one thread.
std::vector<std::uint64_t> cyclic_convolve_reference(const U64Ring& ring,
                                                     std::span<const std::uint64_t> a,
                                                     std::span<const std::uint64_t> b);
std::vector<mpz_class> cyclic_convolve_reference(const BigRing& ring, std::span<const mpz_class> a,
                                                 std::span<const mpz_class> b);

// The same sum, evaluated only at the requested output indices. threads <= 0
// uses the OpenMP default; threads == 1 runs serially.
std::vector<std::uint64_t> cyclic_convolve_at(const U64Ring& ring, std::span<const std::uint64_t> a,
                                              std::span<const std::uint64_t> b,
                                              std::span<const std::uint64_t> outputs,
                                              int threads = 0);
std::vector<mpz_class> cyclic_convolve_at(const BigRing& ring, std::span<const mpz_class> a,
                                          std::span<const mpz_class> b,
                                          std::span<const std::uint64_t> outputs, int threads = 0);

// Orbits of Z/L under s -> p*s (Frobenius acting on discrete logs of
// F_{p^k}^x, L = p^k - 1). rep_of[s] is the smallest member of the orbit of s.
struct OrbitIndex {
  std::vector<std::uint64_t> reps;     // increasing
  std::vector<std::uint32_t> slot_of;  // slot_of[s] = position of rep_of(s) in reps
};
OrbitIndex frobenius_orbits(std::uint64_t length, std::uint32_t p);

}  // namespace isoslope::kernels
