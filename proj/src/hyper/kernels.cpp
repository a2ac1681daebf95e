#include "isoslope/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace isoslope::kernels {

namespace {

using u128 = unsigned __int128;

// How many products (M-1)^2 fit into a 128-bit accumulator.
std::size_t lazy_batch(std::uint64_t modulus) {
  const u128 sq = u128{modulus - 1} * (modulus - 1);
  if (sq == 0) return std::numeric_limits<std::size_t>::max();
  const u128 fit = std::numeric_limits<u128>::max() / sq - 1;
  return fit > std::numeric_limits<std::size_t>::max() ? std::numeric_limits<std::size_t>::max()
                                                       : static_cast<std::size_t>(fit);
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b || a == 0) throw std::invalid_argument("cyclic convolution needs equal nonzero lengths");
}

// rev[k] = b[(L-1-k) mod L] for k < 2L-1, so that b[(s-i) mod L] = rev[L-1-s+i].
template <class T>
std::vector<T> reversed_double(std::span<const T> b) {
  const std::size_t len = b.size();
  std::vector<T> rev(2 * len - 1);
  for (std::size_t k = 0; k < rev.size(); ++k) {
    const std::size_t src = (len - 1 + len - k % len) % len;
    rev[k] = b[src];
  }
  return rev;
}

std::uint64_t dot_mod(const std::uint64_t* a, const std::uint64_t* r, std::size_t len,
                      std::uint64_t modulus, std::size_t batch) {
  u128 acc = 0;
  std::size_t i = 0;
  while (i < len) {
    const std::size_t end = std::min(len, i + batch);
    for (; i < end; ++i) acc += u128{a[i]} * r[i];
    acc %= modulus;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::vector<std::uint64_t> cyclic_convolve_reference(const U64Ring& ring,
                                                     std::span<const std::uint64_t> a,
                                                     std::span<const std::uint64_t> b) {
  check_lengths(a.size(), b.size());
  const std::size_t len = a.size();
  std::vector<std::uint64_t> out(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < len; ++j) {
      const std::size_t s = (i + j) % len;
      out[s] = static_cast<std::uint64_t>((u128{a[i]} * b[j] + out[s]) % ring.modulus);
    }
  }
  return out;
}

std::vector<mpz_class> cyclic_convolve_reference(const BigRing& ring, std::span<const mpz_class> a,
                                                 std::span<const mpz_class> b) {
  check_lengths(a.size(), b.size());
  const std::size_t len = a.size();
  std::vector<mpz_class> out(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < len; ++j) {
      const std::size_t s = (i + j) % len;
      mpz_addmul(out[s].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  for (auto& v : out) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), ring.modulus.get_mpz_t());
  return out;
}

std::vector<std::uint64_t> cyclic_convolve_at(const U64Ring& ring, std::span<const std::uint64_t> a,
                                              std::span<const std::uint64_t> b,
                                              std::span<const std::uint64_t> outputs, int threads) {
  check_lengths(a.size(), b.size());
  if (ring.modulus >= kU64RingLimit) throw std::invalid_argument("U64Ring modulus too large");
  const std::size_t len = a.size();
  const auto rev = reversed_double(b);
  const std::size_t batch = lazy_batch(ring.modulus);
  std::vector<std::uint64_t> out(outputs.size(), 0);
  const auto count = static_cast<std::int64_t>(outputs.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1 && count > 1)
  for (std::int64_t k = 0; k < count; ++k) {
    const std::size_t s = outputs[k] % len;
    out[k] = dot_mod(a.data(), rev.data() + (len - 1 - s), len, ring.modulus, batch);
  }
  return out;
}

std::vector<mpz_class> cyclic_convolve_at(const BigRing& ring, std::span<const mpz_class> a,
                                          std::span<const mpz_class> b,
                                          std::span<const std::uint64_t> outputs, int threads) {
  check_lengths(a.size(), b.size());
  const std::size_t len = a.size();
  const auto rev = reversed_double(b);
  std::vector<mpz_class> out(outputs.size());
  const auto count = static_cast<std::int64_t>(outputs.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads) if (nthreads > 1 && count > 1)
  for (std::int64_t k = 0; k < count; ++k) {
    const std::size_t s = outputs[k] % len;
    const mpz_class* r = rev.data() + (len - 1 - s);
    mpz_class acc = 0;
    for (std::size_t i = 0; i < len; ++i) mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), r[i].get_mpz_t());
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), ring.modulus.get_mpz_t());
    out[k] = std::move(acc);
  }
  return out;
}

OrbitIndex frobenius_orbits(std::uint64_t length, std::uint32_t p) {
  OrbitIndex idx;
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  idx.slot_of.assign(length, kUnset);
  for (std::uint64_t s = 0; s < length; ++s) {
    if (idx.slot_of[s] != kUnset) continue;
    const auto slot = static_cast<std::uint32_t>(idx.reps.size());
    idx.reps.push_back(s);
    std::uint64_t t = s;
    do {
      idx.slot_of[t] = slot;
      t = static_cast<std::uint64_t>(u128{t} * p % length);
    } while (t != s);
  }
  return idx;
}

}  // namespace isoslope::kernels
