#include <doctest.h>

#include <random>
#include <set>

#include "isoslope/kernels.hpp"
#include "oracles.hpp"

using namespace isoslope;

TEST_CASE("convolution kernels agree with the serial reference") {
  std::mt19937_64 rng(11);
  for (std::size_t len : {1u, 2u, 7u, 48u, 120u, 337u}) {
    const std::uint64_t mod = (std::uint64_t{1} << 62) + 57;
    std::vector<std::uint64_t> a(len), b(len);
    for (auto& x : a) x = rng() % mod;
    for (auto& x : b) x = rng() % mod;
    const kernels::U64Ring ring{mod};
    const auto ref = kernels::cyclic_convolve_reference(ring, a, b);

    // Direct 128-bit check of one entry.
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < len; ++i) acc = (acc + static_cast<unsigned __int128>(a[i]) * b[(len - i) % len]) % mod;
    CHECK(ref[0] == static_cast<std::uint64_t>(acc));

    std::vector<std::uint64_t> all(len);
    for (std::size_t s = 0; s < len; ++s) all[s] = s;
    CHECK(kernels::cyclic_convolve_at(ring, a, b, all, 1) == ref);
    CHECK(kernels::cyclic_convolve_at(ring, a, b, all, 4) == ref);
    std::vector<std::uint64_t> some{len - 1, 0, len / 2};
    const auto sel = kernels::cyclic_convolve_at(ring, a, b, some, 0);
    for (std::size_t k = 0; k < some.size(); ++k) CHECK(sel[k] == ref[some[k]]);
  }
}

TEST_CASE("big-modulus kernels") {
  std::mt19937_64 rng(12);
  const mpz_class mod = oracle::ipow(31, 40);
  for (std::size_t len : {1u, 5u, 60u}) {
    std::vector<mpz_class> a(len), b(len);
    for (auto& x : a) x = oracle::mod(mpz_class(static_cast<unsigned long>(rng())) * rng() * rng(), mod);
    for (auto& x : b) x = oracle::mod(mpz_class(static_cast<unsigned long>(rng())) * rng() * rng(), mod);
    const kernels::BigRing ring{mod};
    const auto ref = kernels::cyclic_convolve_reference(ring, a, b);
    for (std::size_t s = 0; s < len; ++s) {
      mpz_class acc = 0;
      for (std::size_t i = 0; i < len; ++i) acc += a[i] * b[(s + len - i) % len];
      CHECK(ref[s] == oracle::mod(acc, mod));
    }
    std::vector<std::uint64_t> all(len);
    for (std::size_t s = 0; s < len; ++s) all[s] = s;
    CHECK(kernels::cyclic_convolve_at(ring, a, b, all, 1) == ref);
    CHECK(kernels::cyclic_convolve_at(ring, a, b, all, 3) == ref);
  }
}

TEST_CASE("Frobenius orbits on discrete logs") {
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {5, 2}, {2, 4}, {7, 3}}) {
    std::uint64_t len = 1;
    for (int i = 0; i < k; ++i) len *= p;
    len -= 1;
    const auto idx = kernels::frobenius_orbits(len, p);
    std::set<std::uint64_t> reps;
    for (std::uint64_t s = 0; s < len; ++s) {
      std::uint64_t best = s, t = s;
      for (int i = 0; i < k; ++i) {
        t = t * p % len;
        best = std::min(best, t);
      }
      reps.insert(best);
      CHECK(idx.reps[idx.slot_of[s]] == best);
    }
    CHECK(std::vector<std::uint64_t>(reps.begin(), reps.end()) == idx.reps);
  }
}
