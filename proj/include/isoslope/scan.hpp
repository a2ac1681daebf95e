#pragma once

// Counterexample searches over families of hypergeometric data.

#include <atomic>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isoslope/hyper.hpp"

namespace isoslope::scan {

// Checkpoint key of one closed point.
struct PointKey {
  std::uint32_t p = 0;
  std::vector<int> c;  // sorted
  int degree = 1;
  std::uint64_t rep_dlog = 0;
  auto operator<=>(const PointKey&) const = default;
};

struct PointRecord {
  PointKey key;
  arith::Elem x = 0;  // canonical representative, base-p encoding
  hyper::SlopeReport report;
};

struct ScanOptions {
  int workers = 0;  // 0: OpenMP default
  std::optional<std::filesystem::path> checkpoint;
  const std::atomic<bool>* stop = nullptr;  // polled between points
  hyper::SlopeOptions slope;
};

// Canonical representatives of the closed points of degree m in G_m \ {1},
// in increasing encoding.
std::vector<arith::Elem> closed_points(const arith::ExtField& field);

// All closed points of degree <= m_max, ordered by degree, then encoding.
// Throws Interrupted after flushing the checkpoint when *stop is raised.
std::vector<PointRecord> scan_points(const hyper::HypergeometricDatum& datum, int m_max,
                                     const ScanOptions& options = {}, hyper::Workspace* workspace = nullptr);

struct TripleGapCheck {
  std::uint32_t p = 0;
  int c3 = 0;
  arith::Elem expected = 0;          // -(2 c3)^{-1} mod p
  std::vector<arith::Elem> found;    // degree-1 points with a_1 - a_2 > 1
  bool top_slope_is_two = false;     // a_1 = 2 at the expected point
  bool passed = false;               // found == {expected}
};

// Checks c = (1, p-2, c3) over the degree-1 points. Throws PrimeTooSmall for
// p < 5, NotPrime, and InvalidC3 for c3 outside [1, p-2] or c3 = (p-1)/2.
TripleGapCheck check_triple_gap(std::uint32_t p, int c3, const ScanOptions& options = {},
                                hyper::Workspace* workspace = nullptr);
bool verify_triple_gap(std::uint32_t p, int c3);
// Same check on records already computed for (1, p-2, c3).
TripleGapCheck triple_gap_from_records(std::uint32_t p, int c3, const std::vector<PointRecord>& records);

enum class FamilyKind { Quintic, TripleGap, Explicit };
std::string to_string(FamilyKind kind);
FamilyKind parse_family(const std::string& text);  // quintic|triplegap|explicit

struct FamilySpec {
  FamilyKind kind = FamilyKind::Quintic;
  std::uint32_t p_lo = 3;
  std::uint32_t p_hi = 3;
  int m_max = 1;
  std::vector<int> c;  // Explicit only
};

// Data of the family in scan order: by p, then by c. Explicit skips primes
// where some c_i falls outside [1, p-2].
std::vector<hyper::HypergeometricDatum> family_data(const FamilySpec& spec);

enum class ViolationStatus { Published, Discovery };
std::string to_string(ViolationStatus status);  // "published" | "discovery"

struct Violation {
  PointKey key;
  arith::Elem x = 0;
  Rational max_gap;
  ViolationStatus status = ViolationStatus::Discovery;
};

struct DatumScan {
  hyper::HypergeometricDatum datum;
  std::vector<PointRecord> points;
  std::optional<TripleGapCheck> triple_gap;  // TripleGap family only
};

struct CounterexampleReport {
  FamilySpec spec;
  std::vector<DatumScan> data;
  std::vector<Violation> violations;
  bool triple_gap_all_passed = true;
};

// Points with gaps > 1 whose slopes appear in the literature: p = 31 quintic
// at x = 4, 17, and the (1, p-2, c3) point -(2 c3)^{-1}.
bool is_published(const hyper::HypergeometricDatum& datum, const PointRecord& record);

CounterexampleReport scan_family(const FamilySpec& spec, const ScanOptions& options = {});

// One-line human summary.
std::string summarize(const CounterexampleReport& report);

}  // namespace isoslope::scan
