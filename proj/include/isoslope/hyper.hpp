#pragma once

// Hypergeometric local systems E_c on G_m \ {1} over F_p with trivial
// lower characters: the mod-p polynomial u_c, Frobenius traces, coefficient
// valuations of the Frobenius characteristic polynomial, and slopes.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "isoslope/arith.hpp"
#include "isoslope/fp_poly.hpp"
#include "isoslope/padic.hpp"
#include "isoslope/polygon.hpp"

namespace isoslope::hyper {

class HypergeometricDatum {
 public:
  // Throws InvalidDatum unless p >= 3 is prime, c is nonempty and every
  // entry lies in [1, p-2]. The exponents are stored sorted.
  HypergeometricDatum(std::uint32_t p, std::vector<int> c);

  std::uint32_t p() const noexcept { return p_; }
  std::span<const int> c() const noexcept { return c_; }
  int rank() const noexcept { return static_cast<int>(c_.size()); }
  bool is_self_dual() const;
  std::string describe() const;  // "p=31 c=6,12,18,24"

  bool operator==(const HypergeometricDatum&) const = default;
  auto operator<=>(const HypergeometricDatum&) const = default;

 private:
  std::uint32_t p_;
  std::vector<int> c_;
};

// c'_i = p - 1 - c_i.
HypergeometricDatum dual_datum(const HypergeometricDatum& datum);

// u_c(X) = sum_r (-1)^{nr} prod_i binom(c_i, r) X^r over F_p.
struct UPoly {
  std::uint32_t p = 0;
  fp_poly::Poly coeffs;  // coeffs[0] == 1
};

UPoly u_poly(const HypergeometricDatum& datum);
// Same defining sum for arbitrary nonnegative exponents; binomials by Lucas.
UPoly u_poly_from_exponents(std::uint32_t p, std::span<const std::uint64_t> exponents);
std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);
arith::Elem evaluate(const arith::ExtField& field, const UPoly& u, arith::Elem x);

// Checks u_{c~}(X) = prod_{j<m} u_c(X)^{p^j} in F_p[X], c~_i = c_i (1 + p + ... + p^{m-1}).
bool u_factorization_check(const HypergeometricDatum& datum, int m);

// A closed point of G_m \ {1}: x of exact degree m over F_p, viewed in F_{p^m}.
class PointSpec {
 public:
  // Throws MalformedInput when x is 0 or 1 or does not generate the field.
  PointSpec(arith::FieldPtr field, arith::Elem x);
  // Same point, replaced by the Frobenius conjugate of smallest discrete log.
  static PointSpec canonical(arith::FieldPtr field, arith::Elem x);

  const arith::ExtField& field() const noexcept { return *field_; }
  const arith::FieldPtr& field_ptr() const noexcept { return field_; }
  arith::Elem x() const noexcept { return x_; }
  int degree() const noexcept { return field_->degree(); }

 private:
  arith::FieldPtr field_;
  arith::Elem x_;
};

// N_{F_{p^m}/F_p}(u_c(x)).
std::uint32_t u_norm_eval(const HypergeometricDatum& datum, const PointSpec& point);

enum class Strategy { Auto, Full, DetCompletion, SelfDual, DualPair };
enum class TraceEngine { Convolution, Enumeration };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& s);  // full|det|selfdual|dualpair|auto

// Frobenius traces of one datum over F_{p^K}, restricted to the subfield
// F_{p^d}; the values are indexed by discrete log in F_{p^d}.
class TraceTable {
 public:
  TraceTable(arith::FieldPtr subfield, std::uint32_t p, int precision, std::vector<mpz_class> values);
  PadicResidue at(arith::Elem x) const;  // x in the subfield, x != 0

 private:
  arith::FieldPtr subfield_;
  std::uint32_t p_;
  int precision_;
  std::vector<mpz_class> values_;
};

// Shared, thread-safe cache of fields and trace tables.
class Workspace {
 public:
  explicit Workspace(int threads = 0) : threads_(threads) {}

  arith::FieldPtr field(std::uint32_t p, int m);
  // Traces over F_{p^total_degree} at the points of F_{p^sub_degree}.
  std::shared_ptr<const TraceTable> traces(const HypergeometricDatum& datum, int total_degree,
                                           int sub_degree, int precision);
  int threads() const noexcept { return threads_; }

 private:
  int threads_;
  std::mutex mutex_;
  std::map<std::pair<std::uint32_t, int>, arith::FieldPtr> fields_;
  std::map<std::tuple<HypergeometricDatum, int, int, int>, std::shared_ptr<const TraceTable>> tables_;
};

// Frobenius trace of F_x^j on the stalk at x:
// (-1)^{n-1} sum_{x_1...x_n = x} prod_i tau(N(1 - x_i))^{c_i}, over F_{p^{mj}}.
PadicResidue frobenius_trace(const HypergeometricDatum& datum, const PointSpec& point, int j,
                             int precision, TraceEngine engine = TraceEngine::Convolution,
                             Workspace* workspace = nullptr);

struct CharPolyData {
  int n = 0;
  int m = 0;
  Strategy strategy = Strategy::Full;
  int precision = 0;
  std::vector<Valuation> valuations;                // index 0..n
  std::vector<std::optional<PadicResidue>> residues;  // b_r where computed directly
  std::vector<std::optional<PadicResidue>> dual_residues;  // DualPair only
};

int default_precision(Strategy strategy, int n, int m);
// Largest trace power j the strategy reads (per datum; DualPair reads c and c').
int traces_needed(Strategy strategy, int n);
Strategy resolve_strategy(Strategy requested, const HypergeometricDatum& datum);

CharPolyData char_poly_valuations(const HypergeometricDatum& datum, const PointSpec& point,
                                  Strategy strategy, int precision, Workspace* workspace = nullptr);

struct GapProfile {
  std::vector<Rational> gaps;  // a_i - a_{i+1}
  Rational max_gap;
  bool violates_small_gaps = false;
};

GapProfile gap_profile(const polygon::SlopeVector& slopes);

struct SlopeOptions {
  Strategy strategy = Strategy::Auto;
  std::optional<int> precision;  // nullopt: default_precision()
  bool allow_fast_path = true;
};

struct SlopeReport {
  arith::Elem x = 0;
  int degree = 1;
  polygon::SlopeVector slopes;
  GapProfile gaps;
  bool u_c_zero = false;
  bool u_cdual_zero = false;
  bool fast_path = false;
  Strategy strategy = Strategy::Auto;  // strategy actually run (Auto when fast path)
  int precision = 0;                   // 0 when fast path
  std::vector<Valuation> valuations;   // empty when fast path
};

SlopeReport slopes_at_point(const HypergeometricDatum& datum, const PointSpec& point,
                            const SlopeOptions& options = {}, Workspace* workspace = nullptr);

}  // namespace isoslope::hyper
