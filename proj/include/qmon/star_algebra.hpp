#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qmon/psd.hpp"
#include "qmon/subspace.hpp"

namespace qmon {

/// A unital *-subalgebra of M_d over GQ, held as the canonical (row-reduced)
/// span of its flattened matrices in GQ^{d*d}.
class StarAlgebra {
 public:
  StarAlgebra() = default;
  std::size_t ambient_dim() const noexcept { return d_; }
  std::size_t dim() const noexcept { return span_.rank(); }
  /// Linearly independent basis, in canonical order.
  const std::vector<GQMatrix>& basis() const noexcept { return basis_; }
  const Subspace& span() const noexcept { return span_; }
  bool contains(const GQMatrix& x) const;
  bool leq(const StarAlgebra& other) const { return span_.leq(other.span_); }
  friend bool operator==(const StarAlgebra& a, const StarAlgebra& b) { return a.span_ == b.span_; }

  /// Wraps a span that is already known to be a unital *-algebra.
  static StarAlgebra from_span(std::size_t d, Subspace span);

 private:
  std::size_t d_ = 0;
  Subspace span_;
  std::vector<GQMatrix> basis_;
};

/// Closure of generators ∪ {1} under adjoint, product and linear span.
StarAlgebra build_algebra(std::size_t d, const std::vector<GQMatrix>& generators);
StarAlgebra full_algebra(std::size_t d);
StarAlgebra scalar_algebra(std::size_t d);
/// {x : xm = mx for all m in M}.
StarAlgebra commutant(const StarAlgebra& m);
/// M ∩ M'.
StarAlgebra center(const StarAlgebra& m);
StarAlgebra intersect(const StarAlgebra& a, const StarAlgebra& b);
/// {a ⊗ b : a ∈ A, b ∈ B} spanned.
StarAlgebra tensor_algebra(const StarAlgebra& a, const StarAlgebra& b);

bool is_projection(const GQMatrix& p);
/// PreconditionError(NotProjection) otherwise.
void require_projection(const GQMatrix& p);
/// Projection onto the span of a single vector.
GQMatrix rank_one_projection(const GQVector& v);
/// q ≤ p as projections (range inclusion).
bool projection_leq(const GQMatrix& q, const GQMatrix& p);

/// Least projection of M above p: the projection onto the smallest
/// M'-invariant subspace containing the range of p.
GQMatrix exists_alg(const StarAlgebra& m, const GQMatrix& p);

struct RangeProjection {
  GQMatrix p;
  bool dominates = false;       // x ≤ P(x), needs ‖x‖ ≤ 1
  bool fixes = false;           // P(x) x = x
  std::optional<std::vector<GQ>> polynomial;  // P(x) = Σ c_k x^k, k = 0..d
};
/// PreconditionError(NotPSD) with the refuting vector as witness data.
RangeProjection range_projection(const GQMatrix& x);

/// Trace-orthogonal projection of x onto N (Gram matrix of the basis).
GQMatrix conditional_expectation(const StarAlgebra& n, const GQMatrix& x);

struct ExpectationCheck {
  bool identity_on_n = true;
  bool trace_preserving = true;
  bool unital = true;
  bool idempotent = true;
  bool bimodule = true;
  bool positive = true;
  std::string failed;
  bool ok() const { return identity_on_n && trace_preserving && unital && idempotent && bimodule && positive; }
};
/// Checks E_N on the basis of N, the matrix units of M_d and `samples`
/// seeded rank-one projections (positivity by PSD certificate).
ExpectationCheck verify_conditional_expectation(const StarAlgebra& n, std::uint64_t seed, std::size_t samples = 8);

struct ExpectationRange {
  GQMatrix exists_p;       // ∃_N p
  GQMatrix range_of_e;     // P(E_N p)
  GQMatrix exists_range;   // ∃_N P(E_N p)
  bool all_equal = false;
};
ExpectationRange check_exists_equals_range_of_expectation(const StarAlgebra& n, const GQMatrix& p);

struct PimsnerPopa {
  bool holds = false;
  GQMatrix difference;  // E_N(x) - λ x
  PSDCertificate certificate;
};
/// E_N(x) - λ x ≥ 0, for x positive (PreconditionError otherwise), 0 < λ ≤ 1.
PimsnerPopa check_pimsner_popa(const StarAlgebra& n, const GQMatrix& x, const GQ& lambda);

/// Least central projection of M above p ∈ M. PreconditionError(NotInAlgebra).
GQMatrix central_carrier(const StarAlgebra& m, const GQMatrix& p);

/// Seeded integer vectors and projections for sampling.
class MatrixSampler {
 public:
  explicit MatrixSampler(std::uint64_t seed) : rng_(seed) {}
  GQVector vector(std::size_t d, bool complex = false);
  GQMatrix rank_one(std::size_t d, bool complex = false);
  /// Projections of M: range projections of E_M(rank-one), and their complements.
  std::vector<GQMatrix> projections_of(const StarAlgebra& m, std::size_t count);

 private:
  std::mt19937_64 rng_;
};

struct CommutingSquare {
  bool inclusions = false;        // K ⊆ M ∩ N, M, N ⊆ L
  bool expectations_commute = false;
  std::optional<GQMatrix> witness;  // basis element of L where E_M E_N ≠ E_N E_M
  std::optional<bool> quantifiers_commute;  // only tested when expectations commute
  std::optional<GQMatrix> quantifier_witness;
  std::size_t projections_tested = 0;
  bool intersection_is_k = false;
};
CommutingSquare check_commuting_square(const StarAlgebra& k, const StarAlgebra& m, const StarAlgebra& n,
                                       const StarAlgebra& l, std::uint64_t seed, std::size_t samples = 20);

/// Finite matrix-unit helpers.
GQMatrix matrix_unit(std::size_t d, std::size_t r, std::size_t c);
GQMatrix bell_projection();

struct GapSearch {
  std::size_t inclusions = 0;
  std::size_t projections = 0;
  std::size_t gaps = 0;
  std::vector<std::string> log;
};
/// Compares ∃_N p with P(E_N p) over a fixed family of inclusions N ⊆ M_d.
GapSearch search_expectation_gap(std::size_t d, std::uint64_t seed, std::size_t per_inclusion = 6);

}  // namespace qmon
