#pragma once

#include <optional>
#include <vector>

#include "qmon/gq_matrix.hpp"

namespace qmon {

/// Outcome of an exact positive-semidefiniteness test on a Hermitian matrix.
/// When psd, A = Σ_k d_k l_k l_k^* with d_k > 0 (pivoted LDL*). Otherwise
/// `witness` is a vector v with v^* A v = `value` < 0.
struct PSDCertificate {
  bool psd = false;
  std::vector<std::size_t> pivots;
  std::vector<GQ> d;
  std::vector<GQVector> l;
  std::optional<GQVector> witness;
  GQ value;
};

/// PreconditionError(NotHermitian) for non-Hermitian input.
PSDCertificate psd_certificate(const GQMatrix& a);
bool is_psd(const GQMatrix& a);
/// Re-derives the claim from the certificate alone.
bool verify_certificate(const GQMatrix& a, const PSDCertificate& c);

/// v^* A v.
GQ quadratic_form(const GQMatrix& a, const GQVector& v);

}  // namespace qmon
