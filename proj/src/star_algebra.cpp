#include "qmon/star_algebra.hpp"

#include <sstream>

#include "qmon/errors.hpp"

namespace qmon {

namespace {

GQVector flat(const GQMatrix& x) { return x.data(); }

GQMatrix unflat(std::size_t d, std::span<const GQ> v) { return GQMatrix::from_data(d, d, {v.begin(), v.end()}); }

void require_square(std::size_t d, const GQMatrix& x) {
  if (x.rows() != d || x.cols() != d) throw PreconditionError("DimensionMismatch", "matrix is not " + std::to_string(d) + "x" + std::to_string(d));
}

// Any solution of a x = b, or nullopt when inconsistent.
std::optional<GQVector> solve_any(const GQMatrix& a, const GQVector& b) {
  GQMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  GQVector x(a.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, a.cols());
  return x;
}

GQMatrix exists_via_commutant(const StarAlgebra& mc, const GQMatrix& p) {
  require_projection(p);
  Subspace v = column_space(p);
  for (;;) {
    std::vector<GQVector> rows;
    for (std::size_t r = 0; r < v.rank(); ++r) {
      GQVector u = v.basis().row_vector(r);
      for (const auto& c : mc.basis()) rows.push_back(c * u);
    }
    Subspace next = rows.empty() ? v : join(v, Subspace::span(p.rows(), rows));
    if (next == v) break;
    v = std::move(next);
  }
  return projection_matrix(v);
}

}  // namespace

bool StarAlgebra::contains(const GQMatrix& x) const {
  if (x.rows() != d_ || x.cols() != d_) return false;
  return span_.contains(x.data());
}

StarAlgebra StarAlgebra::from_span(std::size_t d, Subspace span) {
  StarAlgebra a;
  a.d_ = d;
  a.span_ = std::move(span);
  for (std::size_t r = 0; r < a.span_.rank(); ++r) a.basis_.push_back(unflat(d, a.span_.basis().row(r)));
  return a;
}

StarAlgebra build_algebra(std::size_t d, const std::vector<GQMatrix>& generators) {
  if (d == 0) throw PreconditionError("DimensionTooSmall", "matrix size must be positive");
  if (d * d > kMaxAmbientDim) throw SizeGuardError("matrix algebras are limited to d*d <= " + std::to_string(kMaxAmbientDim));
  std::vector<GQMatrix> mats;
  std::vector<GQVector> rows;
  Subspace span = Subspace::zero(d * d);
  auto add_one = [&](const GQMatrix& x) {
    if (span.contains(x.data())) return;
    mats.push_back(x);
    rows.push_back(flat(x));
    span = Subspace::span(d * d, rows);
  };
  auto add = [&](const GQMatrix& x) {
    add_one(x);
    add_one(x.adjoint());
  };
  add(GQMatrix::identity(d));
  for (const auto& g : generators) {
    require_square(d, g);
    add(g);
  }
  for (std::size_t i = 0; i < mats.size() && span.rank() < d * d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      add(mats[i] * mats[j]);
      add(mats[j] * mats[i]);
    }
  return StarAlgebra::from_span(d, span);
}

StarAlgebra full_algebra(std::size_t d) { return StarAlgebra::from_span(d, Subspace::full(d * d)); }

StarAlgebra scalar_algebra(std::size_t d) { return build_algebra(d, {}); }

StarAlgebra commutant(const StarAlgebra& m) {
  const std::size_t d = m.ambient_dim();
  GQMatrix eq(m.basis().size() * d * d, d * d);
  std::size_t row = 0;
  for (const auto& b : m.basis())
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c, ++row)
        for (std::size_t s = 0; s < d; ++s) {
          eq(row, r * d + s) += b(s, c);  // (x b)_{rc}
          eq(row, s * d + c) -= b(r, s);  // (b x)_{rc}
        }
  return StarAlgebra::from_span(d, Subspace::span(nullspace(eq)));
}

StarAlgebra intersect(const StarAlgebra& a, const StarAlgebra& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw PreconditionError("DimensionMismatch", "algebras act on different spaces");
  return StarAlgebra::from_span(a.ambient_dim(), meet(a.span(), b.span()));
}

StarAlgebra center(const StarAlgebra& m) { return intersect(m, commutant(m)); }

StarAlgebra tensor_algebra(const StarAlgebra& a, const StarAlgebra& b) {
  const std::size_t d = a.ambient_dim() * b.ambient_dim();
  if (d * d > kMaxAmbientDim) throw SizeGuardError("tensor product too large");
  std::vector<GQVector> rows;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) rows.push_back(flat(kron(x, y)));
  return StarAlgebra::from_span(d, Subspace::span(d * d, rows));
}

bool is_projection(const GQMatrix& p) { return p.is_square() && p.is_hermitian() && p * p == p; }

void require_projection(const GQMatrix& p) {
  if (!is_projection(p)) throw PreconditionError("NotProjection", "matrix is not a self-adjoint idempotent");
}

GQMatrix rank_one_projection(const GQVector& v) {
  const GQ n = inner(v, v);
  if (n.is_zero()) throw PreconditionError("DimensionMismatch", "zero vector has no projection");
  return GQMatrix::outer(v, v) * n.inverse();
}

bool projection_leq(const GQMatrix& q, const GQMatrix& p) { return p * q == q; }

GQMatrix exists_alg(const StarAlgebra& m, const GQMatrix& p) {
  require_square(m.ambient_dim(), p);
  return exists_via_commutant(commutant(m), p);
}

RangeProjection range_projection(const GQMatrix& x) {
  auto cert = psd_certificate(x);
  if (!cert.psd) {
    std::ostringstream os;
    os << "matrix is not positive semidefinite; v*xv = " << cert.value << " at v = [";
    for (std::size_t k = 0; k < cert.witness->size(); ++k) os << (k ? " " : "") << (*cert.witness)[k];
    os << "]";
    throw PreconditionError("NotPSD", os.str());
  }
  const std::size_t d = x.rows();
  RangeProjection r;
  r.p = projection_matrix(column_space(x));
  r.dominates = is_psd(r.p - x);
  r.fixes = r.p * x == x;
  GQMatrix powers(d * d, d + 1);
  GQMatrix xk = GQMatrix::identity(d);
  for (std::size_t k = 0; k <= d; ++k) {
    for (std::size_t e = 0; e < d * d; ++e) powers(e, k) = xk.data()[e];
    xk = xk * x;
  }
  if (auto c = solve_any(powers, r.p.data())) r.polynomial = std::move(*c);
  return r;
}

GQMatrix conditional_expectation(const StarAlgebra& n, const GQMatrix& x) {
  require_square(n.ambient_dim(), x);
  const auto& b = n.basis();
  const std::size_t k = b.size();
  GQMatrix gram(k, k);
  GQVector rhs(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t c = 0; c < k; ++c) gram(a, c) = inner(b[a].data(), b[c].data());
    rhs[a] = inner(b[a].data(), x.data());
  }
  auto coef = solve(gram, rhs);
  if (!coef) throw Error("singular Gram matrix for an algebra basis");
  GQMatrix e(n.ambient_dim(), n.ambient_dim());
  for (std::size_t a = 0; a < k; ++a)
    if (!(*coef)[a].is_zero()) e += b[a] * (*coef)[a];
  return e;
}

GQMatrix matrix_unit(std::size_t d, std::size_t r, std::size_t c) {
  GQMatrix m(d, d);
  m(r, c) = 1;
  return m;
}

GQMatrix bell_projection() {
  GQVector v{GQ(1), GQ(0), GQ(0), GQ(1)};
  return rank_one_projection(v);
}

ExpectationCheck verify_conditional_expectation(const StarAlgebra& n, std::uint64_t seed, std::size_t samples) {
  const std::size_t d = n.ambient_dim();
  ExpectationCheck r;
  auto fail = [&](bool& flag, const std::string& what) {
    if (flag) flag = false, r.failed = r.failed.empty() ? what : r.failed;
  };
  auto e = [&](const GQMatrix& x) { return conditional_expectation(n, x); };
  for (const auto& b : n.basis())
    if (e(b) != b) fail(r.identity_on_n, "E is the identity on N");
  if (e(GQMatrix::identity(d)) != GQMatrix::identity(d)) fail(r.unital, "E(1) = 1");
  MatrixSampler s(seed);
  std::vector<GQMatrix> inputs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) inputs.push_back(matrix_unit(d, i, j));
  std::vector<GQMatrix> positives;
  for (std::size_t k = 0; k < samples; ++k) positives.push_back(s.rank_one(d, k % 2 == 1));
  inputs.insert(inputs.end(), positives.begin(), positives.end());
  for (const auto& x : inputs) {
    const GQMatrix ex = e(x);
    if (ex.trace() != x.trace()) fail(r.trace_preserving, "tr E(x) = tr x");
    if (e(ex) != ex) fail(r.idempotent, "E(E(x)) = E(x)");
  }
  for (const auto& x : positives) {
    if (!is_psd(e(x))) fail(r.positive, "E(x) >= 0 for x >= 0");
    for (const auto& a : n.basis())
      for (const auto& b : n.basis())
        if (e(a * x * b) != a * e(x) * b) {
          fail(r.bimodule, "E(a x b) = a E(x) b");
          break;
        }
  }
  return r;
}

ExpectationRange check_exists_equals_range_of_expectation(const StarAlgebra& n, const GQMatrix& p) {
  require_projection(p);
  const StarAlgebra nc = commutant(n);
  ExpectationRange r;
  r.exists_p = exists_via_commutant(nc, p);
  r.range_of_e = range_projection(conditional_expectation(n, p)).p;
  r.exists_range = exists_via_commutant(nc, r.range_of_e);
  r.all_equal = r.exists_p == r.range_of_e && r.range_of_e == r.exists_range;
  return r;
}

PimsnerPopa check_pimsner_popa(const StarAlgebra& n, const GQMatrix& x, const GQ& lambda) {
  if (!lambda.is_real() || lambda.re() <= 0 || lambda.re() > 1)
    throw PreconditionError("BadLambda", "lambda must be a rational in (0, 1]");
  if (!is_psd(x)) throw PreconditionError("NotPSD", "input is not positive");
  PimsnerPopa r;
  r.difference = conditional_expectation(n, x) - x * lambda;
  r.certificate = psd_certificate(r.difference);
  r.holds = r.certificate.psd;
  return r;
}

GQMatrix central_carrier(const StarAlgebra& m, const GQMatrix& p) {
  require_projection(p);
  if (!m.contains(p)) throw PreconditionError("NotInAlgebra", "projection does not belong to the algebra");
  return exists_alg(center(m), p);
}

GQVector MatrixSampler::vector(std::size_t d, bool complex) {
  for (;;) {
    GQVector v(d);
    bool nonzero = false;
    for (auto& z : v) {
      const long re = static_cast<long>(rng_() % 7) - 3;
      const long im = complex ? static_cast<long>(rng_() % 7) - 3 : 0;
      z = GQ(mpq_class(re), mpq_class(im));
      nonzero = nonzero || !z.is_zero();
    }
    if (nonzero) return v;
  }
}

GQMatrix MatrixSampler::rank_one(std::size_t d, bool complex) { return rank_one_projection(vector(d, complex)); }

std::vector<GQMatrix> MatrixSampler::projections_of(const StarAlgebra& m, std::size_t count) {
  const std::size_t d = m.ambient_dim();
  std::vector<GQMatrix> out;
  for (std::size_t k = 0; k < count; ++k) {
    GQMatrix q = range_projection(conditional_expectation(m, rank_one(d, k % 2 == 1))).p;
    out.push_back(GQMatrix::identity(d) - q);
    out.push_back(std::move(q));
  }
  return out;
}

CommutingSquare check_commuting_square(const StarAlgebra& k, const StarAlgebra& m, const StarAlgebra& n,
                                       const StarAlgebra& l, std::uint64_t seed, std::size_t samples) {
  CommutingSquare r;
  r.inclusions = k.leq(m) && k.leq(n) && m.leq(l) && n.leq(l);
  if (!r.inclusions) throw PreconditionError("NotIncluded", "algebras do not form a square K ⊆ M, N ⊆ L");
  r.expectations_commute = true;
  for (const auto& x : l.basis()) {
    if (conditional_expectation(m, conditional_expectation(n, x)) != conditional_expectation(n, conditional_expectation(m, x))) {
      r.expectations_commute = false;
      r.witness = x;
      break;
    }
  }
  r.intersection_is_k = intersect(m, n) == k;
  if (!r.expectations_commute) return r;
  const StarAlgebra mc = commutant(m), nc = commutant(n);
  MatrixSampler s(seed);
  auto qs = s.projections_of(l, (samples + 1) / 2);
  r.quantifiers_commute = true;
  for (std::size_t i = 0; i < samples && i < qs.size(); ++i) {
    const GQMatrix& q = qs[i];
    ++r.projections_tested;
    if (exists_via_commutant(mc, exists_via_commutant(nc, q)) != exists_via_commutant(nc, exists_via_commutant(mc, q))) {
      r.quantifiers_commute = false;
      r.quantifier_witness = q;
      break;
    }
  }
  return r;
}

GapSearch search_expectation_gap(std::size_t d, std::uint64_t seed, std::size_t per_inclusion) {
  if (d < 2 || d * d > kMaxAmbientDim) throw SizeGuardError("dimension must be between 2 and 16");
  MatrixSampler s(seed);
  std::vector<std::pair<std::string, StarAlgebra>> family;
  family.emplace_back("scalars", scalar_algebra(d));
  {
    std::vector<GQMatrix> g;
    for (std::size_t i = 0; i < d; ++i) g.push_back(matrix_unit(d, i, i));
    family.emplace_back("diagonal", build_algebra(d, g));
  }
  for (std::size_t a = 1; a < d; ++a) {
    std::vector<GQMatrix> g;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if ((i < a) == (j < a)) g.push_back(matrix_unit(d, i, j));
    family.emplace_back("M" + std::to_string(a) + "+M" + std::to_string(d - a), build_algebra(d, g));
  }
  for (std::size_t a = 2; a < d; ++a) {
    if (d % a) continue;
    const std::size_t b = d / a;
    family.emplace_back("M" + std::to_string(a) + "(x)1", tensor_algebra(full_algebra(a), scalar_algebra(b)));
    family.emplace_back("1(x)M" + std::to_string(b), tensor_algebra(scalar_algebra(a), full_algebra(b)));
  }
  family.emplace_back("generated by a random rank-one projection", build_algebra(d, {s.rank_one(d)}));
  family.emplace_back("generated by two random rank-one projections", build_algebra(d, {s.rank_one(d), s.rank_one(d, true)}));
  family.emplace_back("full", full_algebra(d));

  GapSearch g;
  for (const auto& [name, n] : family) {
    ++g.inclusions;
    std::size_t gaps = 0;
    for (std::size_t k = 0; k < per_inclusion; ++k) {
      GQMatrix p = s.rank_one(d, k % 2 == 1);
      if (k % 3 == 2) {
        GQMatrix sum = p + s.rank_one(d);
        p = range_projection(sum * GQ(mpq_class(1, 2))).p;
      }
      ++g.projections;
      auto r = check_exists_equals_range_of_expectation(n, p);
      if (!r.all_equal) ++gaps;
    }
    g.gaps += gaps;
    g.log.push_back(name + ": dim " + std::to_string(n.dim()) + ", " + std::to_string(per_inclusion) +
                    " projections, " + std::to_string(gaps) + " gaps");
  }
  return g;
}

}  // namespace qmon
