#include "qmon/psd.hpp"

#include "qmon/errors.hpp"

namespace qmon {

GQ quadratic_form(const GQMatrix& a, const GQVector& v) { return inner(v, a * v); }

namespace {

bool negative(const GQ& z) { return z.re() < 0; }
bool positive(const GQ& z) { return z.re() > 0; }

}  // namespace

PSDCertificate psd_certificate(const GQMatrix& a) {
  if (!a.is_hermitian()) throw PreconditionError("NotHermitian", "matrix is not self-adjoint");
  const std::size_t n = a.rows();
  GQMatrix w(a);
  std::vector<bool> active(n, true);
  PSDCertificate c;

  // Lifts a witness of the current Schur complement back through every step.
  auto lift = [&](GQVector v) {
    for (std::size_t s = c.pivots.size(); s-- > 0;) {
      GQ acc;
      for (std::size_t j = 0; j < n; ++j)
        if (!c.l[s][j].is_zero() && !v[j].is_zero() && j != c.pivots[s]) acc += c.l[s][j].conj() * v[j];
      v[c.pivots[s]] = -acc;
    }
    return v;
  };
  auto refute = [&](GQVector local) {
    c.psd = false;
    c.witness = lift(std::move(local));
    c.value = quadratic_form(a, *c.witness);
    return c;
  };

  for (;;) {
    std::optional<std::size_t> pivot;
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k]) continue;
      if (negative(w(k, k))) {
        GQVector v(n);
        v[k] = 1;
        return refute(std::move(v));
      }
      if (!pivot && positive(w(k, k))) pivot = k;
    }
    if (!pivot) {
      // Every remaining diagonal entry is zero; any nonzero entry off it refutes.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j || !active[i] || !active[j] || w(i, j).is_zero()) continue;
          // v = t e_i + e_j with t = -w_ij / |w_ij|^2 gives v^*Wv = -2.
          GQVector v(n);
          v[i] = -(w(i, j) / w(i, j).norm());
          v[j] = 1;
          return refute(std::move(v));
        }
      c.psd = true;
      return c;
    }
    const std::size_t p = *pivot;
    const GQ dp = w(p, p);
    GQVector col(n);
    for (std::size_t i = 0; i < n; ++i)
      if (active[i]) col[i] = w(i, p) / dp;
    active[p] = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || col[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (active[j] && !w(p, j).is_zero()) w(i, j) -= col[i] * w(p, j);
    }
    c.pivots.push_back(p);
    c.d.push_back(dp);
    c.l.push_back(std::move(col));
  }
}

bool is_psd(const GQMatrix& a) { return psd_certificate(a).psd; }

bool verify_certificate(const GQMatrix& a, const PSDCertificate& c) {
  if (!c.psd) return c.witness && negative(quadratic_form(a, *c.witness)) && quadratic_form(a, *c.witness) == c.value;
  GQMatrix sum(a.rows(), a.cols());
  for (std::size_t k = 0; k < c.d.size(); ++k) {
    if (!positive(c.d[k]) || !c.d[k].is_real()) return false;
    GQMatrix t = GQMatrix::outer(c.l[k], c.l[k]);
    t *= c.d[k];
    sum += t;
  }
  return sum == a;
}

}  // namespace qmon
