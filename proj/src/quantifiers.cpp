#include "qmon/quantifiers.hpp"

#include <algorithm>
#include <map>

namespace qmon {

void require_total(const FiniteOL& l, const UnaryMap& e) {
  if (e.size() != l.size()) throw StructureError("map does not cover every element");
  for (std::size_t x = 0; x < e.size(); ++x)
    if (e[x] >= l.size()) throw StructureError("map value is not an element", {x});
}

QuantifierReport check_quantifier(const FiniteOL& l, const UnaryMap& e) {
  require_total(l, e);
  const std::size_t n = l.size();
  QuantifierReport r;
  r.axioms = {{"Q1", true, {}}, {"Q2", true, {}}, {"Q3", true, {}},
              {"Q4", true, {}}, {"Q5", true, {}}, {"Q6", true, {}}};
  auto fail = [&](int k, std::vector<Element> w) {
    auto& a = r.axioms[static_cast<std::size_t>(k - 1)];
    if (a.holds) a.holds = false, a.witness = std::move(w);
  };
  if (e[l.zero()] != l.zero()) fail(1, {l.zero()});
  for (std::size_t p = 0; p < n; ++p) {
    if (!l.leq(p, e[p])) fail(2, {p});
    if (e[e[p]] != e[p]) fail(4, {p});
    const Element c = l.ortho(e[p]);
    if (e[c] != c) fail(5, {p});
    for (std::size_t q = 0; q < n; ++q) {
      if (e[l.join(p, q)] != l.join(e[p], e[q])) fail(3, {p, q});
      if (e[l.meet(p, e[q])] != l.meet(e[p], e[q])) fail(6, {p, q});
    }
  }
  r.is_quantifier = std::all_of(r.axioms.begin(), r.axioms.begin() + 5, [](const AxiomStatus& a) { return a.holds; });
  return r;
}

bool is_quantifier(const FiniteOL& l, const UnaryMap& e) { return check_quantifier(l, e).is_quantifier; }

UnaryMap quantifier_from_subalgebra(const FiniteOL& l, const ElementSet& s) {
  if (!is_subalgebra(l, s)) throw PreconditionError("NotSubalgebra", "set is not closed under meet, join and ortho");
  Bits in = to_bits(l, s);
  UnaryMap e(l.size());
  for (std::size_t a = 0; a < l.size(); ++a) {
    Bits above = l.up(a) & in;
    Element least = l.meet_all(to_set(above));
    if (!in[least] || !l.leq(a, least)) throw PreconditionError("NotApproximating", "no least element of S above", {a});
    e[a] = least;
  }
  return e;
}

ElementSet fixpoint_subalgebra(const UnaryMap& e) {
  ElementSet s(e.begin(), e.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

UnaryMap forall_from_exists(const FiniteOL& l, const UnaryMap& e) {
  require_total(l, e);
  UnaryMap f(l.size());
  for (std::size_t a = 0; a < l.size(); ++a) f[a] = l.ortho(e[l.ortho(a)]);
  return f;
}

PairCheck check_residuation(const FiniteOL& l, const UnaryMap& e) {
  const UnaryMap f = forall_from_exists(l, e);
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b)
      if (l.leq(e[a], b) != l.leq(a, f[b])) return {false, std::make_pair(a, b)};
  return {};
}

PairCheck check_join_preservation(const FiniteOL& l, const UnaryMap& e) {
  const UnaryMap f = forall_from_exists(l, e);
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b)
      if (e[l.join(a, b)] != l.join(e[a], e[b]) || f[l.meet(a, b)] != l.meet(f[a], f[b]))
        return {false, std::make_pair(a, b)};
  return {};
}

LemmaQ6Result check_lemma_q6_boolean(const FiniteOL& b, const UnaryMap& e) {
  for (std::size_t x = 0; x < b.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      if (!commutes(b, x, y)) throw PreconditionError("NotBoolean", "lattice has a non-commuting pair", {x, y});
  auto r = check_quantifier(b, e);
  return {r.q(1).holds && r.q(2).holds && r.q(6).holds, r.is_quantifier};
}

std::optional<Q6Witness> find_q6_in(const FiniteOL& l) {
  const std::size_t n = l.size();
  for (const auto& s : all_subalgebras(l)) {
    if (!pairwise_commuting(l, s)) continue;
    UnaryMap e = quantifier_from_subalgebra(l, s);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const Element lhs = e[l.meet(p, e[q])];
        const Element rhs = l.meet(e[p], e[q]);
        if (lhs == l.zero() && rhs != l.zero()) {
          Q6Witness w;
          w.lattice = l;
          w.subalgebra = s;
          w.exists = e;
          w.p = p, w.q = q, w.lhs = lhs, w.rhs = rhs;
          return w;
        }
      }
  }
  return std::nullopt;
}

Q6Search find_q6_counterexample(std::size_t max_blocks) {
  Q6Search out;
  enumerate_greechie(max_blocks, [&](const GreechieDiagram& d) {
    FiniteOL l;
    try {
      l = build_greechie(d);
    } catch (const StructureError&) {
      ++out.candidates_skipped;
      return true;
    }
    if (!validate_ortholattice(l).ok() || !check_orthomodular(l).is_oml) {
      ++out.candidates_skipped;
      return true;
    }
    ++out.structures_examined;
    if (auto w = find_q6_in(l)) {
      w->diagram = d;
      out.witness = std::move(w);
      return false;
    }
    return true;
  });
  return out;
}

Q6Search find_q6_boolean(std::size_t max_atoms) {
  Q6Search out;
  for (std::size_t k = 1; k <= max_atoms; ++k) {
    FiniteOL b = lattices::boolean(k);
    ++out.structures_examined;
    if (auto w = find_q6_in(b)) {
      out.witness = std::move(w);
      break;
    }
  }
  return out;
}

PIdealCheck check_p_ideal(const FiniteOL& l, const ElementSet& ideal, const UnaryMap* e) {
  PIdealCheck r;
  Bits in = to_bits(l, ideal);
  auto fail = [&](bool& flag, const char* what, std::vector<Element> w) {
    if (!flag) return;
    flag = false;
    if (r.failed.empty()) r.failed = what, r.witness = std::move(w);
  };
  if (!in[l.zero()]) fail(r.contains_zero, "contains 0", {l.zero()});
  for (auto a : ideal) {
    Bits below = l.down(a) - in;
    if (below.any()) fail(r.down_closed, "downward closed", {a, below.find_first()});
    for (auto b : ideal)
      if (!in[l.join(a, b)]) fail(r.join_closed, "closed under joins", {a, b});
    for (std::size_t b = 0; b < l.size(); ++b)
      if (!in[l.meet(b, l.join(a, l.ortho(b)))]) fail(r.p_condition, "b meet (a join b') in I", {a, b});
    if (e && !in[(*e)[a]]) fail(r.exists_closed, "closed under exists", {a});
  }
  return r;
}

bool is_p_ideal(const FiniteOL& l, const ElementSet& ideal, const UnaryMap* e) {
  auto r = check_p_ideal(l, ideal, e);
  return r.is_p_ideal() && (!e || r.exists_closed);
}

Congruence congruence_from_ideal(const FiniteOL& l, const ElementSet& ideal, const UnaryMap* e) {
  auto chk = check_p_ideal(l, ideal, nullptr);
  if (!chk.is_ideal()) throw PreconditionError("NotAnIdeal", "set fails: " + chk.failed, chk.witness);
  if (e) require_total(l, *e);
  // A finite ideal is principal, so "x ∨ a = y ∨ a for some a ∈ I" reduces to a = top.
  const Element top = l.join_all(ideal);
  Congruence c;
  c.class_of.assign(l.size(), 0);
  std::map<Element, std::size_t> by_join;
  for (std::size_t x = 0; x < l.size(); ++x) {
    auto [it, fresh] = by_join.emplace(l.join(x, top), c.classes.size());
    if (fresh) c.classes.emplace_back();
    c.class_of[x] = it->second;
    c.classes[it->second].push_back(x);
  }
  c.meet_compatible = c.join_compatible = c.ortho_compatible = true;
  bool ex = true;
  for (const auto& cls : c.classes)
    for (auto x : cls)
      for (auto x2 : cls) {
        if (x2 <= x) continue;
        if (c.class_of[l.ortho(x)] != c.class_of[l.ortho(x2)]) c.ortho_compatible = false;
        if (e && c.class_of[(*e)[x]] != c.class_of[(*e)[x2]]) ex = false;
        for (std::size_t y = 0; y < l.size(); ++y) {
          if (c.class_of[l.meet(x, y)] != c.class_of[l.meet(x2, y)]) c.meet_compatible = false;
          if (c.class_of[l.join(x, y)] != c.class_of[l.join(x2, y)]) c.join_compatible = false;
        }
      }
  if (e) c.exists_compatible = ex;
  return c;
}

Quotient quotient(const FiniteOL& l, const Congruence& c, const UnaryMap* e) {
  if (!c.is_congruence()) throw PreconditionError("NotCongruence", "partition is not compatible with the operations");
  if (e && c.exists_compatible != true) throw PreconditionError("NotCongruence", "partition is not compatible with the quantifier");
  const std::size_t k = c.classes.size();
  std::vector<std::string> labels(k);
  std::vector<Bits> up(k, Bits(k));
  std::vector<Element> ortho(k);
  for (std::size_t a = 0; a < k; ++a) {
    const Element x = c.classes[a].front();
    labels[a] = "[" + l.label(x) + "]";
    ortho[a] = c.class_of[l.ortho(x)];
    for (std::size_t b = 0; b < k; ++b)
      if (c.class_of[l.meet(x, c.classes[b].front())] == a) up[a].set(b);
  }
  Quotient q{FiniteOL::from_leq(std::move(labels), std::move(up), std::move(ortho)), {}};
  if (e) {
    q.exists.resize(k);
    for (std::size_t a = 0; a < k; ++a) q.exists[a] = c.class_of[(*e)[c.classes[a].front()]];
  }
  return q;
}

CommutantClosure relative_commutant_closure(const FiniteOL& l, const UnaryMap& e, Element a) {
  require_total(l, e);
  if (e[a] != a) throw PreconditionError("FixpointRequired", "element is not a fixpoint of the quantifier", {a});
  CommutantClosure r;
  for (std::size_t x = 0; x < l.size(); ++x)
    if (commutes(l, a, x)) r.members.push_back(x);
  r.is_subalgebra = is_subalgebra(l, r.members);
  Bits in = to_bits(l, r.members);
  r.exists_closed = std::all_of(r.members.begin(), r.members.end(), [&](Element x) { return in[e[x]]; });
  return r;
}

FiniteOL interval_lattice(const FiniteOL& l, Element a, std::vector<Element>* to_parent) {
  ElementSet members = to_set(l.down(a));
  const std::size_t k = members.size();
  std::vector<std::size_t> local(l.size(), k);
  for (std::size_t i = 0; i < k; ++i) local[members[i]] = i;
  std::vector<std::string> labels(k);
  std::vector<Bits> up(k, Bits(k));
  std::vector<Element> ortho(k);
  for (std::size_t i = 0; i < k; ++i) {
    labels[i] = l.label(members[i]);
    ortho[i] = local[l.meet(a, l.ortho(members[i]))];
    for (std::size_t j = 0; j < k; ++j)
      if (l.leq(members[i], members[j])) up[i].set(j);
  }
  if (to_parent) *to_parent = members;
  return FiniteOL::from_leq(std::move(labels), std::move(up), std::move(ortho));
}

IntervalAlgebra interval_algebra(const FiniteOL& l, const UnaryMap& e, Element a) {
  require_total(l, e);
  if (e[a] != a) throw PreconditionError("FixpointRequired", "element is not a fixpoint of the quantifier", {a});
  IntervalAlgebra r;
  r.lattice = interval_lattice(l, a, &r.to_parent);
  std::vector<std::size_t> local(l.size(), r.to_parent.size());
  for (std::size_t i = 0; i < r.to_parent.size(); ++i) local[r.to_parent[i]] = i;
  r.exists.resize(r.to_parent.size());
  for (std::size_t i = 0; i < r.to_parent.size(); ++i) {
    const Element img = e[r.to_parent[i]];
    if (local[img] == r.to_parent.size()) throw StructureError("quantifier leaves the interval", {r.to_parent[i]});
    r.exists[i] = local[img];
  }
  r.report = check_quantifier(r.lattice, r.exists);

  // x ↦ (x ∧ a, x ∧ a⊥) on C(a), compared against the two interval algebras.
  const Element ac = l.ortho(a);
  auto cl = relative_commutant_closure(l, e, a);
  bool ok = cl.is_subalgebra && cl.exists_closed &&
            cl.members.size() == l.down(a).count() * l.down(ac).count();
  std::map<std::pair<Element, Element>, Element> seen;
  for (auto x : cl.members) {
    if (!ok) break;
    const auto img = std::make_pair(l.meet(x, a), l.meet(x, ac));
    if (!seen.emplace(img, x).second) ok = false;
    const Element xo = l.ortho(x);
    if (l.meet(xo, a) != l.meet(a, l.ortho(img.first)) || l.meet(xo, ac) != l.meet(ac, l.ortho(img.second))) ok = false;
    if (l.meet(e[x], a) != e[img.first] || l.meet(e[x], ac) != e[img.second]) ok = false;
    for (auto y : cl.members) {
      const Element m = l.meet(x, y), j = l.join(x, y);
      if (l.meet(m, a) != l.meet(img.first, l.meet(y, a)) || l.meet(m, ac) != l.meet(img.second, l.meet(y, ac))) ok = false;
      if (l.meet(j, a) != l.join(img.first, l.meet(y, a)) || l.meet(j, ac) != l.join(img.second, l.meet(y, ac))) ok = false;
    }
  }
  r.product_isomorphism = ok;
  return r;
}

}  // namespace qmon
