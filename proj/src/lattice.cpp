#include "qmon/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qmon {

namespace {

void closure_warshall(std::vector<Bits>& up) {
  const std::size_t n = up.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (up[i][k]) up[i] |= up[k];
}

// The element of `candidates` whose down-set (or up-set) is exactly `candidates`.
std::optional<Element> extremal(const Bits& candidates, const std::vector<Bits>& sets,
                                const std::vector<std::size_t>& counts) {
  const std::size_t c = candidates.count();
  for (auto m = candidates.find_first(); m != Bits::npos; m = candidates.find_next(m))
    if (counts[m] == c && sets[m] == candidates) return m;
  return std::nullopt;
}

}  // namespace

FiniteOL FiniteOL::from_pairs(std::vector<std::string> labels,
                              const std::vector<std::pair<Element, Element>>& pairs,
                              std::vector<Element> ortho, OrderInput kind, std::size_t max_size) {
  const std::size_t n = labels.size();
  if (n > max_size) throw SizeGuardError("lattice has " + std::to_string(n) + " elements, limit is " + std::to_string(max_size));
  std::vector<Bits> up(n, Bits(n));
  for (const auto& [x, y] : pairs) {
    if (x >= n || y >= n) throw StructureError("order pair refers to a missing element", {x, y});
    if (kind == OrderInput::Covers && x == y) throw StructureError("cover pair relates an element to itself", {x, y});
    up[x].set(y);
  }
  return from_leq(std::move(labels), std::move(up), std::move(ortho), max_size);
}

FiniteOL FiniteOL::from_leq(std::vector<std::string> labels, std::vector<Bits> leq,
                            std::vector<Element> ortho, std::size_t max_size) {
  const std::size_t n = labels.size();
  if (n == 0) throw StructureError("empty element set");
  if (n > max_size) throw SizeGuardError("lattice has " + std::to_string(n) + " elements, limit is " + std::to_string(max_size));
  if (leq.size() != n) throw StructureError("order relation has wrong number of rows");
  for (std::size_t x = 0; x < n; ++x) {
    if (leq[x].size() != n) throw StructureError("order relation row has wrong width", {x});
    leq[x].set(x);
  }
  closure_warshall(leq);

  FiniteOL l;
  l.labels_ = std::move(labels);
  l.up_ = std::move(leq);
  l.down_.assign(n, Bits(n));
  for (std::size_t x = 0; x < n; ++x)
    for (auto y = l.up_[x].find_first(); y != Bits::npos; y = l.up_[x].find_next(y)) {
      if (y != x && l.up_[y][x]) throw StructureError("order is not antisymmetric", {x, y});
      l.down_[y].set(x);
    }

  std::vector<std::size_t> up_count(n), down_count(n);
  bool have_zero = false, have_one = false;
  for (std::size_t x = 0; x < n; ++x) {
    up_count[x] = l.up_[x].count();
    down_count[x] = l.down_[x].count();
    if (up_count[x] == n) l.zero_ = x, have_zero = true;
    if (down_count[x] == n) l.one_ = x, have_one = true;
  }
  if (!have_zero || !have_one) throw StructureError("order lacks a least or greatest element");

  l.meet_.assign(n * n, 0);
  l.join_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) {
      Element m, j;
      if (l.up_[x][y]) {
        m = x, j = y;
      } else if (l.up_[y][x]) {
        m = y, j = x;
      } else {
        auto mm = extremal(l.down_[x] & l.down_[y], l.down_, down_count);
        if (!mm) throw StructureError("pair has no meet", {x, y});
        auto jj = extremal(l.up_[x] & l.up_[y], l.up_, up_count);
        if (!jj) throw StructureError("pair has no join", {x, y});
        m = *mm, j = *jj;
      }
      l.meet_[x * n + y] = l.meet_[y * n + x] = m;
      l.join_[x * n + y] = l.join_[y * n + x] = j;
    }

  if (ortho.size() != n) throw StructureError("ortho table does not cover every element");
  for (std::size_t x = 0; x < n; ++x)
    if (ortho[x] >= n) throw StructureError("ortho table refers to a missing element", {x});
  l.ortho_ = std::move(ortho);
  return l;
}

std::optional<Element> FiniteOL::find(const std::string& label) const {
  for (std::size_t x = 0; x < labels_.size(); ++x)
    if (labels_[x] == label) return x;
  return std::nullopt;
}

Element FiniteOL::meet_all(const ElementSet& xs) const {
  Element m = one_;
  for (auto x : xs) m = meet(m, x);
  return m;
}

Element FiniteOL::join_all(const ElementSet& xs) const {
  Element j = zero_;
  for (auto x : xs) j = join(j, x);
  return j;
}

std::vector<std::pair<Element, Element>> FiniteOL::covers() const {
  std::vector<std::pair<Element, Element>> out;
  const std::size_t n = size();
  for (std::size_t x = 0; x < n; ++x)
    for (auto y = up_[x].find_first(); y != Bits::npos; y = up_[x].find_next(y)) {
      if (y == x) continue;
      // nothing strictly between: up(x) ∩ down(y) = {x, y}
      if ((up_[x] & down_[y]).count() == 2) out.emplace_back(x, y);
    }
  return out;
}

ValidationReport validate_ortholattice(const FiniteOL& l) {
  ValidationReport r;
  const std::size_t n = l.size();
  for (std::size_t x = 0; x < n; ++x)
    if (l.ortho(l.ortho(x)) != x) {
      r.structural.push_back({"ortho is an involution", {x, l.ortho(x)}});
      break;
    }
  auto first = [&](const std::string& name, auto&& fails) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (fails(x, y)) {
          r.axioms.push_back({name, {x, y}});
          return;
        }
  };
  first("order-inverting", [&](Element x, Element y) { return l.leq(x, y) && !l.leq(l.ortho(y), l.ortho(x)); });
  auto unary = [&](const std::string& name, auto&& fails) {
    for (std::size_t x = 0; x < n; ++x)
      if (fails(x)) {
        r.axioms.push_back({name, {x}});
        return;
      }
  };
  unary("x meet x' = 0", [&](Element x) { return l.meet(x, l.ortho(x)) != l.zero(); });
  unary("x join x' = 1", [&](Element x) { return l.join(x, l.ortho(x)) != l.one(); });
  return r;
}

OMLFlag check_orthomodular(const FiniteOL& l) {
  for (std::size_t x = 0; x < l.size(); ++x) {
    const Bits& ups = l.up(x);
    for (auto y = ups.find_first(); y != Bits::npos; y = ups.find_next(y))
      if (l.join(x, l.meet(l.ortho(x), y)) != y) return {false, std::make_pair(x, y)};
  }
  return {true, std::nullopt};
}

bool commutes(const FiniteOL& l, Element x, Element y) {
  return x == l.join(l.meet(x, y), l.meet(x, l.ortho(y)));
}

ElementSet center(const FiniteOL& l) {
  ElementSet c;
  for (std::size_t x = 0; x < l.size(); ++x) {
    bool central = true;
    for (std::size_t y = 0; y < l.size() && central; ++y) central = commutes(l, x, y);
    if (central) c.push_back(x);
  }
  return c;
}

namespace {

void bron_kerbosch(const std::vector<Bits>& adj, Bits r, Bits p, Bits x, std::vector<Bits>& out) {
  if (p.none() && x.none()) {
    out.push_back(r);
    return;
  }
  // Pivot on the vertex of P ∪ X with the most neighbours in P.
  Bits px = p | x;
  std::size_t pivot = px.find_first();
  std::size_t best = 0;
  for (auto u = px.find_first(); u != Bits::npos; u = px.find_next(u)) {
    std::size_t c = (p & adj[u]).count();
    if (c >= best) best = c, pivot = u;
  }
  Bits candidates = p - adj[pivot];
  for (auto v = candidates.find_first(); v != Bits::npos; v = candidates.find_next(v)) {
    Bits r2 = r;
    r2.set(v);
    bron_kerbosch(adj, r2, p & adj[v], x & adj[v], out);
    p.reset(v);
    x.set(v);
  }
}

}  // namespace

std::vector<ElementSet> blocks(const FiniteOL& l) {
  const std::size_t n = l.size();
  std::vector<Bits> adj(n, Bits(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (commutes(l, x, y) && commutes(l, y, x)) adj[x].set(y), adj[y].set(x);
  Bits central = to_bits(l, center(l));
  Bits rest = ~central;
  std::vector<Bits> cliques;
  std::vector<Bits> adj_rest(n, Bits(n));
  for (std::size_t x = 0; x < n; ++x) adj_rest[x] = adj[x] & rest;
  bron_kerbosch(adj_rest, Bits(n), rest, Bits(n), cliques);
  std::vector<ElementSet> out;
  for (auto& c : cliques) out.push_back(to_set(c | central));
  std::sort(out.begin(), out.end());
  return out;
}

FoulisHollandResult foulis_holland_check(const FiniteOL& l, Element x, Element y, Element z) {
  FoulisHollandResult r;
  auto central_in_triple = [&](Element a, Element b, Element c) { return commutes(l, a, b) && commutes(l, a, c); };
  r.precondition = central_in_triple(x, y, z) || central_in_triple(y, x, z) || central_in_triple(z, x, y);
  // Sublattice (∧, ∨ only) generated by the three elements.
  Bits in(l.size());
  std::vector<Element> members;
  auto add = [&](Element e) {
    if (!in[e]) in.set(e), members.push_back(e);
  };
  add(x), add(y), add(z);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      add(l.meet(members[i], members[j]));
      add(l.join(members[i], members[j]));
    }
  r.generated = to_set(in);
  r.distributive = is_distributive(l, r.generated);
  return r;
}

ElementSet to_set(const Bits& b) {
  ElementSet s;
  for (auto x = b.find_first(); x != Bits::npos; x = b.find_next(x)) s.push_back(x);
  return s;
}

Bits to_bits(const FiniteOL& l, const ElementSet& s) {
  Bits b(l.size());
  for (auto x : s) {
    if (x >= l.size()) throw PreconditionError("NotAnElement", "element index out of range", {x});
    b.set(x);
  }
  return b;
}

ElementSet subalgebra_closure(const FiniteOL& l, const ElementSet& seed) {
  Bits in(l.size());
  std::vector<Element> members;
  auto add = [&](Element e) {
    if (!in[e]) in.set(e), members.push_back(e);
  };
  add(l.zero());
  add(l.one());
  for (auto e : seed) add(e);
  for (std::size_t i = 0; i < members.size(); ++i) {
    add(l.ortho(members[i]));
    for (std::size_t j = 0; j <= i; ++j) {
      add(l.meet(members[i], members[j]));
      add(l.join(members[i], members[j]));
    }
  }
  return to_set(in);
}

bool is_subalgebra(const FiniteOL& l, const ElementSet& s) {
  Bits in = to_bits(l, s);
  if (!in[l.zero()] || !in[l.one()]) return false;
  for (auto x : s) {
    if (!in[l.ortho(x)]) return false;
    for (auto y : s)
      if (!in[l.meet(x, y)] || !in[l.join(x, y)]) return false;
  }
  return true;
}

std::vector<ElementSet> all_subalgebras(const FiniteOL& l, std::size_t limit) {
  std::set<ElementSet> seen;
  std::vector<ElementSet> frontier{subalgebra_closure(l, {})};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (const auto& s : frontier) {
      Bits in = to_bits(l, s);
      for (std::size_t x = 0; x < l.size(); ++x) {
        if (in[x]) continue;
        ElementSet seed = s;
        seed.push_back(x);
        ElementSet c = subalgebra_closure(l, seed);
        if (seen.insert(c).second) {
          if (seen.size() > limit) throw SizeGuardError("more than " + std::to_string(limit) + " subalgebras");
          next.push_back(std::move(c));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<ElementSet> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

bool is_distributive(const FiniteOL& l, const ElementSet& s) {
  for (auto x : s)
    for (auto y : s)
      for (auto z : s)
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return false;
  return true;
}

bool pairwise_commuting(const FiniteOL& l, const ElementSet& s) {
  for (auto x : s)
    for (auto y : s)
      if (!commutes(l, x, y)) return false;
  return true;
}

bool is_boolean(const FiniteOL& l) {
  for (std::size_t x = 0; x < l.size(); ++x)
    for (std::size_t y = 0; y < l.size(); ++y)
      if (!commutes(l, x, y)) return false;
  return true;
}

namespace lattices {

FiniteOL boolean(std::size_t atoms) {
  if (atoms >= 20 || (std::size_t{1} << atoms) > kDefaultMaxElements)
    throw SizeGuardError("Boolean algebra with " + std::to_string(atoms) + " atoms exceeds the element limit");
  const std::size_t n = std::size_t{1} << atoms;
  std::vector<std::string> labels(n);
  std::vector<Bits> up(n, Bits(n));
  std::vector<Element> ortho(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (x == 0) {
      labels[x] = "0";
    } else if (x == n - 1) {
      labels[x] = "1";
    } else {
      for (std::size_t a = 0; a < atoms; ++a)
        if (x >> a & 1) labels[x] += (labels[x].empty() ? "" : "+") + std::string("a") + std::to_string(a);
    }
    ortho[x] = (n - 1) & ~x;
    for (std::size_t y = 0; y < n; ++y)
      if ((x & ~y) == 0) up[x].set(y);
  }
  return FiniteOL::from_leq(std::move(labels), std::move(up), std::move(ortho));
}

FiniteOL chain(std::size_t n, std::vector<Element> ortho) {
  std::vector<std::string> labels(n);
  std::vector<std::pair<Element, Element>> covers;
  for (std::size_t k = 0; k < n; ++k) {
    labels[k] = k == 0 ? "0" : k + 1 == n ? "1" : "c" + std::to_string(k);
    if (k + 1 < n) covers.emplace_back(k, k + 1);
  }
  return FiniteOL::from_pairs(std::move(labels), covers, std::move(ortho), OrderInput::Covers);
}

FiniteOL mo(std::size_t n) {
  std::vector<std::string> labels{"0", "1"};
  std::vector<Element> ortho{1, 0};
  std::vector<std::pair<Element, Element>> covers;
  for (std::size_t k = 0; k < n; ++k) {
    std::string name = n <= 26 ? std::string(1, static_cast<char>('a' + k)) : "a" + std::to_string(k);
    const Element a = labels.size();
    labels.push_back(name);
    labels.push_back(name + "'");
    ortho.push_back(a + 1);
    ortho.push_back(a);
    for (Element e : {a, a + 1}) {
      covers.emplace_back(0, e);
      covers.emplace_back(e, 1);
    }
  }
  return FiniteOL::from_pairs(std::move(labels), covers, std::move(ortho), OrderInput::Covers);
}

FiniteOL hexagon() {
  // 0, a, b, b', a', 1
  std::vector<std::string> labels{"0", "a", "b", "b'", "a'", "1"};
  std::vector<std::pair<Element, Element>> covers{{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}};
  std::vector<Element> ortho{5, 4, 3, 2, 1, 0};
  return FiniteOL::from_pairs(std::move(labels), covers, std::move(ortho), OrderInput::Covers);
}

FiniteOL product(const FiniteOL& a, const FiniteOL& b) {
  const std::size_t na = a.size(), nb = b.size(), n = na * nb;
  if (n > kDefaultMaxElements) throw SizeGuardError("product exceeds the element limit");
  std::vector<std::string> labels(n);
  std::vector<Bits> up(n, Bits(n));
  std::vector<Element> ortho(n);
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y) {
      const std::size_t e = x * nb + y;
      labels[e] = "(" + a.label(x) + "," + b.label(y) + ")";
      ortho[e] = a.ortho(x) * nb + b.ortho(y);
      for (std::size_t x2 = 0; x2 < na; ++x2)
        for (std::size_t y2 = 0; y2 < nb; ++y2)
          if (a.leq(x, x2) && b.leq(y, y2)) up[e].set(x2 * nb + y2);
    }
  return FiniteOL::from_leq(std::move(labels), std::move(up), std::move(ortho));
}

}  // namespace lattices

}  // namespace qmon
