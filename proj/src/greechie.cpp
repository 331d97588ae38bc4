#include "qmon/greechie.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qmon {

GreechieDiagram parse_greechie(std::string_view text) {
  GreechieDiagram d;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> block;
    for (std::string tok; ls >> tok;) {
      if (std::find(block.begin(), block.end(), tok) != block.end())
        throw ParseError("atom '" + tok + "' repeated within a block");
      block.push_back(tok);
    }
    d.blocks.push_back(std::move(block));
  }
  if (d.blocks.empty()) throw ParseError("diagram has no blocks");
  return d;
}

std::string format_greechie(const GreechieDiagram& d) {
  std::string out;
  for (const auto& b : d.blocks) {
    for (std::size_t k = 0; k < b.size(); ++k) out += (k ? " " : "") + b[k];
    out += '\n';
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

FiniteOL build_greechie(const GreechieDiagram& d, std::size_t max_size) {
  if (d.blocks.empty()) throw StructureError("diagram has no blocks");
  std::map<std::string, std::size_t> atom_id;
  std::vector<std::string> atom_name;
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& b : d.blocks) {
    if (b.empty() || b.size() > 16) throw StructureError("blocks must have between 1 and 16 atoms");
    std::vector<std::size_t> ids;
    for (const auto& tok : b) {
      auto [it, fresh] = atom_id.emplace(tok, atom_name.size());
      if (fresh) atom_name.push_back(tok);
      ids.push_back(it->second);
    }
    blocks.push_back(std::move(ids));
  }

  // Raw elements: (block, subset mask), visited by popcount then mask.
  struct Raw {
    std::size_t block;
    std::uint32_t mask;
    std::vector<std::size_t> atoms, complement;  // sorted global atom ids
  };
  std::vector<Raw> raw;
  std::vector<std::vector<std::size_t>> raw_index(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::size_t k = blocks[b].size();
    std::vector<std::uint32_t> masks(std::size_t{1} << k);
    std::iota(masks.begin(), masks.end(), 0u);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t x, std::uint32_t y) { return std::popcount(x) < std::popcount(y); });
    raw_index[b].assign(masks.size(), 0);
    for (auto m : masks) {
      Raw r{b, m, {}, {}};
      for (std::size_t a = 0; a < k; ++a) (m >> a & 1 ? r.atoms : r.complement).push_back(blocks[b][a]);
      std::sort(r.atoms.begin(), r.atoms.end());
      std::sort(r.complement.begin(), r.complement.end());
      raw_index[b][m] = raw.size();
      raw.push_back(std::move(r));
    }
  }

  UnionFind uf(raw.size());
  std::map<std::vector<std::size_t>, std::size_t> by_atoms, by_complement;
  for (std::size_t r = 0; r < raw.size(); ++r) {
    auto [a, fa] = by_atoms.emplace(raw[r].atoms, r);
    if (!fa) uf.unite(a->second, r);
    auto [c, fc] = by_complement.emplace(raw[r].complement, r);
    if (!fc) uf.unite(c->second, r);
  }

  std::vector<std::size_t> element_of(raw.size());
  std::vector<std::size_t> representative;
  std::map<std::size_t, std::size_t> root_to_element;
  for (std::size_t r = 0; r < raw.size(); ++r) {
    auto [it, fresh] = root_to_element.emplace(uf.find(r), representative.size());
    if (fresh) {
      if (representative.size() >= max_size) throw SizeGuardError("pasting exceeds the element limit");
      representative.push_back(r);
    }
    element_of[r] = it->second;
  }
  const std::size_t n = representative.size();

  std::vector<std::string> labels(n);
  for (std::size_t e = 0; e < n; ++e) {
    const Raw& r = raw[representative[e]];
    if (r.atoms.empty()) {
      labels[e] = "0";
    } else if (r.complement.empty()) {
      labels[e] = "1";
    } else {
      for (std::size_t k = 0; k < r.atoms.size(); ++k) labels[e] += (k ? "+" : "") + atom_name[r.atoms[k]];
    }
  }

  std::vector<std::pair<Element, Element>> pairs;
  std::vector<Element> ortho(n, n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::uint32_t full = (std::uint32_t{1} << blocks[b].size()) - 1;
    for (std::uint32_t m = 0; m <= full; ++m) {
      const Element x = element_of[raw_index[b][m]];
      const Element xc = element_of[raw_index[b][full & ~m]];
      if (ortho[x] != n && ortho[x] != xc) throw StructureError("pasting gives an element two complements", {x});
      ortho[x] = xc;
      for (std::uint32_t sup = m; sup <= full; sup = (sup + 1) | m) {
        pairs.emplace_back(x, element_of[raw_index[b][sup]]);
        if (sup == full) break;
      }
    }
  }
  return FiniteOL::from_pairs(std::move(labels), pairs, std::move(ortho), OrderInput::Leq, max_size);
}

namespace {

bool extend(std::size_t max_blocks, std::size_t target, std::vector<std::vector<std::size_t>>& blocks,
            std::size_t atoms_used, const std::function<bool(const GreechieDiagram&)>& visit) {
  if (blocks.size() == target) {
    GreechieDiagram d;
    for (const auto& b : blocks) {
      std::vector<std::string> names;
      for (auto a : b) names.push_back(std::to_string(a));
      d.blocks.push_back(std::move(names));
    }
    return visit(d);
  }
  const std::size_t limit = atoms_used + 3;
  for (std::size_t a = 0; a < limit; ++a)
    for (std::size_t b = a + 1; b < limit; ++b)
      for (std::size_t c = b + 1; c < limit; ++c) {
        std::vector<std::size_t> blk{a, b, c};
        if (!blocks.empty() && !(blocks.back() < blk)) continue;
        // new atoms must be exactly atoms_used, atoms_used+1, ...
        std::size_t expect = atoms_used;
        bool ok = true;
        for (auto x : blk)
          if (x >= atoms_used) ok = ok && x == expect++;
        if (!ok) continue;
        for (const auto& other : blocks) {
          std::size_t shared = 0;
          for (auto x : blk) shared += std::count(other.begin(), other.end(), x);
          if (shared > 1) ok = false;
        }
        if (!ok) continue;
        blocks.push_back(blk);
        const bool go_on = extend(max_blocks, target, blocks, expect, visit);
        blocks.pop_back();
        if (!go_on) return false;
      }
  return true;
}

}  // namespace

void enumerate_greechie(std::size_t max_blocks, const std::function<bool(const GreechieDiagram&)>& visit) {
  for (std::size_t target = 1; target <= max_blocks; ++target) {
    std::vector<std::vector<std::size_t>> blocks;
    if (!extend(max_blocks, target, blocks, 0, visit)) return;
  }
}

}  // namespace qmon
