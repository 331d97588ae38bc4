#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmon/errors.hpp"

namespace qmon {

using Element = std::size_t;
using Bits = boost::dynamic_bitset<std::uint64_t>;
using ElementSet = std::vector<Element>;  // sorted, duplicate free

/// How the order pairs of a lattice description are meant.
enum class OrderInput { Leq, Covers };

/// A finite bounded lattice with a unary "ortho" map. Elements are indices
/// 0..size()-1; labels are for display only. The order, meet and join tables
/// are derived once at construction; the value is immutable afterwards.
///
/// Construction fails with StructureError when the order is not a partial
/// order, lacks a bound, some pair lacks a meet or join, or the ortho table is
/// not a total map on the elements. Whether ortho is an orthocomplementation
/// is a separate question answered by validate_ortholattice.
class FiniteOL {
 public:
  FiniteOL() = default;

  static FiniteOL from_pairs(std::vector<std::string> labels,
                             const std::vector<std::pair<Element, Element>>& pairs,
                             std::vector<Element> ortho, OrderInput kind = OrderInput::Leq,
                             std::size_t max_size = kDefaultMaxElements);
  /// `leq[x]` is the set of y with x <= y (closed transitively here).
  static FiniteOL from_leq(std::vector<std::string> labels, std::vector<Bits> leq,
                           std::vector<Element> ortho, std::size_t max_size = kDefaultMaxElements);

  std::size_t size() const noexcept { return ortho_.size(); }
  Element zero() const noexcept { return zero_; }
  Element one() const noexcept { return one_; }

  bool leq(Element x, Element y) const { return up_[x][y]; }
  Element meet(Element x, Element y) const { return meet_[x * size() + y]; }
  Element join(Element x, Element y) const { return join_[x * size() + y]; }
  Element ortho(Element x) const { return ortho_[x]; }

  /// {y : y <= x} and {y : x <= y}.
  const Bits& down(Element x) const { return down_[x]; }
  const Bits& up(Element x) const { return up_[x]; }

  const std::string& label(Element x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Element> find(const std::string& label) const;
  const std::vector<Element>& ortho_table() const noexcept { return ortho_; }

  Element meet_all(const ElementSet& xs) const;
  Element join_all(const ElementSet& xs) const;
  /// Covering pairs (x, y) with x < y and nothing strictly between.
  std::vector<std::pair<Element, Element>> covers() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  std::vector<Element> ortho_;
  Element zero_ = 0;
  Element one_ = 0;
};

/// A named failed instance of an identity or axiom.
struct Violation {
  std::string axiom;
  std::vector<Element> witness;
};

struct ValidationReport {
  std::vector<Violation> structural;  // malformed ortho table
  std::vector<Violation> axioms;      // ortholattice axioms that fail
  bool ok() const { return structural.empty() && axioms.empty(); }
};

/// At most one witness per axiom; the first found in index order.
ValidationReport validate_ortholattice(const FiniteOL& l);

struct OMLFlag {
  bool is_oml = true;
  std::optional<std::pair<Element, Element>> witness;  // x <= y with x ∨ (x' ∧ y) != y
};
OMLFlag check_orthomodular(const FiniteOL& l);

bool commutes(const FiniteOL& l, Element x, Element y);
ElementSet center(const FiniteOL& l);
/// Maximal Boolean subalgebras: the maximal pairwise-commuting subsets of an OML.
std::vector<ElementSet> blocks(const FiniteOL& l);

inline Element sasaki_product(const FiniteOL& l, Element x, Element y) {
  return l.meet(x, l.join(l.ortho(x), y));
}
inline Element sasaki_hook(const FiniteOL& l, Element x, Element y) {
  return l.join(l.ortho(x), l.meet(x, y));
}

struct FoulisHollandResult {
  bool precondition = false;  // some argument commutes with the other two
  bool distributive = false;  // the generated subalgebra is distributive
  ElementSet generated;
};
FoulisHollandResult foulis_holland_check(const FiniteOL& l, Element x, Element y, Element z);

// Subalgebra utilities shared by the other modules.

ElementSet to_set(const Bits& b);
Bits to_bits(const FiniteOL& l, const ElementSet& s);
/// Closure of `seed` ∪ {0,1} under ∧, ∨, ⊥.
ElementSet subalgebra_closure(const FiniteOL& l, const ElementSet& seed);
bool is_subalgebra(const FiniteOL& l, const ElementSet& s);
/// Every subalgebra of l, ordered by size then lexicographically.
std::vector<ElementSet> all_subalgebras(const FiniteOL& l, std::size_t limit = 100000);
bool is_distributive(const FiniteOL& l, const ElementSet& s);
/// All pairs commute (for an OML: l is a Boolean algebra).
bool is_boolean(const FiniteOL& l);
bool pairwise_commuting(const FiniteOL& l, const ElementSet& s);

/// Canonical structures used throughout tests, fixtures and docs.
namespace lattices {

/// Powerset of `atoms` points; element index = bitmask.
FiniteOL boolean(std::size_t atoms);
/// 0 < a_1 < ... < 1 with the given ortho table (used for negative fixtures).
FiniteOL chain(std::size_t n, std::vector<Element> ortho);
/// Horizontal sum of n four-element Boolean algebras: 0, 1, a_k, a_k'.
FiniteOL mo(std::size_t n);
/// Benzene ring O6: 0 < a < b < 1 and 0 < b' < a' < 1.
FiniteOL hexagon();
FiniteOL product(const FiniteOL& a, const FiniteOL& b);

}  // namespace lattices

}  // namespace qmon
