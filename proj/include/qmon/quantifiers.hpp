#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmon/greechie.hpp"
#include "qmon/lattice.hpp"

namespace qmon {

/// A total map on the element indices of some FiniteOL.
using UnaryMap = std::vector<Element>;

struct AxiomStatus {
  std::string name;
  bool holds = true;
  std::vector<Element> witness;  // first failing instance
};

struct QuantifierReport {
  std::vector<AxiomStatus> axioms;  // Q1..Q6 in order
  bool is_quantifier = false;       // Q1..Q5; Q6 is informational
  const AxiomStatus& q(int k) const { return axioms.at(static_cast<std::size_t>(k - 1)); }
};

/// Throws StructureError when e is not a total map on l.
void require_total(const FiniteOL& l, const UnaryMap& e);

QuantifierReport check_quantifier(const FiniteOL& l, const UnaryMap& e);
bool is_quantifier(const FiniteOL& l, const UnaryMap& e);

/// a ↦ least element of S above a. PreconditionError(NotSubalgebra) unless S
/// is a subalgebra.
UnaryMap quantifier_from_subalgebra(const FiniteOL& l, const ElementSet& s);
/// Image of e, sorted.
ElementSet fixpoint_subalgebra(const UnaryMap& e);
/// ∀a = (∃a⊥)⊥.
UnaryMap forall_from_exists(const FiniteOL& l, const UnaryMap& e);

struct PairCheck {
  bool holds = true;
  std::optional<std::pair<Element, Element>> witness;
};
/// ∃a ≤ b ⇔ a ≤ ∀b for every pair.
PairCheck check_residuation(const FiniteOL& l, const UnaryMap& e);
/// ∃ preserves binary joins and ∀ binary meets.
PairCheck check_join_preservation(const FiniteOL& l, const UnaryMap& e);

struct LemmaQ6Result {
  bool q1_q2_q6 = false;
  bool q1_to_q5 = false;
  bool agree() const { return q1_q2_q6 == q1_to_q5; }
};
/// PreconditionError(NotBoolean) when some pair of elements fails to commute.
LemmaQ6Result check_lemma_q6_boolean(const FiniteOL& b, const UnaryMap& e);

struct Q6Witness {
  FiniteOL lattice;
  std::optional<GreechieDiagram> diagram;
  ElementSet subalgebra;
  UnaryMap exists;
  Element p = 0, q = 0;
  Element lhs = 0;  // ∃(p ∧ ∃q)
  Element rhs = 0;  // ∃p ∧ ∃q
};

struct Q6Search {
  std::optional<Q6Witness> witness;
  std::size_t structures_examined = 0;  // lattices that were OMLs
  std::size_t candidates_skipped = 0;   // pastings that were not OMLs
};

/// Scans one OML: Boolean subalgebras in the order of all_subalgebras, then
/// p and q ascending, for ∃(p∧∃q) = 0 while ∃p∧∃q ≠ 0.
std::optional<Q6Witness> find_q6_in(const FiniteOL& l);
/// Greechie pastings of 3-atom blocks up to `max_blocks`, in enumerate_greechie order.
Q6Search find_q6_counterexample(std::size_t max_blocks);
/// Boolean algebras with 1..max_atoms atoms.
Q6Search find_q6_boolean(std::size_t max_atoms);

struct PIdealCheck {
  bool contains_zero = true;
  bool down_closed = true;
  bool join_closed = true;
  bool p_condition = true;   // b ∧ (a ∨ b⊥) ∈ I
  bool exists_closed = true; // only meaningful when a quantifier was given
  std::string failed;        // first failing condition
  std::vector<Element> witness;
  bool is_ideal() const { return contains_zero && down_closed && join_closed; }
  bool is_p_ideal() const { return is_ideal() && p_condition; }
};
PIdealCheck check_p_ideal(const FiniteOL& l, const ElementSet& ideal, const UnaryMap* e = nullptr);
/// p-ideal, and ∃-closed when e is given.
bool is_p_ideal(const FiniteOL& l, const ElementSet& ideal, const UnaryMap* e = nullptr);

struct Congruence {
  std::vector<std::size_t> class_of;
  std::vector<ElementSet> classes;
  bool meet_compatible = false;
  bool join_compatible = false;
  bool ortho_compatible = false;
  std::optional<bool> exists_compatible;
  bool is_congruence() const { return meet_compatible && join_compatible && ortho_compatible; }
};
/// x ~ y iff x ∨ a = y ∨ a for some a in I. PreconditionError(NotAnIdeal)
/// when I is not an ideal.
Congruence congruence_from_ideal(const FiniteOL& l, const ElementSet& ideal, const UnaryMap* e = nullptr);

struct Quotient {
  FiniteOL lattice;
  UnaryMap exists;  // empty when no quantifier was given
};
/// L/θ, with the induced quantifier. PreconditionError(NotCongruence) when θ
/// is not compatible with the operations.
Quotient quotient(const FiniteOL& l, const Congruence& c, const UnaryMap* e = nullptr);

struct CommutantClosure {
  ElementSet members;
  bool is_subalgebra = false;
  bool exists_closed = false;
};
/// C(a) = {x : a commutes with x}. PreconditionError(FixpointRequired) unless ∃a = a.
CommutantClosure relative_commutant_closure(const FiniteOL& l, const UnaryMap& e, Element a);

struct IntervalAlgebra {
  FiniteOL lattice;        // [0,a] with x# = a ∧ x⊥
  UnaryMap exists;         // ∃ restricted
  std::vector<Element> to_parent;
  QuantifierReport report;
  bool product_isomorphism = false;  // C(a) ≅ [0,a] × [0,a⊥] as monadic algebras
};
IntervalAlgebra interval_algebra(const FiniteOL& l, const UnaryMap& e, Element a);

/// Down-set [0,a] with relative ortho a ∧ x⊥ (needs no quantifier).
FiniteOL interval_lattice(const FiniteOL& l, Element a, std::vector<Element>* to_parent = nullptr);

}  // namespace qmon
