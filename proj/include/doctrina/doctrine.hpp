#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "doctrina/error.hpp"
#include "doctrina/fincat.hpp"
#include "doctrina/lattice.hpp"
#include "doctrina/report.hpp"

namespace doctrina {

/// A doctrine over a fragment category, stored extensionally.
///
/// `reindex[m]` is the table of P_m : P(dst m) -> P(src m). Optional
/// structure uses -1 for "absent": `delta[A]` is an element of P(A x A);
/// `comprehension[A][a]` a morphism into A; `quotient[A][r]` a morphism
/// out of A for r in P(A x A). Empty outer vectors mean no choice at all.
struct Doctrine {
  std::string name;
  CategoryPtr base;
  std::vector<LatticePtr> fibers;
  std::vector<std::vector<int>> reindex;
  std::vector<int> delta;
  std::vector<std::vector<int>> comprehension;
  std::vector<std::vector<int>> quotient;
  std::map<std::string, std::string> metadata;
  std::string generated_by;

  const InfSemilattice& fiber(int a) const { return *fibers.at(static_cast<std::size_t>(a)); }
  int re(int m, int x) const {
    return reindex[static_cast<std::size_t>(m)][static_cast<std::size_t>(x)];
  }
  int top(int a) const { return fiber(a).top(); }
  /// A x A is declared and carries a fibered equality.
  bool covered(int a) const;
  int delta_of(int a) const;  // throws structure-missing
  bool has_comprehensions() const { return !comprehension.empty(); }
  bool has_quotients() const { return !quotient.empty(); }
  std::size_t total_fiber_elements() const;
};

using DoctrinePtr = std::shared_ptr<const Doctrine>;

/// Structural equality of every table.
bool same_structure(const Doctrine& a, const Doctrine& b);

/// P_{pr1}(alpha) and P_{pr2}(beta) met in P(A x B).
int box(const Doctrine& P, int a, int alpha, int b, int beta);

void verify_doctrine(const Doctrine& P, VerificationReport& report,
                     const CategoryCheckOptions& opt = {});
void verify_elementary(const Doctrine& P, VerificationReport& report);

// comprehensions

bool is_comprehension(const Doctrine& P, int c, int a, int alpha);
std::optional<int> find_comprehension(const Doctrine& P, int a, int alpha);
void check_full_comprehensions(const Doctrine& P, VerificationReport& report);
void check_comprehensive_diagonals(const Doctrine& P, VerificationReport& report);

// equivalence relations and quotients

struct RelationCheck {
  bool reflexive = false;
  bool symmetric = false;
  bool transitive = false;
  /// Transitivity was decided through (A x A) x A rather than over
  /// generalized elements X -> A.
  bool via_triple_product = false;
  bool holds() const { return reflexive && symmetric && transitive; }
};

RelationCheck check_equivalence_relation(const Doctrine& P, int a, int rho);
bool is_equivalence_relation(const Doctrine& P, int a, int rho);
/// All equivalence relations on a covered object, in element order.
std::vector<int> equivalence_relations(const Doctrine& P, int a);

/// P_{f x f}(delta_B).
int kernel(const Doctrine& P, int f);
/// rho <= kernel(f), decided by observation through covered objects when
/// the codomain of f is not covered.
bool coequalizes(const Doctrine& P, int rho, int f);
SubLattice descent_data(const Doctrine& P, int a, int rho);

bool is_quotient(const Doctrine& P, int a, int rho, int q);
std::optional<int> find_quotient(const Doctrine& P, int a, int rho);
void check_quotient_properties(const Doctrine& P, VerificationReport& report);

/// Factorizations: the morphisms g with c g = f.
std::vector<int> factor_through(const FragmentCategory& C, int f, int c);
/// Cofactorizations: the morphisms g with g q = f.
std::vector<int> cofactor_through(const FragmentCategory& C, int f, int q);

// 1-cells and 2-cells

struct DoctrineMap {
  DoctrinePtr source;
  DoctrinePtr target;
  Functor functor;
  std::vector<std::vector<int>> fibers;  // b_A : P(A) -> R(FA)

  int b(int a, int x) const {
    return fibers[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)];
  }
};

struct DoctrineCell {
  DoctrineMap from;
  DoctrineMap to;
  std::vector<int> components;
};

bool operator==(const DoctrineMap& a, const DoctrineMap& b);
/// First difference between two maps with the same ends, or empty.
std::string describe_difference(const DoctrineMap& a, const DoctrineMap& b);

DoctrineMap identity_map(const DoctrinePtr& P);
/// g after f.
DoctrineMap compose(const DoctrineMap& g, const DoctrineMap& f);
DoctrineCell identity_cell(const DoctrineMap& f);
/// h theta.
DoctrineCell whisker_left(const DoctrineMap& h, const DoctrineCell& theta);
/// theta k.
DoctrineCell whisker_right(const DoctrineCell& theta, const DoctrineMap& k);
/// psi after theta.
DoctrineCell vertical(const DoctrineCell& psi, const DoctrineCell& theta);
bool is_identity_cell(const DoctrineCell& c);
/// Invertible as a 2-cell: every component invertible and the inverse is a 2-cell.
bool is_invertible(const DoctrineCell& c);
/// A 1-cell is an isomorphism when its functor is bijective on objects and
/// morphisms and every fiber map is an order isomorphism.
bool is_isomorphism(const DoctrineMap& f);

void verify_cell1(const DoctrineMap& f, VerificationReport& report);
void verify_cell2(const DoctrineCell& c, VerificationReport& report);

/// R_{<F pr1, F pr2>^-1}(b_{A x A}(rho)): the relation on FA induced by rho.
int image_relation(const DoctrineMap& f, int a, int rho);

/// b preserves the chosen comprehensions: F{a} = {b a} for every chosen one.
bool preserves_comprehensions(const DoctrineMap& f);
/// F(q_rho) is the chosen quotient of the relation induced by b on FA.
bool preserves_quotients(const DoctrineMap& f);

/// Copies of P whose missing choices are filled by deterministic search.
Doctrine choose_comprehensions(const Doctrine& P);
Doctrine choose_quotients(const Doctrine& P);

}  // namespace doctrina
