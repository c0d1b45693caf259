#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include "doctrina/completions.hpp"

namespace doctrina {

/// c, d, q, and the composite qc = T_q T_c.
enum class MonadKind { c, d, q, qc };
std::string_view to_string(MonadKind k);
std::optional<MonadKind> parse_monad_kind(std::string_view s);
CompletionKind completion_kind(MonadKind k);  // precondition error for qc

/// Memoized completions, so that T(P), T(F), units and counits built at
/// different times share their doctrines and compare strictly.
class MonadContext {
 public:
  explicit MonadContext(CompletionOptions opt = {}) : opt_(opt) {}

  const Completion& completion(CompletionKind k, const DoctrinePtr& P);

  DoctrinePtr T(MonadKind k, const DoctrinePtr& P);
  DoctrineMap T(MonadKind k, const DoctrineMap& F);
  DoctrineCell T(MonadKind k, const DoctrineCell& theta);
  DoctrineMap eta(MonadKind k, const DoctrinePtr& P);
  /// mu_P : T T P -> T P.
  DoctrineMap mu(MonadKind k, const DoctrinePtr& P);
  /// The counit at a doctrine carrying the structure: T P -> P.
  DoctrineMap epsilon(MonadKind k, const DoctrinePtr& P);
  /// delta_P : T_c T_q P -> T_q T_c P.
  DoctrineMap delta(const DoctrinePtr& P);

  const CompletionOptions& options() const { return opt_; }

 private:
  CompletionOptions opt_;
  std::map<std::pair<CompletionKind, const Doctrine*>, Completion> cache_;
};

struct MonadAtDoctrine {
  MonadKind kind = MonadKind::c;
  DoctrinePtr P, TP, T2P, T3P;
  DoctrineMap eta, eta_T, T_eta;  // P -> TP, TP -> T2P, TP -> T2P
  DoctrineMap mu, mu_T, T_mu;     // T2P -> TP, T3P -> T2P, T3P -> T2P
};

MonadAtDoctrine monad_at(MonadContext& ctx, MonadKind k, const DoctrinePtr& P);

/// Associativity and both unit laws as strict equalities of 1-cells; each law
/// names the first differing component when it fails.
VerificationReport verify_monad_laws(const MonadAtDoctrine& m);
VerificationReport verify_monad_laws(MonadKind k, const DoctrinePtr& P,
                                     const CompletionOptions& opt = {});

struct AlgebraAtDoctrine {
  MonadKind kind = MonadKind::c;
  DoctrinePtr carrier;
  DoctrineMap action;  // T(carrier) -> carrier
};

/// (P, epsilon_P); structure-missing when P lacks the structure.
AlgebraAtDoctrine algebra_from_structure(MonadContext& ctx, MonadKind k, const DoctrinePtr& P);
/// action eta = id and action mu = action T(action).
VerificationReport verify_algebra(MonadContext& ctx, const AlgebraAtDoctrine& a);
/// The chosen structure read off the action: comprehensions as images of
/// id : (A, alpha) -> (A, top), quotients as images of id : (A, delta) -> (A, rho).
/// Checks that the action is the counit of the recovered structure;
/// precondition error when the algebra axioms fail.
Doctrine structure_from_algebra(MonadContext& ctx, const AlgebraAtDoctrine& a);

/// Componentwise equality of maps whose ends may be distinct but identical doctrines.
bool same_components(const DoctrineMap& a, const DoctrineMap& b);

enum class Fault { object, fiber };
/// Corrupts one component of the action (an object image, or one fiber value).
AlgebraAtDoctrine inject_fault(const AlgebraAtDoctrine& a, Fault f);

// colax / lax morphisms of algebras

/// tau : F eps_P => eps_R T(F); unit and multiplication pasting conditions.
VerificationReport verify_colax_coherence(MonadContext& ctx, MonadKind k, const DoctrineMap& F,
                                          const DoctrineCell& tau);
/// omega : eps_R T(F) => F eps_P.
VerificationReport verify_lax_coherence(MonadContext& ctx, MonadKind k, const DoctrineMap& F,
                                        const DoctrineCell& omega);

struct UniquenessOptions {
  /// Search nodes visited before giving up with a resource error.
  std::size_t max_nodes = 50'000'000;
  /// 0 means DOCTRINA_THREADS, or the hardware concurrency.
  unsigned threads = 0;
};

/// Number of 2-cells making F a colax (c), lax (q), or pseudo (d, invertible)
/// morphism of the canonical algebras; stops counting at 2.
std::size_t two_cell_uniqueness(MonadContext& ctx, MonadKind k, const DoctrineMap& F,
                                const UniquenessOptions& opt = {});

/// T(F) eta_P = eta_R F, and eps_R T(F) = F eps_P when F preserves the structure.
VerificationReport verify_unit_naturality(MonadContext& ctx, MonadKind k, const DoctrineMap& F);

// the distributive law

/// delta_P with the four distributive-law diagrams at P and both structures
/// on T_q T_c P.
VerificationReport verify_distributive_law(MonadContext& ctx, const DoctrinePtr& P);

/// Runs the extensional collapse on doctrines with full comprehensions (and
/// quotients) and records whether the output loses them. Outcomes are pass
/// entries carrying the counterexample, or skips when none is found.
VerificationReport no_lift_witness(const std::vector<DoctrinePtr>& candidates,
                                   const CompletionOptions& opt = {});

}  // namespace doctrina
