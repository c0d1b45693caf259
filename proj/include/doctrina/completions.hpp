#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "doctrina/doctrine.hpp"

namespace doctrina {

enum class CompletionKind { comprehension, extensional, quotient };
std::string_view to_string(CompletionKind k);

struct CompletionOptions {
  std::size_t max_objects = 10'000;
  std::size_t max_fiber_elements = 100'000;
  std::size_t max_morphisms = 2'000'000;
  /// Run verify_elementary on the input first.
  bool check_input = true;
};

/// Tag of the formal object (A, =) that the quotient completion adds for an
/// object A without fibered equality.
inline constexpr int formal_equality = -1;

/// Index from new objects and morphisms back to the generators.
///
/// Objects are pairs (A, tag): tag is a predicate on A for the comprehension
/// completion, -1 for the extensional collapse, and a relation on A (or
/// formal_equality) for the quotient completion. Morphisms sit over a base
/// morphism; for the collapse that is the smallest member of the class.
struct CompletionIndex {
  std::vector<int> object_base;
  std::vector<int> object_tag;
  std::vector<std::string> object_names;
  std::vector<int> morphism_base;
  std::vector<int> morphism_src, morphism_dst;
  /// Extensional collapse only: class of every input morphism.
  std::vector<int> class_of;
  /// Fiber elements over an output object as elements of the input fiber over
  /// its base, and back (-1 outside); empty for the collapse, whose fibers
  /// are the input ones.
  std::vector<std::vector<int>> element_base;
  std::vector<std::vector<int>> element_index;
  std::unordered_map<std::uint64_t, int> objects;
  std::unordered_map<std::uint64_t, int> morphisms;
};

/// The output of one free construction together with its unit.
struct Completion {
  CompletionKind kind = CompletionKind::comprehension;
  DoctrinePtr input;
  DoctrinePtr output;
  DoctrineMap unit;
  std::shared_ptr<const CompletionIndex> index;

  int base_object(int o) const { return index->object_base.at(static_cast<std::size_t>(o)); }
  int tag(int o) const { return index->object_tag.at(static_cast<std::size_t>(o)); }
  int base_morphism(int m) const {
    return index->morphism_base.at(static_cast<std::size_t>(m));
  }
  int base_element(int o, int x) const;
  int element_of(int o, int x) const;  // -1 if outside
  int object_of(int a, int tag) const;  // -1 if absent
  /// The output morphism over f between the given output objects, -1 if
  /// absent; for the collapse, the class of f.
  int morphism_of(int f, int src, int dst) const;
};

Completion comp_completion(const DoctrinePtr& P, const CompletionOptions& opt = {});
Completion ext_collapse(const DoctrinePtr& P, const CompletionOptions& opt = {});
Completion quot_completion(const DoctrinePtr& P, const CompletionOptions& opt = {});
Completion complete(CompletionKind k, const DoctrinePtr& P, const CompletionOptions& opt = {});

/// f ~ f' for parallel f, f': equal up to the fibered equality of the codomain.
bool extensionally_equal(const Doctrine& P, int f, int g);

/// Counit from the completion back to its input; needs the chosen structure
/// (full comprehensions, comprehensive diagonals, or quotients).
DoctrineMap counit(const Completion& c);

/// The lift T(F) between completions of the ends of F (same kind).
DoctrineMap lift1(const Completion& from, const Completion& to, const DoctrineMap& F);
/// The lift of a 2-cell; `from` and `to` are the completions of its ends.
DoctrineCell lift2(const Completion& from, const Completion& to, const DoctrineCell& theta);

/// tau : F J_P => J_R F^ where {b alpha} tau = F{alpha}.
DoctrineCell mediating_tau(const Completion& cp, const Completion& cr, const DoctrineMap& F);
/// omega : V_R F- => F V_P where omega q_{b rho} = F q_rho.
DoctrineCell mediating_omega(const Completion& cp, const Completion& cr, const DoctrineMap& F);

}  // namespace doctrina
