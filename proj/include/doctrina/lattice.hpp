#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "doctrina/report.hpp"

namespace doctrina {

/// A finite inf-semilattice stored extensionally: element names, the order
/// matrix, the top element and a precomputed meet table.
class InfSemilattice {
 public:
  InfSemilattice() = default;

  /// Unchecked constructor; `meet` may be inconsistent with `leq`, which is
  /// what verify_semilattice is for.
  InfSemilattice(std::vector<std::string> names, std::vector<char> leq, int top,
                 std::vector<int> meet);

  /// Builds from generating pairs (a <= b): reflexive-transitive closure,
  /// antisymmetry, top and glb are all computed and checked.
  static InfSemilattice from_order(std::vector<std::string> names,
                                   const std::vector<std::pair<int, int>>& leq_pairs);

  /// Builds from a full order matrix (row-major, n*n), checked like from_order.
  static InfSemilattice from_matrix(std::vector<std::string> names, std::vector<char> leq);

  /// Single-element lattice.
  static InfSemilattice point(std::string name = "T");

  int size() const { return static_cast<int>(names_.size()); }
  int top() const { return top_; }
  bool leq(int x, int y) const;
  int meet(int x, int y) const;
  const std::string& name(int x) const;
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> find(const std::string& name) const;
  int index_of(const std::string& name) const;  // throws lookup

  /// Hasse diagram as (lower, upper) pairs in lexicographic order.
  std::vector<std::pair<int, int>> covers() const;

  bool operator==(const InfSemilattice& o) const {
    return names_ == o.names_ && leq_ == o.leq_ && top_ == o.top_ && meet_ == o.meet_;
  }

 private:
  void check(int x) const;
  std::vector<std::string> names_;
  std::vector<char> leq_;
  int top_ = -1;
  std::vector<int> meet_;
};

using LatticePtr = std::shared_ptr<const InfSemilattice>;

/// A sub-semilattice with index translation to and from its parent.
struct SubLattice {
  InfSemilattice lattice;
  std::vector<int> to_parent;
  std::vector<int> from_parent;  // -1 outside
};

/// {y | y <= x} with top x and inherited meets.
SubLattice downset(const InfSemilattice& L, int x);

/// Restriction of L to `members` (ascending order kept); throws precondition
/// unless the subset contains a top and is closed under meets.
SubLattice sub_semilattice(const InfSemilattice& L, const std::vector<int>& members);

struct MeetMap {
  LatticePtr source;
  LatticePtr target;
  std::vector<int> map;
  int operator()(int x) const { return map.at(static_cast<std::size_t>(x)); }
};

MeetMap identity_map(const LatticePtr& L);
/// g after f.
MeetMap compose(const MeetMap& g, const MeetMap& f);
/// Two-sided inverse, if the map is a bijection whose inverse is monotone.
std::optional<MeetMap> find_inverse(const MeetMap& m);

void verify_semilattice(const InfSemilattice& L, VerificationReport& report,
                        const std::string& label = "L");
void verify_meet_map(const MeetMap& m, VerificationReport& report,
                     const std::string& label = "m");

}  // namespace doctrina
