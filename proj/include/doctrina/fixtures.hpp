#pragma once

#include <string>
#include <vector>

#include "doctrina/doctrine.hpp"

namespace doctrina {

/// Subsets over a fragment of FinSet. `max_point` is 2 or 4.
///
/// max_point = 2: carriers [0], [1], [2], [4] with [4] = [2] x [2]; maps out
/// of [4] read one coordinate at a time, which keeps the fragment closed and
/// its products honest. Fibers are the subsets whose size is a carrier.
/// max_point = 4: all of FinSet on [0]..[4], fibers are full powersets.
DoctrinePtr sub_finset(int max_point);

/// Subsets over the FinSet fragment on the given carrier sizes (each at most
/// 4). [2] x [2] = [4] is declared when both exist, with (i, j) coded 2i + j.
/// `coordinatewise` keeps only the maps out of [4] that read one coordinate
/// per output coordinate; `subsets_by_carrier` keeps only subsets whose size
/// is a carrier, so every predicate has a comprehension.
DoctrinePtr finset_fragment(std::string name, std::vector<int> sizes, bool coordinatewise,
                            bool subsets_by_carrier);

/// Subsets over the FinSet fragment on [1] and [2] alone (powerset fibers).
DoctrinePtr sub_finset_small();

/// Every fiber is a point; delta is top; comprehensions and quotients are
/// identities.
DoctrinePtr trivial_doctrine(const CategoryPtr& base, std::string name = "trivial");

/// Chain 0 < 1 < ... < n-1 as an inf-semilattice.
InfSemilattice chain(int n);

/// A meet-semilattice as a thin category; products are meets, the terminal
/// object is the top.
CategoryPtr thin_category(const InfSemilattice& L);

/// Downsets over the thin category of L; reindexing along a <= b is meet with a.
DoctrinePtr thin_base_sub(const InfSemilattice& L, std::string name = "thin_chain3");

/// A chosen weak pullback (p, q) of the cospan (h, g): h p = g q.
struct WeakPullback {
  int h = -1, g = -1;
  int p = -1, q = -1;
};

/// Deterministic search for one weak pullback per cospan; throws
/// structure-missing when some cospan has none.
std::vector<WeakPullback> search_weak_pullbacks(const FragmentCategory& C);
/// Reports commuting and weak universality of each declared square.
void verify_weak_pullbacks(const FragmentCategory& C, const std::vector<WeakPullback>& table,
                           VerificationReport& report);

/// Poset reflection of the slices, reindexed along the weak pullbacks.
DoctrinePtr weak_subobjects(const CategoryPtr& C, const std::vector<WeakPullback>& table,
                            std::string name = "weak_demo");
/// Three objects X, Y, A with X = Y through u, v and f = g u, g = f v.
CategoryPtr weak_demo_base();

/// The trivial doctrine over the sub_finset(2) base: delta = top identifies
/// every pair of parallel maps, so diagonals are not comprehensive.
DoctrinePtr nonextensional();

/// Names of every shipped fixture and a builder by name.
std::vector<std::string> fixture_names();
DoctrinePtr fixture(const std::string& name);

/// Conjugation by the swap of [2] on sub_finset(2): an automorphism.
DoctrineMap swap_conjugation(const DoctrinePtr& sub2);
/// The constant 1-cell onto the top of a thin base, with b = top.
DoctrineMap constant_top(const DoctrinePtr& thin);

}  // namespace doctrina
