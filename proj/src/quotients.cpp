#include <unordered_map>

#include "doctrina/doctrine.hpp"
#include "doctrina/error.hpp"

namespace doctrina {

RelationCheck check_equivalence_relation(const Doctrine& P, int a, int rho) {
  const auto& C = *P.base;
  auto sq = C.product(a, a);
  if (!sq) fail(ErrorCode::fragment_incomplete, "square of " + C.object_name(a) + " not declared");
  const auto& R = P.fiber(sq->object);
  RelationCheck out;
  out.reflexive = R.leq(P.delta_of(a), rho);
  int twist = C.pairing(sq->pr2, sq->pr1);
  out.symmetric = R.leq(rho, P.re(twist, rho));
  if (auto tri = C.product(sq->object, a)) {
    out.via_triple_product = true;
    int m12 = tri->pr1;
    int m23 = C.pairing(C.compose(sq->pr2, tri->pr1), tri->pr2);
    int m13 = C.pairing(C.compose(sq->pr1, tri->pr1), tri->pr2);
    const auto& T = P.fiber(tri->object);
    out.transitive = T.leq(T.meet(P.re(m12, rho), P.re(m23, rho)), P.re(m13, rho));
    return out;
  }
  // Without (A x A) x A, quantify over generalized elements x, y, z : X -> A.
  out.transitive = true;
  for (int x = 0; x < C.object_count() && out.transitive; ++x) {
    const auto& hs = C.hom(x, a);
    if (hs.empty()) continue;
    const auto& FX = P.fiber(x);
    const std::size_t n = hs.size();
    std::vector<int> rel(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rel[i * n + j] = P.re(C.pairing(hs[i], hs[j]), rho);
    for (std::size_t i = 0; i < n && out.transitive; ++i)
      for (std::size_t j = 0; j < n && out.transitive; ++j)
        for (std::size_t k = 0; k < n && out.transitive; ++k)
          out.transitive = FX.leq(FX.meet(rel[i * n + j], rel[j * n + k]), rel[i * n + k]);
  }
  return out;
}

bool is_equivalence_relation(const Doctrine& P, int a, int rho) {
  return check_equivalence_relation(P, a, rho).holds();
}

std::vector<int> equivalence_relations(const Doctrine& P, int a) {
  std::vector<int> out;
  if (!P.covered(a)) return out;
  int sq = P.base->product(a, a)->object;
  const auto& R = P.fiber(sq);
  int d = P.delta_of(a);
  for (int r = 0; r < R.size(); ++r)
    if (R.leq(d, r) && is_equivalence_relation(P, a, r)) out.push_back(r);
  return out;
}

int kernel(const Doctrine& P, int f) {
  const auto& C = *P.base;
  int b = C.dst(f);
  return P.re(C.cross(f, f), P.delta_of(b));
}

bool coequalizes(const Doctrine& P, int rho, int f) {
  const auto& C = *P.base;
  int a = C.src(f);
  int b = C.dst(f);
  int sq = C.product(a, a)->object;
  const auto& R = P.fiber(sq);
  if (P.covered(b)) return R.leq(rho, kernel(P, f));
  bool observed = false;
  for (int m : C.outgoing(b)) {
    if (!P.covered(C.dst(m))) continue;
    observed = true;
    if (!R.leq(rho, kernel(P, C.compose(m, f)))) return false;
  }
  return observed || R.leq(rho, P.delta_of(a));
}

SubLattice descent_data(const Doctrine& P, int a, int rho) {
  const auto& C = *P.base;
  auto sq = C.product(a, a);
  if (!sq) fail(ErrorCode::fragment_incomplete, "square of " + C.object_name(a) + " not declared");
  const auto& R = P.fiber(sq->object);
  std::vector<int> members;
  for (int x = 0; x < P.fiber(a).size(); ++x)
    if (R.leq(R.meet(P.re(sq->pr1, x), rho), P.re(sq->pr2, x))) members.push_back(x);
  return sub_semilattice(P.fiber(a), members);
}

bool is_quotient(const Doctrine& P, int a, int rho, int q) {
  const auto& C = *P.base;
  if (q < 0 || C.src(q) != a) return false;
  if (!coequalizes(P, rho, q)) return false;
  std::unordered_map<int, int> hits;
  for (int g : C.outgoing(C.dst(q))) ++hits[C.compose(g, q)];
  for (int f : C.outgoing(a)) {
    auto it = hits.find(f);
    int n = it == hits.end() ? 0 : it->second;
    if (n == 1) continue;
    if (n > 1 || coequalizes(P, rho, f)) return false;
  }
  return true;
}

std::optional<int> find_quotient(const Doctrine& P, int a, int rho) {
  if (P.has_quotients()) {
    int q = P.quotient.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(rho));
    if (q >= 0) return q;
  }
  for (int q : P.base->outgoing(a))
    if (is_quotient(P, a, rho, q)) return q;
  return std::nullopt;
}

namespace {

struct Square {
  int f;        // Y -> C
  int q_prime;  // Z -> Y
  int f_prime;  // Z -> A
};

// Pullbacks of q along every f into its codomain, found by search: a cone
// (q', f') is a pullback iff h |-> (q' h, f' h) is a bijection from Hom(W, Z)
// onto the cones from W, for every W.
std::vector<Square> pullback_squares(const FragmentCategory& C, int q) {
  std::vector<Square> out;
  const int a = C.src(q);
  const int n = C.object_count();
  for (int f : C.incoming(C.dst(q))) {
    const int y = C.src(f);
    std::vector<std::size_t> cones(static_cast<std::size_t>(n), 0);
    for (int w = 0; w < n; ++w)
      for (int u : C.hom(w, y))
        for (int v : C.hom(w, a))
          if (C.compose(f, u) == C.compose(q, v)) ++cones[w];
    for (int z = 0; z < n; ++z) {
      bool sizes = true;
      for (int w = 0; w < n && sizes; ++w) sizes = C.hom(w, z).size() == cones[w];
      if (!sizes) continue;
      for (int qp : C.hom(z, y))
        for (int fp : C.hom(z, a)) {
          if (C.compose(f, qp) != C.compose(q, fp)) continue;
          bool injective = true;
          for (int w = 0; w < n && injective; ++w) {
            std::unordered_map<std::uint64_t, int> seen;
            for (int h : C.hom(w, z)) {
              auto key = pack(static_cast<std::uint64_t>(C.compose(qp, h)),
                              static_cast<std::uint64_t>(C.compose(fp, h)));
              if (!seen.emplace(key, h).second) {
                injective = false;
                break;
              }
            }
          }
          if (injective) out.push_back({f, qp, fp});
        }
    }
  }
  return out;
}

}  // namespace

void check_quotient_properties(const Doctrine& P, VerificationReport& report) {
  if (!P.has_quotients())
    fail(ErrorCode::structure_missing, "doctrine '" + P.name + "' has no chosen quotients");
  const auto& C = *P.base;
  LawTally uni(report, "quotient.universal", "chosen arrows are quotients");
  LawTally eff(report, "quotient.effective", "the kernel of the quotient is the relation");
  LawTally des(report, "quotient.descent", "reindexing along the quotient is onto descent data");
  LawTally stab(report, "quotient.stable", "quotients are stable under pullback");
  std::size_t uncovered_squares = 0;
  for (int a = 0; a < C.object_count(); ++a) {
    if (!P.covered(a)) continue;
    int sq = C.product(a, a)->object;
    const auto& R = P.fiber(sq);
    for (int rho : equivalence_relations(P, a)) {
      int q = P.quotient.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(rho));
      if (q < 0)
        fail(ErrorCode::structure_missing,
             "no chosen quotient for " + R.name(rho) + " over " + C.object_name(a));
      std::vector<std::string> w{C.object_name(a), R.name(rho), C.morphism_name(q)};
      uni.check(is_quotient(P, a, rho, q), w);

      const int b = C.dst(q);
      if (P.covered(b)) {
        eff.check(kernel(P, q) == rho, w);
      } else {
        bool exact = true;
        for (int r = 0; r < R.size() && exact; ++r) exact = coequalizes(P, r, q) == R.leq(r, rho);
        eff.check(exact, w, "decided by observation");
      }

      auto D = descent_data(P, a, rho);
      const auto& FB = P.fiber(b);
      std::vector<int> img(static_cast<std::size_t>(FB.size()));
      bool lands = true;
      for (int x = 0; x < FB.size(); ++x) {
        img[x] = D.from_parent[static_cast<std::size_t>(P.re(q, x))];
        lands = lands && img[x] >= 0;
      }
      if (!lands) {
        des.check(false, w, "image leaves the descent data");
      } else {
        MeetMap m{P.fibers[static_cast<std::size_t>(b)],
                  std::make_shared<const InfSemilattice>(D.lattice), img};
        des.check(find_inverse(m).has_value(), w, "not an isomorphism");
      }

      for (const auto& s : pullback_squares(C, q)) {
        int z = C.src(s.q_prime);
        if (!P.covered(z)) {
          ++uncovered_squares;
          continue;
        }
        // q' must be a quotient of some equivalence relation on its domain;
        // its kernel is the only candidate when the codomain has equality
        bool found = false;
        if (P.covered(C.dst(s.q_prime))) {
          found = is_quotient(P, z, kernel(P, s.q_prime), s.q_prime);
        } else {
          for (int r : equivalence_relations(P, z))
            if ((found = is_quotient(P, z, r, s.q_prime))) break;
        }
        stab.check(found,
                   {C.object_name(a), R.name(rho), C.morphism_name(s.f),
                    C.morphism_name(s.q_prime)});
      }
    }
  }
  uni.finish();
  eff.finish();
  des.finish();
  stab.finish();
  if (uncovered_squares > 0)
    report.skip("quotient.stable", "quotients are stable under pullback",
                std::to_string(uncovered_squares) +
                    " pullback squares have an apex without fibered equality");
}

Doctrine choose_quotients(const Doctrine& P) {
  Doctrine out = P;
  const auto& C = *P.base;
  if (!out.has_quotients()) {
    out.quotient.resize(static_cast<std::size_t>(C.object_count()));
    for (int a = 0; a < C.object_count(); ++a) {
      auto sq = C.product(a, a);
      out.quotient[a].assign(sq ? static_cast<std::size_t>(P.fiber(sq->object).size()) : 0, -1);
    }
  }
  for (int a = 0; a < C.object_count(); ++a)
    for (int rho : equivalence_relations(P, a))
      if (out.quotient[a][rho] < 0)
        if (auto q = find_quotient(P, a, rho)) out.quotient[a][rho] = *q;
  return out;
}

}  // namespace doctrina
