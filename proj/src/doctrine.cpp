#include "doctrina/doctrine.hpp"

#include <unordered_map>

#include "doctrina/error.hpp"

namespace doctrina {

bool Doctrine::covered(int a) const {
  return base->product(a, a).has_value() && static_cast<std::size_t>(a) < delta.size() &&
         delta[static_cast<std::size_t>(a)] >= 0;
}

int Doctrine::delta_of(int a) const {
  if (!covered(a))
    fail(ErrorCode::structure_missing, "no fibered equality on " + base->object_name(a));
  return delta[static_cast<std::size_t>(a)];
}

std::size_t Doctrine::total_fiber_elements() const {
  std::size_t n = 0;
  for (const auto& f : fibers) n += static_cast<std::size_t>(f->size());
  return n;
}

bool same_structure(const Doctrine& a, const Doctrine& b) {
  const auto& A = *a.base;
  const auto& B = *b.base;
  if (A.object_count() != B.object_count() || A.morphism_count() != B.morphism_count())
    return false;
  for (int x = 0; x < A.object_count(); ++x)
    if (A.object_name(x) != B.object_name(x) || A.identity(x) != B.identity(x)) return false;
  for (int m = 0; m < A.morphism_count(); ++m)
    if (A.src(m) != B.src(m) || A.dst(m) != B.dst(m) || A.morphism_name(m) != B.morphism_name(m))
      return false;
  for (int f = 0; f < A.morphism_count(); ++f)
    for (int g : A.outgoing(A.dst(f)))
      if (A.try_compose(g, f) != B.try_compose(g, f)) return false;
  if (A.products().size() != B.products().size() || A.terminal() != B.terminal()) return false;
  for (std::size_t i = 0; i < A.products().size(); ++i) {
    const auto& p = A.products()[i];
    const auto& q = B.products()[i];
    if (p.left != q.left || p.right != q.right || p.product.object != q.product.object ||
        p.product.pr1 != q.product.pr1 || p.product.pr2 != q.product.pr2)
      return false;
  }
  if (a.fibers.size() != b.fibers.size()) return false;
  for (std::size_t i = 0; i < a.fibers.size(); ++i)
    if (!(*a.fibers[i] == *b.fibers[i])) return false;
  return a.reindex == b.reindex && a.delta == b.delta && a.comprehension == b.comprehension &&
         a.quotient == b.quotient && a.metadata == b.metadata && a.name == b.name &&
         a.generated_by == b.generated_by;
}

int box(const Doctrine& P, int a, int alpha, int b, int beta) {
  auto p = P.base->product(a, b);
  if (!p)
    fail(ErrorCode::fragment_incomplete, "product " + P.base->object_name(a) + " x " +
                                             P.base->object_name(b) + " is not declared");
  return P.fiber(p->object).meet(P.re(p->pr1, alpha), P.re(p->pr2, beta));
}

void verify_doctrine(const Doctrine& P, VerificationReport& report,
                     const CategoryCheckOptions& opt) {
  const auto& C = *P.base;
  verify_category(C, report, opt);
  verify_product_fragment(C, report);
  if (static_cast<int>(P.fibers.size()) != C.object_count() ||
      static_cast<int>(P.reindex.size()) != C.morphism_count()) {
    report.fail("doctrine.shape", "one fiber per object and one map per morphism",
                {P.name}, "table sizes differ from the base");
    return;
  }
  VerificationReport fibers;
  for (int a = 0; a < C.object_count(); ++a) verify_semilattice(P.fiber(a), fibers, C.object_name(a));
  report.merge_summed(fibers);
  {
    LawTally t(report, "doctrine.reindex-typed", "reindexing maps P(B) into P(A)");
    for (int m = 0; m < C.morphism_count(); ++m) {
      const auto& tab = P.reindex[static_cast<std::size_t>(m)];
      bool ok = static_cast<int>(tab.size()) == P.fiber(C.dst(m)).size();
      for (std::size_t i = 0; ok && i < tab.size(); ++i)
        ok = tab[i] >= 0 && tab[i] < P.fiber(C.src(m)).size();
      t.check(ok, {C.morphism_name(m)});
    }
    if (t.failed()) return;
  }
  {
    LawTally t(report, "doctrine.reindex-meets", "reindexing preserves top and meets");
    for (int m = 0; m < C.morphism_count(); ++m) {
      const auto& S = P.fiber(C.dst(m));
      const auto& T = P.fiber(C.src(m));
      t.check(P.re(m, S.top()) == T.top(), {C.morphism_name(m)}, "top not preserved");
      for (int x = 0; x < S.size(); ++x)
        for (int y = 0; y < S.size(); ++y)
          t.check(P.re(m, S.meet(x, y)) == T.meet(P.re(m, x), P.re(m, y)),
                  {C.morphism_name(m), S.name(x), S.name(y)});
    }
  }
  {
    LawTally t(report, "doctrine.reindex-identity", "reindexing along identities is the identity");
    for (int a = 0; a < C.object_count(); ++a)
      for (int x = 0; x < P.fiber(a).size(); ++x)
        t.check(P.re(C.identity(a), x) == x, {C.object_name(a), P.fiber(a).name(x)});
  }
  std::size_t work = 0;
  for (int f = 0; f < C.morphism_count() && work <= opt.max_triples; ++f)
    for (int g : C.outgoing(C.dst(f)))
      work += static_cast<std::size_t>(P.fiber(C.dst(g)).size());
  if (work > opt.max_triples) {
    report.skip("doctrine.reindex-functorial", "reindexing is contravariantly functorial",
                "more than " + std::to_string(opt.max_triples) + " instances");
  } else {
    LawTally t(report, "doctrine.reindex-functorial", "reindexing is contravariantly functorial");
    for (int f = 0; f < C.morphism_count(); ++f)
      for (int g : C.outgoing(C.dst(f))) {
        int gf = C.try_compose(g, f);
        if (gf < 0) continue;
        for (int x = 0; x < P.fiber(C.dst(g)).size(); ++x)
          t.check(P.re(gf, x) == P.re(f, P.re(g, x)),
                  {C.morphism_name(g), C.morphism_name(f), P.fiber(C.dst(g)).name(x)});
      }
  }
  LawTally t(report, "doctrine.structure-typed", "chosen structure is well typed");
  for (int a = 0; a < C.object_count(); ++a) {
    auto sq = C.product(a, a);
    if (static_cast<std::size_t>(a) < P.delta.size() && P.delta[a] >= 0)
      t.check(sq && P.delta[a] < P.fiber(sq->object).size(), {C.object_name(a)}, "delta");
    if (P.has_comprehensions())
      for (int c : P.comprehension.at(static_cast<std::size_t>(a)))
        if (c >= 0) t.check(c < C.morphism_count() && C.dst(c) == a, {C.object_name(a)}, "comprehension");
    if (P.has_quotients())
      for (int q : P.quotient.at(static_cast<std::size_t>(a)))
        if (q >= 0) t.check(q < C.morphism_count() && C.src(q) == a, {C.object_name(a)}, "quotient");
  }
}

void verify_elementary(const Doctrine& P, VerificationReport& report) {
  const auto& C = *P.base;
  for (int a = 0; a < C.object_count(); ++a)
    if (C.product(a, a) && !P.covered(a))
      fail(ErrorCode::structure_missing,
           "object " + C.object_name(a) + " has a declared square but no fibered equality");
  {
    LawTally t(report, "elementary.diagonal-adjoint",
               "P_pr1(a) meet delta is left adjoint to reindexing along the diagonal");
    for (int a = 0; a < C.object_count(); ++a) {
      if (!P.covered(a)) continue;
      auto sq = *C.product(a, a);
      const auto& FA = P.fiber(a);
      const auto& FAA = P.fiber(sq.object);
      int d = P.delta_of(a);
      int diag = C.diagonal(a);
      for (int x = 0; x < FA.size(); ++x) {
        int ex = FAA.meet(P.re(sq.pr1, x), d);
        for (int y = 0; y < FAA.size(); ++y)
          t.check(FAA.leq(ex, y) == FA.leq(x, P.re(diag, y)),
                  {C.object_name(a), FA.name(x), FAA.name(y)});
      }
    }
  }
  std::vector<std::string> missing;
  LawTally t(report, "elementary.parametric-adjoint",
             "the parametrised left adjoint along <id, pr_A>");
  for (const auto& dp : C.products()) {
    int x = dp.left, a = dp.right;
    if (!P.covered(a)) continue;
    int p1 = dp.product.object;
    int pA = dp.product.pr2;
    auto p2 = C.product(p1, a);
    if (!p2) {
      missing.push_back("(" + C.object_name(x) + "x" + C.object_name(a) + ")x" + C.object_name(a));
      continue;
    }
    int e = C.pairing(C.identity(p1), pA);
    int m = C.pairing(C.compose(pA, p2->pr1), p2->pr2);
    int d = P.re(m, P.delta_of(a));
    const auto& F1 = P.fiber(p1);
    const auto& F2 = P.fiber(p2->object);
    for (int u = 0; u < F1.size(); ++u) {
      int eu = F2.meet(P.re(p2->pr1, u), d);
      for (int v = 0; v < F2.size(); ++v)
        t.check(F2.leq(eu, v) == F1.leq(u, P.re(e, v)),
                {C.object_name(x), C.object_name(a), F1.name(u), F2.name(v)});
    }
  }
  t.finish();
  if (!missing.empty()) {
    std::string why = "fragment lacks the triple products";
    for (std::size_t i = 0; i < missing.size() && i < 8; ++i) why += (i ? ", " : " ") + missing[i];
    if (missing.size() > 8) why += " and " + std::to_string(missing.size() - 8) + " more";
    report.skip("elementary.parametric-adjoint", "the parametrised left adjoint along <id, pr_A>",
                why);
  }
}

std::vector<int> factor_through(const FragmentCategory& C, int f, int c) {
  std::vector<int> out;
  for (int g : C.hom(C.src(f), C.src(c)))
    if (C.try_compose(c, g) == f) out.push_back(g);
  return out;
}

std::vector<int> cofactor_through(const FragmentCategory& C, int f, int q) {
  std::vector<int> out;
  for (int g : C.hom(C.dst(q), C.dst(f)))
    if (C.try_compose(g, q) == f) out.push_back(g);
  return out;
}

bool is_comprehension(const Doctrine& P, int c, int a, int alpha) {
  const auto& C = *P.base;
  if (c < 0 || C.dst(c) != a) return false;
  if (P.re(c, alpha) != P.top(C.src(c))) return false;
  std::unordered_map<int, int> hits;
  for (int g : C.incoming(C.src(c))) ++hits[C.compose(c, g)];
  for (int f : C.incoming(a)) {
    if (P.re(f, alpha) != P.top(C.src(f))) continue;
    auto it = hits.find(f);
    if (it == hits.end() || it->second != 1) return false;
  }
  return true;
}

std::optional<int> find_comprehension(const Doctrine& P, int a, int alpha) {
  if (P.has_comprehensions()) {
    int c = P.comprehension.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(alpha));
    if (c >= 0) return c;
  }
  for (int c : P.base->incoming(a))
    if (is_comprehension(P, c, a, alpha)) return c;
  return std::nullopt;
}

namespace {

void require_comprehension_choice(const Doctrine& P) {
  if (!P.has_comprehensions())
    fail(ErrorCode::structure_missing, "doctrine '" + P.name + "' has no chosen comprehensions");
  for (int a = 0; a < P.base->object_count(); ++a)
    for (int x = 0; x < P.fiber(a).size(); ++x)
      if (P.comprehension.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(x)) < 0)
        fail(ErrorCode::structure_missing, "no chosen comprehension for " + P.fiber(a).name(x) +
                                               " over " + P.base->object_name(a));
}

}  // namespace

void check_full_comprehensions(const Doctrine& P, VerificationReport& report) {
  require_comprehension_choice(P);
  const auto& C = *P.base;
  {
    LawTally t(report, "comprehension.universal", "chosen arrows are comprehensions");
    for (int a = 0; a < C.object_count(); ++a)
      for (int x = 0; x < P.fiber(a).size(); ++x) {
        int c = P.comprehension[a][x];
        t.check(is_comprehension(P, c, a, x),
                {C.object_name(a), P.fiber(a).name(x), C.morphism_name(c)});
      }
  }
  LawTally t(report, "comprehension.full", "factorization of comprehensions reflects the order");
  for (int a = 0; a < C.object_count(); ++a) {
    const auto& F = P.fiber(a);
    for (int x = 0; x < F.size(); ++x)
      for (int y = 0; y < F.size(); ++y) {
        int cx = P.comprehension[a][x];
        int cy = P.comprehension[a][y];
        bool factors = !factor_through(C, cx, cy).empty();
        t.check(!factors || F.leq(x, y), {C.object_name(a), F.name(x), F.name(y)},
                "comprehension factors but the order fails");
      }
  }
}

void check_comprehensive_diagonals(const Doctrine& P, VerificationReport& report) {
  const auto& C = *P.base;
  LawTally t(report, "diagonals.comprehensive", "the diagonal is the comprehension of delta");
  for (int a = 0; a < C.object_count(); ++a) {
    if (!P.covered(a)) continue;
    auto sq = *C.product(a, a);
    t.check(is_comprehension(P, C.diagonal(a), sq.object, P.delta_of(a)), {C.object_name(a)});
  }
}

Doctrine choose_comprehensions(const Doctrine& P) {
  Doctrine out = P;
  const auto& C = *P.base;
  if (!out.has_comprehensions()) {
    out.comprehension.resize(static_cast<std::size_t>(C.object_count()));
    for (int a = 0; a < C.object_count(); ++a)
      out.comprehension[a].assign(static_cast<std::size_t>(P.fiber(a).size()), -1);
  }
  for (int a = 0; a < C.object_count(); ++a)
    for (int x = 0; x < P.fiber(a).size(); ++x)
      if (out.comprehension[a][x] < 0)
        if (auto c = find_comprehension(P, a, x)) out.comprehension[a][x] = *c;
  return out;
}

}  // namespace doctrina
