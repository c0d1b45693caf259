#include "doctrina/doctrine.hpp"
#include "doctrina/error.hpp"

namespace doctrina {

bool operator==(const DoctrineMap& a, const DoctrineMap& b) {
  return a.source == b.source && a.target == b.target && a.functor.objects == b.functor.objects &&
         a.functor.morphisms == b.functor.morphisms && a.fibers == b.fibers;
}

std::string describe_difference(const DoctrineMap& a, const DoctrineMap& b) {
  if (a.source != b.source) return "different source doctrines";
  if (a.target != b.target) return "different target doctrines";
  const auto& S = *a.source->base;
  const auto& T = *a.target->base;
  for (int x = 0; x < S.object_count(); ++x)
    if (a.functor.ob(x) != b.functor.ob(x))
      return "object " + S.object_name(x) + ": " + T.object_name(a.functor.ob(x)) + " vs " +
             T.object_name(b.functor.ob(x));
  for (int m = 0; m < S.morphism_count(); ++m)
    if (a.functor.mor(m) != b.functor.mor(m))
      return "morphism " + S.morphism_name(m) + ": " + T.morphism_name(a.functor.mor(m)) +
             " vs " + T.morphism_name(b.functor.mor(m));
  for (int x = 0; x < S.object_count(); ++x) {
    const auto& F = a.source->fiber(x);
    const auto& G = a.target->fiber(a.functor.ob(x));
    for (int e = 0; e < F.size(); ++e)
      if (a.b(x, e) != b.b(x, e))
        return "fiber over " + S.object_name(x) + " at " + F.name(e) + ": " + G.name(a.b(x, e)) +
               " vs " + G.name(b.b(x, e));
  }
  return {};
}

DoctrineMap identity_map(const DoctrinePtr& P) {
  DoctrineMap m{P, P, identity_functor(P->base), {}};
  for (int a = 0; a < P->base->object_count(); ++a) {
    std::vector<int> id(static_cast<std::size_t>(P->fiber(a).size()));
    for (int x = 0; x < P->fiber(a).size(); ++x) id[x] = x;
    m.fibers.push_back(std::move(id));
  }
  return m;
}

DoctrineMap compose(const DoctrineMap& g, const DoctrineMap& f) {
  if (f.target != g.source) fail(ErrorCode::domain_mismatch, "1-cells are not composable");
  DoctrineMap h{f.source, g.target, compose(g.functor, f.functor), f.fibers};
  for (int a = 0; a < f.source->base->object_count(); ++a)
    for (auto& x : h.fibers[static_cast<std::size_t>(a)]) x = g.b(f.functor.ob(a), x);
  return h;
}

DoctrineCell identity_cell(const DoctrineMap& f) {
  DoctrineCell c{f, f, {}};
  for (int a = 0; a < f.source->base->object_count(); ++a)
    c.components.push_back(f.target->base->identity(f.functor.ob(a)));
  return c;
}

DoctrineCell whisker_left(const DoctrineMap& h, const DoctrineCell& theta) {
  DoctrineCell c{compose(h, theta.from), compose(h, theta.to), theta.components};
  for (auto& m : c.components) m = h.functor.mor(m);
  return c;
}

DoctrineCell whisker_right(const DoctrineCell& theta, const DoctrineMap& k) {
  DoctrineCell c{compose(theta.from, k), compose(theta.to, k), {}};
  for (int a = 0; a < k.source->base->object_count(); ++a)
    c.components.push_back(theta.components.at(static_cast<std::size_t>(k.functor.ob(a))));
  return c;
}

DoctrineCell vertical(const DoctrineCell& psi, const DoctrineCell& theta) {
  if (!(theta.to == psi.from)) fail(ErrorCode::domain_mismatch, "2-cells are not composable");
  DoctrineCell c{theta.from, psi.to, {}};
  const auto& T = *theta.from.target->base;
  for (std::size_t a = 0; a < theta.components.size(); ++a)
    c.components.push_back(T.compose(psi.components[a], theta.components[a]));
  return c;
}

bool is_identity_cell(const DoctrineCell& c) {
  if (!(c.from == c.to)) return false;
  const auto& T = *c.from.target->base;
  for (int m : c.components)
    if (!T.is_identity(m)) return false;
  return true;
}

bool is_invertible(const DoctrineCell& c) {
  const auto& T = *c.from.target->base;
  DoctrineCell inv{c.to, c.from, {}};
  for (int m : c.components) {
    auto k = find_inverse(T, m);
    if (!k) return false;
    inv.components.push_back(*k);
  }
  VerificationReport r;
  verify_cell2(inv, r);
  return r.ok();
}

bool is_isomorphism(const DoctrineMap& f) {
  const auto& S = *f.source->base;
  const auto& T = *f.target->base;
  if (S.object_count() != T.object_count() || S.morphism_count() != T.morphism_count())
    return false;
  std::vector<char> hit(static_cast<std::size_t>(T.object_count()), 0);
  for (int a = 0; a < S.object_count(); ++a) {
    if (hit[static_cast<std::size_t>(f.functor.ob(a))]) return false;
    hit[static_cast<std::size_t>(f.functor.ob(a))] = 1;
  }
  std::vector<char> mhit(static_cast<std::size_t>(T.morphism_count()), 0);
  for (int m = 0; m < S.morphism_count(); ++m) {
    if (mhit[static_cast<std::size_t>(f.functor.mor(m))]) return false;
    mhit[static_cast<std::size_t>(f.functor.mor(m))] = 1;
  }
  for (int a = 0; a < S.object_count(); ++a) {
    MeetMap m{f.source->fibers[static_cast<std::size_t>(a)],
              f.target->fibers[static_cast<std::size_t>(f.functor.ob(a))],
              f.fibers[static_cast<std::size_t>(a)]};
    if (!find_inverse(m)) return false;
  }
  return true;
}

void verify_cell1(const DoctrineMap& f, VerificationReport& report) {
  const auto& P = *f.source;
  const auto& R = *f.target;
  const auto& S = *P.base;
  if (f.functor.source != P.base || f.functor.target != R.base) {
    report.fail("cell1.shape", "functor between the bases", {P.name, R.name});
    return;
  }
  VerificationReport fr;
  verify_functor(f.functor, fr);
  report.merge(fr);
  if (!fr.ok()) return;
  {
    LawTally t(report, "cell1.fiber-typed", "b_A maps P(A) into R(FA)");
    for (int a = 0; a < S.object_count(); ++a) {
      const auto& tab = f.fibers.at(static_cast<std::size_t>(a));
      bool ok = static_cast<int>(tab.size()) == P.fiber(a).size();
      for (std::size_t i = 0; ok && i < tab.size(); ++i)
        ok = tab[i] >= 0 && tab[i] < R.fiber(f.functor.ob(a)).size();
      t.check(ok, {S.object_name(a)});
    }
    if (t.failed()) return;
  }
  {
    LawTally t(report, "cell1.fiber-meets", "b_A preserves top and meets");
    for (int a = 0; a < S.object_count(); ++a) {
      const auto& F = P.fiber(a);
      const auto& G = R.fiber(f.functor.ob(a));
      t.check(f.b(a, F.top()) == G.top(), {S.object_name(a), F.name(F.top())}, "top");
      for (int x = 0; x < F.size(); ++x)
        for (int y = 0; y < F.size(); ++y)
          t.check(f.b(a, F.meet(x, y)) == G.meet(f.b(a, x), f.b(a, y)),
                  {S.object_name(a), F.name(x), F.name(y)});
    }
  }
  {
    LawTally t(report, "cell1.natural", "b commutes with reindexing");
    for (int m = 0; m < S.morphism_count(); ++m) {
      int a = S.src(m), b = S.dst(m);
      for (int x = 0; x < P.fiber(b).size(); ++x)
        t.check(f.b(a, P.re(m, x)) == R.re(f.functor.mor(m), f.b(b, x)),
                {S.morphism_name(m), P.fiber(b).name(x)});
    }
  }
  LawTally t(report, "cell1.equality", "b preserves the fibered equality");
  for (int a = 0; a < S.object_count(); ++a) {
    if (!P.covered(a)) continue;
    int fa = f.functor.ob(a);
    if (!R.covered(fa)) {
      t.check(false, {S.object_name(a)}, "image has no fibered equality");
      continue;
    }
    int sq = S.product(a, a)->object;
    int cmp = product_comparison(f.functor, a, a);
    t.check(f.b(sq, P.delta_of(a)) == R.re(cmp, R.delta_of(fa)), {S.object_name(a)});
  }
}

void verify_cell2(const DoctrineCell& c, VerificationReport& report) {
  const auto& P = *c.from.source;
  const auto& R = *c.from.target;
  if (c.to.source != c.from.source || c.to.target != c.from.target) {
    report.fail("cell2.shape", "parallel 1-cells", {P.name, R.name});
    return;
  }
  VerificationReport nr;
  verify_nat(NatTransf{c.from.functor, c.to.functor, c.components}, nr);
  report.merge(nr);
  if (!nr.ok()) return;
  LawTally t(report, "cell2.inequality", "b_A(a) <= R_theta(c_A(a))");
  const auto& S = *P.base;
  for (int a = 0; a < S.object_count(); ++a) {
    const auto& G = R.fiber(c.from.functor.ob(a));
    for (int x = 0; x < P.fiber(a).size(); ++x)
      t.check(G.leq(c.from.b(a, x), R.re(c.components[a], c.to.b(a, x))),
              {S.object_name(a), P.fiber(a).name(x)});
  }
}

int image_relation(const DoctrineMap& f, int a, int rho) {
  const auto& S = *f.source->base;
  auto sq = S.product(a, a);
  if (!sq) fail(ErrorCode::fragment_incomplete, "square of " + S.object_name(a) + " not declared");
  auto inv = product_comparison_inverse(f.functor, a, a);
  if (!inv) fail(ErrorCode::internal, "product comparison is not invertible");
  return f.target->re(*inv, f.b(sq->object, rho));
}

bool preserves_comprehensions(const DoctrineMap& f) {
  const auto& P = *f.source;
  const auto& R = *f.target;
  if (!P.has_comprehensions() || !R.has_comprehensions()) return false;
  for (int a = 0; a < P.base->object_count(); ++a)
    for (int x = 0; x < P.fiber(a).size(); ++x) {
      int c = P.comprehension[a][x];
      if (c < 0) continue;
      int fa = f.functor.ob(a);
      if (f.functor.mor(c) != R.comprehension.at(fa).at(f.b(a, x))) return false;
    }
  return true;
}

bool preserves_quotients(const DoctrineMap& f) {
  const auto& P = *f.source;
  const auto& R = *f.target;
  if (!P.has_quotients() || !R.has_quotients()) return false;
  for (int a = 0; a < P.base->object_count(); ++a)
    for (int rho : equivalence_relations(P, a)) {
      int q = P.quotient[a][rho];
      if (q < 0) continue;
      int fa = f.functor.ob(a);
      if (!R.covered(fa)) return false;
      if (f.functor.mor(q) != R.quotient.at(fa).at(image_relation(f, a, rho))) return false;
    }
  return true;
}

}  // namespace doctrina
