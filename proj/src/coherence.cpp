#include <atomic>
#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>

#include "doctrina/monads.hpp"

namespace doctrina {

namespace {

// Everything needed to test the unit and multiplication pastings of a cell
// between the two composites T(P) -> R.
struct Pasting {
  MonadKind kind;
  bool lax = false;
  DoctrineMap F;
  DoctrineMap G1, G2;  // F eps_P and eps_R T(F)
  DoctrineMap from, to;
  const Completion* cp = nullptr;
  const Completion* cp2 = nullptr;
  const Completion* cr = nullptr;
  DoctrineMap T_from, T_to, eps_R, mu, T_eps;
  std::vector<int> units;  // objects eta_P(A) of T(P)
};

Pasting pasting(MonadContext& ctx, MonadKind k, const DoctrineMap& F, bool lax) {
  if (k == MonadKind::qc) fail(ErrorCode::precondition, "coherence is checked for T_c, T_d and T_q");
  const auto ck = completion_kind(k);
  Pasting p;
  p.kind = k;
  p.lax = lax;
  p.F = F;
  p.cp = &ctx.completion(ck, F.source);
  p.cr = &ctx.completion(ck, F.target);
  p.cp2 = &ctx.completion(ck, p.cp->output);
  DoctrineMap eps_P = counit(*p.cp);
  p.eps_R = counit(*p.cr);
  p.G1 = compose(F, eps_P);
  p.G2 = compose(p.eps_R, lift1(*p.cp, *p.cr, F));
  p.from = p.lax ? p.G2 : p.G1;
  p.to = p.lax ? p.G1 : p.G2;
  p.T_from = lift1(*p.cp2, *p.cr, p.from);
  p.T_to = lift1(*p.cp2, *p.cr, p.to);
  p.mu = counit(*p.cp2);
  p.T_eps = lift1(*p.cp2, *p.cp, eps_P);
  for (int a : p.cp->unit.functor.objects) p.units.push_back(a);
  return p;
}

// First multiplication-pasting failure at an object of T^2 P, or -1.
int mu_violation(const Pasting& p, const std::vector<int>& theta) {
  const auto& R = *p.F.target->base;
  const auto& S2 = *p.cp2->output->base;
  for (int X = 0; X < S2.object_count(); ++X) {
    int t = p.cr->morphism_of(theta[static_cast<std::size_t>(p.cp2->base_object(X))], p.T_from.functor.ob(X),
                              p.T_to.functor.ob(X));
    if (t < 0) return X;
    int e = p.eps_R.functor.mor(t);
    int side = theta[static_cast<std::size_t>(p.T_eps.functor.ob(X))];
    int lhs = p.lax ? R.compose(side, e) : R.compose(e, side);
    if (lhs != theta[static_cast<std::size_t>(p.mu.functor.ob(X))]) return X;
  }
  return -1;
}

VerificationReport coherence(MonadContext& ctx, MonadKind k, const DoctrineMap& F, const DoctrineCell& c,
                             bool lax) {
  VerificationReport r;
  const std::string name = lax ? "lax" : "colax";
  if ((k == MonadKind::c && lax) || (k == MonadKind::q && !lax))
    fail(ErrorCode::precondition, "T_" + std::string(to_string(k)) + " morphisms are not " + name);
  const Pasting p = pasting(ctx, k, F, lax);
  if (!(c.from == p.from) || !(c.to == p.to)) {
    r.fail(name + ".shape", "cell between F eps and eps T(F)", {F.source->name, F.target->name});
    return r;
  }
  const auto& R = *F.target->base;
  const auto& S = *p.cp->output->base;
  {
    LawTally t(r, name + ".unit", "the cell at eta(A) is the identity");
    for (int o : p.units)
      t.check(R.is_identity(c.components[static_cast<std::size_t>(o)]), {S.object_name(o)});
  }
  int X = mu_violation(p, c.components);
  if (X < 0)
    r.pass(name + ".multiplication", "the cell at mu(X) is the pasting through T(cell)",
           static_cast<std::size_t>(p.cp2->output->base->object_count()));
  else
    r.fail(name + ".multiplication", "the cell at mu(X) is the pasting through T(cell)",
           {p.cp2->output->base->object_name(X)});
  return r;
}

unsigned thread_count(unsigned requested) {
  if (requested) return requested;
  if (const char* e = std::getenv("DOCTRINA_THREADS")) {
    int n = std::atoi(e);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

VerificationReport verify_colax_coherence(MonadContext& ctx, MonadKind k, const DoctrineMap& F,
                                          const DoctrineCell& tau) {
  return coherence(ctx, k, F, tau, false);
}

VerificationReport verify_lax_coherence(MonadContext& ctx, MonadKind k, const DoctrineMap& F,
                                        const DoctrineCell& omega) {
  return coherence(ctx, k, F, omega, true);
}

std::size_t two_cell_uniqueness(MonadContext& ctx, MonadKind k, const DoctrineMap& F,
                                const UniquenessOptions& opt) {
  const Pasting p = pasting(ctx, k, F, k == MonadKind::q);
  const bool invertible = k == MonadKind::d;
  const auto& S = *p.cp->output->base;
  const auto& Rd = *F.target;
  const auto& R = *Rd.base;
  const int n = S.object_count();

  // admissible components: the fiber inequality, identities at units, and
  // inverses that are 2-cells the other way for T_d
  std::vector<char> is_unit(static_cast<std::size_t>(n), 0);
  for (int o : p.units) is_unit[static_cast<std::size_t>(o)] = 1;
  std::vector<std::vector<int>> cand(static_cast<std::size_t>(n));
  const auto& Ps = *p.cp->output;
  for (int x = 0; x < n; ++x) {
    const int s = p.from.functor.ob(x), t = p.to.functor.ob(x);
    for (int m : R.hom(s, t)) {
      if (is_unit[static_cast<std::size_t>(x)] && !R.is_identity(m)) continue;
      bool ok = true;
      for (int a = 0; ok && a < Ps.fiber(x).size(); ++a)
        ok = Rd.fiber(s).leq(p.from.b(x, a), Rd.re(m, p.to.b(x, a)));
      if (ok && invertible) {
        auto inv = find_inverse(R, m);
        ok = inv.has_value();
        for (int a = 0; ok && a < Ps.fiber(x).size(); ++a)
          ok = Rd.fiber(t).leq(p.to.b(x, a), Rd.re(*inv, p.from.b(x, a)));
      }
      if (ok) cand[static_cast<std::size_t>(x)].push_back(m);
    }
    if (cand[static_cast<std::size_t>(x)].empty()) return 0;
  }

  // fewest candidates first; each position checks naturality against the
  // morphisms linking it to positions already assigned
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) order[static_cast<std::size_t>(x)] = x;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cand[static_cast<std::size_t>(a)].size() < cand[static_cast<std::size_t>(b)].size();
  });
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  std::vector<std::vector<int>> links(static_cast<std::size_t>(n));
  for (int g = 0; g < S.morphism_count(); ++g) {
    int i = std::max(pos[static_cast<std::size_t>(S.src(g))], pos[static_cast<std::size_t>(S.dst(g))]);
    links[static_cast<std::size_t>(i)].push_back(g);
  }

  std::atomic<std::size_t> found{0};
  std::atomic<std::size_t> nodes{0};
  std::atomic<bool> exhausted{false};

  auto natural = [&](const std::vector<int>& th, int i) {
    for (int g : links[static_cast<std::size_t>(i)]) {
      int x = S.src(g), y = S.dst(g);
      if (R.compose(p.to.functor.mor(g), th[static_cast<std::size_t>(x)]) !=
          R.compose(th[static_cast<std::size_t>(y)], p.from.functor.mor(g)))
        return false;
    }
    return true;
  };

  // depth-first from position i with th filled below i
  std::function<void(std::vector<int>&, int)> search = [&](std::vector<int>& th, int i) {
    if (found.load() >= 2 || exhausted.load()) return;
    if (nodes.fetch_add(1) >= opt.max_nodes) {
      exhausted = true;
      return;
    }
    if (i == n) {
      if (mu_violation(p, th) < 0) found.fetch_add(1);
      return;
    }
    const int x = order[static_cast<std::size_t>(i)];
    for (int m : cand[static_cast<std::size_t>(x)]) {
      th[static_cast<std::size_t>(x)] = m;
      if (natural(th, i)) search(th, i + 1);
      if (found.load() >= 2) return;
    }
  };

  // split at the first branching position
  int split = 0;
  while (split < n && cand[static_cast<std::size_t>(order[static_cast<std::size_t>(split)])].size() == 1) ++split;
  std::vector<int> base(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < split; ++i) {
    const int x = order[static_cast<std::size_t>(i)];
    base[static_cast<std::size_t>(x)] = cand[static_cast<std::size_t>(x)][0];
    if (!natural(base, i)) return 0;
  }
  const unsigned threads = split < n ? thread_count(opt.threads) : 1;
  if (threads <= 1 || split == n) {
    search(base, split);
  } else {
    const int x = order[static_cast<std::size_t>(split)];
    const auto& top = cand[static_cast<std::size_t>(x)];
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, top.size()); ++t)
      pool.emplace_back([&] {
        std::vector<int> th = base;
        for (std::size_t j; (j = next.fetch_add(1)) < top.size();) {
          th[static_cast<std::size_t>(x)] = top[j];
          if (natural(th, split)) search(th, split + 1);
        }
      });
    for (auto& t : pool) t.join();
  }
  if (exhausted && found.load() < 2)
    fail(ErrorCode::resource, "2-cell enumeration visited " + std::to_string(opt.max_nodes) + " nodes");
  return std::min<std::size_t>(found.load(), 2);
}

VerificationReport verify_unit_naturality(MonadContext& ctx, MonadKind k, const DoctrineMap& F) {
  VerificationReport r;
  auto check = [&](const std::string& law, const std::string& anchor, const DoctrineMap& a,
                   const DoctrineMap& b) {
    std::string d = describe_difference(a, b);
    if (d.empty())
      r.pass(law, anchor, 1);
    else
      r.fail(law, anchor, {d}, "1-cells differ");
  };
  check("unit.naturality", "T(F) eta_P = eta_R F", compose(ctx.T(k, F), ctx.eta(k, F.source)),
        compose(ctx.eta(k, F.target), F));
  bool preserves = k == MonadKind::d || (k == MonadKind::c && preserves_comprehensions(F)) ||
                   (k == MonadKind::q && preserves_quotients(F)) ||
                   (k == MonadKind::qc && preserves_comprehensions(F) && preserves_quotients(F));
  if (!preserves) {
    r.skip("counit.naturality", "eps_R T(F) = F eps_P", "F does not preserve the structure");
    return r;
  }
  try {
    check("counit.naturality", "eps_R T(F) = F eps_P", compose(ctx.epsilon(k, F.target), ctx.T(k, F)),
          compose(F, ctx.epsilon(k, F.source)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::structure_missing) throw;
    r.skip("counit.naturality", "eps_R T(F) = F eps_P", e.what());
  }
  return r;
}

}  // namespace doctrina
