#include "doctrina/fixtures.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include "doctrina/error.hpp"

namespace doctrina {

namespace {

using Fn = std::vector<int>;

struct FinSetSpec {
  std::string name;
  std::vector<int> sizes;
  std::function<bool(int, int, const Fn&)> allowed;  // (src size, dst size, graph)
  bool square_of_two = false;                       // declare [2] x [2] = [4]
  bool subsets_by_carrier = false;                  // fiber = subsets whose size is a carrier
};

std::string point_name(int size, int p, bool coded_pairs) {
  if (size == 4 && coded_pairs) return std::to_string(p / 2) + std::to_string(p % 2);
  return std::to_string(p);
}

std::string fn_name(int sa, int sb, const Fn& f) {
  std::string s = std::to_string(sa) + ">" + std::to_string(sb);
  if (!f.empty()) s += ":";
  for (int v : f) s += std::to_string(v);
  return s;
}

std::vector<int> subset_masks(int size, const std::vector<int>& carriers, bool by_carrier) {
  std::vector<int> out;
  for (int s = 0; s < (1 << size); ++s) {
    int k = std::popcount(static_cast<unsigned>(s));
    if (!by_carrier || std::find(carriers.begin(), carriers.end(), k) != carriers.end())
      out.push_back(s);
  }
  return out;
}

// Function graph of a FinSet fragment morphism, read back from its name.
Fn graph_of(const FragmentCategory& C, int m) {
  std::string n = C.morphism_name(m);
  Fn f;
  auto colon = n.find(':');
  if (colon != std::string::npos)
    for (std::size_t i = colon + 1; i < n.size(); ++i) f.push_back(n[i] - '0');
  return f;
}

int carrier_size(const FragmentCategory& C, int a) {
  const auto& n = C.object_name(a);
  return std::stoi(n.substr(1, n.size() - 2));
}

DoctrinePtr build_finset(const FinSetSpec& spec) {
  CategoryBuilder b;
  const int n = static_cast<int>(spec.sizes.size());
  for (int s : spec.sizes) b.add_object("[" + std::to_string(s) + "]");
  std::map<std::tuple<int, int, Fn>, int> id_of;
  std::vector<Fn> graph;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      const int sa = spec.sizes[a], sc = spec.sizes[c];
      int total = 1;
      for (int i = 0; i < sa; ++i) total *= sc;
      for (int code = 0; code < total; ++code) {
        Fn f(static_cast<std::size_t>(sa));
        int rest = code;
        for (int i = 0; i < sa; ++i) {
          f[i] = rest % sc;
          rest /= sc;
        }
        if (spec.allowed && !spec.allowed(sa, sc, f)) continue;
        id_of[{a, c, f}] = b.add_morphism(fn_name(sa, sc, f), a, c);
        graph.push_back(f);
      }
    }
  auto find = [&](int a, int c, const Fn& f) {
    auto it = id_of.find({a, c, f});
    if (it == id_of.end())
      fail(ErrorCode::internal, "FinSet fragment misses " + fn_name(spec.sizes[a], spec.sizes[c], f));
    return it->second;
  };
  auto identity_fn = [](int s) {
    Fn f(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) f[i] = i;
    return f;
  };
  for (int a = 0; a < n; ++a) b.set_identity(a, find(a, a, identity_fn(spec.sizes[a])));

  std::vector<int> src(graph.size()), dst(graph.size());
  for (const auto& [key, id] : id_of) {
    src[id] = std::get<0>(key);
    dst[id] = std::get<1>(key);
  }
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (std::size_t m = 0; m < graph.size(); ++m) out[src[m]].push_back(static_cast<int>(m));
  for (std::size_t f = 0; f < graph.size(); ++f)
    for (int g : out[dst[f]]) {
      if (g == find(dst[f], dst[f], identity_fn(spec.sizes[dst[f]])) ||
          static_cast<int>(f) == find(src[f], src[f], identity_fn(spec.sizes[src[f]])))
        continue;
      Fn h(graph[f].size());
      for (std::size_t i = 0; i < h.size(); ++i) h[i] = graph[g][graph[f][i]];
      b.set_composite(g, static_cast<int>(f), find(src[f], dst[g], h));
    }

  auto obj = [&](int size) {
    for (int a = 0; a < n; ++a)
      if (spec.sizes[a] == size) return a;
    return -1;
  };
  auto bang = [&](int a, int c) {
    return find(a, c, Fn(static_cast<std::size_t>(spec.sizes[a]), 0));
  };
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      const int sa = spec.sizes[a], sc = spec.sizes[c];
      if (sa == 0 || sc == 0) {
        int z = sa == 0 ? a : c;
        b.declare_product(a, c, {z, find(z, a, {}), find(z, c, {})});
      } else if (sa == 1) {
        b.declare_product(a, c, {c, bang(c, a), find(c, c, identity_fn(sc))});
      } else if (sc == 1) {
        b.declare_product(a, c, {a, find(a, a, identity_fn(sa)), bang(a, c)});
      } else if (spec.square_of_two && sa == 2 && sc == 2 && obj(4) >= 0) {
        b.declare_product(a, c, {obj(4), find(obj(4), a, {0, 0, 1, 1}),
                                 find(obj(4), c, {0, 1, 0, 1})});
      }
    }
  if (obj(1) >= 0) b.set_terminal(obj(1));
  CategoryPtr C = b.build();

  auto P = std::make_shared<Doctrine>();
  P->name = spec.name;
  P->base = C;
  std::vector<std::vector<int>> masks(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    const int s = spec.sizes[a];
    masks[a] = subset_masks(s, spec.sizes, spec.subsets_by_carrier);
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> leq;
    for (std::size_t i = 0; i < masks[a].size(); ++i) {
      std::string nm = "{";
      bool first = true;
      for (int p = 0; p < s; ++p)
        if (masks[a][i] >> p & 1) {
          nm += (first ? "" : ",") + point_name(s, p, spec.square_of_two);
          first = false;
        }
      names.push_back(nm + "}");
      for (std::size_t j = 0; j < masks[a].size(); ++j)
        if ((masks[a][i] & masks[a][j]) == masks[a][i])
          leq.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    P->fibers.push_back(std::make_shared<const InfSemilattice>(
        InfSemilattice::from_order(std::move(names), leq)));
  }
  auto index_of_mask = [&](int a, int mask) {
    auto it = std::find(masks[a].begin(), masks[a].end(), mask);
    if (it == masks[a].end()) fail(ErrorCode::internal, "subset outside the fiber");
    return static_cast<int>(it - masks[a].begin());
  };
  for (int m = 0; m < C->morphism_count(); ++m) {
    const int a = C->src(m), c = C->dst(m);
    std::vector<int> tab;
    for (int mask : masks[c]) {
      int pre = 0;
      for (int i = 0; i < spec.sizes[a]; ++i)
        if (mask >> graph[m][i] & 1) pre |= 1 << i;
      tab.push_back(index_of_mask(a, pre));
    }
    P->reindex.push_back(std::move(tab));
  }
  auto image = [&](int m) {
    int mask = 0;
    for (int v : graph[m]) mask |= 1 << v;
    return mask;
  };
  P->delta.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    if (auto sq = C->product(a, a)) P->delta[a] = index_of_mask(sq->object, image(C->diagonal(a)));

  P->comprehension.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int mask : masks[a]) {
      Fn incl;
      for (int p = 0; p < spec.sizes[a]; ++p)
        if (mask >> p & 1) incl.push_back(p);
      int k = obj(static_cast<int>(incl.size()));
      auto it = k < 0 ? id_of.end() : id_of.find({k, a, incl});
      P->comprehension[a].push_back(it == id_of.end() ? -1 : it->second);
    }

  P->quotient.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    auto sq = C->product(a, a);
    if (!sq) continue;
    const int s = spec.sizes[a];
    const auto& g1 = graph[sq->pr1];
    const auto& g2 = graph[sq->pr2];
    for (int mask : masks[sq->object]) {
      std::vector<std::vector<char>> rel(s, std::vector<char>(s, 0));
      for (std::size_t p = 0; p < g1.size(); ++p)
        if (mask >> p & 1) rel[g1[p]][g2[p]] = 1;
      bool eq = true;
      for (int i = 0; i < s; ++i) {
        eq = eq && rel[i][i];
        for (int j = 0; j < s; ++j) {
          eq = eq && rel[i][j] == rel[j][i];
          for (int k = 0; k < s; ++k) eq = eq && (!rel[i][j] || !rel[j][k] || rel[i][k]);
        }
      }
      int q = -1;
      if (eq) {
        Fn cls(static_cast<std::size_t>(s), -1);
        int classes = 0;
        for (int i = 0; i < s; ++i) {
          if (cls[i] >= 0) continue;
          for (int j = i; j < s; ++j)
            if (rel[i][j]) cls[j] = classes;
          ++classes;
        }
        int k = obj(classes);
        auto it = k < 0 ? id_of.end() : id_of.find({a, k, cls});
        if (it != id_of.end()) q = it->second;
      }
      P->quotient[a].push_back(q);
    }
  }
  return P;
}

// For maps [4] -> [2]: the value depends on at most one coordinate.
bool one_coordinate(const Fn& f) {
  bool first = f[0] == f[2] && f[1] == f[3];   // depends only on j
  bool second = f[0] == f[1] && f[2] == f[3];  // depends only on i
  return first || second;
}

}  // namespace

DoctrinePtr finset_fragment(std::string name, std::vector<int> sizes, bool coordinatewise,
                            bool subsets_by_carrier) {
  FinSetSpec spec;
  spec.name = std::move(name);
  spec.sizes = std::move(sizes);
  spec.square_of_two = true;
  spec.subsets_by_carrier = subsets_by_carrier;
  if (coordinatewise)
    spec.allowed = [](int sa, int sb, const Fn& f) {
      if (sa != 4) return true;
      if (sb == 2) return one_coordinate(f);
      if (sb == 4) {
        Fn i(4), j(4);
        for (int p = 0; p < 4; ++p) {
          i[p] = f[p] / 2;
          j[p] = f[p] % 2;
        }
        return one_coordinate(i) && one_coordinate(j);
      }
      return true;
    };
  return build_finset(spec);
}

DoctrinePtr sub_finset(int max_point) {
  if (max_point == 2) return finset_fragment("sub_finset_2", {0, 1, 2, 4}, true, true);
  if (max_point == 4) return finset_fragment("sub_finset_4", {0, 1, 2, 3, 4}, false, false);
  fail(ErrorCode::precondition, "sub_finset supports 2 or 4 points, not " + std::to_string(max_point));
}

DoctrinePtr sub_finset_small() {
  return finset_fragment("sub_finset_small", {1, 2}, false, false);
}

DoctrinePtr trivial_doctrine(const CategoryPtr& base, std::string name) {
  auto P = std::make_shared<Doctrine>();
  P->name = std::move(name);
  P->base = base;
  const int n = base->object_count();
  auto pt = std::make_shared<const InfSemilattice>(InfSemilattice::point());
  P->fibers.assign(static_cast<std::size_t>(n), pt);
  P->reindex.assign(static_cast<std::size_t>(base->morphism_count()), std::vector<int>{0});
  P->delta.assign(static_cast<std::size_t>(n), -1);
  P->comprehension.resize(static_cast<std::size_t>(n));
  P->quotient.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    P->comprehension[a] = {base->identity(a)};
    if (base->product(a, a)) {
      P->delta[a] = 0;
      P->quotient[a] = {base->identity(a)};
    }
  }
  return P;
}

InfSemilattice chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    if (i > 0) leq.emplace_back(i - 1, i);
  }
  return InfSemilattice::from_order(names, leq);
}

CategoryPtr thin_category(const InfSemilattice& L) {
  CategoryBuilder b;
  const int n = L.size();
  for (int a = 0; a < n; ++a) b.add_object(L.name(a));
  std::vector<int> arrow(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      if (L.leq(a, c)) arrow[a * n + c] = b.add_morphism(L.name(a) + "<=" + L.name(c), a, c);
  for (int a = 0; a < n; ++a) b.set_identity(a, arrow[a * n + a]);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d)
        if (arrow[a * n + c] >= 0 && arrow[c * n + d] >= 0 && a != c && c != d)
          b.set_composite(arrow[c * n + d], arrow[a * n + c], arrow[a * n + d]);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      int m = L.meet(a, c);
      b.declare_product(a, c, {m, arrow[m * n + a], arrow[m * n + c]});
    }
  b.set_terminal(L.top());
  return b.build();
}

DoctrinePtr thin_base_sub(const InfSemilattice& L, std::string name) {
  auto C = thin_category(L);
  auto P = std::make_shared<Doctrine>();
  P->name = std::move(name);
  P->base = C;
  const int n = L.size();
  std::vector<SubLattice> down;
  for (int a = 0; a < n; ++a) {
    down.push_back(downset(L, a));
    P->fibers.push_back(std::make_shared<const InfSemilattice>(down.back().lattice));
  }
  for (int m = 0; m < C->morphism_count(); ++m) {
    const int a = C->src(m), c = C->dst(m);
    std::vector<int> tab;
    for (int z : down[c].to_parent) tab.push_back(down[a].from_parent[L.meet(z, a)]);
    P->reindex.push_back(std::move(tab));
  }
  P->delta.resize(static_cast<std::size_t>(n));
  P->comprehension.resize(static_cast<std::size_t>(n));
  P->quotient.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    P->delta[a] = P->fibers[a]->top();
    for (int z : down[a].to_parent) P->comprehension[a].push_back(C->hom(z, a).at(0));
    P->quotient[a].assign(static_cast<std::size_t>(P->fibers[a]->size()), -1);
    P->quotient[a][P->fibers[a]->top()] = C->identity(a);
  }
  return P;
}

std::vector<WeakPullback> search_weak_pullbacks(const FragmentCategory& C) {
  std::vector<WeakPullback> out;
  const int n = C.object_count();
  for (int h = 0; h < C.morphism_count(); ++h)
    for (int g : C.incoming(C.dst(h))) {
      const int a = C.src(h), y = C.src(g);
      bool found = false;
      for (int v = 0; v < n && !found; ++v)
        for (int p : C.hom(v, a)) {
          for (int q : C.hom(v, y)) {
            if (C.compose(h, p) != C.compose(g, q)) continue;
            bool weak = true;
            for (int u = 0; u < n && weak; ++u)
              for (int s : C.hom(u, a))
                for (int t : C.hom(u, y)) {
                  if (!weak || C.compose(h, s) != C.compose(g, t)) continue;
                  bool k = false;
                  for (int m : C.hom(u, v))
                    k = k || (C.compose(p, m) == s && C.compose(q, m) == t);
                  weak = k;
                }
            if (weak) {
              out.push_back({h, g, p, q});
              found = true;
              break;
            }
          }
          if (found) break;
        }
      if (!found)
        fail(ErrorCode::structure_missing,
             "no weak pullback of " + C.morphism_name(h) + " and " + C.morphism_name(g));
    }
  return out;
}

void verify_weak_pullbacks(const FragmentCategory& C, const std::vector<WeakPullback>& table,
                           VerificationReport& report) {
  LawTally t(report, "weak-pullback", "declared squares commute and are weakly universal");
  for (const auto& w : table) {
    std::vector<std::string> wit{C.morphism_name(w.h), C.morphism_name(w.g)};
    if (C.compose(w.h, w.p) != C.compose(w.g, w.q)) {
      t.check(false, wit, "square does not commute");
      continue;
    }
    bool weak = true;
    for (int u = 0; u < C.object_count() && weak; ++u)
      for (int s : C.hom(u, C.src(w.h)))
        for (int r : C.hom(u, C.src(w.g))) {
          if (!weak || C.compose(w.h, s) != C.compose(w.g, r)) continue;
          bool k = false;
          for (int m : C.hom(u, C.src(w.p))) k = k || (C.compose(w.p, m) == s && C.compose(w.q, m) == r);
          weak = k;
        }
    t.check(weak, wit, "cone without mediating arrow");
  }
}

DoctrinePtr weak_subobjects(const CategoryPtr& C, const std::vector<WeakPullback>& table,
                            std::string name) {
  auto P = std::make_shared<Doctrine>();
  P->name = std::move(name);
  P->base = C;
  const int n = C->object_count();
  std::vector<int> cls(static_cast<std::size_t>(C->morphism_count()), -1);
  std::vector<std::vector<int>> reps(static_cast<std::size_t>(n));
  auto below = [&](int f, int g) {  // f factors through g
    return !factor_through(*C, f, g).empty();
  };
  for (int a = 0; a < n; ++a) {
    for (int f : C->incoming(a)) {
      if (cls[f] >= 0) continue;
      cls[f] = static_cast<int>(reps[a].size());
      for (int g : C->incoming(a))
        if (cls[g] < 0 && below(f, g) && below(g, f)) cls[g] = cls[f];
      reps[a].push_back(f);
    }
    const int k = static_cast<int>(reps[a].size());
    std::vector<std::string> names;
    std::vector<char> leq(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
      names.push_back("[" + C->morphism_name(reps[a][i]) + "]");
      for (int j = 0; j < k; ++j) leq[i * k + j] = below(reps[a][i], reps[a][j]);
    }
    P->fibers.push_back(std::make_shared<const InfSemilattice>(
        InfSemilattice::from_matrix(std::move(names), std::move(leq))));
  }
  std::map<std::pair<int, int>, int> chosen;
  for (const auto& w : table) chosen[{w.h, w.g}] = w.p;
  for (int h = 0; h < C->morphism_count(); ++h) {
    std::vector<int> tab;
    for (int rep : reps[C->dst(h)]) {
      int image = -1;
      for (int g : C->incoming(C->dst(h))) {
        if (cls[g] != cls[rep]) continue;
        auto it = chosen.find({h, g});
        if (it == chosen.end())
          fail(ErrorCode::structure_missing,
               "missing weak pullback of " + C->morphism_name(h) + " and " + C->morphism_name(g));
        int c = cls[it->second];
        if (image >= 0 && image != c)
          fail(ErrorCode::integrity, "pullback class depends on the representative at " +
                                         C->morphism_name(h));
        image = c;
      }
      tab.push_back(image);
    }
    P->reindex.push_back(std::move(tab));
  }
  P->delta.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    if (C->product(a, a)) P->delta[a] = cls[C->diagonal(a)];
  return P;
}

CategoryPtr weak_demo_base() {
  CategoryBuilder b;
  int X = b.add_object("X"), Y = b.add_object("Y"), A = b.add_object("A");
  int idX = b.add_morphism("idX", X, X), idY = b.add_morphism("idY", Y, Y),
      idA = b.add_morphism("idA", A, A);
  int u = b.add_morphism("u", X, Y), v = b.add_morphism("v", Y, X);
  int f = b.add_morphism("f", X, A), g = b.add_morphism("g", Y, A);
  b.set_identity(X, idX);
  b.set_identity(Y, idY);
  b.set_identity(A, idA);
  b.set_composite(u, v, idY);
  b.set_composite(v, u, idX);
  b.set_composite(g, u, f);
  b.set_composite(f, v, g);
  return b.build();
}

DoctrinePtr nonextensional() { return trivial_doctrine(sub_finset(2)->base, "nonextensional"); }

std::vector<std::string> fixture_names() {
  return {"nonextensional", "sub_finset_2", "sub_finset_4", "sub_finset_small",
          "thin_chain3",    "trivial",      "weak_demo"};
}

DoctrinePtr fixture(const std::string& name) {
  if (name == "sub_finset_2") return sub_finset(2);
  if (name == "sub_finset_4") return sub_finset(4);
  if (name == "sub_finset_small") return sub_finset_small();
  if (name == "trivial") return trivial_doctrine(thin_category(chain(3)), "trivial");
  if (name == "thin_chain3") return thin_base_sub(chain(3));
  if (name == "weak_demo") {
    auto C = weak_demo_base();
    return weak_subobjects(C, search_weak_pullbacks(*C));
  }
  if (name == "nonextensional") return nonextensional();
  fail(ErrorCode::lookup, "unknown fixture '" + name + "'");
}

DoctrineMap swap_conjugation(const DoctrinePtr& P) {
  const auto& C = *P->base;
  auto sigma = [&](int a, int x) {
    int s = carrier_size(C, a);
    return s == 2 ? 1 - x : s == 4 ? 3 - x : x;
  };
  DoctrineMap m{P, P, identity_functor(P->base), {}};
  for (int f = 0; f < C.morphism_count(); ++f) {
    Fn g = graph_of(C, f);
    Fn h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      h[i] = sigma(C.dst(f), g[static_cast<std::size_t>(sigma(C.src(f), static_cast<int>(i)))]);
    auto id = C.find_morphism(fn_name(carrier_size(C, C.src(f)), carrier_size(C, C.dst(f)), h));
    if (!id) fail(ErrorCode::precondition, "swap conjugation leaves the fragment");
    m.functor.morphisms[f] = *id;
  }
  for (int a = 0; a < C.object_count(); ++a) {
    // b_A is the image under the swap, which is reindexing along the swap itself
    Fn sw(static_cast<std::size_t>(carrier_size(C, a)));
    for (std::size_t i = 0; i < sw.size(); ++i) sw[i] = sigma(a, static_cast<int>(i));
    auto s = C.find_morphism(fn_name(static_cast<int>(sw.size()), static_cast<int>(sw.size()), sw));
    if (!s) fail(ErrorCode::precondition, "swap is not in the fragment");
    m.fibers.push_back(P->reindex[*s]);
  }
  return m;
}

DoctrineMap constant_top(const DoctrinePtr& P) {
  const auto& C = *P->base;
  auto t = C.terminal();
  if (!t) fail(ErrorCode::precondition, "constant_top needs a terminal object");
  DoctrineMap m{P, P, identity_functor(P->base), {}};
  for (auto& x : m.functor.objects) x = *t;
  for (auto& x : m.functor.morphisms) x = C.identity(*t);
  for (int a = 0; a < C.object_count(); ++a)
    m.fibers.emplace_back(static_cast<std::size_t>(P->fiber(a).size()), P->top(*t));
  return m;
}

}  // namespace doctrina
