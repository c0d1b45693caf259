#include <map>

#include "doctest.h"
#include "doctrina/error.hpp"
#include "doctrina/fincat.hpp"

using namespace doctrina;

namespace {

// Full FinSet on carriers of the given sizes, built from explicit functions.
// Every piece of structure comes from evaluating functions; the category
// code under test only sees the resulting tables.
struct FinSetOracle {
  std::vector<int> sizes;
  std::vector<std::vector<int>> fn;  // graph of each morphism
  std::vector<int> src, dst;
  std::map<std::tuple<int, int, std::vector<int>>, int> id_of;
  CategoryPtr cat;

  int find(int a, int b, const std::vector<int>& f) const { return id_of.at({a, b, f}); }

  explicit FinSetOracle(std::vector<int> carrier_sizes, bool break_one = false)
      : sizes(std::move(carrier_sizes)) {
    CategoryBuilder b;
    for (int s : sizes) b.add_object("[" + std::to_string(s) + "]");
    const int n = static_cast<int>(sizes.size());
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        int total = 1;
        for (int i = 0; i < sizes[a]; ++i) total *= sizes[c];
        for (int code = 0; code < total; ++code) {
          std::vector<int> f(static_cast<std::size_t>(sizes[a]));
          int rest = code;
          for (int i = 0; i < sizes[a]; ++i) {
            f[i] = rest % sizes[c];
            rest /= sizes[c];
          }
          std::string name = "f" + std::to_string(a) + std::to_string(c) + "_";
          for (int v : f) name += std::to_string(v);
          int id = b.add_morphism(name, a, c);
          id_of[{a, c, f}] = id;
          fn.push_back(f);
          src.push_back(a);
          dst.push_back(c);
        }
      }
    for (int a = 0; a < n; ++a) {
      std::vector<int> id(static_cast<std::size_t>(sizes[a]));
      for (int i = 0; i < sizes[a]; ++i) id[i] = i;
      b.set_identity(a, find(a, a, id));
    }
    bool broken = false;
    for (std::size_t f = 0; f < fn.size(); ++f)
      for (std::size_t g = 0; g < fn.size(); ++g) {
        if (dst[f] != src[g]) continue;
        std::vector<int> h(fn[f].size());
        for (std::size_t i = 0; i < h.size(); ++i) h[i] = fn[g][fn[f][i]];
        int hid = find(src[f], dst[g], h);
        if (break_one && !broken && sizes[src[f]] == 2 && sizes[dst[g]] == 2 &&
            sizes[dst[f]] == 2 && h[0] != h[1] && fn[f] != fn[g]) {
          // swap with the other bijection
          hid = find(src[f], dst[g], {h[1], h[0]});
          broken = true;
        }
        b.set_composite(static_cast<int>(g), static_cast<int>(f), hid);
      }
    auto obj = [&](int size) {
      for (int a = 0; a < n; ++a)
        if (sizes[a] == size) return a;
      return -1;
    };
    // [1] x X = X x [1] = X, [2] x [2] = [4] with (i, j) coded as 2i + j
    for (int a = 0; a < n; ++a) {
      std::vector<int> id(static_cast<std::size_t>(sizes[a]));
      for (int i = 0; i < sizes[a]; ++i) id[i] = i;
      std::vector<int> bang(static_cast<std::size_t>(sizes[a]), 0);
      int one = obj(1);
      if (one >= 0) {
        b.declare_product(one, a, {a, find(a, one, bang), find(a, a, id)});
        if (a != one) b.declare_product(a, one, {a, find(a, a, id), find(a, one, bang)});
      }
    }
    if (obj(2) >= 0 && obj(4) >= 0)
      b.declare_product(obj(2), obj(2), {obj(4), find(obj(4), obj(2), {0, 0, 1, 1}),
                                         find(obj(4), obj(2), {0, 1, 0, 1})});
    cat = b.build();
  }
};

}  // namespace

TEST_CASE("finset fragment passes category and product checks") {
  FinSetOracle o({1, 2, 4});
  CHECK(o.cat->morphism_count() == 301);
  VerificationReport r;
  verify_category(*o.cat, r);
  verify_product_fragment(*o.cat, r);
  CHECK_MESSAGE(r.ok(), r.first_failure());
  CHECK(r.find("category.associativity").at(0)->instances > 0);
}

TEST_CASE("compose and pairing against function evaluation") {
  FinSetOracle o({1, 2, 4});
  const auto& c = *o.cat;
  int to_one = o.find(1, 0, {0, 0});
  int zero = o.find(0, 1, {0});
  int one = o.find(0, 1, {1});
  CHECK(c.compose(to_one, zero) == c.identity(0));
  CHECK(c.compose(c.identity(1), zero) == zero);
  // (0, 1) is coded 2*0 + 1 = 1 in [4]
  CHECK(c.pairing(zero, one) == o.find(0, 2, {1}));
  auto p = *c.product(1, 1);
  CHECK(c.pairing(p.pr1, p.pr2) == c.identity(2));
  CHECK(c.diagonal(1) == o.find(1, 2, {0, 3}));
  for (int f : c.hom(0, 1))
    for (int g : c.hom(0, 1)) CHECK(c.compose(p.pr1, c.pairing(f, g)) == f);
  CHECK_THROWS_AS(c.compose(zero, zero), Error);
  try {
    c.pairing(o.find(2, 1, {0, 0, 0, 0}), o.find(2, 2, {0, 1, 2, 3}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::fragment_incomplete);
  }
}

TEST_CASE("cross satisfies its defining equations") {
  FinSetOracle o({1, 2, 4});
  const auto& c = *o.cat;
  auto p = *c.product(1, 1);
  for (int f : c.hom(1, 1))
    for (int g : c.hom(1, 1)) {
      int fg = c.cross(f, g);
      CHECK(c.compose(p.pr1, fg) == c.compose(f, p.pr1));
      CHECK(c.compose(p.pr2, fg) == c.compose(g, p.pr2));
      for (int a : c.hom(0, 1))
        for (int b : c.hom(0, 1))
          CHECK(c.compose(fg, c.pairing(a, b)) == c.pairing(c.compose(f, a), c.compose(g, b)));
    }
}

TEST_CASE("a broken composition table is found") {
  FinSetOracle o({1, 2, 4}, true);
  VerificationReport r;
  verify_category(*o.cat, r);
  CHECK_FALSE(r.ok());
  auto fails = r.find("category.associativity");
  REQUIRE_FALSE(fails.empty());
  CHECK(fails[0]->status == Status::fail);
  CHECK(fails[0]->witnesses.size() == 3);
}

TEST_CASE("functors") {
  FinSetOracle o({1, 2, 4});
  auto id = identity_functor(o.cat);
  VerificationReport r;
  verify_functor(id, r);
  CHECK(r.ok());
  CHECK(compose(id, id) == id);

  // conjugation by the swap of [2] (and of both coordinates of [4])
  auto conj = id;
  auto swap = [&](int a, int x) { return o.sizes[a] == 1 ? x : o.sizes[a] == 2 ? 1 - x : 3 - x; };
  for (int m = 0; m < o.cat->morphism_count(); ++m) {
    std::vector<int> g(o.fn[m].size());
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] = swap(o.dst[m], o.fn[m][swap(o.src[m], static_cast<int>(i))]);
    conj.morphisms[m] = o.find(o.src[m], o.dst[m], g);
  }
  VerificationReport rc;
  verify_functor(conj, rc);
  CHECK_MESSAGE(rc.ok(), rc.first_failure());
  CHECK(compose(conj, conj) == id);

  NatTransf t{conj, id, {}};
  for (int a = 0; a < 3; ++a) {
    std::vector<int> g(static_cast<std::size_t>(o.sizes[a]));
    for (int i = 0; i < o.sizes[a]; ++i) g[i] = swap(a, i);
    t.components.push_back(o.find(a, a, g));
  }
  VerificationReport rn;
  verify_nat(t, rn);
  CHECK(rn.ok());
  NatTransf bad{conj, id, {o.cat->identity(0), o.cat->identity(1), o.cat->identity(2)}};
  VerificationReport rb;
  verify_nat(bad, rb);
  CHECK_FALSE(rb.ok());
}
