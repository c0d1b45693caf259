#include "doctrina/fincat.hpp"

#include <algorithm>

#include "doctrina/error.hpp"

namespace doctrina {

namespace {
const std::vector<int> kEmpty;
}

const std::string& FragmentCategory::object_name(int a) const {
  if (a < 0 || a >= object_count()) fail(ErrorCode::lookup, "object " + std::to_string(a));
  return object_names_[static_cast<std::size_t>(a)];
}

std::string FragmentCategory::morphism_name(int m) const {
  if (m < 0 || m >= morphism_count()) fail(ErrorCode::lookup, "morphism " + std::to_string(m));
  if (namer_) return namer_(m);
  return morphism_names_[static_cast<std::size_t>(m)];
}

std::optional<int> FragmentCategory::find_object(const std::string& name) const {
  std::call_once(names_once_, [this] {
    for (int a = 0; a < object_count(); ++a) object_index_.emplace(object_names_[a], a);
    for (int m = 0; m < morphism_count(); ++m) morphism_index_.emplace(morphism_name(m), m);
  });
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FragmentCategory::find_morphism(const std::string& name) const {
  find_object("");
  auto it = morphism_index_.find(name);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<int>& FragmentCategory::hom(int a, int b) const {
  auto it = hom_.find(pack(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
  return it == hom_.end() ? kEmpty : it->second;
}

int FragmentCategory::try_compose(int g, int f) const {
  if (g < 0 || f < 0 || g >= morphism_count() || f >= morphism_count()) return -1;
  if (dst(f) != src(g)) return -1;
  if (!composer_) {
    auto it = table_.find(pack(static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(f)));
    if (it != table_.end()) return it->second;
  }
  // composites with identities may be left implicit
  if (is_identity(g)) return f;
  if (is_identity(f)) return g;
  return composer_ ? composer_(g, f) : -1;
}

int FragmentCategory::compose(int g, int f) const {
  if (g < 0 || f < 0 || g >= morphism_count() || f >= morphism_count())
    fail(ErrorCode::lookup, "unknown morphism in composite");
  if (dst(f) != src(g))
    fail(ErrorCode::domain_mismatch,
         "cannot compose " + morphism_name(g) + " after " + morphism_name(f));
  int h = try_compose(g, f);
  if (h < 0)
    fail(ErrorCode::fragment_incomplete,
         "no composite for " + morphism_name(g) + " after " + morphism_name(f));
  return h;
}

std::optional<Product> FragmentCategory::product(int a, int b) const {
  auto it = products_.find(pack(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
  if (it == products_.end()) return std::nullopt;
  return it->second;
}

void FragmentCategory::build_pairing_index() const {
  std::call_once(pairing_once_, [this] {
    for (const auto& dp : product_list_) {
      for (int h : incoming(dp.product.object)) {
        int f = try_compose(dp.product.pr1, h);
        int g = try_compose(dp.product.pr2, h);
        if (f < 0 || g < 0) continue;
        auto key = pack(static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(g));
        auto [it, fresh] = pairing_index_.emplace(key, h);
        if (!fresh && it->second != h) it->second = -2;
      }
    }
  });
}

int FragmentCategory::pairing(int f, int g) const {
  if (src(f) != src(g))
    fail(ErrorCode::domain_mismatch,
         "pairing of " + morphism_name(f) + " and " + morphism_name(g) + " with different domains");
  if (!product(dst(f), dst(g)))
    fail(ErrorCode::fragment_incomplete, "product " + object_name(dst(f)) + " x " +
                                             object_name(dst(g)) + " is not declared");
  build_pairing_index();
  auto it = pairing_index_.find(pack(static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(g)));
  if (it == pairing_index_.end())
    fail(ErrorCode::broken_product,
         "no mediating arrow for <" + morphism_name(f) + ", " + morphism_name(g) + ">");
  if (it->second < 0)
    fail(ErrorCode::broken_product,
         "several mediating arrows for <" + morphism_name(f) + ", " + morphism_name(g) + ">");
  return it->second;
}

int FragmentCategory::cross(int f, int g) const {
  auto p = product(src(f), src(g));
  if (!p)
    fail(ErrorCode::fragment_incomplete, "product " + object_name(src(f)) + " x " +
                                             object_name(src(g)) + " is not declared");
  return pairing(compose(f, p->pr1), compose(g, p->pr2));
}

std::vector<std::array<int, 3>> FragmentCategory::composition_table() const {
  std::vector<std::array<int, 3>> out;
  out.reserve(table_.size());
  for (const auto& [key, h] : table_)
    out.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu), h});
  std::sort(out.begin(), out.end());
  return out;
}

CategoryBuilder::CategoryBuilder() : c_(new FragmentCategory()) {}

int CategoryBuilder::add_object(std::string name) {
  c_->object_names_.push_back(std::move(name));
  c_->identity_.push_back(-1);
  return c_->object_count() - 1;
}

int CategoryBuilder::add_morphism(std::string name, int src, int dst) {
  int m = add_morphism(src, dst);
  c_->morphism_names_.resize(static_cast<std::size_t>(m));
  c_->morphism_names_.push_back(std::move(name));
  return m;
}

int CategoryBuilder::add_morphism(int src, int dst) {
  if (src < 0 || dst < 0 || src >= c_->object_count() || dst >= c_->object_count())
    fail(ErrorCode::lookup, "morphism endpoint is not an object");
  c_->src_.push_back(src);
  c_->dst_.push_back(dst);
  return c_->morphism_count() - 1;
}

void CategoryBuilder::set_identity(int object, int morphism) {
  if (c_->src(morphism) != object || c_->dst(morphism) != object)
    fail(ErrorCode::integrity, "identity of an object must be an endomorphism of it");
  c_->identity_.at(static_cast<std::size_t>(object)) = morphism;
}

void CategoryBuilder::set_composite(int g, int f, int gf) {
  if (c_->dst(f) != c_->src(g))
    fail(ErrorCode::integrity, "composite entry for a non-composable pair");
  if (c_->src(gf) != c_->src(f) || c_->dst(gf) != c_->dst(g))
    fail(ErrorCode::integrity, "composite entry has the wrong type");
  c_->table_[pack(static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(f))] = gf;
}

void CategoryBuilder::declare_product(int a, int b, Product p) {
  auto key = pack(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  if (c_->products_.count(key)) fail(ErrorCode::integrity, "product declared twice");
  if (c_->src(p.pr1) != p.object || c_->src(p.pr2) != p.object || c_->dst(p.pr1) != a ||
      c_->dst(p.pr2) != b)
    fail(ErrorCode::integrity, "product projections have the wrong type");
  c_->products_.emplace(key, p);
  c_->product_list_.push_back({a, b, p});
}

void CategoryBuilder::set_terminal(int t) { c_->terminal_ = t; }
void CategoryBuilder::set_composer(std::function<int(int, int)> composer) {
  c_->composer_ = std::move(composer);
}
void CategoryBuilder::set_namer(std::function<std::string(int)> namer) {
  c_->namer_ = std::move(namer);
}
int CategoryBuilder::object_count() const { return c_->object_count(); }
int CategoryBuilder::morphism_count() const { return c_->morphism_count(); }

CategoryPtr CategoryBuilder::build() {
  auto& c = *c_;
  if (!c.namer_) {
    c.morphism_names_.resize(c.src_.size());
    for (std::size_t m = 0; m < c.src_.size(); ++m)
      if (c.morphism_names_[m].empty()) c.morphism_names_[m] = "m" + std::to_string(m);
  }
  for (int a = 0; a < c.object_count(); ++a)
    if (c.identity_[static_cast<std::size_t>(a)] < 0)
      fail(ErrorCode::integrity, "object '" + c.object_names_[a] + "' has no identity");
  c.out_.assign(static_cast<std::size_t>(c.object_count()), {});
  c.in_.assign(static_cast<std::size_t>(c.object_count()), {});
  for (int m = 0; m < c.morphism_count(); ++m) {
    c.out_[static_cast<std::size_t>(c.src(m))].push_back(m);
    c.in_[static_cast<std::size_t>(c.dst(m))].push_back(m);
    c.hom_[pack(static_cast<std::uint64_t>(c.src(m)), static_cast<std::uint64_t>(c.dst(m)))]
        .push_back(m);
  }
  std::sort(c.product_list_.begin(), c.product_list_.end(),
            [](const DeclaredProduct& x, const DeclaredProduct& y) {
              return std::pair(x.left, x.right) < std::pair(y.left, y.right);
            });
  CategoryPtr out = std::move(c_);
  c_ = std::shared_ptr<FragmentCategory>(new FragmentCategory());
  return out;
}

Functor identity_functor(const CategoryPtr& c) {
  Functor f{c, c, std::vector<int>(static_cast<std::size_t>(c->object_count())),
            std::vector<int>(static_cast<std::size_t>(c->morphism_count()))};
  for (int a = 0; a < c->object_count(); ++a) f.objects[static_cast<std::size_t>(a)] = a;
  for (int m = 0; m < c->morphism_count(); ++m) f.morphisms[static_cast<std::size_t>(m)] = m;
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  if (f.target != g.source) fail(ErrorCode::domain_mismatch, "functors are not composable");
  Functor h{f.source, g.target, f.objects, f.morphisms};
  for (auto& x : h.objects) x = g.ob(x);
  for (auto& x : h.morphisms) x = g.mor(x);
  return h;
}

std::optional<int> find_inverse(const FragmentCategory& c, int m) {
  for (int k : c.hom(c.dst(m), c.src(m)))
    if (c.try_compose(k, m) == c.identity(c.src(m)) &&
        c.try_compose(m, k) == c.identity(c.dst(m)))
      return k;
  return std::nullopt;
}

int product_comparison(const Functor& f, int a, int b) {
  auto p = f.source->product(a, b);
  if (!p) fail(ErrorCode::fragment_incomplete, "product not declared in source");
  return f.target->pairing(f.mor(p->pr1), f.mor(p->pr2));
}

std::optional<int> product_comparison_inverse(const Functor& f, int a, int b) {
  return find_inverse(*f.target, product_comparison(f, a, b));
}

void verify_category(const FragmentCategory& c, VerificationReport& report,
                     const CategoryCheckOptions& opt) {
  auto mn = [&](int m) { return c.morphism_name(m); };
  {
    LawTally t(report, "category.identity", "identities are typed endomorphisms");
    for (int a = 0; a < c.object_count(); ++a)
      t.check(c.src(c.identity(a)) == a && c.dst(c.identity(a)) == a, {c.object_name(a)});
  }
  {
    LawTally t(report, "category.composition-total", "composition is total and typed");
    for (int f = 0; f < c.morphism_count(); ++f)
      for (int g : c.outgoing(c.dst(f))) {
        int h = c.try_compose(g, f);
        t.check(h >= 0 && c.src(h) == c.src(f) && c.dst(h) == c.dst(g), {mn(g), mn(f)});
      }
  }
  {
    LawTally t(report, "category.unit", "identity is a two-sided unit");
    for (int f = 0; f < c.morphism_count(); ++f) {
      t.check(c.try_compose(c.identity(c.dst(f)), f) == f, {mn(f)}, "left unit");
      t.check(c.try_compose(f, c.identity(c.src(f))) == f, {mn(f)}, "right unit");
    }
  }
  std::size_t triples = 0;
  for (int f = 0; f < c.morphism_count() && triples <= opt.max_triples; ++f)
    for (int g : c.outgoing(c.dst(f))) triples += c.outgoing(c.dst(g)).size();
  if (triples > opt.max_triples) {
    report.skip("category.associativity", "composition is associative",
                "more than " + std::to_string(opt.max_triples) + " composable triples");
    return;
  }
  LawTally t(report, "category.associativity", "composition is associative");
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g : c.outgoing(c.dst(f))) {
      int gf = c.try_compose(g, f);
      for (int h : c.outgoing(c.dst(g))) {
        int hg = c.try_compose(h, g);
        int l = gf < 0 ? -1 : c.try_compose(h, gf);
        int r = hg < 0 ? -1 : c.try_compose(hg, f);
        t.check(l >= 0 && l == r, {mn(h), mn(g), mn(f)});
      }
    }
}

void verify_product_fragment(const FragmentCategory& c, VerificationReport& report) {
  LawTally t(report, "product.universal", "pairs correspond to maps into the product");
  for (const auto& dp : c.products()) {
    const auto& p = dp.product;
    std::string pn = c.object_name(dp.left) + "x" + c.object_name(dp.right);
    for (int x = 0; x < c.object_count(); ++x) {
      const auto& fs = c.hom(x, dp.left);
      const auto& gs = c.hom(x, dp.right);
      std::unordered_map<std::uint64_t, int> count;
      for (int h : c.hom(x, p.object)) {
        int f = c.try_compose(p.pr1, h);
        int g = c.try_compose(p.pr2, h);
        if (f >= 0 && g >= 0) ++count[pack(static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(g))];
      }
      for (int f : fs)
        for (int g : gs) {
          auto it = count.find(pack(static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(g)));
          int n = it == count.end() ? 0 : it->second;
          t.check(n == 1, {pn, c.morphism_name(f), c.morphism_name(g)},
                  std::to_string(n) + " mediating arrows");
        }
    }
  }
  t.finish();
  LawTally d(report, "product.diagonal", "squares carry a unique diagonal");
  for (const auto& dp : c.products()) {
    if (dp.left != dp.right) continue;
    int n = 0;
    for (int h : c.hom(dp.left, dp.product.object))
      if (c.try_compose(dp.product.pr1, h) == c.identity(dp.left) &&
          c.try_compose(dp.product.pr2, h) == c.identity(dp.left))
        ++n;
    d.check(n == 1, {c.object_name(dp.left)}, std::to_string(n) + " diagonals");
  }
  d.finish();
  if (auto tm = c.terminal()) {
    LawTally u(report, "product.terminal", "terminal object");
    for (int x = 0; x < c.object_count(); ++x)
      u.check(c.hom(x, *tm).size() == 1, {c.object_name(x)});
  }
}

void verify_functor(const Functor& f, VerificationReport& report) {
  const auto& S = *f.source;
  const auto& T = *f.target;
  if (static_cast<int>(f.objects.size()) != S.object_count() ||
      static_cast<int>(f.morphisms.size()) != S.morphism_count()) {
    report.fail("functor.total", "defined on all of the source", {"<sizes>"});
    return;
  }
  {
    LawTally t(report, "functor.typed", "morphisms go to morphisms between the images");
    for (int m = 0; m < S.morphism_count(); ++m) {
      int fm = f.mor(m);
      t.check(fm >= 0 && fm < T.morphism_count() && T.src(fm) == f.ob(S.src(m)) &&
                  T.dst(fm) == f.ob(S.dst(m)),
              {S.morphism_name(m)});
    }
    if (t.failed()) return;
  }
  {
    LawTally t(report, "functor.identity", "identities are preserved");
    for (int a = 0; a < S.object_count(); ++a)
      t.check(f.mor(S.identity(a)) == T.identity(f.ob(a)), {S.object_name(a)});
  }
  {
    LawTally t(report, "functor.composition", "composites are preserved");
    for (int m = 0; m < S.morphism_count(); ++m)
      for (int g : S.outgoing(S.dst(m))) {
        int gm = S.try_compose(g, m);
        t.check(gm >= 0 && T.try_compose(f.mor(g), f.mor(m)) == f.mor(gm),
                {S.morphism_name(g), S.morphism_name(m)});
      }
  }
  LawTally t(report, "functor.products", "declared products are preserved");
  for (const auto& dp : S.products()) {
    std::string w = S.object_name(dp.left) + "x" + S.object_name(dp.right);
    auto q = T.product(f.ob(dp.left), f.ob(dp.right));
    if (!q) {
      t.check(false, {w}, "image product not declared");
      continue;
    }
    try {
      t.check(product_comparison_inverse(f, dp.left, dp.right).has_value(), {w},
              "comparison not invertible");
    } catch (const Error& e) {
      t.check(false, {w}, e.what());
    }
  }
}

void verify_nat(const NatTransf& t, VerificationReport& report) {
  const auto& S = *t.from.source;
  const auto& T = *t.from.target;
  LawTally typed(report, "nat.typed", "components run between the images");
  for (int a = 0; a < S.object_count(); ++a) {
    int c = t.components.at(static_cast<std::size_t>(a));
    typed.check(c >= 0 && c < T.morphism_count() && T.src(c) == t.from.ob(a) &&
                    T.dst(c) == t.to.ob(a),
                {S.object_name(a)});
  }
  typed.finish();
  if (typed.failed()) return;
  LawTally nat(report, "nat.naturality", "naturality squares commute");
  for (int m = 0; m < S.morphism_count(); ++m) {
    int l = T.try_compose(t.components[static_cast<std::size_t>(S.dst(m))], t.from.mor(m));
    int r = T.try_compose(t.to.mor(m), t.components[static_cast<std::size_t>(S.src(m))]);
    nat.check(l >= 0 && l == r, {S.morphism_name(m)});
  }
}

}  // namespace doctrina
