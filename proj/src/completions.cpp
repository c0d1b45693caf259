#include "doctrina/completions.hpp"

#include "completion_util.hpp"

namespace doctrina {

std::string_view to_string(CompletionKind k) {
  switch (k) {
    case CompletionKind::comprehension: return "comprehension";
    case CompletionKind::extensional: return "extensional";
    case CompletionKind::quotient: return "quotient";
  }
  return "?";
}

int Completion::base_element(int o, int x) const {
  if (kind == CompletionKind::extensional) return x;
  return index->element_base.at(static_cast<std::size_t>(o)).at(static_cast<std::size_t>(x));
}

int Completion::element_of(int o, int x) const {
  if (kind == CompletionKind::extensional) return x;
  return index->element_index.at(static_cast<std::size_t>(o)).at(static_cast<std::size_t>(x));
}

int Completion::object_of(int a, int tag) const {
  auto it = index->objects.find(detail::object_key(a, tag));
  return it == index->objects.end() ? -1 : it->second;
}

int Completion::morphism_of(int f, int src, int dst) const {
  if (kind == CompletionKind::extensional) return index->class_of.at(static_cast<std::size_t>(f));
  auto it = index->morphisms.find(detail::morphism_key(f, src, dst));
  return it == index->morphisms.end() ? -1 : it->second;
}

Completion complete(CompletionKind k, const DoctrinePtr& P, const CompletionOptions& opt) {
  switch (k) {
    case CompletionKind::comprehension: return comp_completion(P, opt);
    case CompletionKind::extensional: return ext_collapse(P, opt);
    case CompletionKind::quotient: return quot_completion(P, opt);
  }
  fail(ErrorCode::internal, "unknown completion kind");
}

namespace detail {

Assembly::Assembly(CompletionKind kind, DoctrinePtr input, const CompletionOptions& opt)
    : kind_(kind), input_(std::move(input)), opt_(opt),
      index_(std::make_shared<CompletionIndex>()) {}

int Assembly::add_object(int a, int tag, std::string name) {
  if (index_->object_base.size() >= opt_.max_objects)
    fail(ErrorCode::resource, std::string(to_string(kind_)) + " completion of '" + input_->name +
                                  "' exceeds " + std::to_string(opt_.max_objects) + " objects");
  int o = builder_.add_object(name);
  index_->object_base.push_back(a);
  index_->object_tag.push_back(tag);
  index_->object_names.push_back(std::move(name));
  index_->objects.emplace(object_key(a, tag), o);
  return o;
}

int Assembly::add_morphism(int f, int s, int t) {
  if (index_->morphism_base.size() >= opt_.max_morphisms)
    fail(ErrorCode::resource, std::string(to_string(kind_)) + " completion of '" + input_->name +
                                  "' exceeds " + std::to_string(opt_.max_morphisms) +
                                  " morphisms");
  int m = builder_.add_morphism(s, t);
  index_->morphism_base.push_back(f);
  index_->morphism_src.push_back(s);
  index_->morphism_dst.push_back(t);
  if (kind_ != CompletionKind::extensional) index_->morphisms.emplace(morphism_key(f, s, t), m);
  return m;
}

int Assembly::object_of(int a, int tag) const {
  auto it = index_->objects.find(object_key(a, tag));
  return it == index_->objects.end() ? -1 : it->second;
}

int Assembly::morphism_of(int f, int s, int t) const {
  auto it = index_->morphisms.find(morphism_key(f, s, t));
  return it == index_->morphisms.end() ? -1 : it->second;
}

void Assembly::guard_fibers(std::size_t total) const {
  if (total > opt_.max_fiber_elements)
    fail(ErrorCode::resource, std::string(to_string(kind_)) + " completion of '" + input_->name +
                                  "' needs " + std::to_string(total) + " fiber elements (limit " +
                                  std::to_string(opt_.max_fiber_elements) + ")");
}

CategoryPtr Assembly::build_base() {
  std::shared_ptr<const CompletionIndex> idx = index_;
  CategoryPtr C = input_->base;
  if (kind_ == CompletionKind::extensional) {
    builder_.set_composer([idx, C](int g, int f) {
      int h = C->try_compose(idx->morphism_base[static_cast<std::size_t>(g)],
                             idx->morphism_base[static_cast<std::size_t>(f)]);
      return h < 0 ? -1 : idx->class_of[static_cast<std::size_t>(h)];
    });
    builder_.set_namer([idx, C](int m) {
      return "[" + C->morphism_name(idx->morphism_base[static_cast<std::size_t>(m)]) + "]";
    });
    for (int a = 0; a < C->object_count(); ++a)
      builder_.set_identity(a, idx->class_of[static_cast<std::size_t>(C->identity(a))]);
  } else {
    builder_.set_composer([idx, C](int g, int f) {
      const auto gi = static_cast<std::size_t>(g), fi = static_cast<std::size_t>(f);
      int h = C->try_compose(idx->morphism_base[gi], idx->morphism_base[fi]);
      if (h < 0) return -1;
      auto it = idx->morphisms.find(morphism_key(h, idx->morphism_src[fi], idx->morphism_dst[gi]));
      return it == idx->morphisms.end() ? -1 : it->second;
    });
    builder_.set_namer([idx, C](int m) {
      const auto i = static_cast<std::size_t>(m);
      return C->morphism_name(idx->morphism_base[i]) + " : " +
             idx->object_names[static_cast<std::size_t>(idx->morphism_src[i])] + " -> " +
             idx->object_names[static_cast<std::size_t>(idx->morphism_dst[i])];
    });
    for (int o = 0; o < object_count(); ++o) {
      int a = idx->object_base[static_cast<std::size_t>(o)];
      builder_.set_identity(o, morphism_of(C->identity(a), o, o));
    }
  }
  return builder_.build();
}

Completion Assembly::finish(DoctrinePtr output, DoctrineMap unit) {
  Completion c;
  c.kind = kind_;
  c.input = input_;
  c.output = std::move(output);
  c.unit = std::move(unit);
  c.index = index_;
  return c;
}

std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

void require_elementary(const Doctrine& P, const CompletionOptions& opt) {
  if (!opt.check_input) return;
  VerificationReport r;
  try {
    verify_elementary(P, r);
  } catch (const Error& e) {
    fail(ErrorCode::precondition, "doctrine '" + P.name + "' is not elementary: " + e.what());
  }
  if (!r.ok())
    fail(ErrorCode::precondition,
         "doctrine '" + P.name + "' is not elementary: " + r.first_failure());
}

}  // namespace detail

Completion comp_completion(const DoctrinePtr& Pp, const CompletionOptions& opt) {
  const Doctrine& P = *Pp;
  const auto& C = *P.base;
  detail::require_elementary(P, opt);
  detail::Assembly as(CompletionKind::comprehension, Pp, opt);

  std::size_t total = 0;
  for (int a = 0; a < C.object_count(); ++a)
    for (int x = 0; x < P.fiber(a).size(); ++x)
      for (int y = 0; y < P.fiber(a).size(); ++y) total += P.fiber(a).leq(y, x) ? 1 : 0;
  as.guard_fibers(total);

  std::vector<SubLattice> down;
  for (int a = 0; a < C.object_count(); ++a) {
    const auto& L = P.fiber(a);
    for (int x = 0; x < L.size(); ++x) {
      as.add_object(a, x, detail::pair_name(C.object_name(a), L.name(x)));
      down.push_back(downset(L, x));
    }
  }
  for (int f = 0; f < C.morphism_count(); ++f) {
    const int a = C.src(f), b = C.dst(f);
    for (int x = 0; x < P.fiber(a).size(); ++x)
      for (int y = 0; y < P.fiber(b).size(); ++y)
        if (P.fiber(a).leq(x, P.re(f, y))) as.add_morphism(f, as.object_of(a, x), as.object_of(b, y));
  }
  for (const auto& d : C.products()) {
    const int a = d.left, b = d.right;
    for (int x = 0; x < P.fiber(a).size(); ++x)
      for (int y = 0; y < P.fiber(b).size(); ++y) {
        int o = as.object_of(d.product.object, box(P, a, x, b, y));
        int oa = as.object_of(a, x), ob = as.object_of(b, y);
        as.declare_product(oa, ob,
                           {o, as.morphism_of(d.product.pr1, o, oa), as.morphism_of(d.product.pr2, o, ob)});
      }
  }
  if (auto t = C.terminal()) as.set_terminal(as.object_of(*t, P.top(*t)));
  CategoryPtr G = as.build_base();
  auto& idx = as.index();
  for (const auto& d : down) {
    idx.element_base.push_back(d.to_parent);
    idx.element_index.push_back(d.from_parent);
  }

  auto D = std::make_shared<Doctrine>();
  D->name = "comp(" + P.name + ")";
  D->base = G;
  D->generated_by = "comp_completion";
  D->metadata = {{"completion", "comprehension"}, {"input", P.name}};
  for (const auto& s : down) D->fibers.push_back(std::make_shared<const InfSemilattice>(s.lattice));
  D->reindex.resize(static_cast<std::size_t>(G->morphism_count()));
  for (int m = 0; m < G->morphism_count(); ++m) {
    const int f = idx.morphism_base[static_cast<std::size_t>(m)];
    const int s = G->src(m), t = G->dst(m);
    const int a = idx.object_base[static_cast<std::size_t>(s)];
    const int x = idx.object_tag[static_cast<std::size_t>(s)];
    const auto& ds = down[static_cast<std::size_t>(s)];
    const auto& dt = down[static_cast<std::size_t>(t)];
    auto& row = D->reindex[static_cast<std::size_t>(m)];
    row.resize(dt.to_parent.size());
    for (std::size_t z = 0; z < dt.to_parent.size(); ++z)
      row[z] = ds.from_parent[static_cast<std::size_t>(P.fiber(a).meet(P.re(f, dt.to_parent[z]), x))];
  }
  D->delta.assign(static_cast<std::size_t>(G->object_count()), -1);
  D->comprehension.resize(static_cast<std::size_t>(G->object_count()));
  for (int o = 0; o < G->object_count(); ++o) {
    const int a = idx.object_base[static_cast<std::size_t>(o)];
    const int x = idx.object_tag[static_cast<std::size_t>(o)];
    auto sq = C.product(a, a);
    if (sq && P.delta[static_cast<std::size_t>(a)] >= 0) {
      int xx = box(P, a, x, a, x);
      int so = as.object_of(sq->object, xx);
      D->delta[static_cast<std::size_t>(o)] = down[static_cast<std::size_t>(so)].from_parent[static_cast<std::size_t>(
          P.fiber(sq->object).meet(P.delta_of(a), xx))];
    }
    const auto& d = down[static_cast<std::size_t>(o)];
    for (int z : d.to_parent)
      D->comprehension[static_cast<std::size_t>(o)].push_back(
          as.morphism_of(C.identity(a), as.object_of(a, z), o));
  }

  DoctrineMap unit;
  unit.source = Pp;
  unit.target = D;
  unit.functor.source = P.base;
  unit.functor.target = G;
  for (int a = 0; a < C.object_count(); ++a) {
    int o = as.object_of(a, P.top(a));
    unit.functor.objects.push_back(o);
    unit.fibers.push_back(down[static_cast<std::size_t>(o)].from_parent);
  }
  for (int f = 0; f < C.morphism_count(); ++f)
    unit.functor.morphisms.push_back(as.morphism_of(
        f, unit.functor.objects[static_cast<std::size_t>(C.src(f))],
        unit.functor.objects[static_cast<std::size_t>(C.dst(f))]));
  return as.finish(D, std::move(unit));
}

}  // namespace doctrina
