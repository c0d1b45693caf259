#include <unordered_map>

#include "doctrina/io.hpp"
#include "json.hpp"

namespace doctrina {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  fail(ErrorCode::parse, "at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

[[noreturn]] void unknown(const std::string& what, const std::string& id, const std::string& path) {
  fail(ErrorCode::integrity, "undeclared " + what + " '" + id + "' at " + path);
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    // keep the reason, drop the library prefix and its own position
    std::string msg = e.what();
    auto cut = msg.find(": ", msg.find("parse error"));
    if (cut != std::string::npos) msg = msg.substr(cut + 2);
    fail(ErrorCode::parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

const json& field(const json& o, const char* key, const std::string& path) {
  if (!o.is_object()) schema(path, "expected an object");
  auto it = o.find(key);
  if (it == o.end()) schema(path, std::string("missing '") + key + "'");
  return *it;
}

const json* optional_field(const json& o, const char* key) {
  auto it = o.find(key);
  return it == o.end() ? nullptr : &*it;
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

const json& object(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  return j;
}

using Names = std::unordered_map<std::string, int>;

int lookup(const Names& n, const std::string& id, const char* what, const std::string& path) {
  auto it = n.find(id);
  if (it == n.end()) unknown(what, id, path);
  return it->second;
}

int element(const InfSemilattice& L, const std::string& id, const std::string& path) {
  auto x = L.find(id);
  if (!x) unknown("element", id, path);
  return *x;
}

void check_header(const json& j, const char* kind) {
  const json& v = field(j, "version", "");
  if (!v.is_number_integer() || v.get<int>() != document_version)
    schema("/version", "unsupported version (expected " + std::to_string(document_version) + ")");
  std::string k = str(field(j, "kind", ""), "/kind");
  if (k != kind) schema("/kind", "expected '" + std::string(kind) + "', found '" + k + "'");
}

struct BaseNames {
  CategoryPtr category;
  Names objects, morphisms;
};

BaseNames read_base(const json& b, const std::string& path) {
  CategoryBuilder cb;
  BaseNames out;
  const json& obs = array(field(b, "objects", path), path + "/objects");
  for (std::size_t i = 0; i < obs.size(); ++i) {
    std::string n = str(obs[i], path + "/objects/" + std::to_string(i));
    if (!out.objects.emplace(n, cb.add_object(n)).second)
      fail(ErrorCode::integrity, "duplicate object id '" + n + "'");
  }
  const json& ms = array(field(b, "morphisms", path), path + "/morphisms");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string p = path + "/morphisms/" + std::to_string(i);
    std::string n = str(field(ms[i], "id", p), p + "/id");
    int s = lookup(out.objects, str(field(ms[i], "src", p), p + "/src"), "object", p + "/src");
    int t = lookup(out.objects, str(field(ms[i], "dst", p), p + "/dst"), "object", p + "/dst");
    if (!out.morphisms.emplace(n, cb.add_morphism(n, s, t)).second)
      fail(ErrorCode::integrity, "duplicate morphism id '" + n + "'");
  }
  std::vector<int> src(ms.size()), dst(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    src[i] = out.objects.at(ms[i]["src"].get<std::string>());
    dst[i] = out.objects.at(ms[i]["dst"].get<std::string>());
  }
  const json& ids = object(field(b, "identities", path), path + "/identities");
  for (const auto& [a, m] : ids.items()) {
    const std::string p = path + "/identities/" + a;
    int o = lookup(out.objects, a, "object", p);
    int k = lookup(out.morphisms, str(m, p), "morphism", p);
    if (src[k] != o || dst[k] != o)
      fail(ErrorCode::integrity, "identity '" + m.get<std::string>() + "' is not an endomorphism of '" + a + "'");
    cb.set_identity(o, k);
  }
  const json& comp = array(field(b, "composition", path), path + "/composition");
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const std::string p = path + "/composition/" + std::to_string(i);
    if (!comp[i].is_array() || comp[i].size() != 3) schema(p, "expected [g, f, g after f]");
    int g = lookup(out.morphisms, str(comp[i][0], p + "/0"), "morphism", p + "/0");
    int f = lookup(out.morphisms, str(comp[i][1], p + "/1"), "morphism", p + "/1");
    int h = lookup(out.morphisms, str(comp[i][2], p + "/2"), "morphism", p + "/2");
    if (dst[f] != src[g] || src[h] != src[f] || dst[h] != dst[g])
      fail(ErrorCode::integrity, "composite '" + comp[i][2].get<std::string>() + "' at " + p +
                                     " does not run from src f to dst g");
    cb.set_composite(g, f, h);
  }
  if (const json* prods = optional_field(b, "products")) {
    array(*prods, path + "/products");
    for (std::size_t i = 0; i < prods->size(); ++i) {
      const std::string p = path + "/products/" + std::to_string(i);
      const json& d = (*prods)[i];
      auto ob = [&](const char* k) { return lookup(out.objects, str(field(d, k, p), p + "/" + k), "object", p + "/" + k); };
      auto mo = [&](const char* k) {
        return lookup(out.morphisms, str(field(d, k, p), p + "/" + k), "morphism", p + "/" + k);
      };
      cb.declare_product(ob("left"), ob("right"), {ob("object"), mo("pr1"), mo("pr2")});
    }
  }
  if (const json* t = optional_field(b, "terminal"))
    cb.set_terminal(lookup(out.objects, str(*t, path + "/terminal"), "object", path + "/terminal"));
  out.category = cb.build();
  return out;
}

LatticePtr read_fiber(const json& f, const std::string& path) {
  const json& es = array(field(f, "elements", path), path + "/elements");
  std::vector<std::string> names;
  Names idx;
  for (std::size_t i = 0; i < es.size(); ++i) {
    names.push_back(str(es[i], path + "/elements/" + std::to_string(i)));
    if (!idx.emplace(names.back(), static_cast<int>(i)).second)
      fail(ErrorCode::integrity, "duplicate element id '" + names.back() + "' at " + path);
  }
  if (const json* m = optional_field(f, "matrix")) {
    array(*m, path + "/matrix");
    std::vector<char> leq;
    if (m->size() != names.size()) schema(path + "/matrix", "expected one row per element");
    for (std::size_t i = 0; i < m->size(); ++i) {
      const json& row = array((*m)[i], path + "/matrix/" + std::to_string(i));
      if (row.size() != names.size()) schema(path + "/matrix/" + std::to_string(i), "row has the wrong length");
      for (const auto& v : row) {
        if (!v.is_number_integer() && !v.is_boolean()) schema(path + "/matrix", "expected 0/1 entries");
        leq.push_back(v.is_boolean() ? v.get<bool>() : v.get<int>() != 0);
      }
    }
    return std::make_shared<const InfSemilattice>(InfSemilattice::from_matrix(names, leq));
  }
  const json& ls = array(field(f, "leq", path), path + "/leq");
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const std::string p = path + "/leq/" + std::to_string(i);
    if (!ls[i].is_array() || ls[i].size() != 2) schema(p, "expected [lower, upper]");
    pairs.emplace_back(lookup(idx, str(ls[i][0], p + "/0"), "element", p + "/0"),
                       lookup(idx, str(ls[i][1], p + "/1"), "element", p + "/1"));
  }
  return std::make_shared<const InfSemilattice>(InfSemilattice::from_order(names, pairs));
}

Doctrine read_doctrine(const json& j, const std::string& path) {
  const json& top = object(j, path);
  Doctrine P;
  P.name = str(field(top, "name", path), path + "/name");
  if (const json* md = optional_field(top, "metadata"))
    for (const auto& [k, v] : object(*md, path + "/metadata").items())
      P.metadata[k] = str(v, path + "/metadata/" + k);
  if (const json* g = optional_field(top, "generatedBy")) P.generated_by = str(*g, path + "/generatedBy");
  BaseNames B = read_base(field(top, "base", path), path + "/base");
  P.base = B.category;
  const auto& C = *P.base;

  const json& fib = object(field(top, "fibers", path), path + "/fibers");
  for (const auto& [a, _] : fib.items()) lookup(B.objects, a, "object", path + "/fibers/" + a);
  for (int a = 0; a < C.object_count(); ++a) {
    auto it = fib.find(C.object_name(a));
    if (it == fib.end()) schema(path + "/fibers", "no fiber over '" + C.object_name(a) + "'");
    P.fibers.push_back(read_fiber(*it, path + "/fibers/" + C.object_name(a)));
  }

  const json& re = object(field(top, "reindex", path), path + "/reindex");
  for (const auto& [m, _] : re.items()) lookup(B.morphisms, m, "morphism", path + "/reindex/" + m);
  for (int m = 0; m < C.morphism_count(); ++m) {
    const std::string p = path + "/reindex/" + C.morphism_name(m);
    auto it = re.find(C.morphism_name(m));
    if (it == re.end()) schema(path + "/reindex", "no reindexing along '" + C.morphism_name(m) + "'");
    const auto& D = P.fiber(C.dst(m));
    const auto& S = P.fiber(C.src(m));
    std::vector<int> row(static_cast<std::size_t>(D.size()), -1);
    for (const auto& [x, y] : object(*it, p).items())
      row[static_cast<std::size_t>(element(D, x, p))] = element(S, str(y, p + "/" + x), p + "/" + x);
    for (int x = 0; x < D.size(); ++x)
      if (row[static_cast<std::size_t>(x)] < 0) schema(p, "no image for '" + D.name(x) + "'");
    P.reindex.push_back(std::move(row));
  }

  auto square = [&](int a, const std::string& p) {
    auto sq = C.product(a, a);
    if (!sq) fail(ErrorCode::integrity, "'" + C.object_name(a) + "' has no declared square at " + p);
    return sq->object;
  };
  P.delta.assign(static_cast<std::size_t>(C.object_count()), -1);
  if (const json* d = optional_field(top, "delta"))
    for (const auto& [a, e] : object(*d, path + "/delta").items()) {
      const std::string p = path + "/delta/" + a;
      int o = lookup(B.objects, a, "object", p);
      P.delta[static_cast<std::size_t>(o)] = element(P.fiber(square(o, p)), str(e, p), p);
    }

  if (const json* cs = optional_field(top, "comprehensions")) {
    P.comprehension.resize(static_cast<std::size_t>(C.object_count()));
    for (int a = 0; a < C.object_count(); ++a)
      P.comprehension[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(P.fiber(a).size()), -1);
    for (const auto& [a, row] : object(*cs, path + "/comprehensions").items()) {
      const std::string p = path + "/comprehensions/" + a;
      int o = lookup(B.objects, a, "object", p);
      for (const auto& [x, m] : object(row, p).items())
        P.comprehension[static_cast<std::size_t>(o)][static_cast<std::size_t>(element(P.fiber(o), x, p))] =
            lookup(B.morphisms, str(m, p + "/" + x), "morphism", p + "/" + x);
    }
  }
  if (const json* qs = optional_field(top, "quotients")) {
    P.quotient.resize(static_cast<std::size_t>(C.object_count()));
    for (int a = 0; a < C.object_count(); ++a)
      if (auto sq = C.product(a, a))
        P.quotient[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(P.fiber(sq->object).size()), -1);
    for (const auto& [a, row] : object(*qs, path + "/quotients").items()) {
      const std::string p = path + "/quotients/" + a;
      int o = lookup(B.objects, a, "object", p);
      const auto& R = P.fiber(square(o, p));
      for (const auto& [r, m] : object(row, p).items())
        P.quotient[static_cast<std::size_t>(o)][static_cast<std::size_t>(element(R, r, p))] =
            lookup(B.morphisms, str(m, p + "/" + r), "morphism", p + "/" + r);
    }
  }
  return P;
}

void validated(const VerificationReport& r, const std::string& what) {
  if (!r.ok()) throw ValidationError(what + " fails verification: " + r.first_failure(), r);
}

}  // namespace

CategoryPtr category_from_json(std::string_view text, const LoadOptions& opt) {
  json j = parse(text);
  check_header(j, "category");
  auto C = read_base(field(j, "base", ""), "/base").category;
  if (opt.validate) {
    VerificationReport r;
    verify_category(*C, r, opt.category);
    verify_product_fragment(*C, r);
    validated(r, "category");
  }
  return C;
}

DoctrinePtr doctrine_from_json(std::string_view text, const LoadOptions& opt) {
  json j = parse(text);
  check_header(j, "doctrine");
  auto P = std::make_shared<const Doctrine>(read_doctrine(j, ""));
  if (opt.validate) {
    VerificationReport r;
    verify_doctrine(*P, r, opt.category);
    validated(r, "doctrine '" + P->name + "'");
  }
  return P;
}

DoctrineMap map_from_json(std::string_view text, const LoadOptions& opt) {
  json j = parse(text);
  check_header(j, "map");
  DoctrineMap f;
  f.source = std::make_shared<const Doctrine>(read_doctrine(field(j, "source", ""), "/source"));
  f.target = std::make_shared<const Doctrine>(read_doctrine(field(j, "target", ""), "/target"));
  const auto& S = *f.source->base;
  const auto& T = *f.target->base;
  f.functor.source = f.source->base;
  f.functor.target = f.target->base;
  const json& fn = field(j, "functor", "");
  const json& obs = object(field(fn, "objects", "/functor"), "/functor/objects");
  const json& ms = object(field(fn, "morphisms", "/functor"), "/functor/morphisms");
  const json& fib = object(field(j, "fibers", ""), "/fibers");
  for (int a = 0; a < S.object_count(); ++a) {
    const std::string& n = S.object_name(a);
    auto it = obs.find(n);
    if (it == obs.end()) schema("/functor/objects", "no image for '" + n + "'");
    auto t = T.find_object(str(*it, "/functor/objects/" + n));
    if (!t) unknown("object", it->get<std::string>(), "/functor/objects/" + n);
    f.functor.objects.push_back(*t);
    auto ft = fib.find(n);
    if (ft == fib.end()) schema("/fibers", "no fiber map over '" + n + "'");
    const auto& src = f.source->fiber(a);
    const auto& dst = f.target->fiber(*t);
    std::vector<int> row(static_cast<std::size_t>(src.size()), -1);
    const std::string p = "/fibers/" + n;
    for (const auto& [x, y] : object(*ft, p).items())
      row[static_cast<std::size_t>(element(src, x, p))] = element(dst, str(y, p + "/" + x), p + "/" + x);
    for (int x = 0; x < src.size(); ++x)
      if (row[static_cast<std::size_t>(x)] < 0) schema(p, "no image for '" + src.name(x) + "'");
    f.fibers.push_back(std::move(row));
  }
  for (int m = 0; m < S.morphism_count(); ++m) {
    const std::string n = S.morphism_name(m);
    auto it = ms.find(n);
    if (it == ms.end()) schema("/functor/morphisms", "no image for '" + n + "'");
    auto t = T.find_morphism(str(*it, "/functor/morphisms/" + n));
    if (!t) unknown("morphism", it->get<std::string>(), "/functor/morphisms/" + n);
    f.functor.morphisms.push_back(*t);
  }
  if (opt.validate) {
    VerificationReport r;
    verify_doctrine(*f.source, r, opt.category);
    verify_doctrine(*f.target, r, opt.category);
    verify_cell1(f, r);
    validated(r, "map");
  }
  return f;
}

Loaded load(const std::string& path, const LoadOptions& opt) {
  std::string text = read_file(path);
  json j = parse(text);
  std::string kind = str(field(j, "kind", ""), "/kind");
  if (kind == "doctrine") return doctrine_from_json(text, opt);
  if (kind == "category") return category_from_json(text, opt);
  if (kind == "map") return map_from_json(text, opt);
  schema("/kind", "unknown document kind '" + kind + "'");
}

DoctrinePtr load_doctrine(const std::string& path, const LoadOptions& opt) {
  return doctrine_from_json(read_file(path), opt);
}

}  // namespace doctrina
