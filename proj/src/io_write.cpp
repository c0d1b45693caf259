#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "doctrina/io.hpp"
#include "json.hpp"

namespace doctrina {

using nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_unique(const std::vector<std::string>& names, const std::string& what) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) fail(ErrorCode::integrity, "duplicate " + what + " id '" + n + "'");
}

json category_block(const FragmentCategory& C, const SaveOptions& opt) {
  std::vector<std::string> obs, ms;
  for (int a = 0; a < C.object_count(); ++a) obs.push_back(C.object_name(a));
  for (int m = 0; m < C.morphism_count(); ++m) ms.push_back(C.morphism_name(m));
  require_unique(obs, "object");
  require_unique(ms, "morphism");

  std::size_t pairs = 0;
  for (int b = 0; b < C.object_count(); ++b) pairs += C.incoming(b).size() * C.outgoing(b).size();
  if (pairs > opt.max_composites)
    fail(ErrorCode::resource, "composition table would need " + std::to_string(pairs) +
                                  " entries (limit " + std::to_string(opt.max_composites) + ")");

  json j;
  j["objects"] = obs;
  json mors = json::array();
  for (int m = 0; m < C.morphism_count(); ++m)
    mors.push_back({{"id", ms[m]}, {"src", obs[C.src(m)]}, {"dst", obs[C.dst(m)]}});
  j["morphisms"] = std::move(mors);
  json ids = json::object();
  for (int a = 0; a < C.object_count(); ++a) ids[obs[a]] = ms[C.identity(a)];
  j["identities"] = std::move(ids);
  // composites with an identity are implicit
  json comp = json::array();
  for (int f = 0; f < C.morphism_count(); ++f) {
    if (C.is_identity(f)) continue;
    for (int g : C.outgoing(C.dst(f))) {
      if (C.is_identity(g)) continue;
      int h = C.try_compose(g, f);
      if (h >= 0) comp.push_back({ms[g], ms[f], ms[h]});
    }
  }
  j["composition"] = std::move(comp);
  json prods = json::array();
  for (const auto& d : C.products())
    prods.push_back({{"left", obs[d.left]},
                     {"right", obs[d.right]},
                     {"object", obs[d.product.object]},
                     {"pr1", ms[d.product.pr1]},
                     {"pr2", ms[d.product.pr2]}});
  j["products"] = std::move(prods);
  if (auto t = C.terminal()) j["terminal"] = obs[*t];
  return j;
}

json fiber_block(const InfSemilattice& L) {
  require_unique(L.names(), "element");
  json covers = json::array();
  for (auto [x, y] : L.covers()) covers.push_back({L.name(x), L.name(y)});
  return {{"elements", L.names()}, {"leq", std::move(covers)}};
}

json doctrine_doc(const Doctrine& P, const SaveOptions& opt) {
  const auto& C = *P.base;
  json j;
  j["version"] = document_version;
  j["kind"] = "doctrine";
  j["name"] = P.name;
  j["metadata"] = json::object();
  for (const auto& [k, v] : P.metadata) j["metadata"][k] = v;
  j["generatedBy"] = P.generated_by;
  j["base"] = category_block(C, opt);
  json fib = json::object(), re = json::object();
  for (int a = 0; a < C.object_count(); ++a) fib[C.object_name(a)] = fiber_block(P.fiber(a));
  for (int m = 0; m < C.morphism_count(); ++m) {
    const auto& D = P.fiber(C.dst(m));
    const auto& S = P.fiber(C.src(m));
    json row = json::object();
    for (int x = 0; x < D.size(); ++x) row[D.name(x)] = S.name(P.re(m, x));
    re[C.morphism_name(m)] = std::move(row);
  }
  j["fibers"] = std::move(fib);
  j["reindex"] = std::move(re);

  json delta = json::object();
  for (int a = 0; a < C.object_count() && a < static_cast<int>(P.delta.size()); ++a) {
    if (P.delta[a] < 0) continue;
    auto sq = C.product(a, a);
    if (!sq) fail(ErrorCode::integrity, "equality on " + C.object_name(a) + " without a square");
    delta[C.object_name(a)] = P.fiber(sq->object).name(P.delta[a]);
  }
  j["delta"] = std::move(delta);

  if (P.has_comprehensions()) {
    json comp = json::object();
    for (int a = 0; a < C.object_count(); ++a) {
      json row = json::object();
      const auto& cs = P.comprehension.at(a);
      for (std::size_t x = 0; x < cs.size(); ++x)
        if (cs[x] >= 0) row[P.fiber(a).name(static_cast<int>(x))] = C.morphism_name(cs[x]);
      if (!row.empty()) comp[C.object_name(a)] = std::move(row);
    }
    j["comprehensions"] = std::move(comp);
  }
  if (P.has_quotients()) {
    json quot = json::object();
    for (int a = 0; a < C.object_count(); ++a) {
      const auto& qs = P.quotient.at(a);
      json row = json::object();
      for (std::size_t r = 0; r < qs.size(); ++r)
        if (qs[r] >= 0)
          row[P.fiber(C.product(a, a)->object).name(static_cast<int>(r))] = C.morphism_name(qs[r]);
      if (!row.empty()) quot[C.object_name(a)] = std::move(row);
    }
    j["quotients"] = std::move(quot);
  }
  return j;
}

const char* status_name(Status s) { return to_string(s); }

}  // namespace

std::string to_json(const FragmentCategory& c, const SaveOptions& opt) {
  json j;
  j["version"] = document_version;
  j["kind"] = "category";
  j["base"] = category_block(c, opt);
  return dump(j);
}

std::string to_json(const Doctrine& P, const SaveOptions& opt) { return dump(doctrine_doc(P, opt)); }

std::string to_json(const DoctrineMap& f, const SaveOptions& opt) {
  const auto& S = *f.source->base;
  const auto& T = *f.target->base;
  json j;
  j["version"] = document_version;
  j["kind"] = "map";
  j["source"] = doctrine_doc(*f.source, opt);
  j["target"] = doctrine_doc(*f.target, opt);
  json obs = json::object(), ms = json::object(), fib = json::object();
  for (int a = 0; a < S.object_count(); ++a) {
    obs[S.object_name(a)] = T.object_name(f.functor.ob(a));
    json row = json::object();
    const auto& src = f.source->fiber(a);
    const auto& dst = f.target->fiber(f.functor.ob(a));
    for (int x = 0; x < src.size(); ++x) row[src.name(x)] = dst.name(f.b(a, x));
    fib[S.object_name(a)] = std::move(row);
  }
  for (int m = 0; m < S.morphism_count(); ++m) ms[S.morphism_name(m)] = T.morphism_name(f.functor.mor(m));
  j["functor"] = {{"objects", std::move(obs)}, {"morphisms", std::move(ms)}};
  j["fibers"] = std::move(fib);
  return dump(j);
}

void save(const Doctrine& P, const std::string& path, const SaveOptions& opt) {
  write_file(path, to_json(P, opt));
}
void save(const FragmentCategory& c, const std::string& path, const SaveOptions& opt) {
  write_file(path, to_json(c, opt));
}
void save(const DoctrineMap& f, const std::string& path, const SaveOptions& opt) {
  write_file(path, to_json(f, opt));
}

std::string report_to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& e : r.entries()) {
    json c{{"law", e.law},
           {"anchor", e.anchor},
           {"status", status_name(e.status)},
           {"witnesses", e.witnesses},
           {"instances", e.instances}};
    if (!e.detail.empty()) c["detail"] = e.detail;
    checks.push_back(std::move(c));
  }
  json j{{"checks", std::move(checks)},
         {"summary",
          {{"pass", r.count(Status::pass)}, {"fail", r.count(Status::fail)}, {"skipped", r.count(Status::skipped)}}}};
  return dump(j);
}

std::string report_to_text(const VerificationReport& r) {
  std::ostringstream out;
  for (const auto& e : r.entries()) {
    switch (e.status) {
      case Status::pass:
        out << "PASS " << e.law << " (" << e.anchor << "), " << e.instances << " instance"
            << (e.instances == 1 ? "" : "s") << "\n";
        break;
      case Status::fail: {
        out << "FAIL " << e.law << " (" << e.anchor << "):";
        for (const auto& w : e.witnesses) out << " " << w;
        if (!e.detail.empty()) out << "; " << e.detail;
        out << "\n";
        break;
      }
      case Status::skipped:
        out << "SKIP " << e.law << " (" << e.anchor << "): " << e.detail << "\n";
        break;
    }
  }
  out << "summary: " << r.count(Status::pass) << " pass, " << r.count(Status::fail) << " fail, "
      << r.count(Status::skipped) << " skipped\n";
  return out.str();
}

void emit_report(const VerificationReport& r, const std::string& path, ReportFormat format) {
  write_file(path, format == ReportFormat::json ? report_to_json(r) : report_to_text(r));
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::lookup, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::lookup, "cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::lookup, "write to '" + path + "' failed");
}

}  // namespace doctrina
