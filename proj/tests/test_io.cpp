#include <filesystem>
#include <functional>

#include "doctest.h"
#include "doctrina/completions.hpp"
#include "doctrina/fixtures.hpp"
#include "doctrina/io.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace doctrina;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

void round_trip(const Doctrine& P) {
  CAPTURE(P.name);
  std::string s = to_json(P);
  auto Q = doctrine_from_json(s);
  CHECK(same_structure(P, *Q));
  CHECK(to_json(*Q) == s);
}

}  // namespace

TEST_CASE("fixtures round-trip") {
  for (const auto& n : fixture_names())
    if (n != "sub_finset_4") round_trip(*fixture(n));
}

TEST_CASE("completion outputs round-trip and re-verify") {
  for (const char* n : {"trivial", "thin_chain3", "sub_finset_small", "sub_finset_2", "weak_demo", "nonextensional"})
    for (auto k : {CompletionKind::comprehension, CompletionKind::extensional, CompletionKind::quotient}) {
      auto c = complete(k, fixture(n));
      round_trip(*c.output);
      auto Q = doctrine_from_json(to_json(*c.output));
      VerificationReport r;
      verify_elementary(*Q, r);
      if (k == CompletionKind::comprehension) check_full_comprehensions(*Q, r);
      if (k == CompletionKind::extensional) check_comprehensive_diagonals(*Q, r);
      if (k == CompletionKind::quotient) check_quotient_properties(*Q, r);
      CHECK_MESSAGE(r.ok(), r.first_failure());
    }
}

TEST_CASE("oversized composition tables are refused") {
  auto c = comp_completion(sub_finset(2));
  SaveOptions o;
  o.max_composites = 1000;
  CHECK(code_of([&] { to_json(*c.output, o); }) == ErrorCode::resource);
}

TEST_CASE("maps and categories round-trip") {
  auto sw = swap_conjugation(sub_finset(2));
  std::string s = to_json(sw);
  auto back = map_from_json(s);
  CHECK(to_json(back) == s);
  CHECK(back.functor.objects == sw.functor.objects);
  CHECK(back.functor.morphisms == sw.functor.morphisms);
  CHECK(back.fibers == sw.fibers);

  auto C = fixture("thin_chain3")->base;
  std::string cs = to_json(*C);
  CHECK(to_json(*category_from_json(cs)) == cs);
}

TEST_CASE("files and kind dispatch") {
  auto dir = std::filesystem::temp_directory_path() / "doctrina_io_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "t.doc.json").string();
  auto T = fixture("trivial");
  save(*T, path);
  auto v = load(path);
  REQUIRE(std::holds_alternative<DoctrinePtr>(v));
  CHECK(same_structure(*std::get<DoctrinePtr>(v), *T));
  save(*T->base, path);
  CHECK(std::holds_alternative<CategoryPtr>(load(path)));
  save(identity_map(T), path);
  CHECK(std::holds_alternative<DoctrineMap>(load(path)));
  CHECK(code_of([&] { load((dir / "missing.json").string()); }) == ErrorCode::lookup);
  std::filesystem::remove_all(dir);
}

TEST_CASE("parse errors carry a position") {
  CHECK(code_of([] { doctrine_from_json(""); }) == ErrorCode::parse);
  std::string bad = "{\n  \"version\": 1,\n  \"kind\": ]\n}";
  std::string m = message_of([&] { doctrine_from_json(bad); });
  CHECK(m.find("line 3") != std::string::npos);
  CHECK(m.find("column 11") != std::string::npos);
  CHECK(code_of([] { doctrine_from_json(R"({"version": 2, "kind": "doctrine"})"); }) == ErrorCode::parse);
  CHECK(code_of([] { doctrine_from_json(R"({"version": 1, "kind": "category"})"); }) == ErrorCode::parse);
}

TEST_CASE("integrity errors name the id") {
  json j = json::parse(to_json(*fixture("thin_chain3")));
  auto& comp = j["base"]["composition"];
  REQUIRE(!comp.empty());
  comp[0][1] = "ghost";
  std::string m = message_of([&] { doctrine_from_json(j.dump()); });
  CHECK(m.find("integrity") == 0);
  CHECK(m.find("'ghost'") != std::string::npos);

  json k = json::parse(to_json(*fixture("trivial")));
  k["delta"][k["base"]["objects"][0].get<std::string>()] = "nowhere";
  CHECK(code_of([&] { doctrine_from_json(k.dump()); }) == ErrorCode::integrity);
}

TEST_CASE("order given as a matrix") {
  json j = json::parse(to_json(*fixture("thin_chain3")));
  for (auto& [a, f] : j["fibers"].items()) {
    auto names = f["elements"].get<std::vector<std::string>>();
    std::vector<std::vector<int>> m(names.size(), std::vector<int>(names.size(), 0));
    auto from = fixture("thin_chain3");
    const auto& F = from->fiber(*from->base->find_object(a));
    for (int x = 0; x < F.size(); ++x)
      for (int y = 0; y < F.size(); ++y) m[x][y] = F.leq(x, y);
    f.erase("leq");
    f["matrix"] = m;
  }
  auto P = doctrine_from_json(j.dump());
  CHECK(same_structure(*P, *fixture("thin_chain3")));
}

TEST_CASE("validation failures embed the report") {
  json j = json::parse(to_json(*sub_finset(2)));
  // reindexing along the identity of [2] collapses to the empty set
  auto id = j["base"]["identities"]["[2]"].get<std::string>();
  for (auto& [x, y] : j["reindex"][id].items()) y = "{}";
  try {
    doctrine_from_json(j.dump());
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.code() == ErrorCode::validation);
    CHECK_FALSE(e.report().ok());
    CHECK(testing_support::has_witnesses(e.report()));
  }
  LoadOptions lax;
  lax.validate = false;
  CHECK_NOTHROW(doctrine_from_json(j.dump(), lax));
}

TEST_CASE("reports") {
  VerificationReport r;
  r.pass("law.a", "anchor a", 3);
  r.fail("law.b", "anchor b", {"[2]", "{0}"}, "detail");
  r.skip("law.c", "anchor c", "square not declared");
  std::string text = report_to_text(r);
  CHECK(text.find("FAIL law.b (anchor b): [2] {0}; detail") != std::string::npos);
  CHECK(text.find("SKIP law.c (anchor c): square not declared") != std::string::npos);
  CHECK(text.find("summary: 1 pass, 1 fail, 1 skipped") != std::string::npos);
  json j = json::parse(report_to_json(r));
  CHECK(j["summary"]["fail"] == 1);
  CHECK(j["checks"][1]["witnesses"] == json({"[2]", "{0}"}));
  CHECK(j["checks"][2]["status"] == "skipped");
  CHECK(report_to_json(r) == report_to_json(r));
}

TEST_CASE("content hash") {
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
}
