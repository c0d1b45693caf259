#include <algorithm>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "doctrina/completions.hpp"
#include "doctrina/fixtures.hpp"
#include "doctrina/io.hpp"
#include "doctrina/monads.hpp"

using namespace doctrina;

namespace {

enum Exit { ok = 0, check_failed = 1, input_error = 2, resource_error = 3 };

struct Settings {
  std::string report_json;
  bool no_validate = false;
  bool skips_are_errors = false;
  std::size_t max_objects = CompletionOptions{}.max_objects;
  std::size_t max_fiber_elements = CompletionOptions{}.max_fiber_elements;

  CompletionOptions completion() const {
    CompletionOptions o;
    o.max_objects = max_objects;
    o.max_fiber_elements = max_fiber_elements;
    return o;
  }
  LoadOptions load() const {
    LoadOptions o;
    o.validate = !no_validate;
    return o;
  }
};

int finish(const Settings& s, const VerificationReport& r) {
  std::cout << report_to_text(r);
  if (!s.report_json.empty()) emit_report(r, s.report_json, ReportFormat::json);
  return r.ok(s.skips_are_errors) ? ok : check_failed;
}

// Runs a structure check, turning a missing choice into a failing entry.
template <class Check>
void guarded(VerificationReport& r, const std::string& law, const Doctrine& P, Check check) {
  try {
    check(P, r);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::structure_missing) throw;
    r.fail(law, P.name, {e.what()}, "structure missing");
  }
}

void property(VerificationReport& r, const std::string& name, const Doctrine& P) {
  if (name == "elementary") {
    verify_elementary(P, r);
  } else if (name == "full-comprehensions") {
    Doctrine Q = P.has_comprehensions() ? P : choose_comprehensions(P);
    guarded(r, "comprehension.universal", Q, check_full_comprehensions);
  } else if (name == "comprehensive-diagonals") {
    Doctrine Q = P.has_comprehensions() ? P : choose_comprehensions(P);
    guarded(r, "comprehension.diagonals", Q, check_comprehensive_diagonals);
  } else if (name == "quotients") {
    Doctrine Q = P.has_quotients() ? P : choose_quotients(P);
    guarded(r, "quotient.universal", Q, check_quotient_properties);
  } else {
    fail(ErrorCode::precondition, "unknown property '" + name + "'");
  }
}

const char* property_of(CompletionKind k) {
  switch (k) {
    case CompletionKind::comprehension: return "full-comprehensions";
    case CompletionKind::extensional: return "comprehensive-diagonals";
    case CompletionKind::quotient: return "quotients";
  }
  return "";
}

CompletionKind step_kind(const std::string& s) {
  auto k = parse_monad_kind(s);
  if (!k || *k == MonadKind::qc) fail(ErrorCode::precondition, "unknown completion step '" + s + "'");
  return completion_kind(*k);
}

// Completes P, stamping the output with its provenance.
DoctrinePtr run_completion(CompletionKind k, const DoctrinePtr& P, const Settings& s) {
  auto c = complete(k, P, s.completion());
  Doctrine out = *c.output;
  std::string input;
  try {
    input = to_json(*P);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::resource) throw;
  }
  out.generated_by = std::string(to_string(k)) + " completion of " + P->name +
                     (input.empty() ? std::string() : " #" + content_hash(input));
  return std::make_shared<const Doctrine>(std::move(out));
}

int cmd_validate(const Settings& s, const std::string& input) {
  LoadOptions lo = s.load();
  lo.validate = false;
  auto v = load(input, lo);
  VerificationReport r;
  if (auto* P = std::get_if<DoctrinePtr>(&v)) {
    verify_doctrine(**P, r);
    bool has_equality = std::any_of((*P)->delta.begin(), (*P)->delta.end(), [](int d) { return d >= 0; });
    if (r.ok() && has_equality) verify_elementary(**P, r);
  } else if (auto* C = std::get_if<CategoryPtr>(&v)) {
    verify_category(**C, r);
    verify_product_fragment(**C, r);
  } else {
    const auto& f = std::get<DoctrineMap>(v);
    verify_doctrine(*f.source, r);
    verify_doctrine(*f.target, r);
    verify_cell1(f, r);
  }
  return finish(s, r);
}

int cmd_check(const Settings& s, const std::string& input, const std::string& prop) {
  auto P = load_doctrine(input, s.load());
  VerificationReport r;
  property(r, prop, *P);
  return finish(s, r);
}

int cmd_pipeline(const Settings& s, const std::string& input, const std::vector<std::string>& steps,
                 const std::string& out) {
  auto P = load_doctrine(input, s.load());
  VerificationReport r;
  std::vector<CompletionKind> kinds;
  for (const auto& st : steps) kinds.push_back(step_kind(st));
  if (kinds.empty()) fail(ErrorCode::precondition, "no completion steps");
  for (auto k : kinds) P = run_completion(k, P, s);
  verify_elementary(*P, r);
  // each structure added along the way, checked on the final output
  std::vector<std::string> seen;
  for (auto k : kinds) {
    std::string prop = property_of(k);
    if (std::find(seen.begin(), seen.end(), prop) != seen.end()) continue;
    seen.push_back(prop);
    property(r, prop, *P);
  }
  if (!out.empty()) save(*P, out);
  return finish(s, r);
}

void eta_d_status(MonadContext& ctx, const DoctrinePtr& P, VerificationReport& r) {
  VerificationReport d;
  check_comprehensive_diagonals(*P, d);
  bool diagonals = d.ok();
  bool invertible = is_isomorphism(ctx.eta(MonadKind::d, P));
  std::string anchor = std::string("eta_P is ") + (invertible ? "" : "not ") + "invertible; diagonals are " +
                       (diagonals ? "" : "not ") + "comprehensive";
  if (invertible == diagonals)
    r.pass("ced.eta-invertible", anchor, 1);
  else
    r.fail("ced.eta-invertible", anchor, {P->name});
}

int cmd_laws(const Settings& s, const std::string& input, const std::string& monad) {
  auto mk = parse_monad_kind(monad);
  if (!mk) fail(ErrorCode::precondition, "unknown monad '" + monad + "'");
  auto P = load_doctrine(input, s.load());
  MonadContext ctx(s.completion());
  VerificationReport r;
  if (*mk == MonadKind::qc) {
    r.merge(verify_distributive_law(ctx, P));
    r.merge(verify_monad_laws(monad_at(ctx, *mk, P)));
    return finish(s, r);
  }
  r.merge(verify_monad_laws(monad_at(ctx, *mk, P)));
  if (*mk == MonadKind::d) eta_d_status(ctx, P, r);
  try {
    auto a = algebra_from_structure(ctx, *mk, P);
    r.merge(verify_algebra(ctx, a));
    std::size_t n = two_cell_uniqueness(ctx, *mk, identity_map(P));
    if (n == 1)
      r.pass("property-like.unique-cell", "one 2-cell at the identity", 1);
    else
      r.fail("property-like.unique-cell", "one 2-cell at the identity", {std::to_string(n) + " cells"});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::structure_missing && e.code() != ErrorCode::validation) throw;
    r.skip("algebra", P->name, std::string("no canonical algebra: ") + e.what());
  }
  return finish(s, r);
}

int cmd_fixtures(const Settings& s, const std::string& name, const std::string& out) {
  if (name.empty()) {
    for (const auto& n : fixture_names()) std::cout << n << "\n";
    return ok;
  }
  auto P = fixture(name);
  VerificationReport r;
  verify_doctrine(*P, r);
  if (!out.empty()) save(*P, out);
  return finish(s, r);
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::resource: return resource_error;
    case ErrorCode::internal: return check_failed;
    default: return input_error;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"doctrina: elementary doctrines over finite fragments"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--report-json", s.report_json, "Write the report as JSON to this path");
  app.add_flag("--no-validate", s.no_validate, "Skip verification when loading inputs");
  app.add_flag("--skip-warnings-as-errors", s.skips_are_errors, "Treat skipped checks as failures");
  app.add_option("--max-objects", s.max_objects, "Object guard for completions");
  app.add_option("--max-fiber-elements", s.max_fiber_elements, "Fiber-element guard for completions");

  std::string input, out, prop, kind, monad, name;
  std::string steps_arg;

  auto* validate = app.add_subcommand("validate", "Load and verify a document");
  validate->add_option("input", input)->required();

  auto* check = app.add_subcommand("check", "Check one property of a doctrine");
  check->add_option("--property", prop)
      ->required()
      ->check(CLI::IsMember({"elementary", "full-comprehensions", "comprehensive-diagonals", "quotients"}));
  check->add_option("input", input)->required();

  auto* complete_cmd = app.add_subcommand("complete", "Apply one completion");
  complete_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"c", "d", "q"}));
  complete_cmd->add_option("--out", out);
  complete_cmd->add_option("input", input)->required();

  auto* laws = app.add_subcommand("laws", "Verify the monad laws at a doctrine");
  laws->add_option("--monad", monad)->required()->check(CLI::IsMember({"c", "d", "q", "qc"}));
  laws->add_option("input", input)->required();

  auto* pipeline = app.add_subcommand("pipeline", "Apply a sequence of completions");
  pipeline->add_option("--steps", steps_arg, "Comma-separated completions, e.g. c,q")->required();
  pipeline->add_option("--out", out);
  pipeline->add_option("input", input)->required();

  auto* fixtures = app.add_subcommand("fixtures", "List or export the built-in fixtures");
  fixtures->add_option("--name", name);
  fixtures->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  try {
    if (*validate) return cmd_validate(s, input);
    if (*check) return cmd_check(s, input, prop);
    if (*complete_cmd) return cmd_pipeline(s, input, {kind}, out);
    if (*laws) return cmd_laws(s, input, monad);
    if (*pipeline) {
      std::vector<std::string> steps;
      std::stringstream in(steps_arg);
      for (std::string st; std::getline(in, st, ',');) steps.push_back(st);
      return cmd_pipeline(s, input, steps, out);
    }
    if (*fixtures) return cmd_fixtures(s, name, out);
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    if (!s.report_json.empty()) emit_report(e.report(), s.report_json, ReportFormat::json);
    return input_error;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_for(e);
  }
  return input_error;
}
