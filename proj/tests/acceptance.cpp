// One line per acceptance criterion. Usage: acceptance [path-to-doctrina-cli]
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "doctrina/completions.hpp"
#include "doctrina/fixtures.hpp"
#include "doctrina/io.hpp"
#include "doctrina/monads.hpp"

using namespace doctrina;

namespace {

// wall-clock limits, seconds
constexpr double kElementaryLimit = 5.0;
constexpr double kPropertiesLimit = 30.0;
constexpr double kCellLimit = 60.0;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      note = why;
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.note = std::string("exception: ") + e.what();
  }
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f s", since(t0));
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " [" << secs << "]";
  if (!o.note.empty()) std::cout << " : " << o.note;
  std::cout << std::endl;
  if (!o.pass) ++failures;
}

std::string first(const VerificationReport& r) { return r.first_failure(); }

std::size_t size_of(const Doctrine& P) {
  return static_cast<std::size_t>(P.base->morphism_count()) + P.total_fiber_elements();
}

std::string run_cli(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
  int rc = pclose(p);
  return out + "\nexit=" + std::to_string(rc);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const CompletionKind kinds[] = {CompletionKind::comprehension, CompletionKind::extensional,
                                  CompletionKind::quotient};
  const MonadKind monads[] = {MonadKind::c, MonadKind::d, MonadKind::q};

  criterion(1, "verify_elementary on sub_finset(2), trivial, thin_chain3, each < 5 s", [] {
    Outcome o;
    for (const char* n : {"sub_finset_2", "trivial", "thin_chain3"}) {
      auto t0 = Clock::now();
      VerificationReport r;
      auto P = fixture(n);
      verify_doctrine(*P, r);
      verify_elementary(*P, r);
      double t = since(t0);
      o.require(r.ok(), std::string(n) + ": " + first(r));
      o.require(t < kElementaryLimit, std::string(n) + " took " + std::to_string(t) + " s");
    }
    return o;
  });

  criterion(2, "completion outputs carry their structure on every fixture, < 30 s total", [&] {
    Outcome o;
    auto t0 = Clock::now();
    for (const auto& n : fixture_names()) {
      auto P = fixture(n);
      for (auto k : kinds) {
        auto c = complete(k, P);
        VerificationReport r;
        if (k == CompletionKind::comprehension) check_full_comprehensions(*c.output, r);
        if (k == CompletionKind::extensional) check_comprehensive_diagonals(*c.output, r);
        if (k == CompletionKind::quotient) check_quotient_properties(*c.output, r);
        o.require(r.ok(), n + " " + std::string(to_string(k)) + ": " + first(r));
      }
    }
    double t = since(t0);
    o.require(t < kPropertiesLimit, "took " + std::to_string(t) + " s");
    return o;
  });

  criterion(3, "triangle identities for the three completions", [&] {
    Outcome o;
    for (const char* n : {"trivial", "thin_chain3", "sub_finset_small", "sub_finset_2", "nonextensional"}) {
      auto P = fixture(n);
      MonadContext ctx;
      for (auto m : monads) {
        const std::string at = std::string(n) + " " + std::string(to_string(m));
        auto TP = ctx.T(m, P);
        // eps_T . eta_T = id and eps_T . T(eta) = id at the free algebra
        auto eps = ctx.epsilon(m, TP);
        o.require(describe_difference(compose(eps, ctx.eta(m, TP)), identity_map(TP)).empty(), at + " eps eta_T");
        o.require(describe_difference(compose(eps, ctx.T(m, ctx.eta(m, P))), identity_map(TP)).empty(),
                  at + " eps T(eta)");
        try {
          o.require(compose(ctx.epsilon(m, P), ctx.eta(m, P)) == identity_map(P), at + " eps_P eta_P");
        } catch (const Error& e) {
          if (e.code() != ErrorCode::structure_missing) throw;
        }
      }
    }
    return o;
  });

  criterion(4, "monad laws for c, d, q on trivial, thin_chain3 and the largest fixture within the guards", [&] {
    Outcome o;
    std::vector<DoctrinePtr> by_size;
    for (const auto& n : fixture_names()) by_size.push_back(fixture(n));
    std::stable_sort(by_size.begin(), by_size.end(),
                     [](const DoctrinePtr& a, const DoctrinePtr& b) { return size_of(*a) > size_of(*b); });
    std::ostringstream chosen;
    for (auto m : monads) {
      for (const char* n : {"trivial", "thin_chain3"}) {
        auto r = verify_monad_laws(m, fixture(n));
        o.require(r.ok(), std::string(n) + " " + std::string(to_string(m)) + ": " + first(r));
      }
      bool fitted = false;
      for (const auto& P : by_size) {
        try {
          MonadContext ctx;
          auto md = monad_at(ctx, m, P);
          auto r = verify_monad_laws(md);
          o.require(r.ok(), P->name + " " + std::string(to_string(m)) + ": " + first(r));
          chosen << " " << to_string(m) << "@" << P->name;
          fitted = true;
          break;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::resource) throw;
        }
      }
      o.require(fitted, "no fixture fits the guards for " + std::string(to_string(m)));
    }
    if (o.pass) o.note = "largest:" + chosen.str();
    return o;
  });

  criterion(5, "algebra round trip, and injected faults rejected with a witness", [&] {
    Outcome o;
    auto P = sub_finset(2);
    MonadContext ctx;
    for (auto m : monads) {
      const std::string k(to_string(m));
      auto a = algebra_from_structure(ctx, m, P);
      Doctrine S = structure_from_algebra(ctx, a);
      o.require(S.comprehension == P->comprehension, k + ": comprehensions not recovered");
      o.require(S.quotient == P->quotient, k + ": quotients not recovered");
      for (auto f : {Fault::object, Fault::fiber}) {
        auto r = verify_algebra(ctx, inject_fault(a, f));
        bool witnessed = false;
        for (const auto& e : r.entries())
          if (e.status == Status::fail && !e.witnesses.empty() && !e.witnesses[0].empty()) witnessed = true;
        o.require(!r.ok() && witnessed, k + ": fault not rejected with a witness");
      }
    }
    return o;
  });

  criterion(6, "exactly one 2-cell for c (colax), q (lax), d (invertible), < 60 s per cell", [&] {
    Outcome o;
    auto P = sub_finset(2);
    MonadContext ctx;
    std::vector<std::pair<std::string, DoctrineMap>> cells{{"id", identity_map(P)},
                                                           {"swap", swap_conjugation(P)}};
    for (auto m : monads)
      for (const auto& [name, F] : cells) {
        auto t0 = Clock::now();
        std::size_t n = two_cell_uniqueness(ctx, m, F);
        double t = since(t0);
        const std::string at = std::string(to_string(m)) + " " + name;
        o.require(n == 1, at + ": " + std::to_string(n) + " cells");
        o.require(t < kCellLimit, at + " took " + std::to_string(t) + " s");
      }
    for (auto [m, ck] : {std::pair{MonadKind::c, CompletionKind::comprehension},
                         std::pair{MonadKind::q, CompletionKind::quotient}}) {
      auto t0 = Clock::now();
      std::size_t n = two_cell_uniqueness(ctx, m, ctx.completion(ck, P).unit);
      o.require(n == 1, std::string(to_string(m)) + " unit: " + std::to_string(n) + " cells");
      o.require(since(t0) < kCellLimit, std::string(to_string(m)) + " unit too slow");
    }
    return o;
  });

  criterion(7, "tau at (A,T) and omega at (A,delta) are identities; preserving 1-cells give identity cells", [&] {
    Outcome o;
    auto P = sub_finset(2);
    const auto& C = *P->base;
    auto c1 = comp_completion(P);
    auto c2 = comp_completion(c1.output);
    auto tau = mediating_tau(c1, c2, c1.unit);
    for (int a = 0; a < C.object_count(); ++a)
      o.require(c1.output->base->is_identity(tau.components[c1.object_of(a, P->top(a))]),
                "tau at (" + C.object_name(a) + ",T)");
    auto q1 = quot_completion(P);
    auto q2 = quot_completion(q1.output);
    auto omega = mediating_omega(q1, q2, q1.unit);
    for (int a = 0; a < C.object_count(); ++a)
      o.require(q1.output->base->is_identity(omega.components[q1.unit.functor.ob(a)]),
                "omega at (" + C.object_name(a) + ",delta)");
    for (const auto& F : {identity_map(P), swap_conjugation(P)}) {
      o.require(is_identity_cell(mediating_tau(c1, c1, F)), "tau of a preserving 1-cell");
      o.require(is_identity_cell(mediating_omega(q1, q1, F)), "omega of a preserving 1-cell");
    }
    return o;
  });

  criterion(8, "distributive law diagrams, both structures on T_qT_c, qc monad laws at trivial", [&] {
    Outcome o;
    for (const char* n : {"trivial", "sub_finset_small"}) {
      MonadContext ctx;
      auto r = verify_distributive_law(ctx, fixture(n));
      o.require(r.ok(), std::string(n) + ": " + first(r));
      for (const char* law : {"distributive.unit-c", "distributive.unit-q", "distributive.mult-c",
                              "distributive.mult-q", "distributive.comprehensions", "distributive.quotients"})
        o.require(!r.find(law).empty(), std::string(n) + ": " + law + " not checked");
    }
    auto r = verify_monad_laws(MonadKind::qc, fixture("trivial"));
    o.require(r.ok(), "qc at trivial: " + first(r));
    return o;
  });

  criterion(9, "eta_d invertible exactly on comprehensive diagonals; not on nonextensional", [&] {
    Outcome o;
    MonadContext ctx;
    for (const auto& n : fixture_names()) {
      auto P = fixture(n);
      VerificationReport r;
      check_comprehensive_diagonals(*P, r);
      o.require(is_isomorphism(ctx.eta(MonadKind::d, P)) == r.ok(), n);
    }
    o.require(!is_isomorphism(ctx.eta(MonadKind::d, nonextensional())), "nonextensional eta_d invertible");
    return o;
  });

  criterion(10, "IO round trip is byte-identical; CLI output is reproducible", [&] {
    Outcome o;
    std::size_t docs = 0, refused = 0;
    for (const auto& n : fixture_names()) {
      auto P = fixture(n);
      std::vector<DoctrinePtr> all{P};
      for (auto k : kinds) all.push_back(complete(k, P).output);
      for (const auto& D : all) {
        std::string s;
        try {
          s = to_json(*D);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::resource) throw;
          ++refused;
          continue;
        }
        LoadOptions lo;
        lo.validate = false;
        auto back = doctrine_from_json(s, lo);
        o.require(to_json(*back) == s && same_structure(*back, *D), D->name + " does not round-trip");
        ++docs;
      }
    }
    if (cli.empty()) {
      o.require(false, "no CLI path given");
    } else {
      std::string tmp = "acceptance_cli.doc.json";
      run_cli(cli + " fixtures --name sub_finset_small --out " + tmp);
      std::string a = run_cli(cli + " laws --monad c " + tmp + " --report-json /dev/stdout");
      std::string b = run_cli(cli + " laws --monad c " + tmp + " --report-json /dev/stdout");
      std::string p1 = run_cli(cli + " pipeline --steps c,q " + tmp + " --out /dev/stdout");
      std::string p2 = run_cli(cli + " pipeline --steps c,q " + tmp + " --out /dev/stdout");
      std::remove(tmp.c_str());
      o.require(a == b && a.find("exit=0") != std::string::npos, "laws report differs between runs");
      o.require(p1 == p2 && p1.find("exit=0") != std::string::npos, "pipeline output differs between runs");
    }
    if (o.pass)
      o.note = std::to_string(docs) + " documents; " + std::to_string(refused) +
               " over the composition-table guard";
    return o;
  });

  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria pass") << std::endl;
  return failures ? 1 : 0;
}
