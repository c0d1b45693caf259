#include "doctrina/lattice.hpp"

#include <algorithm>

#include "doctrina/error.hpp"

namespace doctrina {

InfSemilattice::InfSemilattice(std::vector<std::string> names, std::vector<char> leq, int top,
                               std::vector<int> meet)
    : names_(std::move(names)), leq_(std::move(leq)), top_(top), meet_(std::move(meet)) {
  const auto n = names_.size();
  if (leq_.size() != n * n || meet_.size() != n * n || top_ < 0 ||
      static_cast<std::size_t>(top_) >= n)
    fail(ErrorCode::precondition, "inconsistent lattice table sizes");
}

InfSemilattice InfSemilattice::from_matrix(std::vector<std::string> names,
                                           std::vector<char> leq) {
  const int n = static_cast<int>(names.size());
  if (n == 0) fail(ErrorCode::precondition, "empty lattice");
  if (leq.size() != static_cast<std::size_t>(n) * n)
    fail(ErrorCode::precondition, "order matrix has wrong size");
  auto at = [&](int a, int b) -> char& { return leq[static_cast<std::size_t>(a) * n + b]; };
  for (int a = 0; a < n; ++a) at(a, a) = 1;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (at(a, k))
        for (int b = 0; b < n; ++b)
          if (at(k, b)) at(a, b) = 1;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (at(a, b) && at(b, a))
        fail(ErrorCode::integrity,
             "order is not antisymmetric: " + names[a] + " and " + names[b]);
  int top = -1;
  for (int a = 0; a < n && top < 0; ++a) {
    bool all = true;
    for (int b = 0; b < n && all; ++b) all = at(b, a);
    if (all) top = a;
  }
  if (top < 0) fail(ErrorCode::integrity, "order has no top element");
  std::vector<int> meet(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int best = -1;
      for (int c = 0; c < n; ++c) {
        if (!at(c, a) || !at(c, b)) continue;
        if (best < 0 || at(best, c)) best = c;
      }
      // best is maximal among the lower bounds only once every bound sits below it
      for (int c = 0; c < n && best >= 0; ++c)
        if (at(c, a) && at(c, b) && !at(c, best)) best = -1;
      if (best < 0)
        fail(ErrorCode::integrity, "no meet for " + names[a] + " and " + names[b]);
      meet[static_cast<std::size_t>(a) * n + b] = best;
    }
  return InfSemilattice(std::move(names), std::move(leq), top, std::move(meet));
}

InfSemilattice InfSemilattice::from_order(std::vector<std::string> names,
                                          const std::vector<std::pair<int, int>>& leq_pairs) {
  const int n = static_cast<int>(names.size());
  std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
  for (auto [a, b] : leq_pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      fail(ErrorCode::lookup, "order pair refers to unknown element");
    leq[static_cast<std::size_t>(a) * n + b] = 1;
  }
  return from_matrix(std::move(names), std::move(leq));
}

InfSemilattice InfSemilattice::point(std::string name) {
  return InfSemilattice({std::move(name)}, {1}, 0, {0});
}

void InfSemilattice::check(int x) const {
  if (x < 0 || x >= size())
    fail(ErrorCode::lookup, "element " + std::to_string(x) + " not in lattice");
}

bool InfSemilattice::leq(int x, int y) const {
  check(x);
  check(y);
  return leq_[static_cast<std::size_t>(x) * size() + y] != 0;
}

int InfSemilattice::meet(int x, int y) const {
  check(x);
  check(y);
  return meet_[static_cast<std::size_t>(x) * size() + y];
}

const std::string& InfSemilattice::name(int x) const {
  check(x);
  return names_[static_cast<std::size_t>(x)];
}

std::optional<int> InfSemilattice::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

int InfSemilattice::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) fail(ErrorCode::lookup, "unknown element '" + name + "'");
  return *i;
}

std::vector<std::pair<int, int>> InfSemilattice::covers() const {
  std::vector<std::pair<int, int>> out;
  const int n = size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool direct = true;
      for (int c = 0; c < n && direct; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
      if (direct) out.emplace_back(a, b);
    }
  return out;
}

SubLattice sub_semilattice(const InfSemilattice& L, const std::vector<int>& members) {
  std::vector<int> m = members;
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  const int k = static_cast<int>(m.size());
  if (k == 0) fail(ErrorCode::precondition, "empty sub-semilattice");
  SubLattice s;
  s.to_parent = m;
  s.from_parent.assign(static_cast<std::size_t>(L.size()), -1);
  for (int i = 0; i < k; ++i) s.from_parent[static_cast<std::size_t>(m[i])] = i;
  std::vector<std::string> names;
  std::vector<char> leq(static_cast<std::size_t>(k) * k);
  std::vector<int> meet(static_cast<std::size_t>(k) * k);
  int top = -1;
  for (int i = 0; i < k; ++i) {
    names.push_back(L.name(m[i]));
    bool is_top = true;
    for (int j = 0; j < k; ++j) {
      leq[static_cast<std::size_t>(i) * k + j] = L.leq(m[i], m[j]) ? 1 : 0;
      is_top = is_top && L.leq(m[j], m[i]);
      int mm = s.from_parent[static_cast<std::size_t>(L.meet(m[i], m[j]))];
      if (mm < 0)
        fail(ErrorCode::precondition,
             "subset not closed under meets at " + L.name(m[i]) + ", " + L.name(m[j]));
      meet[static_cast<std::size_t>(i) * k + j] = mm;
    }
    if (is_top) top = i;
  }
  if (top < 0) fail(ErrorCode::precondition, "subset has no top element");
  s.lattice = InfSemilattice(std::move(names), std::move(leq), top, std::move(meet));
  return s;
}

SubLattice downset(const InfSemilattice& L, int x) {
  std::vector<int> members;
  for (int y = 0; y < L.size(); ++y)
    if (L.leq(y, x)) members.push_back(y);
  return sub_semilattice(L, members);
}

MeetMap identity_map(const LatticePtr& L) {
  MeetMap m{L, L, std::vector<int>(static_cast<std::size_t>(L->size()))};
  for (int i = 0; i < L->size(); ++i) m.map[static_cast<std::size_t>(i)] = i;
  return m;
}

MeetMap compose(const MeetMap& g, const MeetMap& f) {
  if (f.target->size() != g.source->size())
    fail(ErrorCode::domain_mismatch, "meet maps are not composable");
  MeetMap out{f.source, g.target, std::vector<int>(f.map.size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) out.map[i] = g(f.map[i]);
  return out;
}

std::optional<MeetMap> find_inverse(const MeetMap& m) {
  const int n = m.source->size();
  if (m.target->size() != n) return std::nullopt;
  std::vector<int> inv(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    int y = m(x);
    if (inv[static_cast<std::size_t>(y)] >= 0) return std::nullopt;
    inv[static_cast<std::size_t>(y)] = x;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (m.source->leq(a, b) != m.target->leq(m(a), m(b))) return std::nullopt;
  return MeetMap{m.target, m.source, std::move(inv)};
}

void verify_semilattice(const InfSemilattice& L, VerificationReport& report,
                        const std::string& label) {
  const int n = L.size();
  auto nm = [&](int x) { return label + ":" + L.name(x); };
  {
    LawTally t(report, "lattice.order", "fibers are partial orders");
    for (int a = 0; a < n; ++a) {
      t.check(L.leq(a, a), {nm(a)}, "not reflexive");
      for (int b = 0; b < n; ++b) {
        if (a != b) t.check(!(L.leq(a, b) && L.leq(b, a)), {nm(a), nm(b)}, "not antisymmetric");
        for (int c = 0; c < n; ++c)
          if (L.leq(a, b) && L.leq(b, c))
            t.check(L.leq(a, c), {nm(a), nm(b), nm(c)}, "not transitive");
      }
    }
  }
  {
    LawTally t(report, "lattice.top", "top is the maximum");
    for (int a = 0; a < n; ++a) t.check(L.leq(a, L.top()), {nm(a)});
  }
  {
    LawTally t(report, "lattice.meet", "meet is the greatest lower bound");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int m = L.meet(a, b);
        bool lower = L.leq(m, a) && L.leq(m, b);
        bool greatest = true;
        for (int c = 0; c < n && greatest; ++c)
          if (L.leq(c, a) && L.leq(c, b) && !L.leq(c, m)) greatest = false;
        t.check(lower && greatest, {nm(a), nm(b)}, "meet table gives " + nm(m));
      }
  }
}

void verify_meet_map(const MeetMap& m, VerificationReport& report, const std::string& label) {
  const auto& S = *m.source;
  const auto& T = *m.target;
  if (static_cast<int>(m.map.size()) != S.size()) {
    report.fail("meetmap.total", "map is defined on every element", {label},
                "table size differs from source");
    return;
  }
  for (int x = 0; x < S.size(); ++x)
    if (m(x) < 0 || m(x) >= T.size()) {
      report.fail("meetmap.total", "map is defined on every element", {label, S.name(x)},
                  "image out of range");
      return;
    }
  LawTally top(report, "meetmap.top", "preserves top");
  top.check(m(S.top()) == T.top(), {label, S.name(S.top())});
  top.finish();
  LawTally meets(report, "meetmap.meet", "preserves binary meets");
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b)
      meets.check(m(S.meet(a, b)) == T.meet(m(a), m(b)), {label, S.name(a), S.name(b)});
}

}  // namespace doctrina
