#include "doctrina/report.hpp"

#include <algorithm>

#include "doctrina/error.hpp"

namespace doctrina {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain_mismatch: return "domain-mismatch";
    case ErrorCode::fragment_incomplete: return "fragment-incomplete";
    case ErrorCode::broken_product: return "broken-product";
    case ErrorCode::structure_missing: return "structure-missing";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::lookup: return "lookup";
    case ErrorCode::parse: return "parse";
    case ErrorCode::integrity: return "integrity";
    case ErrorCode::validation: return "validation";
    case ErrorCode::resource: return "resource";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

const char* to_string(Status status) {
  switch (status) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

void VerificationReport::pass(std::string law, std::string anchor, std::size_t instances) {
  CheckEntry e;
  e.law = std::move(law);
  e.anchor = std::move(anchor);
  e.status = Status::pass;
  e.instances = instances;
  entries_.push_back(std::move(e));
}

void VerificationReport::fail(std::string law, std::string anchor,
                              std::vector<std::string> witnesses, std::string detail) {
  CheckEntry e;
  e.law = std::move(law);
  e.anchor = std::move(anchor);
  e.status = Status::fail;
  e.witnesses = std::move(witnesses);
  if (e.witnesses.empty()) e.witnesses.push_back("<unnamed>");
  e.detail = std::move(detail);
  e.instances = 1;
  entries_.push_back(std::move(e));
}

void VerificationReport::skip(std::string law, std::string anchor, std::string reason) {
  CheckEntry e;
  e.law = std::move(law);
  e.anchor = std::move(anchor);
  e.status = Status::skipped;
  e.detail = std::move(reason);
  entries_.push_back(std::move(e));
}

void VerificationReport::merge(const VerificationReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

void VerificationReport::merge_summed(const VerificationReport& other) {
  std::vector<CheckEntry> passes;
  for (const auto& e : other.entries_) {
    if (e.status != Status::pass) {
      entries_.push_back(e);
      continue;
    }
    auto it = std::find_if(passes.begin(), passes.end(),
                           [&](const CheckEntry& p) { return p.law == e.law; });
    if (it == passes.end())
      passes.push_back(e);
    else
      it->instances += e.instances;
  }
  entries_.insert(entries_.end(), passes.begin(), passes.end());
}

std::size_t VerificationReport::count(Status status) const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.status == status ? 1 : 0;
  return n;
}

bool VerificationReport::ok(bool skips_are_errors) const {
  for (const auto& e : entries_) {
    if (e.status == Status::fail) return false;
    if (skips_are_errors && e.status == Status::skipped) return false;
  }
  return true;
}

std::vector<const CheckEntry*> VerificationReport::find(const std::string& law_prefix) const {
  std::vector<const CheckEntry*> out;
  for (const auto& e : entries_)
    if (e.law.compare(0, law_prefix.size(), law_prefix) == 0) out.push_back(&e);
  return out;
}

std::string VerificationReport::first_failure() const {
  for (const auto& e : entries_) {
    if (e.status != Status::fail) continue;
    std::string s = e.law + ":";
    for (const auto& w : e.witnesses) s += " " + w;
    if (!e.detail.empty()) s += " (" + e.detail + ")";
    return s;
  }
  return {};
}

LawTally::LawTally(VerificationReport& report, std::string law, std::string anchor,
                   std::size_t max_failures)
    : report_(report), law_(std::move(law)), anchor_(std::move(anchor)),
      max_failures_(max_failures) {}

LawTally::~LawTally() { finish(); }

void LawTally::failure(std::vector<std::string> witnesses, std::string detail) {
  ++failures_;
  if (pending_.size() >= max_failures_) return;
  CheckEntry e;
  e.law = law_;
  e.anchor = anchor_;
  e.status = Status::fail;
  e.witnesses = std::move(witnesses);
  if (e.witnesses.empty()) e.witnesses.push_back("<unnamed>");
  e.detail = std::move(detail);
  e.instances = 1;
  pending_.push_back(std::move(e));
}

void LawTally::finish() {
  if (finished_) return;
  finished_ = true;
  if (failures_ == 0) {
    report_.pass(law_, anchor_, instances_);
    return;
  }
  if (failures_ > pending_.size())
    pending_.back().detail += " [" + std::to_string(failures_ - pending_.size()) +
                              " further violations not listed]";
  for (auto& e : pending_) report_.add(std::move(e));
}

}  // namespace doctrina
