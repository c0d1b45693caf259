#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace doctrina {

enum class Status { pass, fail, skipped };

const char* to_string(Status status);

/// One line of a verification report. A `pass` entry summarises a whole law
/// family (with the number of instances scanned); `fail` entries are emitted
/// per violated instance and always carry witnesses; `skipped` entries carry
/// the reason the fragment could not express the instance.
struct CheckEntry {
  std::string law;
  std::string anchor;
  Status status = Status::pass;
  std::vector<std::string> witnesses;
  std::string detail;
  std::size_t instances = 0;
};

class VerificationReport {
 public:
  void add(CheckEntry entry) { entries_.push_back(std::move(entry)); }
  void pass(std::string law, std::string anchor, std::size_t instances);
  void fail(std::string law, std::string anchor, std::vector<std::string> witnesses,
            std::string detail = {});
  void skip(std::string law, std::string anchor, std::string reason);
  void merge(const VerificationReport& other);
  /// Like merge, but passing entries of one law are summed into a single entry.
  void merge_summed(const VerificationReport& other);

  const std::vector<CheckEntry>& entries() const { return entries_; }

  std::size_t count(Status status) const;
  std::size_t failures() const { return count(Status::fail); }
  std::size_t skips() const { return count(Status::skipped); }

  /// True iff no entry failed; with `skips_are_errors`, skipped entries also count.
  bool ok(bool skips_are_errors = false) const;

  /// Entries of a given law (prefix match, e.g. "elementary.").
  std::vector<const CheckEntry*> find(const std::string& law_prefix) const;

  /// First failing entry's witnesses joined, or empty.
  std::string first_failure() const;

 private:
  std::vector<CheckEntry> entries_;
};

/// Accumulates instances of one law and writes a single pass entry or the
/// collected fail entries (capped) when finished.
class LawTally {
 public:
  LawTally(VerificationReport& report, std::string law, std::string anchor,
           std::size_t max_failures = 16);
  LawTally(const LawTally&) = delete;
  LawTally& operator=(const LawTally&) = delete;
  ~LawTally();

  void instance() { ++instances_; }
  void failure(std::vector<std::string> witnesses, std::string detail = {});
  void check(bool holds, std::vector<std::string> witnesses, std::string detail = {}) {
    ++instances_;
    if (!holds) failure(std::move(witnesses), std::move(detail));
  }
  bool failed() const { return failures_ > 0; }
  void finish();

 private:
  VerificationReport& report_;
  std::string law_;
  std::string anchor_;
  std::size_t max_failures_;
  std::size_t instances_ = 0;
  std::size_t failures_ = 0;
  std::vector<CheckEntry> pending_;
  bool finished_ = false;
};

}  // namespace doctrina
