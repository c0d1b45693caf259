#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "doctrina/doctrine.hpp"

namespace doctrina {

/// Format version written to and required from every document.
inline constexpr int document_version = 1;

struct LoadOptions {
  bool validate = true;
  CategoryCheckOptions category;
};

struct SaveOptions {
  /// Composable pairs beyond which a composition table is refused.
  std::size_t max_composites = 2'000'000;
};

/// Raised when a document parses but the value fails verification.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, VerificationReport report)
      : Error(ErrorCode::validation, what), report_(std::move(report)) {}
  const VerificationReport& report() const { return report_; }

 private:
  VerificationReport report_;
};

// Canonical text: sorted keys, two-space indent, trailing newline. Saving a
// loaded document reproduces it byte for byte.

std::string to_json(const FragmentCategory& c, const SaveOptions& opt = {});
std::string to_json(const Doctrine& P, const SaveOptions& opt = {});
std::string to_json(const DoctrineMap& f, const SaveOptions& opt = {});

CategoryPtr category_from_json(std::string_view text, const LoadOptions& opt = {});
DoctrinePtr doctrine_from_json(std::string_view text, const LoadOptions& opt = {});
DoctrineMap map_from_json(std::string_view text, const LoadOptions& opt = {});

using Loaded = std::variant<DoctrinePtr, CategoryPtr, DoctrineMap>;

/// Dispatches on the document's "kind".
Loaded load(const std::string& path, const LoadOptions& opt = {});
DoctrinePtr load_doctrine(const std::string& path, const LoadOptions& opt = {});

void save(const Doctrine& P, const std::string& path, const SaveOptions& opt = {});
void save(const FragmentCategory& c, const std::string& path, const SaveOptions& opt = {});
void save(const DoctrineMap& f, const std::string& path, const SaveOptions& opt = {});

enum class ReportFormat { json, text };

std::string report_to_json(const VerificationReport& r);
std::string report_to_text(const VerificationReport& r);
void emit_report(const VerificationReport& r, const std::string& path, ReportFormat format);

/// FNV-1a 64 of the bytes, as 16 hex digits.
std::string content_hash(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace doctrina
