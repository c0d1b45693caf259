#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "doctrina/completions.hpp"
#include "doctrina/error.hpp"

namespace doctrina::detail {

inline std::uint64_t object_key(int a, int tag) {
  return pack(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(tag + 1));
}

inline std::uint64_t morphism_key(int f, int s, int t) {
  return (static_cast<std::uint64_t>(f) << 40) | (static_cast<std::uint64_t>(s) << 20) |
         static_cast<std::uint64_t>(t);
}

/// Shared scaffolding: objects and morphisms over generators, size guards,
/// and a composer that composes in the base and looks the result up.
class Assembly {
 public:
  Assembly(CompletionKind kind, DoctrinePtr input, const CompletionOptions& opt);

  int add_object(int a, int tag, std::string name);
  int add_morphism(int f, int s, int t);
  int object_of(int a, int tag) const;
  int morphism_of(int f, int s, int t) const;
  int object_count() const { return static_cast<int>(index_->object_base.size()); }

  void declare_product(int a, int b, Product p) { builder_.declare_product(a, b, p); }
  void set_terminal(int t) { builder_.set_terminal(t); }
  void guard_fibers(std::size_t total) const;

  /// Builds the output base. Morphisms over identities with equal ends are
  /// the identities; composites are found over the base composite.
  CategoryPtr build_base();

  CompletionIndex& index() { return *index_; }
  Completion finish(DoctrinePtr output, DoctrineMap unit);

 private:
  CompletionKind kind_;
  DoctrinePtr input_;
  const CompletionOptions& opt_;
  std::shared_ptr<CompletionIndex> index_;
  CategoryBuilder builder_;
};

std::string pair_name(const std::string& a, const std::string& b);
/// validates the precondition shared by all three constructions
void require_elementary(const Doctrine& P, const CompletionOptions& opt);

}  // namespace doctrina::detail
