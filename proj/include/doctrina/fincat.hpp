#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "doctrina/report.hpp"

namespace doctrina {

struct Product {
  int object = -1;
  int pr1 = -1;
  int pr2 = -1;
};

struct DeclaredProduct {
  int left = -1;
  int right = -1;
  Product product;
};

class CategoryBuilder;

/// A finite category with a declared partial table of binary products.
///
/// Objects and morphisms are dense integer ids. Explicit categories store a
/// composition table; derived ones (completions) compute composites through a
/// callback, so the table is never materialised.
class FragmentCategory {
 public:
  FragmentCategory(const FragmentCategory&) = delete;
  FragmentCategory& operator=(const FragmentCategory&) = delete;

  int object_count() const { return static_cast<int>(object_names_.size()); }
  int morphism_count() const { return static_cast<int>(src_.size()); }
  const std::string& object_name(int a) const;
  std::string morphism_name(int m) const;
  std::optional<int> find_object(const std::string& name) const;
  std::optional<int> find_morphism(const std::string& name) const;

  int src(int m) const { return src_.at(static_cast<std::size_t>(m)); }
  int dst(int m) const { return dst_.at(static_cast<std::size_t>(m)); }
  int identity(int a) const { return identity_.at(static_cast<std::size_t>(a)); }
  bool is_identity(int m) const { return identity(src(m)) == m; }

  /// Morphisms a -> b in ascending id order.
  const std::vector<int>& hom(int a, int b) const;
  const std::vector<int>& outgoing(int a) const { return out_.at(static_cast<std::size_t>(a)); }
  const std::vector<int>& incoming(int b) const { return in_.at(static_cast<std::size_t>(b)); }

  /// g after f; throws domain-mismatch when dst(f) != src(g) and
  /// fragment-incomplete when the table has no entry.
  int compose(int g, int f) const;
  /// -1 when not composable or missing.
  int try_compose(int g, int f) const;

  std::optional<Product> product(int a, int b) const;
  const std::vector<DeclaredProduct>& products() const { return product_list_; }
  std::optional<int> terminal() const { return terminal_; }

  /// The unique h: X -> A x B with pr1 h = f, pr2 h = g.
  int pairing(int f, int g) const;
  /// f x g = <f pr1, g pr2>.
  int cross(int f, int g) const;
  /// <id, id>.
  int diagonal(int a) const { return pairing(identity(a), identity(a)); }

  /// Explicit composition entries (g, f, g f); empty for derived categories.
  std::vector<std::array<int, 3>> composition_table() const;
  bool is_explicit() const { return !composer_; }

 private:
  friend class CategoryBuilder;
  FragmentCategory() = default;
  void build_pairing_index() const;

  std::vector<std::string> object_names_;
  std::vector<std::string> morphism_names_;  // empty when a namer is used
  std::function<std::string(int)> namer_;
  std::vector<int> src_, dst_, identity_;
  std::vector<std::vector<int>> out_, in_;
  std::unordered_map<std::uint64_t, std::vector<int>> hom_;
  std::unordered_map<std::uint64_t, int> table_;
  std::function<int(int, int)> composer_;
  std::unordered_map<std::uint64_t, Product> products_;
  std::vector<DeclaredProduct> product_list_;
  std::optional<int> terminal_;

  mutable std::once_flag pairing_once_;
  mutable std::unordered_map<std::uint64_t, int> pairing_index_;  // -2 = ambiguous
  mutable std::once_flag names_once_;
  mutable std::unordered_map<std::string, int> object_index_, morphism_index_;
};

using CategoryPtr = std::shared_ptr<const FragmentCategory>;

class CategoryBuilder {
 public:
  CategoryBuilder();
  int add_object(std::string name);
  int add_morphism(std::string name, int src, int dst);
  /// Unnamed morphism; names then come from set_namer.
  int add_morphism(int src, int dst);
  void set_identity(int object, int morphism);
  void set_composite(int g, int f, int gf);
  void declare_product(int a, int b, Product p);
  void set_terminal(int t);
  void set_composer(std::function<int(int, int)> composer);
  void set_namer(std::function<std::string(int)> namer);
  int object_count() const;
  int morphism_count() const;
  CategoryPtr build();

 private:
  std::shared_ptr<FragmentCategory> c_;
};

struct Functor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<int> objects;
  std::vector<int> morphisms;

  int ob(int a) const { return objects.at(static_cast<std::size_t>(a)); }
  int mor(int m) const { return morphisms.at(static_cast<std::size_t>(m)); }
  bool operator==(const Functor& o) const {
    return source == o.source && target == o.target && objects == o.objects &&
           morphisms == o.morphisms;
  }
};

/// Components indexed by source objects, between functors with common ends.
struct NatTransf {
  Functor from;
  Functor to;
  std::vector<int> components;
};

Functor identity_functor(const CategoryPtr& c);
/// g after f.
Functor compose(const Functor& g, const Functor& f);

/// Comparison <F pr1, F pr2>: F(A x B) -> FA x FB.
int product_comparison(const Functor& f, int a, int b);
/// Two-sided inverse of the comparison, found by search.
std::optional<int> product_comparison_inverse(const Functor& f, int a, int b);
/// Two-sided inverse of m, if any.
std::optional<int> find_inverse(const FragmentCategory& c, int m);

struct CategoryCheckOptions {
  /// Upper bound on associativity triples scanned; beyond it the law is skipped.
  std::size_t max_triples = 20'000'000;
};

void verify_category(const FragmentCategory& c, VerificationReport& report,
                     const CategoryCheckOptions& opt = {});
void verify_product_fragment(const FragmentCategory& c, VerificationReport& report);
void verify_functor(const Functor& f, VerificationReport& report);
void verify_nat(const NatTransf& t, VerificationReport& report);

inline std::uint64_t pack(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

}  // namespace doctrina
