#pragma once

#include <string>

#include "doctrina/doctrine.hpp"
#include "doctrina/error.hpp"

namespace testing_support {

inline int ob(const doctrina::Doctrine& P, const std::string& name) {
  auto a = P.base->find_object(name);
  if (!a) throw doctrina::Error(doctrina::ErrorCode::lookup, "test: object " + name);
  return *a;
}

inline int mor(const doctrina::Doctrine& P, const std::string& name) {
  auto m = P.base->find_morphism(name);
  if (!m) throw doctrina::Error(doctrina::ErrorCode::lookup, "test: morphism " + name);
  return *m;
}

inline int el(const doctrina::Doctrine& P, const std::string& object, const std::string& element) {
  return P.fiber(ob(P, object)).index_of(element);
}

inline bool has_witnesses(const doctrina::VerificationReport& r, const std::string& law,
                          const std::vector<std::string>& suffix) {
  for (const auto* e : r.find(law)) {
    if (e->status != doctrina::Status::fail || e->witnesses.size() < suffix.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < suffix.size(); ++i)
      match = match && e->witnesses[e->witnesses.size() - suffix.size() + i] == suffix[i];
    if (match) return true;
  }
  return false;
}

/// Every failing entry carries at least one witness, and there is one.
inline bool has_witnesses(const doctrina::VerificationReport& r) {
  bool any = false;
  for (const auto& e : r.entries()) {
    if (e.status != doctrina::Status::fail) continue;
    if (e.witnesses.empty() || e.witnesses.front().empty()) return false;
    any = true;
  }
  return any;
}

}  // namespace testing_support
