#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sesscheck/proclang/term.hpp"

namespace sesscheck::proclang {

// What the term may use, one session each.
using Context = std::map<std::string, types::TypeRef>;

enum class TypeErrorKind {
  UnboundVar,          // name never bound (or a raw channel literal)
  LinearityViolation,  // used twice, never used, or branches disagree
  Mismatch,            // construct does not fit the type at hand
  ShadowedVar,         // binder reuses a name still in scope
};

std::string to_string(TypeErrorKind kind);

struct TypeError {
  TypeErrorKind kind;
  std::string message;
  std::string path;  // dotted subterm path from the root, "" for the root
};

// One node per rule application, child order following the term.
struct Derivation {
  std::string rule;
  std::string type;  // printed type the subterm was checked against
  std::vector<Derivation> children;
};

struct CheckResult {
  std::optional<TypeError> error;
  std::optional<Derivation> derivation;  // present on success

  bool ok() const { return !error.has_value(); }
};

// Linear check of `term` against `type`: every context entry must be used
// exactly once, branches must consume identically, and binders may not
// shadow live names.
CheckResult check_term(const Context& ctx, const TermRef& term, const types::TypeRef& type);

}  // namespace sesscheck::proclang
