#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "sesscheck/errors.hpp"

namespace sesscheck::types {

enum class TypeKind { One, Tensor, Plus, With, Lolli };

class SessionType;
using TypeRef = std::shared_ptr<const SessionType>;

// Immutable binary type tree over the connectives 1, (*), (+), &, -o.
class SessionType {
 public:
  TypeKind kind() const { return kind_; }
  const TypeRef& left() const { return left_; }
  const TypeRef& right() const { return right_; }

  int size() const { return size_; }  // node count
  bool has_lolli() const { return has_lolli_; }

  static TypeRef one();
  static TypeRef tensor(TypeRef left, TypeRef right);
  static TypeRef plus(TypeRef left, TypeRef right);
  static TypeRef with(TypeRef left, TypeRef right);
  static TypeRef lolli(TypeRef left, TypeRef right);

 private:
  SessionType(TypeKind kind, TypeRef left, TypeRef right);

  TypeKind kind_;
  TypeRef left_;
  TypeRef right_;
  int size_;
  bool has_lolli_;
};

bool equal(const TypeRef& a, const TypeRef& b);

// Minimal-parenthesis form: -o is right-associative and binds loosest, (*)
// binds tighter than (+) and &, and (+)/& are non-associative (mixing or
// chaining them requires parentheses). print and parse are inverse on the
// types this grammar denotes.
std::string print_type(const TypeRef& type);

struct TypeParseError : Error {
  TypeParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position(position) {}
  std::size_t position;
};

TypeRef parse_type(std::string_view source);  // throws TypeParseError

}  // namespace sesscheck::types
