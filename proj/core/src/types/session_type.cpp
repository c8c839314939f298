#include "sesscheck/types/session_type.hpp"

#include <cctype>

namespace sesscheck::types {

SessionType::SessionType(TypeKind kind, TypeRef left, TypeRef right)
    : kind_(kind), left_(std::move(left)), right_(std::move(right)) {
  size_ = 1 + (left_ ? left_->size() : 0) + (right_ ? right_->size() : 0);
  has_lolli_ = kind_ == TypeKind::Lolli || (left_ && left_->has_lolli()) ||
               (right_ && right_->has_lolli());
}

TypeRef SessionType::one() {
  static const TypeRef unit(new SessionType(TypeKind::One, nullptr, nullptr));
  return unit;
}

TypeRef SessionType::tensor(TypeRef left, TypeRef right) {
  return TypeRef(new SessionType(TypeKind::Tensor, std::move(left), std::move(right)));
}
TypeRef SessionType::plus(TypeRef left, TypeRef right) {
  return TypeRef(new SessionType(TypeKind::Plus, std::move(left), std::move(right)));
}
TypeRef SessionType::with(TypeRef left, TypeRef right) {
  return TypeRef(new SessionType(TypeKind::With, std::move(left), std::move(right)));
}
TypeRef SessionType::lolli(TypeRef left, TypeRef right) {
  return TypeRef(new SessionType(TypeKind::Lolli, std::move(left), std::move(right)));
}

bool equal(const TypeRef& a, const TypeRef& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind() != b->kind()) return false;
  if (a->kind() == TypeKind::One) return true;
  return equal(a->left(), b->left()) && equal(a->right(), b->right());
}

namespace {

// Binding strength, loosest first: -o, then (+)/&, then (*), then atoms.
enum Level : int { kLolli = 0, kAdditive = 1, kTensor = 2, kAtom = 3 };

int level_of(const TypeRef& type) {
  switch (type->kind()) {
    case TypeKind::One: return kAtom;
    case TypeKind::Tensor: return kTensor;
    case TypeKind::Plus:
    case TypeKind::With: return kAdditive;
    case TypeKind::Lolli: return kLolli;
  }
  return kAtom;
}

void print_at(const TypeRef& type, int min_level, std::string& out) {
  bool parens = level_of(type) < min_level;
  if (parens) out += "(";
  switch (type->kind()) {
    case TypeKind::One:
      out += "1";
      break;
    case TypeKind::Tensor:
      // right-associative: the right operand may be another (*) chain
      print_at(type->left(), kAtom, out);
      out += " (*) ";
      print_at(type->right(), kTensor, out);
      break;
    case TypeKind::Plus:
    case TypeKind::With:
      // non-associative: both operands must bind tighter
      print_at(type->left(), kTensor, out);
      out += type->kind() == TypeKind::Plus ? " (+) " : " & ";
      print_at(type->right(), kTensor, out);
      break;
    case TypeKind::Lolli:
      print_at(type->left(), kAdditive, out);
      out += " -o ";
      print_at(type->right(), kLolli, out);
      break;
  }
  if (parens) out += ")";
}

struct Parser {
  std::string_view src;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eat(std::string_view token) {
    skip_space();
    if (src.substr(pos, token.size()) == token) {
      pos += token.size();
      return true;
    }
    return false;
  }

  bool peek(std::string_view token) {
    skip_space();
    return src.substr(pos, token.size()) == token;
  }

  [[noreturn]] void fail(const std::string& what) { throw TypeParseError(what, pos); }

  TypeRef parse_atom() {
    skip_space();
    if (eat("1")) return SessionType::one();
    if (eat("(")) {
      TypeRef inner = parse_lolli();
      if (!eat(")")) fail("expected ')'");
      return inner;
    }
    fail("expected '1' or '('");
  }

  TypeRef parse_tensor() {
    TypeRef left = parse_atom();
    if (eat("(*)")) return SessionType::tensor(std::move(left), parse_tensor());
    return left;
  }

  TypeRef parse_additive() {
    TypeRef left = parse_tensor();
    bool plus = false;
    skip_space();
    if (peek("(+)")) {
      eat("(+)");
      plus = true;
    } else if (peek("&")) {
      eat("&");
    } else {
      return left;
    }
    TypeRef right = parse_tensor();
    skip_space();
    if (peek("(+)") || peek("&"))
      fail("(+) and & do not associate; parenthesize the intended grouping");
    return plus ? SessionType::plus(std::move(left), std::move(right))
                : SessionType::with(std::move(left), std::move(right));
  }

  TypeRef parse_lolli() {
    TypeRef left = parse_additive();
    if (eat("-o")) return SessionType::lolli(std::move(left), parse_lolli());
    return left;
  }
};

}  // namespace

std::string print_type(const TypeRef& type) {
  std::string out;
  print_at(type, kLolli, out);
  return out;
}

TypeRef parse_type(std::string_view source) {
  Parser parser{source};
  TypeRef type = parser.parse_lolli();
  parser.skip_space();
  if (parser.pos != source.size()) parser.fail("trailing input after type");
  return type;
}

}  // namespace sesscheck::types
