#include "sesscheck/proclang/typecheck.hpp"

#include <set>
#include <sstream>
#include <utility>

namespace sesscheck::proclang {

std::string to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::UnboundVar: return "unbound-var";
    case TypeErrorKind::LinearityViolation: return "linearity-violation";
    case TypeErrorKind::Mismatch: return "mismatch";
    case TypeErrorKind::ShadowedVar: return "shadowed-var";
  }
  return "unknown";
}

namespace {

using types::SessionType;
using types::TypeKind;
using types::TypeRef;

struct Checker {
  Context avail;
  std::set<std::string> consumed;
  std::vector<std::string> path;
  std::optional<TypeError> error;

  bool fail(TypeErrorKind kind, std::string message) {
    std::string joined;
    for (const auto& seg : path) {
      if (!joined.empty()) joined += '.';
      joined += seg;
    }
    error = TypeError{kind, std::move(message), std::move(joined)};
    return false;
  }

  // Consumes x from the context; reports reuse and unbound names apart.
  std::optional<TypeRef> take(const Symbol& s, const char* role) {
    if (s.is_chan())
      return fail(TypeErrorKind::UnboundVar,
                  std::string("channel literal ") + to_string(s) + " as " + role +
                      "; static checking covers variables only"),
             std::nullopt;
    const std::string& x = s.as_var();
    auto it = avail.find(x);
    if (it == avail.end()) {
      if (consumed.contains(x))
        return fail(TypeErrorKind::LinearityViolation, x + " is used more than once"),
               std::nullopt;
      return fail(TypeErrorKind::UnboundVar, x + " is not in scope"), std::nullopt;
    }
    TypeRef type = it->second;
    avail.erase(it);
    consumed.insert(x);
    return type;
  }

  // Introduces a binder. Rebinding a consumed name is fine (the old session
  // is gone); a live name is a shadow and rejected.
  bool bind(const std::string& x, TypeRef type) {
    if (avail.contains(x))
      return fail(TypeErrorKind::ShadowedVar, x + " already names a live channel");
    consumed.erase(x);
    avail.emplace(x, std::move(type));
    return true;
  }

  // Puts a just-consumed x back at its continuation type (the *On forms).
  void rebind(const std::string& x, TypeRef type) {
    consumed.erase(x);
    avail.insert_or_assign(x, std::move(type));
  }

  // After the binder's scope ends it must have been consumed.
  bool scope_exit(const std::string& x, const char* what) {
    auto it = avail.find(x);
    if (it == avail.end()) return true;
    return fail(TypeErrorKind::LinearityViolation,
                std::string(what) + " " + x + " is never used");
  }

  bool same_leftover(const Context& a, const Context& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [k, v] : a) {
      auto it = b.find(k);
      if (it == b.end() || !types::equal(v, it->second)) return false;
    }
    return true;
  }

  std::string context_names(const Context& c) {
    std::string out;
    for (const auto& [k, v] : c) {
      if (!out.empty()) out += ", ";
      out += k;
    }
    return out.empty() ? "(none)" : out;
  }

  bool expect_kind(const TypeRef& type, TypeKind kind, const char* construct) {
    if (type->kind() == kind) return true;
    return fail(TypeErrorKind::Mismatch, std::string(construct) +
                                             " does not provide type " +
                                             types::print_type(type));
  }

  bool check(const TermRef& t, const TypeRef& type, Derivation& deriv);

  bool child(const char* seg, const TermRef& t, const TypeRef& type, Derivation& deriv) {
    path.push_back(seg);
    deriv.children.emplace_back();
    bool ok = check(t, type, deriv.children.back());
    if (ok) path.pop_back();
    return ok;
  }
};

bool Checker::check(const TermRef& t, const TypeRef& type, Derivation& deriv) {
  deriv.type = types::print_type(type);
  switch (t->kind()) {
    case TermKind::Forward: {
      deriv.rule = "forward";
      auto got = take(t->subject(), "forward target");
      if (!got) return false;
      if (!types::equal(*got, type))
        return fail(TypeErrorKind::Mismatch,
                    "forwarding " + to_string(t->subject()) + ":" +
                        types::print_type(*got) + " cannot provide " +
                        types::print_type(type));
      return true;
    }

    case TermKind::Let: {
      deriv.rule = "let";
      const std::string& x = t->binder();
      if (!child("bound", t->first(), t->let_type(), deriv)) return false;
      if (!bind(x, t->let_type())) return false;
      if (!child("body", t->second(), type, deriv)) return false;
      return scope_exit(x, "let-bound");
    }

    case TermKind::SendClose:
      deriv.rule = "send-close";
      if (type->kind() != TypeKind::One)
        return fail(TypeErrorKind::Mismatch,
                    "send() provides 1, not " + types::print_type(type));
      return true;

    case TermKind::RecvClose: {
      deriv.rule = "recv-close";
      auto got = take(t->subject(), "close source");
      if (!got) return false;
      if ((*got)->kind() != TypeKind::One)
        return fail(TypeErrorKind::Mismatch,
                    to_string(t->subject()) + ":" + types::print_type(*got) +
                        " is not a channel of type 1");
      return child("cont", t->first(), type, deriv);
    }

    case TermKind::RecvChan: {
      deriv.rule = "recv-chan";
      if (!expect_kind(type, TypeKind::Lolli, "recv(x => ...)")) return false;
      const std::string& y = t->binder();
      if (!bind(y, type->left())) return false;
      if (!child("cont", t->first(), type->right(), deriv)) return false;
      return scope_exit(y, "received");
    }

    case TermKind::SendChanOn: {
      deriv.rule = "send-chan-on";
      auto fn = take(t->subject(), "function channel");
      if (!fn) return false;
      if ((*fn)->kind() != TypeKind::Lolli)
        return fail(TypeErrorKind::Mismatch,
                    to_string(t->subject()) + ":" + types::print_type(*fn) +
                        " cannot receive a channel");
      auto arg = take(t->payload(), "sent channel");
      if (!arg) return false;
      if (!types::equal(*arg, (*fn)->left()))
        return fail(TypeErrorKind::Mismatch,
                    "sent " + to_string(t->payload()) + ":" + types::print_type(*arg) +
                        " where " + types::print_type((*fn)->left()) + " is expected");
      rebind(t->subject().as_var(), (*fn)->right());
      return child("cont", t->first(), type, deriv);
    }

    case TermKind::SendChan: {
      deriv.rule = "send-chan";
      if (!expect_kind(type, TypeKind::Tensor, "send(x); ...")) return false;
      auto arg = take(t->payload(), "sent channel");
      if (!arg) return false;
      if (!types::equal(*arg, type->left()))
        return fail(TypeErrorKind::Mismatch,
                    "sent " + to_string(t->payload()) + ":" + types::print_type(*arg) +
                        " where " + types::print_type(type->left()) + " is expected");
      return child("cont", t->first(), type->right(), deriv);
    }

    case TermKind::RecvChanOn: {
      deriv.rule = "recv-chan-on";
      auto pair = take(t->subject(), "pair channel");
      if (!pair) return false;
      if ((*pair)->kind() != TypeKind::Tensor)
        return fail(TypeErrorKind::Mismatch,
                    to_string(t->subject()) + ":" + types::print_type(*pair) +
                        " will not send a channel");
      rebind(t->subject().as_var(), (*pair)->right());
      const std::string& y = t->binder();
      if (!bind(y, (*pair)->left())) return false;
      if (!child("cont", t->first(), type, deriv)) return false;
      return scope_exit(y, "received");
    }

    case TermKind::RecvCase: {
      deriv.rule = "recv-case";
      if (!expect_kind(type, TypeKind::With, "recv(pi1 => ... | pi2 => ...)"))
        return false;
      Checker snapshot = *this;  // branch from the same context
      if (!child("pi1", t->first(), type->left(), deriv)) return false;
      Context after_first = avail;
      std::set<std::string> consumed_first = consumed;
      avail = snapshot.avail;
      consumed = snapshot.consumed;
      if (!child("pi2", t->second(), type->right(), deriv)) return false;
      if (!same_leftover(after_first, avail))
        return fail(TypeErrorKind::LinearityViolation,
                    "branches leave different channels unused (pi1: " +
                        context_names(after_first) + "; pi2: " + context_names(avail) +
                        ")");
      consumed = std::move(consumed_first);
      return true;
    }

    case TermKind::SendSelOn: {
      deriv.rule = "send-sel-on";
      auto offer = take(t->subject(), "branching channel");
      if (!offer) return false;
      if ((*offer)->kind() != TypeKind::With)
        return fail(TypeErrorKind::Mismatch,
                    to_string(t->subject()) + ":" + types::print_type(*offer) +
                        " offers no branches to pick");
      rebind(t->subject().as_var(),
             t->sel() == kernel::Selector::pi1 ? (*offer)->left() : (*offer)->right());
      return child("cont", t->first(), type, deriv);
    }

    case TermKind::SendSel: {
      deriv.rule = "send-sel";
      if (!expect_kind(type, TypeKind::Plus, "send(pi1); ...")) return false;
      const TypeRef& branch =
          t->sel() == kernel::Selector::pi1 ? type->left() : type->right();
      return child("cont", t->first(), branch, deriv);
    }

    case TermKind::RecvCaseOn: {
      deriv.rule = "recv-case-on";
      auto sum = take(t->subject(), "selecting channel");
      if (!sum) return false;
      if ((*sum)->kind() != TypeKind::Plus)
        return fail(TypeErrorKind::Mismatch,
                    to_string(t->subject()) + ":" + types::print_type(*sum) +
                        " will not pick a branch");
      const std::string& x = t->subject().as_var();
      Context base_avail = avail;
      std::set<std::string> base_consumed = consumed;
      rebind(x, (*sum)->left());
      if (!child("pi1", t->first(), type, deriv)) return false;
      Context after_first = avail;
      std::set<std::string> consumed_first = consumed;
      avail = std::move(base_avail);
      consumed = std::move(base_consumed);
      rebind(x, (*sum)->right());
      if (!child("pi2", t->second(), type, deriv)) return false;
      if (!same_leftover(after_first, avail))
        return fail(TypeErrorKind::LinearityViolation,
                    "branches leave different channels unused (pi1: " +
                        context_names(after_first) + "; pi2: " + context_names(avail) +
                        ")");
      consumed = std::move(consumed_first);
      return true;
    }
  }
  return fail(TypeErrorKind::Mismatch, "unreachable term kind");
}

}  // namespace

CheckResult check_term(const Context& ctx, const TermRef& term, const TypeRef& type) {
  Checker c;
  c.avail = ctx;
  Derivation root;
  if (!c.check(term, type, root)) return {std::move(c.error), std::nullopt};
  if (!c.avail.empty()) {
    std::string names;
    for (const auto& [k, v] : c.avail) {
      if (!names.empty()) names += ", ";
      names += k + ":" + types::print_type(v);
    }
    return {TypeError{TypeErrorKind::LinearityViolation,
                      "context entries never used: " + names, ""},
            std::nullopt};
  }
  return {std::nullopt, std::move(root)};
}

}  // namespace sesscheck::proclang
