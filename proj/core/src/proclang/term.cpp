#include "sesscheck/proclang/term.hpp"

#include <utility>

namespace sesscheck::proclang {

std::string to_string(const Symbol& s) {
  if (s.is_var()) return s.as_var();
  return "#" + std::to_string(s.as_chan().id);
}

Term::Term(TermKind kind, std::optional<Symbol> subject, std::string binder,
           types::TypeRef type, std::optional<Symbol> payload,
           kernel::Selector sel, TermRef first, TermRef second)
    : kind_(kind),
      subject_(std::move(subject)),
      binder_(std::move(binder)),
      type_(std::move(type)),
      payload_(std::move(payload)),
      sel_(sel),
      first_(std::move(first)),
      second_(std::move(second)) {}

namespace {
TermRef make(TermKind kind, std::optional<Symbol> subject, std::string binder,
             types::TypeRef type, std::optional<Symbol> payload,
             kernel::Selector sel, TermRef first, TermRef second) {
  struct Access : Term {
    Access(TermKind k, std::optional<Symbol> su, std::string b, types::TypeRef t,
           std::optional<Symbol> p, kernel::Selector se, TermRef f, TermRef s2)
        : Term(k, std::move(su), std::move(b), std::move(t), std::move(p), se,
               std::move(f), std::move(s2)) {}
  };
  return std::make_shared<const Access>(kind, std::move(subject), std::move(binder),
                                        std::move(type), std::move(payload), sel,
                                        std::move(first), std::move(second));
}

void require(bool ok, const char* what) {
  if (!ok) throw PreconditionError(what);
}
}  // namespace

TermRef Term::forward(Symbol x) {
  return make(TermKind::Forward, std::move(x), "", nullptr, std::nullopt,
              kernel::Selector::pi1, nullptr, nullptr);
}

TermRef Term::let(std::string x, types::TypeRef type, TermRef bound, TermRef body) {
  require(type && bound && body, "let needs a type, a bound term, and a body");
  return make(TermKind::Let, std::nullopt, std::move(x), std::move(type),
              std::nullopt, kernel::Selector::pi1, std::move(bound), std::move(body));
}

TermRef Term::send_close() {
  return make(TermKind::SendClose, std::nullopt, "", nullptr, std::nullopt,
              kernel::Selector::pi1, nullptr, nullptr);
}

TermRef Term::recv_close(Symbol x, TermRef k) {
  require(k != nullptr, "recv_close needs a continuation");
  return make(TermKind::RecvClose, std::move(x), "", nullptr, std::nullopt,
              kernel::Selector::pi1, std::move(k), nullptr);
}

TermRef Term::recv_chan(std::string y, TermRef k) {
  require(k != nullptr, "recv_chan needs a continuation");
  return make(TermKind::RecvChan, std::nullopt, std::move(y), nullptr,
              std::nullopt, kernel::Selector::pi1, std::move(k), nullptr);
}

TermRef Term::send_chan_on(Symbol x, Symbol y, TermRef k) {
  require(k != nullptr, "send_chan_on needs a continuation");
  return make(TermKind::SendChanOn, std::move(x), "", nullptr, std::move(y),
              kernel::Selector::pi1, std::move(k), nullptr);
}

TermRef Term::send_chan(Symbol y, TermRef k) {
  require(k != nullptr, "send_chan needs a continuation");
  return make(TermKind::SendChan, std::nullopt, "", nullptr, std::move(y),
              kernel::Selector::pi1, std::move(k), nullptr);
}

TermRef Term::recv_chan_on(Symbol x, std::string y, TermRef k) {
  require(k != nullptr, "recv_chan_on needs a continuation");
  return make(TermKind::RecvChanOn, std::move(x), std::move(y), nullptr,
              std::nullopt, kernel::Selector::pi1, std::move(k), nullptr);
}

TermRef Term::recv_case(TermRef k1, TermRef k2) {
  require(k1 && k2, "recv_case needs both branches");
  return make(TermKind::RecvCase, std::nullopt, "", nullptr, std::nullopt,
              kernel::Selector::pi1, std::move(k1), std::move(k2));
}

TermRef Term::send_sel_on(Symbol x, kernel::Selector sel, TermRef k) {
  require(k != nullptr, "send_sel_on needs a continuation");
  return make(TermKind::SendSelOn, std::move(x), "", nullptr, std::nullopt, sel,
              std::move(k), nullptr);
}

TermRef Term::send_sel(kernel::Selector sel, TermRef k) {
  require(k != nullptr, "send_sel needs a continuation");
  return make(TermKind::SendSel, std::nullopt, "", nullptr, std::nullopt, sel,
              std::move(k), nullptr);
}

TermRef Term::recv_case_on(Symbol x, TermRef k1, TermRef k2) {
  require(k1 && k2, "recv_case_on needs both branches");
  return make(TermKind::RecvCaseOn, std::move(x), "", nullptr, std::nullopt,
              kernel::Selector::pi1, std::move(k1), std::move(k2));
}

const Symbol& Term::subject() const {
  require(subject_.has_value(), "construct has no subject channel");
  return *subject_;
}

const std::string& Term::binder() const {
  require(kind_ == TermKind::Let || kind_ == TermKind::RecvChan ||
              kind_ == TermKind::RecvChanOn,
          "construct has no binder");
  return binder_;
}

const types::TypeRef& Term::let_type() const {
  require(kind_ == TermKind::Let, "only let carries a type annotation");
  return type_;
}

const Symbol& Term::payload() const {
  require(payload_.has_value(), "construct sends no channel");
  return *payload_;
}

kernel::Selector Term::sel() const {
  require(kind_ == TermKind::SendSelOn || kind_ == TermKind::SendSel,
          "construct sends no selector");
  return sel_;
}

const TermRef& Term::first() const {
  require(first_ != nullptr, "construct has no continuation");
  return first_;
}

const TermRef& Term::second() const {
  require(second_ != nullptr, "construct has no second part");
  return second_;
}

bool equal(const TermRef& a, const TermRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case TermKind::Forward:
      return a->subject() == b->subject();
    case TermKind::Let:
      return a->binder() == b->binder() &&
             types::equal(a->let_type(), b->let_type()) &&
             equal(a->first(), b->first()) && equal(a->second(), b->second());
    case TermKind::SendClose:
      return true;
    case TermKind::RecvClose:
      return a->subject() == b->subject() && equal(a->first(), b->first());
    case TermKind::RecvChan:
      return a->binder() == b->binder() && equal(a->first(), b->first());
    case TermKind::SendChanOn:
      return a->subject() == b->subject() && a->payload() == b->payload() &&
             equal(a->first(), b->first());
    case TermKind::SendChan:
      return a->payload() == b->payload() && equal(a->first(), b->first());
    case TermKind::RecvChanOn:
      return a->subject() == b->subject() && a->binder() == b->binder() &&
             equal(a->first(), b->first());
    case TermKind::RecvCase:
      return equal(a->first(), b->first()) && equal(a->second(), b->second());
    case TermKind::SendSelOn:
      return a->subject() == b->subject() && a->sel() == b->sel() &&
             equal(a->first(), b->first());
    case TermKind::SendSel:
      return a->sel() == b->sel() && equal(a->first(), b->first());
    case TermKind::RecvCaseOn:
      return a->subject() == b->subject() && equal(a->first(), b->first()) &&
             equal(a->second(), b->second());
  }
  return false;
}

namespace {
void print_into(const TermRef& t, std::string& out) {
  switch (t->kind()) {
    case TermKind::Forward:
      out += "fwd(<- " + to_string(t->subject()) + ")";
      return;
    case TermKind::Let:
      out += "let " + t->binder() + ":" + types::print_type(t->let_type()) + " <- ";
      print_into(t->first(), out);
      out += "; ";
      print_into(t->second(), out);
      return;
    case TermKind::SendClose:
      out += "send()";
      return;
    case TermKind::RecvClose:
      out += "recv_" + to_string(t->subject()) + "(); ";
      print_into(t->first(), out);
      return;
    case TermKind::RecvChan:
      out += "recv(" + t->binder() + " => ";
      print_into(t->first(), out);
      out += ")";
      return;
    case TermKind::SendChanOn:
      out += "send_" + to_string(t->subject()) + "(" + to_string(t->payload()) + "); ";
      print_into(t->first(), out);
      return;
    case TermKind::SendChan:
      out += "send(" + to_string(t->payload()) + "); ";
      print_into(t->first(), out);
      return;
    case TermKind::RecvChanOn:
      out += "recv_" + to_string(t->subject()) + "(" + t->binder() + " => ";
      print_into(t->first(), out);
      out += ")";
      return;
    case TermKind::RecvCase:
      out += "recv(pi1 => ";
      print_into(t->first(), out);
      out += " | pi2 => ";
      print_into(t->second(), out);
      out += ")";
      return;
    case TermKind::SendSelOn:
      out += "send_" + to_string(t->subject()) + "(" + kernel::to_string(t->sel()) + "); ";
      print_into(t->first(), out);
      return;
    case TermKind::SendSel:
      out += "send(" + kernel::to_string(t->sel()) + "); ";
      print_into(t->first(), out);
      return;
    case TermKind::RecvCaseOn:
      out += "recv_" + to_string(t->subject()) + "(pi1 => ";
      print_into(t->first(), out);
      out += " | pi2 => ";
      print_into(t->second(), out);
      out += ")";
      return;
  }
}
}  // namespace

std::string print_term(const TermRef& term) {
  require(term != nullptr, "cannot print a null term");
  std::string out;
  print_into(term, out);
  return out;
}

namespace {
void free_vars_into(const TermRef& t, std::set<std::string>& bound,
                    std::set<std::string>& out) {
  auto sym = [&](const Symbol& s) {
    if (s.is_var() && !bound.contains(s.as_var())) out.insert(s.as_var());
  };
  // Descends under a binder; restores the shadowed state afterwards so
  // sibling subtrees see the original scope.
  auto under = [&](const std::string& b, const TermRef& k) {
    auto [it, fresh] = bound.insert(b);
    free_vars_into(k, bound, out);
    if (fresh) bound.erase(it);
  };
  switch (t->kind()) {
    case TermKind::Forward:
      sym(t->subject());
      return;
    case TermKind::Let:
      free_vars_into(t->first(), bound, out);
      under(t->binder(), t->second());
      return;
    case TermKind::SendClose:
      return;
    case TermKind::RecvClose:
      sym(t->subject());
      free_vars_into(t->first(), bound, out);
      return;
    case TermKind::RecvChan:
      under(t->binder(), t->first());
      return;
    case TermKind::SendChanOn:
      sym(t->subject());
      sym(t->payload());
      free_vars_into(t->first(), bound, out);
      return;
    case TermKind::SendChan:
      sym(t->payload());
      free_vars_into(t->first(), bound, out);
      return;
    case TermKind::RecvChanOn:
      sym(t->subject());
      under(t->binder(), t->first());
      return;
    case TermKind::RecvCase:
      free_vars_into(t->first(), bound, out);
      free_vars_into(t->second(), bound, out);
      return;
    case TermKind::SendSelOn:
      sym(t->subject());
      free_vars_into(t->first(), bound, out);
      return;
    case TermKind::SendSel:
      free_vars_into(t->first(), bound, out);
      return;
    case TermKind::RecvCaseOn:
      sym(t->subject());
      free_vars_into(t->first(), bound, out);
      free_vars_into(t->second(), bound, out);
      return;
  }
}
}  // namespace

std::set<std::string> free_vars(const TermRef& term) {
  std::set<std::string> bound, out;
  free_vars_into(term, bound, out);
  return out;
}

void collect_channels(const TermRef& term, std::set<kernel::ChannelName>& out) {
  if (!term) return;
  auto sym = [&](const Symbol& s) {
    if (s.is_chan()) out.insert(s.as_chan());
  };
  switch (term->kind()) {
    case TermKind::Forward:
      sym(term->subject());
      return;
    case TermKind::Let:
      collect_channels(term->first(), out);
      collect_channels(term->second(), out);
      return;
    case TermKind::SendClose:
      return;
    case TermKind::RecvClose:
    case TermKind::SendSelOn:
      sym(term->subject());
      collect_channels(term->first(), out);
      return;
    case TermKind::RecvChan:
    case TermKind::SendSel:
      collect_channels(term->first(), out);
      return;
    case TermKind::SendChanOn:
      sym(term->subject());
      sym(term->payload());
      collect_channels(term->first(), out);
      return;
    case TermKind::SendChan:
      sym(term->payload());
      collect_channels(term->first(), out);
      return;
    case TermKind::RecvChanOn:
      sym(term->subject());
      collect_channels(term->first(), out);
      return;
    case TermKind::RecvCase:
      collect_channels(term->first(), out);
      collect_channels(term->second(), out);
      return;
    case TermKind::RecvCaseOn:
      sym(term->subject());
      collect_channels(term->first(), out);
      collect_channels(term->second(), out);
      return;
  }
}

TermRef rename_channels(const TermRef& term, const kernel::Renaming& rho) {
  auto sym = [&](const Symbol& s) {
    return s.is_chan() ? Symbol::chan(rho(s.as_chan())) : s;
  };
  switch (term->kind()) {
    case TermKind::Forward:
      return Term::forward(sym(term->subject()));
    case TermKind::Let:
      return Term::let(term->binder(), term->let_type(),
                       rename_channels(term->first(), rho),
                       rename_channels(term->second(), rho));
    case TermKind::SendClose:
      return term;
    case TermKind::RecvClose:
      return Term::recv_close(sym(term->subject()),
                              rename_channels(term->first(), rho));
    case TermKind::RecvChan:
      return Term::recv_chan(term->binder(), rename_channels(term->first(), rho));
    case TermKind::SendChanOn:
      return Term::send_chan_on(sym(term->subject()), sym(term->payload()),
                                rename_channels(term->first(), rho));
    case TermKind::SendChan:
      return Term::send_chan(sym(term->payload()),
                             rename_channels(term->first(), rho));
    case TermKind::RecvChanOn:
      return Term::recv_chan_on(sym(term->subject()), term->binder(),
                                rename_channels(term->first(), rho));
    case TermKind::RecvCase:
      return Term::recv_case(rename_channels(term->first(), rho),
                             rename_channels(term->second(), rho));
    case TermKind::SendSelOn:
      return Term::send_sel_on(sym(term->subject()), term->sel(),
                               rename_channels(term->first(), rho));
    case TermKind::SendSel:
      return Term::send_sel(term->sel(), rename_channels(term->first(), rho));
    case TermKind::RecvCaseOn:
      return Term::recv_case_on(sym(term->subject()),
                                rename_channels(term->first(), rho),
                                rename_channels(term->second(), rho));
  }
  throw PreconditionError("unreachable term kind");
}

}  // namespace sesscheck::proclang
