#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sesscheck/errors.hpp"
#include "sesscheck/kernel/action.hpp"
#include "sesscheck/kernel/channel.hpp"
#include "sesscheck/kernel/language.hpp"
#include "sesscheck/types/session_type.hpp"

namespace sesscheck::proclang {

// A name in term position: a source-level variable, or a runtime channel
// plugged in by substitution. Channels print as #N.
class Symbol {
 public:
  static Symbol var(std::string name) { return Symbol(std::move(name)); }
  static Symbol chan(kernel::ChannelName c) { return Symbol(c); }

  bool is_var() const { return std::holds_alternative<std::string>(rep_); }
  bool is_chan() const { return std::holds_alternative<kernel::ChannelName>(rep_); }
  const std::string& as_var() const { return std::get<std::string>(rep_); }
  kernel::ChannelName as_chan() const { return std::get<kernel::ChannelName>(rep_); }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
    if (a.rep_.index() != b.rep_.index())
      return a.rep_.index() <=> b.rep_.index();
    if (a.is_var()) return a.as_var() <=> b.as_var();
    return a.as_chan() <=> b.as_chan();
  }

 private:
  explicit Symbol(std::string name) : rep_(std::move(name)) {}
  explicit Symbol(kernel::ChannelName c) : rep_(c) {}

  std::variant<std::string, kernel::ChannelName> rep_;
};

std::string to_string(const Symbol& s);

// The twelve process constructs. "own" means acting on the channel the
// process itself provides; the *On variants act on another channel.
enum class TermKind {
  Forward,     // fwd(<- x)
  Let,         // let x:A <- M1; M2
  SendClose,   // send()                 close own channel
  RecvClose,   // recv_x(); M            wait for close on x
  RecvChan,    // recv(y => M)           receive a channel on own
  SendChanOn,  // send_x(y); M           send channel y on x
  SendChan,    // send(y); M             send channel y on own
  RecvChanOn,  // recv_x(y => M)         receive a channel on x
  RecvCase,    // recv(pi1 => M1 | pi2 => M2)     offer both branches on own
  SendSelOn,   // send_x(pi1); M         pick a branch on x
  SendSel,     // send(pi1); M           pick a branch on own
  RecvCaseOn,  // recv_x(pi1 => M1 | pi2 => M2)   offer both branches on x
};

class Term;
using TermRef = std::shared_ptr<const Term>;

// Immutable term tree. Binders are always variables; subjects and payloads
// may be channels once substitution has run.
class Term {
 public:
  TermKind kind() const { return kind_; }

  static TermRef forward(Symbol x);
  static TermRef let(std::string x, types::TypeRef type, TermRef bound, TermRef body);
  static TermRef send_close();
  static TermRef recv_close(Symbol x, TermRef k);
  static TermRef recv_chan(std::string y, TermRef k);
  static TermRef send_chan_on(Symbol x, Symbol y, TermRef k);
  static TermRef send_chan(Symbol y, TermRef k);
  static TermRef recv_chan_on(Symbol x, std::string y, TermRef k);
  static TermRef recv_case(TermRef k1, TermRef k2);
  static TermRef send_sel_on(Symbol x, kernel::Selector sel, TermRef k);
  static TermRef send_sel(kernel::Selector sel, TermRef k);
  static TermRef recv_case_on(Symbol x, TermRef k1, TermRef k2);

  // Accessors assert the construct actually has the part.
  const Symbol& subject() const;            // Forward, RecvClose, *On forms
  const std::string& binder() const;        // Let, RecvChan, RecvChanOn
  const types::TypeRef& let_type() const;   // Let
  const Symbol& payload() const;            // SendChanOn, SendChan
  kernel::Selector sel() const;             // SendSelOn, SendSel
  const TermRef& first() const;             // bound term, continuation, or pi1 branch
  const TermRef& second() const;            // let body or pi2 branch

 protected:
  Term(TermKind kind, std::optional<Symbol> subject, std::string binder,
       types::TypeRef type, std::optional<Symbol> payload, kernel::Selector sel,
       TermRef first, TermRef second);

 private:
  TermKind kind_;
  std::optional<Symbol> subject_;
  std::string binder_;
  types::TypeRef type_;
  std::optional<Symbol> payload_;
  kernel::Selector sel_ = kernel::Selector::pi1;
  TermRef first_;
  TermRef second_;
};

bool equal(const TermRef& a, const TermRef& b);

// Surface form; print and parse are inverse. The grammar is prefix with
// fixed arity, so continuations after ';' need no parentheses.
std::string print_term(const TermRef& term);

struct TermParseError : Error {
  TermParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position(position) {}
  std::size_t position;
};

TermRef parse_term(std::string_view source);  // throws TermParseError

std::set<std::string> free_vars(const TermRef& term);
void collect_channels(const TermRef& term, std::set<kernel::ChannelName>& out);
TermRef rename_channels(const TermRef& term, const kernel::Renaming& rho);

}  // namespace sesscheck::proclang
