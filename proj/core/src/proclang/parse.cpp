#include <cctype>
#include <string>
#include <string_view>

#include "sesscheck/proclang/term.hpp"

namespace sesscheck::proclang {
namespace {

bool reserved(std::string_view w) {
  return w == "let" || w == "fwd" || w == "send" || w == "recv" ||
         w == "pi1" || w == "pi2" || w == "send_" || w == "recv_";
}

struct Parser {
  std::string_view src;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw TermParseError(what, pos);
  }

  void skip_space() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  char peek() {
    skip_space();
    return pos < src.size() ? src[pos] : '\0';
  }

  void eat(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  void eat2(const char* two) {
    skip_space();
    if (src.substr(pos, 2) != two) fail(std::string("expected '") + two + "'");
    pos += 2;
  }

  static bool word_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string word() {
    skip_space();
    if (pos >= src.size() || !word_start(src[pos])) return {};
    std::size_t start = pos;
    while (pos < src.size() && word_char(src[pos])) ++pos;
    return std::string(src.substr(start, pos - start));
  }

  kernel::ChannelName channel_literal() {
    // caller saw '#'
    ++pos;
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      fail("expected digits after '#'");
    std::uint64_t id = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
      id = id * 10 + static_cast<std::uint64_t>(src[pos++] - '0');
    return kernel::ChannelName{id};
  }

  Symbol symbol() {
    if (peek() == '#') return Symbol::chan(channel_literal());
    std::string w = word();
    if (w.empty()) fail("expected a channel name");
    if (reserved(w)) fail("'" + w + "' is reserved");
    return Symbol::var(std::move(w));
  }

  std::string binder_name() {
    std::string w = word();
    if (w.empty()) fail("expected a variable to bind");
    if (reserved(w)) fail("'" + w + "' is reserved");
    return w;
  }

  // Head subject after "send_"/"recv_": the identifier tail, or a channel
  // literal when the head word stopped at '#'.
  Symbol head_subject(const std::string& head) {
    std::string tail = head.substr(5);
    if (!tail.empty()) {
      if (reserved(tail)) fail("'" + tail + "' is reserved");
      return Symbol::var(std::move(tail));
    }
    if (pos < src.size() && src[pos] == '#') return Symbol::chan(channel_literal());
    fail("expected a channel after '" + head + "'");
  }

  types::TypeRef annotation() {
    // Types never contain '<', so the annotation ends at the next "<-".
    std::size_t arrow = src.find("<-", pos);
    if (arrow == std::string_view::npos) fail("let annotation needs '<-'");
    std::string_view text = src.substr(pos, arrow - pos);
    types::TypeRef type;
    try {
      type = types::parse_type(text);
    } catch (const types::TypeParseError& e) {
      throw TermParseError("invalid let type annotation", pos + e.position);
    }
    pos = arrow + 2;
    return type;
  }

  kernel::Selector selector_word(const std::string& w) {
    if (w == "pi1") return kernel::Selector::pi1;
    if (w == "pi2") return kernel::Selector::pi2;
    fail("expected pi1 or pi2");
  }

  TermRef cases(const Symbol* subject) {
    // caller consumed "(pi1"; parses "=> M | pi2 => M)"
    eat2("=>");
    TermRef k1 = term();
    eat('|');
    std::string w = word();
    if (w != "pi2") fail("second branch must be pi2");
    eat2("=>");
    TermRef k2 = term();
    eat(')');
    return subject ? Term::recv_case_on(*subject, k1, k2) : Term::recv_case(k1, k2);
  }

  TermRef term() {
    skip_space();
    std::size_t head_at = pos;
    std::string w = word();
    if (w.empty()) fail("expected a term");

    if (w == "fwd") {
      eat('(');
      eat2("<-");
      Symbol x = symbol();
      eat(')');
      return Term::forward(std::move(x));
    }

    if (w == "let") {
      std::string x = binder_name();
      eat(':');
      types::TypeRef type = annotation();
      TermRef bound = term();
      eat(';');
      TermRef body = term();
      return Term::let(std::move(x), std::move(type), bound, body);
    }

    if (w == "send") {
      eat('(');
      if (peek() == ')') {
        ++pos;
        return Term::send_close();
      }
      if (peek() == '#') {
        Symbol y = Symbol::chan(channel_literal());
        eat(')');
        eat(';');
        return Term::send_chan(std::move(y), term());
      }
      std::string arg = word();
      if (arg.empty()) fail("expected a channel or selector");
      if (arg == "pi1" || arg == "pi2") {
        kernel::Selector s = selector_word(arg);
        eat(')');
        eat(';');
        return Term::send_sel(s, term());
      }
      if (reserved(arg)) fail("'" + arg + "' is reserved");
      eat(')');
      eat(';');
      return Term::send_chan(Symbol::var(std::move(arg)), term());
    }

    if (w == "recv") {
      eat('(');
      std::string arg = word();
      if (arg == "pi1") return cases(nullptr);
      if (arg.empty() || reserved(arg)) {
        pos = head_at;
        fail("recv on own channel binds a name or offers pi1/pi2 branches");
      }
      eat2("=>");
      TermRef k = term();
      eat(')');
      return Term::recv_chan(std::move(arg), k);
    }

    if (w.starts_with("send_")) {
      Symbol x = head_subject(w);
      eat('(');
      if (peek() == '#') {
        Symbol y = Symbol::chan(channel_literal());
        eat(')');
        eat(';');
        return Term::send_chan_on(std::move(x), std::move(y), term());
      }
      std::string arg = word();
      if (arg.empty()) fail("expected a channel or selector");
      if (arg == "pi1" || arg == "pi2") {
        kernel::Selector s = selector_word(arg);
        eat(')');
        eat(';');
        return Term::send_sel_on(std::move(x), s, term());
      }
      if (reserved(arg)) fail("'" + arg + "' is reserved");
      eat(')');
      eat(';');
      return Term::send_chan_on(std::move(x), Symbol::var(std::move(arg)), term());
    }

    if (w.starts_with("recv_")) {
      Symbol x = head_subject(w);
      eat('(');
      if (peek() == ')') {
        ++pos;
        eat(';');
        return Term::recv_close(std::move(x), term());
      }
      std::string arg = word();
      if (arg == "pi1") return cases(&x);
      if (arg.empty() || reserved(arg)) fail("expected ')', a binder, or pi1");
      eat2("=>");
      TermRef k = term();
      eat(')');
      return Term::recv_chan_on(std::move(x), std::move(arg), k);
    }

    pos = head_at;
    fail("expected a term");
  }
};

}  // namespace

TermRef parse_term(std::string_view source) {
  Parser p{source};
  TermRef t = p.term();
  p.skip_space();
  if (p.pos != source.size())
    throw TermParseError("trailing input after term", p.pos);
  return t;
}

}  // namespace sesscheck::proclang
