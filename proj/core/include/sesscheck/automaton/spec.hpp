#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sesscheck/errors.hpp"
#include "sesscheck/kernel/action.hpp"
#include "sesscheck/kernel/language.hpp"

namespace sesscheck::automata {

struct SpecError : Error {
  SpecError(const std::string& what, const std::string& path)
      : Error(what + " (at " + path + ")"), path(path) {}
  std::string path;
};

struct DanglingStateError : Error {
  explicit DanglingStateError(const std::string& what) : Error(what) {}
};

enum class EdgeKind { ReceiveSelector, SendSelector, SendClose };

// One declared transition. SendClose edges terminate the machine, so they
// carry no target and no selector.
struct AutomatonEdge {
  std::string from;
  EdgeKind kind = EdgeKind::SendClose;
  kernel::Selector sel = kernel::Selector::pi1;
  std::optional<std::string> to;

  friend bool operator==(const AutomatonEdge&, const AutomatonEdge&) = default;
  friend auto operator<=>(const AutomatonEdge&, const AutomatonEdge&) = default;
};

// A user-declared finite-state machine over selector and close messages.
// States are named; termination is the absence of a residual process, not a
// state.
struct AutomatonSpec {
  std::vector<std::string> states;
  std::string initial;
  std::vector<AutomatonEdge> edges;

  // Sorts states and edges and drops exact duplicate edges, so equal machines
  // serialize equally. Distinct edges sharing (from, action) survive; they
  // are ordinary nondeterminism.
  void normalize();

  // throws SpecError / DanglingStateError
  void validate() const;

  std::string to_json() const;

  // The four-state machine that answers a selector with the flipped one and
  // closes: S0 -pi1?-> S1 -pi2!-> S3, S0 -pi2?-> S2 -pi1!-> S3, S3 close.
  static std::shared_ptr<const AutomatonSpec> bit_flip();
};

// Parses, normalizes, and validates. throws SpecError / DanglingStateError
std::shared_ptr<const AutomatonSpec> load_automaton(const std::string& text);

// Transitions of `state` when the machine provides channel `provider`.
// `at_state` packages a successor state as the residual process; it is how
// the two machine languages share this enumeration while keeping their own
// body representation.
std::vector<kernel::ObjTransition> automaton_transitions(
    const AutomatonSpec& spec, const std::string& state,
    kernel::ChannelName provider,
    const std::function<kernel::AtomicProcess(const std::string&)>& at_state);

}  // namespace sesscheck::automata
