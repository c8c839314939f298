#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "sesscheck/kernel/channel.hpp"

namespace sesscheck::kernel {

// Binary selector carried by choice messages. pi1 orders before pi2.
enum class Selector : std::uint8_t { pi1 = 0, pi2 = 1 };

// Converts between a selector and its 1-based index.
Selector selector_from_index(int index);
int selector_index(Selector sel);
std::string to_string(Selector sel);

struct CloseSignal {
  auto operator<=>(const CloseSignal&) const = default;
};

// Message payload: a selector, the closing signal, or a channel name.
class Payload {
 public:
  Payload(Selector sel) : value_(sel) {}
  Payload(CloseSignal close) : value_(close) {}
  Payload(ChannelName chan) : value_(chan) {}

  static Payload selector(Selector sel) { return Payload(sel); }
  static Payload close() { return Payload(CloseSignal{}); }
  static Payload channel(ChannelName chan) { return Payload(chan); }

  bool is_selector() const { return std::holds_alternative<Selector>(value_); }
  bool is_close() const { return std::holds_alternative<CloseSignal>(value_); }
  bool is_channel() const { return std::holds_alternative<ChannelName>(value_); }

  Selector as_selector() const { return std::get<Selector>(value_); }
  ChannelName as_channel() const { return std::get<ChannelName>(value_); }

  auto operator<=>(const Payload&) const = default;

 private:
  std::variant<Selector, CloseSignal, ChannelName> value_;
};

std::string to_string(const Payload& payload);

enum class Direction : std::uint8_t { Send = 0, Receive = 1 };

struct Labelled {
  ChannelName chan;
  Direction dir;
  Payload payload;

  auto operator<=>(const Labelled&) const = default;
};

// A transition label: either silent or a directed message on a channel.
// Silent orders before every labelled action.
class Action {
 public:
  static Action silent() { return Action(); }
  static Action send(ChannelName chan, Payload payload) {
    return Action(Labelled{chan, Direction::Send, payload});
  }
  static Action receive(ChannelName chan, Payload payload) {
    return Action(Labelled{chan, Direction::Receive, payload});
  }

  bool is_silent() const { return !label_.has_value(); }
  bool is_labelled() const { return label_.has_value(); }
  const Labelled& label() const { return *label_; }

  // Flips Send and Receive; silent actions have no complement.
  std::optional<Action> complement() const;

  auto operator<=>(const Action&) const = default;

 private:
  Action() = default;
  explicit Action(Labelled label) : label_(label) {}

  std::optional<Labelled> label_;
};

std::string to_string(const Action& action);

}  // namespace sesscheck::kernel
