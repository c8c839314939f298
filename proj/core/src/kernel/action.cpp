#include "sesscheck/kernel/action.hpp"

#include <stdexcept>

namespace sesscheck::kernel {

Selector selector_from_index(int index) {
  if (index == 1) return Selector::pi1;
  if (index == 2) return Selector::pi2;
  throw std::invalid_argument("selector index must be 1 or 2, got " + std::to_string(index));
}

int selector_index(Selector sel) { return sel == Selector::pi1 ? 1 : 2; }

std::string to_string(Selector sel) { return sel == Selector::pi1 ? "pi1" : "pi2"; }

std::string to_string(const Payload& payload) {
  if (payload.is_selector()) return to_string(payload.as_selector());
  if (payload.is_close()) return "()";
  return to_string(payload.as_channel());
}

std::optional<Action> Action::complement() const {
  if (is_silent()) return std::nullopt;
  const Labelled& l = *label_;
  Direction flipped = l.dir == Direction::Send ? Direction::Receive : Direction::Send;
  return Action(Labelled{l.chan, flipped, l.payload});
}

std::string to_string(const Action& action) {
  if (action.is_silent()) return "eps";
  const Labelled& l = action.label();
  return to_string(l.chan) + (l.dir == Direction::Send ? "!" : "?") + to_string(l.payload);
}

}  // namespace sesscheck::kernel
