#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>

namespace sesscheck::kernel {

// A channel name drawn from a countably infinite identifier space.
struct ChannelName {
  std::uint64_t id = 0;

  auto operator<=>(const ChannelName&) const = default;
};

std::string to_string(ChannelName name);

// Monotone supply of channel names. fresh() never repeats a name the supply
// has already handed out, and the avoid-set overloads additionally skip any
// name in the given set. Stateful: confine one supply to one owner.
class FreshNameSupply {
 public:
  FreshNameSupply() = default;
  explicit FreshNameSupply(std::uint64_t first) : next_(first) {}

  ChannelName fresh();
  ChannelName fresh(std::span<const ChannelName> avoid);
  ChannelName fresh(const std::set<ChannelName>& avoid);

  // Ensures every later fresh() returns a name strictly above `name`.
  void reserve_above(ChannelName name);

  std::uint64_t next_id() const { return next_; }

 private:
  std::uint64_t next_ = 0;
};

}  // namespace sesscheck::kernel
