#include "sesscheck/kernel/channel.hpp"

namespace sesscheck::kernel {

std::string to_string(ChannelName name) { return "c" + std::to_string(name.id); }

ChannelName FreshNameSupply::fresh() { return ChannelName{next_++}; }

ChannelName FreshNameSupply::fresh(std::span<const ChannelName> avoid) {
  for (ChannelName name : avoid) reserve_above(name);
  return fresh();
}

ChannelName FreshNameSupply::fresh(const std::set<ChannelName>& avoid) {
  // The set is ordered, so only the largest element matters.
  if (!avoid.empty()) reserve_above(*avoid.rbegin());
  return fresh();
}

void FreshNameSupply::reserve_above(ChannelName name) {
  if (name.id >= next_) next_ = name.id + 1;
}

}  // namespace sesscheck::kernel
