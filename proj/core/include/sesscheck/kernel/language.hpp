#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sesscheck/kernel/action.hpp"
#include "sesscheck/kernel/channel.hpp"
#include "sesscheck/kernel/object.hpp"
#include "sesscheck/kernel/process.hpp"

namespace sesscheck::kernel {

// A single transition of one object: the action it performs and the multiset
// of processes it leaves behind. An empty residual means the process is gone.
struct ObjTransition {
  Action action;
  std::vector<AtomicProcess> residual;
};

using Renaming = std::function<ChannelName(ChannelName)>;

// Enumeration context handed to ProcessLanguage::transitions.
//
// receive_candidates: concrete channels at which to instantiate
// payload-parameterized channel receives (those are input-enabled, so the
// full transition set is infinite; callers supply the payloads they care
// about). Selector and close receives are always enumerated in full.
//
// fresh: deterministic supply for steps that allocate a new channel.
struct StepProbe {
  std::span<const ChannelName> receive_candidates = {};
  FreshNameSupply* fresh = nullptr;
};

// Interface a process language implements to participate in the runtime.
// Bodies are opaque to the kernel; the language supplies stepping, validity,
// canonical serialization, and channel renaming for them.
//
// Equivariance contract: for any injective renaming rho,
// transitions(rename_body(body, rho), rho(provider)) must equal
// transitions(body, provider) with rho applied to every action and residual.
// Transition sets must be finite given a finite probe.
class ProcessLanguage {
 public:
  virtual ~ProcessLanguage() = default;

  virtual std::string_view name() const = 0;
  virtual bool valid(const ObjectBody& body) const = 0;

  // Canonical key; equal bodies of one language produce equal keys.
  virtual std::string body_key(const ObjectBody& body) const = 0;
  virtual std::string body_to_json(const ObjectBody& body) const = 0;
  virtual std::shared_ptr<const ObjectBody> body_from_json(const std::string& text) const = 0;

  virtual void collect_channels(const ObjectBody& body, std::set<ChannelName>& out) const = 0;
  virtual std::shared_ptr<const ObjectBody> rename_body(const ObjectBody& body,
                                                        const Renaming& rho) const = 0;

  virtual std::vector<ObjTransition> transitions(const ObjectBody& body, ChannelName provider,
                                                 const StepProbe& probe) const = 0;
};

}  // namespace sesscheck::kernel
