#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sesscheck/kernel/action.hpp"
#include "sesscheck/kernel/config.hpp"

namespace sesscheck::kernel {

struct StepOptions {
  // Extra payload candidates for channel receives, on top of the channels
  // the configuration itself sends internally.
  std::vector<ChannelName> receive_candidates;
};

enum class StepRule { Object, Forward, Communication };

// Where a step came from. Positions index Configuration::procs() of the
// configuration that was stepped.
struct StepProvenance {
  StepRule rule = StepRule::Object;
  std::size_t primary = 0;    // the stepping object / fwd's peer object / sender
  std::size_t secondary = 0;  // Forward: the forwarder; Communication: receiver
  Action sub_send = Action::silent();
  Action sub_recv = Action::silent();
};

struct StepResult {
  Action action;
  Configuration next;
  StepProvenance provenance;
};

// All single-step successors: object steps lifted over the rest of the
// multiset, forwarder elimination (silently replacing {obj at a, fwd b<-a}
// with the object at b), and silent communication of one send/receive pair
// with complementary labels. Deterministic: results are deduplicated on
// (action, configuration) and sorted. Channel receives appear only at
// payloads sent inside the configuration or listed in the options.
std::vector<StepResult> step_detailed(const Configuration& config, const StepOptions& options = {});

std::vector<std::pair<Action, Configuration>> step(const Configuration& config,
                                                   const StepOptions& options = {});

// Successors under exactly `action`. For a channel-receive action the payload
// is added to the probe, so external receives can be queried directly.
std::vector<Configuration> step_with_action(const Configuration& config, const Action& action);

struct ClosureEntry {
  Configuration config;
  int depth = 0;
};

struct SilentClosure {
  std::vector<ClosureEntry> entries;  // BFS order; entries[0] is the start
  bool truncated = false;             // frontier still produced new configs at the bound
};

// Everything reachable through at most `fuel` silent steps, deduplicated.
SilentClosure silent_closure(const Configuration& config, int fuel);

}  // namespace sesscheck::kernel
