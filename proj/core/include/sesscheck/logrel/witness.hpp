#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sesscheck/kernel/action.hpp"
#include "sesscheck/kernel/config.hpp"
#include "sesscheck/types/session_type.hpp"

namespace sesscheck::logrel {

// One kernel step a verifier can replay: `before` performs `action` and
// becomes `after`.
struct ReplayStep {
  kernel::Configuration before;
  kernel::Action action;
  kernel::Configuration after;
};

enum class WitnessKind {
  SilentPrefix,  // silent walk to where the value clause fired
  CloseStep,     // type 1: the close-and-vanish step
  TensorSplit,   // sent a channel, split the rest in two independent parts
  LolliCases,    // received a peer-provided channel, one case per peer tried
  WithBranches,  // both selector receives accepted
  PlusChoice,    // one selector sent
};

std::string to_string(WitnessKind kind);

struct Witness;
using WitnessRef = std::shared_ptr<const Witness>;

// Evidence for a Compliant verdict. Every step is checkable against the
// kernel; verify_witness replays the whole tree.
//
// Per kind: SilentPrefix chains `steps` then continues at children[0].
// CloseStep holds its one step. PlusChoice holds the selector send and
// continues at children[0]. WithBranches holds both selector receives in
// steps[0]/steps[1] with matching children. TensorSplit holds the channel
// send, the two-way split of the remainder in `left`/`right`, and their
// witnesses as children[0]/children[1]. LolliCases holds one receive step
// per peer; peer_configs[i] is the peer merged in after steps[i], checked
// by children[i].
struct Witness {
  WitnessKind kind = WitnessKind::CloseStep;
  std::vector<ReplayStep> steps;
  kernel::Selector sel = kernel::Selector::pi1;   // PlusChoice
  kernel::ChannelName sent;                       // TensorSplit
  kernel::Configuration left, right;              // TensorSplit
  std::vector<kernel::Configuration> peer_configs;  // LolliCases
  std::vector<kernel::ChannelName> peer_chans;      // LolliCases
  std::vector<WitnessRef> children;
};

std::string witness_to_json(const Witness& witness);

// Replays every step of the tree against the kernel and re-checks the
// structural side conditions, starting from `config` providing `provider`
// at `type`. On failure, stores the reason in *why when given.
bool verify_witness(const Witness& witness, const kernel::Configuration& config,
                    kernel::ChannelName provider, const types::TypeRef& type,
                    std::string* why = nullptr);

}  // namespace sesscheck::logrel
