#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sesscheck/kernel/config.hpp"
#include "sesscheck/logrel/witness.hpp"
#include "sesscheck/types/session_type.hpp"

namespace sesscheck::logrel {

// Exploration bounds. The checker never reports NonCompliant because a bound
// bit; running out of a budget yields Unknown.
struct Budget {
  int silent_fuel = 64;      // silent-closure depth per type layer
  int partition_limit = 12;  // max processes to split exhaustively after a channel send
  int lolli_peers = 3;       // sampled peer processes per function type
  int name_samples = 3;      // distinct fresh names tried per received channel
  std::uint64_t seed = 0;    // peer sampling seed
};

enum class Compliance { Compliant, NonCompliant, Unknown };

std::string to_string(Compliance value);

// Where and why compliance definitely failed; the deepest point reached.
struct FailureInfo {
  std::string reason;
  std::string type;  // printed type at the failure
  kernel::Configuration config;
  int depth = 0;  // type-clause nesting depth
};

struct CheckStats {
  long closures = 0;
  long value_candidates = 0;
  long memo_hits = 0;
  long partitions_tried = 0;
  long steps_replayed = 0;
};

struct Verdict {
  Compliance value = Compliance::Unknown;
  // A function type was checked against sampled peers, not all of them; a
  // Compliant answer is then evidence, not proof.
  bool approximate = false;
  WitnessRef witness;                  // set when Compliant
  std::optional<FailureInfo> failure;  // set when NonCompliant
  std::string unknown_reason;          // set when Unknown
  CheckStats stats;
};

// Supplies provider-abstracted configurations known to inhabit a type, used
// as the peers a function type is exercised against.
class PeerSource {
 public:
  virtual ~PeerSource() = default;
  virtual std::vector<kernel::NamelessConfiguration> peers(const types::TypeRef& type,
                                                           int count,
                                                           std::uint64_t seed) const = 0;
};

// The calculus-backed source: a deterministic minimal inhabitant first, then
// seeded random well-typed processes.
const PeerSource& default_peer_source();

// The channel check_config instantiates `config` at: one past every name the
// configuration mentions. Witness replay must start from this instantiation.
kernel::ChannelName representative_provider(const kernel::NamelessConfiguration& config);

// Does the configuration comply with the protocol `type` at its
// distinguished channel? Explores silent closures per type layer, checks the
// value clause for the type's head connective, and recurses on the parts.
Verdict check_config(const kernel::NamelessConfiguration& config,
                     const types::TypeRef& type, const Budget& budget);
Verdict check_config(const kernel::NamelessConfiguration& config,
                     const types::TypeRef& type, const Budget& budget,
                     const PeerSource& peers);

std::string verdict_to_json(const Verdict& verdict);

}  // namespace sesscheck::logrel
