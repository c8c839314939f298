#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sesscheck/automaton/spec.hpp"
#include "sesscheck/kernel/config.hpp"
#include "sesscheck/logrel/check.hpp"
#include "sesscheck/proclang/generator.hpp"
#include "sesscheck/proclang/subst.hpp"

// Randomized property suites over the whole stack, shared by the fuzz
// command, the test binaries, and the acceptance run. Every suite is
// deterministic in (count, seed).
namespace sesscheck::props {

using Rng = proclang::Rng;

// Raw syntax over a variable pool: possibly open, possibly ill-typed,
// binders drawn from the same pool so shadowing and capture paths get hit.
proclang::TermRef random_raw_term(Rng& rng, int depth,
                                  const std::vector<std::string>& pool);

// Maps a random subset of `keys` to channels 1..max_chan.
proclang::Subst random_channel_subst(Rng& rng, const std::vector<std::string>& keys,
                                     std::uint64_t max_chan);

// Valid machine over states Q0..Q{n-1}; may be nondeterministic.
std::shared_ptr<const automata::AutomatonSpec> random_automaton(Rng& rng, int max_states,
                                                                int max_edges_per_state);

// Well-formed mix of machines, calculus processes, forwarders, and one
// optional machine/client pair that actually communicates. Providers are
// small consecutive names.
kernel::Configuration random_machine_config(Rng& rng, int max_blocks);

// A client driving the bit-flip machine at `machine` through one full
// round (select, read the flipped answer, read close), then running `k`.
proclang::TermRef bitflip_client(kernel::ChannelName machine, proclang::TermRef k);

struct SuiteResult {
  std::string name;
  int ran = 0;
  int failed = 0;          // definite counterexamples
  int unknown = 0;         // inconclusive verdicts on instances with a function type
  int unknown_strict = 0;  // inconclusive verdicts where exhaustion was expected
  std::string repro;       // first counterexample, printable; empty when clean

  bool ok() const { return failed == 0 && unknown_strict == 0; }
};

// Closed well-typed terms at random types (full connective set, size <=
// max_type_size) are Compliant; lolli-free instances must be definite.
// Every Compliant witness is replayed against the kernel. with_context
// additionally closes terms over small random contexts via complements.
SuiteResult ftlr_suite(int count, std::uint64_t seed, const logrel::Budget& budget,
                       bool with_context = false, int max_type_size = 5,
                       int max_depth = 6);

// Closed terms of the unit type reach a configuration that closes and
// vanishes within `fuel` silent steps.
SuiteResult adequacy_suite(int count, std::uint64_t seed, int fuel = 64);

// b/x after sigma agrees with sigma extended by b/x, for x outside dom(sigma);
// also the two-map composition on disjoint domains.
SuiteResult subst_compose_suite(int count, std::uint64_t seed);

// Entries a substitution never mentions do not change its action on
// well-typed terms whose context the substitution covers exactly.
SuiteResult discard_suite(int count, std::uint64_t seed);

// A silent run survives merging with a name-disjoint bystander.
SuiteResult frame_suite(int count, std::uint64_t seed);

// Compliance is closed under silent pre-steps.
SuiteResult backwards_closure_suite(int count, std::uint64_t seed);

// Domain equality, empty-only-empty, pointwise lookup, remove_key
// stability, map_vals congruence.
SuiteResult related_maps_suite(int count, std::uint64_t seed);

// The four lemma drivers plus related-maps, each at `count` cases.
std::vector<SuiteResult> lemma_suites(int count, std::uint64_t seed);

}  // namespace sesscheck::props
