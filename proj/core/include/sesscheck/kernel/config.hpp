#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sesscheck/kernel/language.hpp"
#include "sesscheck/kernel/process.hpp"

namespace sesscheck::kernel {

// A multiset of atomic processes, kept as a sorted vector so that equality,
// ordering, and canonical keys are structural. Multiset operations do not
// require well-formedness; provider uniqueness is checked at API boundaries
// (deserialization, instantiation), not inside rule application.
class Configuration {
 public:
  Configuration() = default;

  static Configuration of(std::vector<AtomicProcess> procs);
  static Configuration singleton(AtomicProcess process);

  bool empty() const { return procs_.empty(); }
  std::size_t size() const { return procs_.size(); }
  const std::vector<AtomicProcess>& procs() const { return procs_; }

  // Multiset union.
  Configuration merged_with(const Configuration& other) const;
  Configuration with(const AtomicProcess& process) const;

  std::optional<ChannelName> duplicate_provider() const;
  bool well_formed() const { return !duplicate_provider().has_value(); }

  // Adds every channel referenced anywhere: providers, forwarder targets,
  // and channels inside bodies (via the owning language).
  void collect_names(std::set<ChannelName>& out) const;
  std::set<ChannelName> names() const;

  // 1 + the largest referenced id; 0 for the empty configuration. Stepping
  // rules that allocate draw fresh names from here, which keeps the function
  // layer deterministic: equal configurations allocate equal names.
  std::uint64_t next_free_id() const;

  std::string canonical_key() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;

 private:
  std::vector<AtomicProcess> procs_;
};

std::string to_string(const Configuration& config);

// An object-with-ambient abstracted over its providing channel. Instantiation
// plugs in a concrete provider; only that name varies, the ambient processes
// keep theirs.
class NamelessConfiguration {
 public:
  NamelessConfiguration(Configuration ambient, NamelessObject head);

  const Configuration& ambient() const { return ambient_; }
  const NamelessObject& head() const { return head_; }

  // throws DuplicateProviderError if `provider` already provides in ambient
  Configuration instantiate(ChannelName provider) const;

  void collect_names(std::set<ChannelName>& out) const;
  std::string key() const;

  friend bool operator==(const NamelessConfiguration&, const NamelessConfiguration&) = default;

 private:
  Configuration ambient_;
  NamelessObject head_;
};

// Inverse of instantiation: splits off the object providing `provider`.
// Fails (nullopt) when that channel is not provided by a plain object.
std::optional<NamelessConfiguration> deinstantiate(const Configuration& config,
                                                   ChannelName provider);

// Applies a channel renaming everywhere, bodies included. The caller is
// responsible for injectivity.
Configuration rename_configuration(const Configuration& config, const Renaming& rho);
NamelessConfiguration rename_nameless(const NamelessConfiguration& config, const Renaming& rho);

}  // namespace sesscheck::kernel
