#include "sesscheck/kernel/config.hpp"

#include <algorithm>
#include <sstream>

#include "sesscheck/errors.hpp"
#include "sesscheck/kernel/registry.hpp"

namespace sesscheck::kernel {

std::string to_string(const AtomicProcess& process) {
  if (process.is_fwd())
    return "fwd " + to_string(process.provider()) + " <- " + to_string(process.target());
  return "proc " + to_string(process.provider()) + " [" + process.obj().key() + "]";
}

Configuration Configuration::of(std::vector<AtomicProcess> procs) {
  Configuration config;
  config.procs_ = std::move(procs);
  std::sort(config.procs_.begin(), config.procs_.end());
  return config;
}

Configuration Configuration::singleton(AtomicProcess process) {
  Configuration config;
  config.procs_.push_back(std::move(process));
  return config;
}

Configuration Configuration::merged_with(const Configuration& other) const {
  std::vector<AtomicProcess> merged;
  merged.reserve(procs_.size() + other.procs_.size());
  std::merge(procs_.begin(), procs_.end(), other.procs_.begin(), other.procs_.end(),
             std::back_inserter(merged));
  Configuration config;
  config.procs_ = std::move(merged);
  return config;
}

Configuration Configuration::with(const AtomicProcess& process) const {
  std::vector<AtomicProcess> procs = procs_;
  procs.insert(std::upper_bound(procs.begin(), procs.end(), process), process);
  Configuration config;
  config.procs_ = std::move(procs);
  return config;
}

std::optional<ChannelName> Configuration::duplicate_provider() const {
  std::set<ChannelName> seen;
  for (const AtomicProcess& p : procs_)
    if (!seen.insert(p.provider()).second) return p.provider();
  return std::nullopt;
}

void Configuration::collect_names(std::set<ChannelName>& out) const {
  const auto& registry = LanguageRegistry::instance();
  for (const AtomicProcess& p : procs_) {
    out.insert(p.provider());
    if (p.is_fwd()) {
      out.insert(p.target());
    } else {
      registry.lookup(p.obj().lang()).collect_channels(p.obj().body(), out);
    }
  }
}

std::set<ChannelName> Configuration::names() const {
  std::set<ChannelName> out;
  collect_names(out);
  return out;
}

std::uint64_t Configuration::next_free_id() const {
  std::set<ChannelName> all = names();
  return all.empty() ? 0 : all.rbegin()->id + 1;
}

std::string Configuration::canonical_key() const {
  std::ostringstream out;
  for (const AtomicProcess& p : procs_) {
    if (p.is_fwd()) {
      out << "f " << p.provider().id << ' ' << p.target().id << ';';
    } else {
      out << "p " << p.provider().id << ' ' << p.obj().lang().value << ' ' << p.obj().key() << ';';
    }
  }
  return out.str();
}

std::string to_string(const Configuration& config) {
  std::string out = "{";
  bool first = true;
  for (const AtomicProcess& p : config.procs()) {
    if (!first) out += ", ";
    out += to_string(p);
    first = false;
  }
  return out + "}";
}

NamelessConfiguration::NamelessConfiguration(Configuration ambient, NamelessObject head)
    : ambient_(std::move(ambient)), head_(std::move(head)) {}

Configuration NamelessConfiguration::instantiate(ChannelName provider) const {
  for (const AtomicProcess& p : ambient_.procs())
    if (p.provider() == provider)
      throw DuplicateProviderError("instantiation at " + to_string(provider) +
                                   " collides with an ambient provider");
  return ambient_.with(AtomicProcess::proc(provider, head_));
}

void NamelessConfiguration::collect_names(std::set<ChannelName>& out) const {
  ambient_.collect_names(out);
  LanguageRegistry::instance().lookup(head_.lang()).collect_channels(head_.body(), out);
}

std::string NamelessConfiguration::key() const {
  return ambient_.canonical_key() + "|" + std::to_string(head_.lang().value) + ":" + head_.key();
}

std::optional<NamelessConfiguration> deinstantiate(const Configuration& config,
                                                   ChannelName provider) {
  const std::vector<AtomicProcess>& procs = config.procs();
  std::optional<std::size_t> at;
  for (std::size_t i = 0; i < procs.size(); ++i) {
    if (procs[i].provider() != provider) continue;
    if (at.has_value() || procs[i].is_fwd()) return std::nullopt;
    at = i;
  }
  if (!at.has_value()) return std::nullopt;
  std::vector<AtomicProcess> rest;
  rest.reserve(procs.size() - 1);
  for (std::size_t i = 0; i < procs.size(); ++i)
    if (i != *at) rest.push_back(procs[i]);
  return NamelessConfiguration(Configuration::of(std::move(rest)), procs[*at].obj());
}

Configuration rename_configuration(const Configuration& config, const Renaming& rho) {
  const auto& registry = LanguageRegistry::instance();
  std::vector<AtomicProcess> procs;
  procs.reserve(config.size());
  for (const AtomicProcess& p : config.procs()) {
    if (p.is_fwd()) {
      procs.push_back(AtomicProcess::fwd(rho(p.provider()), rho(p.target())));
    } else {
      const ProcessLanguage& lang = registry.lookup(p.obj().lang());
      auto body = lang.rename_body(p.obj().body(), rho);
      procs.push_back(
          AtomicProcess::proc(rho(p.provider()), make_object(p.obj().lang(), std::move(body))));
    }
  }
  return Configuration::of(std::move(procs));
}

NamelessConfiguration rename_nameless(const NamelessConfiguration& config, const Renaming& rho) {
  const ProcessLanguage& lang = LanguageRegistry::instance().lookup(config.head().lang());
  auto body = lang.rename_body(config.head().body(), rho);
  return NamelessConfiguration(rename_configuration(config.ambient(), rho),
                               make_object(config.head().lang(), std::move(body)));
}

}  // namespace sesscheck::kernel
