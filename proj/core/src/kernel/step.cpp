#include "sesscheck/kernel/step.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sesscheck/kernel/registry.hpp"

namespace sesscheck::kernel {

namespace {

std::vector<ObjTransition> object_transitions(const Configuration& config, std::size_t pos,
                                              std::span<const ChannelName> candidates) {
  const AtomicProcess& p = config.procs()[pos];
  const ProcessLanguage& lang = LanguageRegistry::instance().lookup(p.obj().lang());
  // Allocation is a function of the configuration, so equal configurations
  // step to equal successors.
  FreshNameSupply fresh(config.next_free_id());
  return lang.transitions(p.obj().body(), p.provider(), StepProbe{candidates, &fresh});
}

std::vector<AtomicProcess> all_but(const std::vector<AtomicProcess>& procs, std::size_t i,
                                   std::size_t j = static_cast<std::size_t>(-1)) {
  std::vector<AtomicProcess> rest;
  rest.reserve(procs.size());
  for (std::size_t k = 0; k < procs.size(); ++k)
    if (k != i && k != j) rest.push_back(procs[k]);
  return rest;
}

Configuration assemble(std::vector<AtomicProcess> rest, const std::vector<ObjTransition>& parts,
                       std::size_t which) {
  for (const AtomicProcess& p : parts[which].residual) rest.push_back(p);
  return Configuration::of(std::move(rest));
}

}  // namespace

std::vector<StepResult> step_detailed(const Configuration& config, const StepOptions& options) {
  const std::vector<AtomicProcess>& procs = config.procs();

  // Receive candidates grow by the channels this configuration sends, so a
  // matching receive exists for every internal send. Sends never depend on
  // the probe, so one refinement pass reaches the fixed point.
  std::set<ChannelName> candidate_set(options.receive_candidates.begin(),
                                      options.receive_candidates.end());
  std::vector<ChannelName> candidates(candidate_set.begin(), candidate_set.end());
  std::vector<std::vector<ObjTransition>> table(procs.size());
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < procs.size(); ++i) {
      if (!procs[i].is_proc()) continue;
      table[i] = object_transitions(config, i, candidates);
      for (const ObjTransition& t : table[i]) {
        if (t.action.is_labelled() && t.action.label().dir == Direction::Send &&
            t.action.label().payload.is_channel())
          candidate_set.insert(t.action.label().payload.as_channel());
      }
    }
    std::vector<ChannelName> widened(candidate_set.begin(), candidate_set.end());
    if (widened == candidates) break;
    candidates = std::move(widened);
  }

  std::map<std::pair<Action, Configuration>, StepProvenance> results;

  // Object steps, framed over the remaining multiset.
  for (std::size_t i = 0; i < procs.size(); ++i) {
    for (std::size_t t = 0; t < table[i].size(); ++t) {
      Configuration next = assemble(all_but(procs, i), table[i], t);
      results.try_emplace({table[i][t].action, std::move(next)},
                          StepProvenance{StepRule::Object, i, i, table[i][t].action,
                                         table[i][t].action});
    }
  }

  // Forwarder elimination: the object providing the forwarder's target moves
  // under the forwarder's own channel.
  for (std::size_t j = 0; j < procs.size(); ++j) {
    if (!procs[j].is_fwd()) continue;
    for (std::size_t i = 0; i < procs.size(); ++i) {
      if (i == j || !procs[i].is_proc() || procs[i].provider() != procs[j].target()) continue;
      std::vector<AtomicProcess> rest = all_but(procs, i, j);
      rest.push_back(AtomicProcess::proc(procs[j].provider(), procs[i].obj()));
      results.try_emplace({Action::silent(), Configuration::of(std::move(rest))},
                          StepProvenance{StepRule::Forward, i, j, Action::silent(),
                                         Action::silent()});
    }
  }

  // Communication: one sender and one receiver with complementary labels
  // synchronize into a silent step.
  for (std::size_t i = 0; i < procs.size(); ++i) {
    for (std::size_t ti = 0; ti < table[i].size(); ++ti) {
      const Action& send = table[i][ti].action;
      if (!send.is_labelled() || send.label().dir != Direction::Send) continue;
      Action want = *send.complement();
      for (std::size_t j = 0; j < procs.size(); ++j) {
        if (j == i) continue;
        for (std::size_t tj = 0; tj < table[j].size(); ++tj) {
          if (table[j][tj].action != want) continue;
          std::vector<AtomicProcess> rest = all_but(procs, i, j);
          for (const AtomicProcess& p : table[i][ti].residual) rest.push_back(p);
          for (const AtomicProcess& p : table[j][tj].residual) rest.push_back(p);
          results.try_emplace({Action::silent(), Configuration::of(std::move(rest))},
                              StepProvenance{StepRule::Communication, i, j, send, want});
        }
      }
    }
  }

  std::vector<StepResult> out;
  out.reserve(results.size());
  for (auto& [key, prov] : results) out.push_back(StepResult{key.first, key.second, prov});
  return out;
}

std::vector<std::pair<Action, Configuration>> step(const Configuration& config,
                                                   const StepOptions& options) {
  std::vector<std::pair<Action, Configuration>> out;
  for (StepResult& r : step_detailed(config, options))
    out.emplace_back(std::move(r.action), std::move(r.next));
  return out;
}

std::vector<Configuration> step_with_action(const Configuration& config, const Action& action) {
  StepOptions options;
  if (action.is_labelled() && action.label().dir == Direction::Receive &&
      action.label().payload.is_channel())
    options.receive_candidates.push_back(action.label().payload.as_channel());
  std::vector<Configuration> out;
  for (StepResult& r : step_detailed(config, options))
    if (r.action == action) out.push_back(std::move(r.next));
  return out;
}

SilentClosure silent_closure(const Configuration& config, int fuel) {
  SilentClosure out;
  std::set<Configuration> seen{config};
  out.entries.push_back(ClosureEntry{config, 0});
  for (std::size_t next = 0; next < out.entries.size(); ++next) {
    ClosureEntry entry = out.entries[next];
    bool at_bound = entry.depth >= fuel;
    if (at_bound && out.truncated) continue;
    for (auto& [action, succ] : step(entry.config)) {
      if (!action.is_silent()) continue;
      if (at_bound) {
        if (!seen.contains(succ)) {
          out.truncated = true;
          break;
        }
      } else if (seen.insert(succ).second) {
        out.entries.push_back(ClosureEntry{std::move(succ), entry.depth + 1});
      }
    }
  }
  return out;
}

}  // namespace sesscheck::kernel
