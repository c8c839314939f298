#include "sesscheck/logrel/check.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include <nlohmann/json.hpp>

#include "sesscheck/kernel/registry.hpp"
#include "sesscheck/kernel/serialize.hpp"
#include "sesscheck/kernel/step.hpp"

namespace sesscheck::logrel {

std::string to_string(Compliance value) {
  switch (value) {
    case Compliance::Compliant: return "compliant";
    case Compliance::NonCompliant: return "non-compliant";
    case Compliance::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

using kernel::Action;
using kernel::AtomicProcess;
using kernel::ChannelName;
using kernel::Configuration;
using kernel::Payload;
using types::TypeKind;
using types::TypeRef;

std::set<ChannelName> atom_names(const AtomicProcess& p) {
  std::set<ChannelName> out;
  out.insert(p.provider());
  if (p.is_fwd()) {
    out.insert(p.target());
  } else {
    const auto& lang = kernel::LanguageRegistry::instance().lookup(p.obj().lang());
    lang.collect_channels(p.obj().body(), out);
  }
  return out;
}

// Everything transitively name-connected to the atom at `seed`; the natural
// first guess for the part a sent channel takes with it.
std::vector<bool> connected_component(const std::vector<AtomicProcess>& procs,
                                      std::size_t seed) {
  std::vector<std::set<ChannelName>> names(procs.size());
  for (std::size_t i = 0; i < procs.size(); ++i) names[i] = atom_names(procs[i]);
  std::vector<bool> in(procs.size(), false);
  in[seed] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < procs.size(); ++i) {
      if (in[i]) continue;
      for (std::size_t j = 0; j < procs.size(); ++j) {
        if (!in[j]) continue;
        bool touches = std::any_of(names[i].begin(), names[i].end(),
                                   [&](ChannelName c) { return names[j].contains(c); });
        if (touches) {
          in[i] = true;
          grew = true;
          break;
        }
      }
    }
  }
  return in;
}

struct Outcome {
  Compliance value = Compliance::NonCompliant;
  bool approximate = false;
  WitnessRef witness;
};

struct Engine {
  Engine(const Budget& b, const PeerSource& p) : budget(b), peer_source(p) {}

  const Budget& budget;
  const PeerSource& peer_source;
  CheckStats stats;
  std::map<std::string, Outcome> memo;
  std::optional<FailureInfo> deepest;
  std::string unknown_reason;

  void note_failure(const Configuration& config, const TypeRef& type, int depth,
                    std::string reason) {
    if (!deepest || depth > deepest->depth)
      deepest = FailureInfo{std::move(reason), types::print_type(type), config, depth};
  }

  void note_unknown(std::string reason) {
    if (unknown_reason.empty()) unknown_reason = std::move(reason);
  }

  ReplayStep record(Configuration before, Action action, Configuration after) {
    ++stats.steps_replayed;
    return {std::move(before), std::move(action), std::move(after)};
  }

  Outcome check_T(const Configuration& config, ChannelName a, const TypeRef& type,
                  int depth);
  Outcome check_V(const Configuration& config, ChannelName a, const TypeRef& type,
                  int depth);

  Outcome memoized(const char* phase, const Configuration& config, ChannelName a,
                   const TypeRef& type, int depth,
                   Outcome (Engine::*eval)(const Configuration&, ChannelName,
                                           const TypeRef&, int)) {
    std::string key = std::string(phase) + "|" + std::to_string(a.id) + "|" +
                      types::print_type(type) + "|" + config.canonical_key();
    if (auto it = memo.find(key); it != memo.end()) {
      ++stats.memo_hits;
      return it->second;
    }
    Outcome out = (this->*eval)(config, a, type, depth);
    memo.emplace(std::move(key), out);
    return out;
  }

  Outcome T(const Configuration& config, ChannelName a, const TypeRef& type, int depth) {
    return memoized("T", config, a, type, depth, &Engine::check_T);
  }
  Outcome V(const Configuration& config, ChannelName a, const TypeRef& type, int depth) {
    return memoized("V", config, a, type, depth, &Engine::check_V);
  }
};

Outcome Engine::check_T(const Configuration& config, ChannelName a,
                        const TypeRef& type, int depth) {
  ++stats.closures;
  struct Node {
    Configuration config;
    int parent;
    int depth;
  };
  std::vector<Node> nodes{{config, -1, 0}};
  std::map<Configuration, int> seen{{config, 0}};
  bool truncated = false;
  bool any_unknown = false;

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Configuration cur = nodes[i].config;  // copy: nodes may reallocate below
    ++stats.value_candidates;
    Outcome v = V(cur, a, type, depth);
    if (v.value == Compliance::Compliant) {
      std::vector<ReplayStep> walk;
      for (int j = static_cast<int>(i); nodes[j].parent >= 0; j = nodes[j].parent)
        walk.push_back(record(nodes[nodes[j].parent].config, Action::silent(),
                              nodes[j].config));
      std::reverse(walk.begin(), walk.end());
      if (walk.empty()) return v;
      auto prefix = std::make_shared<Witness>();
      prefix->kind = WitnessKind::SilentPrefix;
      prefix->steps = std::move(walk);
      prefix->children = {v.witness};
      return {Compliance::Compliant, v.approximate, prefix};
    }
    if (v.value == Compliance::Unknown) any_unknown = true;

    bool at_bound = nodes[i].depth >= budget.silent_fuel;
    for (const auto& [act, next] : kernel::step(cur)) {
      if (!act.is_silent()) continue;
      if (seen.contains(next)) continue;
      if (at_bound) {
        truncated = true;
        break;
      }
      seen.emplace(next, static_cast<int>(nodes.size()));
      nodes.push_back({next, static_cast<int>(i), nodes[i].depth + 1});
    }
  }

  if (truncated) {
    note_unknown("silent exploration hit the fuel bound");
    return {Compliance::Unknown, false, nullptr};
  }
  if (any_unknown) return {Compliance::Unknown, false, nullptr};
  note_failure(config, type, depth,
               "no reachable configuration satisfies the value reading of " +
                   types::print_type(type) + " at " + kernel::to_string(a));
  return {Compliance::NonCompliant, false, nullptr};
}

Outcome Engine::check_V(const Configuration& config, ChannelName a,
                        const TypeRef& type, int depth) {
  switch (type->kind()) {
    case TypeKind::One: {
      Action act = Action::send(a, Payload::close());
      for (const Configuration& next : kernel::step_with_action(config, act)) {
        if (next.procs().empty()) {
          auto w = std::make_shared<Witness>();
          w->kind = WitnessKind::CloseStep;
          w->steps = {record(config, act, next)};
          return {Compliance::Compliant, false, w};
        }
      }
      note_failure(config, type, depth,
                   "cannot close and vanish at " + kernel::to_string(a));
      return {Compliance::NonCompliant, false, nullptr};
    }

    case TypeKind::Plus: {
      bool any_unknown = false;
      for (kernel::Selector sel : {kernel::Selector::pi1, kernel::Selector::pi2}) {
        const TypeRef& branch =
            sel == kernel::Selector::pi1 ? type->left() : type->right();
        Action act = Action::send(a, Payload::selector(sel));
        for (const Configuration& next : kernel::step_with_action(config, act)) {
          Outcome sub = T(next, a, branch, depth + 1);
          if (sub.value == Compliance::Compliant) {
            auto w = std::make_shared<Witness>();
            w->kind = WitnessKind::PlusChoice;
            w->sel = sel;
            w->steps = {record(config, act, next)};
            w->children = {sub.witness};
            return {Compliance::Compliant, sub.approximate, w};
          }
          if (sub.value == Compliance::Unknown) any_unknown = true;
        }
      }
      if (any_unknown) return {Compliance::Unknown, false, nullptr};
      note_failure(config, type, depth,
                   "never commits to a usable branch at " + kernel::to_string(a));
      return {Compliance::NonCompliant, false, nullptr};
    }

    case TypeKind::With: {
      std::vector<ReplayStep> steps;
      std::vector<WitnessRef> kids;
      bool approx = false;
      for (kernel::Selector sel : {kernel::Selector::pi1, kernel::Selector::pi2}) {
        const TypeRef& branch =
            sel == kernel::Selector::pi1 ? type->left() : type->right();
        Action act = Action::receive(a, Payload::selector(sel));
        auto nexts = kernel::step_with_action(config, act);
        if (nexts.empty()) {
          note_failure(config, type, depth,
                       "refuses selector " + kernel::to_string(sel) + " at " +
                           kernel::to_string(a));
          return {Compliance::NonCompliant, false, nullptr};
        }
        bool found = false;
        bool side_unknown = false;
        for (const Configuration& next : nexts) {
          Outcome sub = T(next, a, branch, depth + 1);
          if (sub.value == Compliance::Compliant) {
            steps.push_back(record(config, act, next));
            kids.push_back(sub.witness);
            approx = approx || sub.approximate;
            found = true;
            break;
          }
          if (sub.value == Compliance::Unknown) side_unknown = true;
        }
        if (!found) {
          if (side_unknown) return {Compliance::Unknown, false, nullptr};
          note_failure(config, type, depth,
                       "accepts " + kernel::to_string(sel) + " at " +
                           kernel::to_string(a) + " but no continuation complies");
          return {Compliance::NonCompliant, false, nullptr};
        }
      }
      auto w = std::make_shared<Witness>();
      w->kind = WitnessKind::WithBranches;
      w->steps = std::move(steps);
      w->children = std::move(kids);
      return {Compliance::Compliant, approx, w};
    }

    case TypeKind::Tensor: {
      bool any_unknown = false;
      bool any_send = false;
      for (const auto& [act, next] : kernel::step(config)) {
        if (!act.is_labelled()) continue;
        const kernel::Labelled& lab = act.label();
        if (lab.chan != a || lab.dir != kernel::Direction::Send ||
            !lab.payload.is_channel())
          continue;
        any_send = true;
        ChannelName d = lab.payload.as_channel();
        const std::vector<AtomicProcess>& procs = next.procs();
        std::size_t n = procs.size();

        std::ptrdiff_t d_at = -1, a_at = -1;
        for (std::size_t k = 0; k < n; ++k) {
          if (procs[k].provider() == d) d_at = static_cast<std::ptrdiff_t>(k);
          if (procs[k].provider() == a) a_at = static_cast<std::ptrdiff_t>(k);
        }
        if (d_at < 0) continue;  // nothing provides the sent channel: dead end

        auto try_partition = [&](const std::vector<bool>& in_left) -> Outcome {
          ++stats.partitions_tried;
          Configuration left, right;
          for (std::size_t k = 0; k < n; ++k) {
            if (in_left[k])
              left = left.with(procs[k]);
            else
              right = right.with(procs[k]);
          }
          Outcome l = T(left, d, type->left(), depth + 1);
          if (l.value == Compliance::NonCompliant) return l;
          Outcome r = T(right, a, type->right(), depth + 1);
          if (r.value == Compliance::NonCompliant) return r;
          if (l.value == Compliance::Compliant && r.value == Compliance::Compliant) {
            auto w = std::make_shared<Witness>();
            w->kind = WitnessKind::TensorSplit;
            w->sent = d;
            w->left = left;
            w->right = right;
            w->steps = {record(config, act, next)};
            w->children = {l.witness, r.witness};
            return {Compliance::Compliant, l.approximate || r.approximate, w};
          }
          return {Compliance::Unknown, false, nullptr};
        };

        std::vector<bool> heuristic =
            connected_component(procs, static_cast<std::size_t>(d_at));
        bool heuristic_valid =
            a_at < 0 || !heuristic[static_cast<std::size_t>(a_at)];
        if (heuristic_valid) {
          Outcome got = try_partition(heuristic);
          if (got.value == Compliance::Compliant) return got;
          if (got.value == Compliance::Unknown) any_unknown = true;
        }

        if (n > static_cast<std::size_t>(budget.partition_limit)) {
          any_unknown = true;
          note_unknown("a channel send left " + std::to_string(n) +
                       " processes, over the split enumeration limit");
          continue;
        }
        std::uint64_t masks = std::uint64_t{1} << n;
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
          std::vector<bool> in_left(n);
          for (std::size_t k = 0; k < n; ++k) in_left[k] = (mask >> k) & 1;
          if (!in_left[static_cast<std::size_t>(d_at)]) continue;
          if (a_at >= 0 && in_left[static_cast<std::size_t>(a_at)]) continue;
          if (heuristic_valid && in_left == heuristic) continue;  // already tried
          Outcome got = try_partition(in_left);
          if (got.value == Compliance::Compliant) return got;
          if (got.value == Compliance::Unknown) any_unknown = true;
        }
      }
      if (any_unknown) return {Compliance::Unknown, false, nullptr};
      note_failure(config, type, depth,
                   any_send
                       ? "no split after a channel send satisfies both parts at " +
                             kernel::to_string(a)
                       : "sends no channel at " + kernel::to_string(a));
      return {Compliance::NonCompliant, false, nullptr};
    }

    case TypeKind::Lolli: {
      std::vector<kernel::NamelessConfiguration> peer_list =
          peer_source.peers(type->left(), budget.lolli_peers, budget.seed);
      if (peer_list.empty()) {
        note_unknown("no peer processes available for " +
                     types::print_type(type->left()));
        return {Compliance::Unknown, false, nullptr};
      }
      auto w = std::make_shared<Witness>();
      w->kind = WitnessKind::LolliCases;
      bool any_unknown = false;
      for (const kernel::NamelessConfiguration& peer : peer_list) {
        std::set<ChannelName> names = config.names();
        peer.collect_names(names);
        std::uint64_t base = names.empty() ? 1 : names.rbegin()->id + 1;
        int samples = budget.name_samples > 0 ? budget.name_samples : 1;
        bool peer_ok = true;
        for (int s = 0; s < samples && peer_ok; ++s) {
          ChannelName d{base + static_cast<std::uint64_t>(s)};
          Configuration peer_inst = peer.instantiate(d);
          Action act = Action::receive(a, Payload::channel(d));
          auto nexts = kernel::step_with_action(config, act);
          if (nexts.empty()) {
            note_failure(config, type, depth,
                         "does not accept a channel at " + kernel::to_string(a));
            return {Compliance::NonCompliant, false, nullptr};
          }
          bool found = false;
          bool sub_unknown = false;
          for (const Configuration& next : nexts) {
            Configuration composite = next.merged_with(peer_inst);
            if (composite.duplicate_provider().has_value()) continue;
            Outcome sub = T(composite, a, type->right(), depth + 1);
            if (sub.value == Compliance::Compliant) {
              if (s == 0) {
                w->steps.push_back(record(config, act, next));
                w->peer_configs.push_back(peer_inst);
                w->peer_chans.push_back(d);
                w->children.push_back(sub.witness);
              }
              found = true;
              break;
            }
            if (sub.value == Compliance::Unknown) sub_unknown = true;
          }
          if (!found) {
            if (sub_unknown) {
              any_unknown = true;
              peer_ok = false;
            } else {
              note_failure(config, type, depth,
                           "fails against a supplied peer of " +
                               types::print_type(type->left()) + " at " +
                               kernel::to_string(a));
              return {Compliance::NonCompliant, false, nullptr};
            }
          }
        }
        if (!peer_ok) break;
      }
      if (any_unknown) return {Compliance::Unknown, false, nullptr};
      return {Compliance::Compliant, true, w};
    }
  }
  note_failure(config, type, depth, "unreachable type kind");
  return {Compliance::NonCompliant, false, nullptr};
}

}  // namespace

kernel::ChannelName representative_provider(const kernel::NamelessConfiguration& config) {
  std::set<ChannelName> names;
  config.collect_names(names);
  return ChannelName{names.empty() ? 1 : names.rbegin()->id + 1};
}

Verdict check_config(const kernel::NamelessConfiguration& config,
                     const TypeRef& type, const Budget& budget,
                     const PeerSource& peers) {
  Engine engine{budget, peers};
  ChannelName a = representative_provider(config);
  Configuration start = config.instantiate(a);
  Outcome out = engine.T(start, a, type, 0);
  Verdict verdict;
  verdict.value = out.value;
  verdict.approximate = out.approximate;
  verdict.witness = out.witness;
  verdict.stats = engine.stats;
  if (out.value == Compliance::NonCompliant) verdict.failure = engine.deepest;
  if (out.value == Compliance::Unknown)
    verdict.unknown_reason = engine.unknown_reason.empty()
                                 ? "exploration budget exhausted"
                                 : engine.unknown_reason;
  return verdict;
}

Verdict check_config(const kernel::NamelessConfiguration& config,
                     const TypeRef& type, const Budget& budget) {
  return check_config(config, type, budget, default_peer_source());
}

std::string verdict_to_json(const Verdict& verdict) {
  nlohmann::json j;
  j["value"] = to_string(verdict.value);
  j["approximate"] = verdict.approximate;
  j["witness"] = verdict.witness
                     ? nlohmann::json::parse(witness_to_json(*verdict.witness))
                     : nlohmann::json();
  if (verdict.failure.has_value()) {
    j["failure"] = {
        {"reason", verdict.failure->reason},
        {"type", verdict.failure->type},
        {"config", nlohmann::json::parse(kernel::config_to_json(verdict.failure->config))},
        {"depth", verdict.failure->depth},
    };
  } else {
    j["failure"] = nullptr;
  }
  j["unknown_reason"] =
      verdict.value == Compliance::Unknown ? nlohmann::json(verdict.unknown_reason)
                                           : nlohmann::json();
  j["stats"] = {
      {"closures", verdict.stats.closures},
      {"value_candidates", verdict.stats.value_candidates},
      {"memo_hits", verdict.stats.memo_hits},
      {"partitions_tried", verdict.stats.partitions_tried},
      {"steps_replayed", verdict.stats.steps_replayed},
  };
  return j.dump();
}

}  // namespace sesscheck::logrel
