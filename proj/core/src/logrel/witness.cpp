#include "sesscheck/logrel/witness.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "sesscheck/kernel/serialize.hpp"
#include "sesscheck/kernel/step.hpp"

namespace sesscheck::logrel {

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::SilentPrefix: return "silent-prefix";
    case WitnessKind::CloseStep: return "close-step";
    case WitnessKind::TensorSplit: return "tensor-split";
    case WitnessKind::LolliCases: return "lolli-cases";
    case WitnessKind::WithBranches: return "with-branches";
    case WitnessKind::PlusChoice: return "plus-choice";
  }
  return "unknown";
}

namespace {

using json = nlohmann::json;
using kernel::Action;
using kernel::ChannelName;
using kernel::Configuration;
using kernel::Payload;
using types::TypeKind;
using types::TypeRef;

json step_json(const ReplayStep& s) {
  return json{{"before", json::parse(kernel::config_to_json(s.before))},
              {"action", json::parse(kernel::action_to_json(s.action))},
              {"after", json::parse(kernel::config_to_json(s.after))}};
}

json witness_json(const Witness& w) {
  json j;
  j["kind"] = to_string(w.kind);
  j["steps"] = json::array();
  for (const ReplayStep& s : w.steps) j["steps"].push_back(step_json(s));
  switch (w.kind) {
    case WitnessKind::PlusChoice:
      j["sel"] = kernel::to_string(w.sel);
      break;
    case WitnessKind::TensorSplit:
      j["sent"] = w.sent.id;
      j["left"] = json::parse(kernel::config_to_json(w.left));
      j["right"] = json::parse(kernel::config_to_json(w.right));
      break;
    case WitnessKind::LolliCases: {
      j["peers"] = json::array();
      for (std::size_t i = 0; i < w.peer_configs.size(); ++i)
        j["peers"].push_back(
            {{"at", w.peer_chans[i].id},
             {"config", json::parse(kernel::config_to_json(w.peer_configs[i]))}});
      break;
    }
    default:
      break;
  }
  j["children"] = json::array();
  for (const WitnessRef& c : w.children) j["children"].push_back(witness_json(*c));
  return j;
}

bool fail(std::string* why, std::string msg) {
  if (why != nullptr) *why = std::move(msg);
  return false;
}

// The step must be one the kernel reproduces from `from`.
bool replayable(const ReplayStep& s, const Configuration& from, std::string* why) {
  if (!(s.before == from))
    return fail(why, "step starts from an unexpected configuration");
  auto nexts = kernel::step_with_action(s.before, s.action);
  if (std::find(nexts.begin(), nexts.end(), s.after) == nexts.end())
    return fail(why, "the kernel does not reproduce the step " +
                         kernel::to_string(s.action));
  return true;
}

bool verify(const Witness& w, const Configuration& config, ChannelName a,
            const TypeRef& type, std::string* why) {
  switch (w.kind) {
    case WitnessKind::SilentPrefix: {
      if (w.children.size() != 1 || w.steps.empty())
        return fail(why, "malformed silent prefix");
      Configuration cur = config;
      for (const ReplayStep& s : w.steps) {
        if (!s.action.is_silent())
          return fail(why, "labelled action inside a silent prefix");
        if (!replayable(s, cur, why)) return false;
        cur = s.after;
      }
      return verify(*w.children[0], cur, a, type, why);
    }

    case WitnessKind::CloseStep: {
      if (type->kind() != TypeKind::One)
        return fail(why, "close step against type " + types::print_type(type));
      if (w.steps.size() != 1 || !w.children.empty())
        return fail(why, "malformed close step");
      const ReplayStep& s = w.steps[0];
      if (!(s.action == Action::send(a, Payload::close())))
        return fail(why, "close step sends the wrong action");
      if (!s.after.procs().empty())
        return fail(why, "close step leaves processes behind");
      return replayable(s, config, why);
    }

    case WitnessKind::PlusChoice: {
      if (type->kind() != TypeKind::Plus)
        return fail(why, "branch choice against type " + types::print_type(type));
      if (w.steps.size() != 1 || w.children.size() != 1)
        return fail(why, "malformed branch choice");
      const ReplayStep& s = w.steps[0];
      if (!(s.action == Action::send(a, Payload::selector(w.sel))))
        return fail(why, "branch choice sends the wrong action");
      if (!replayable(s, config, why)) return false;
      const TypeRef& branch =
          w.sel == kernel::Selector::pi1 ? type->left() : type->right();
      return verify(*w.children[0], s.after, a, branch, why);
    }

    case WitnessKind::WithBranches: {
      if (type->kind() != TypeKind::With)
        return fail(why, "branch offer against type " + types::print_type(type));
      if (w.steps.size() != 2 || w.children.size() != 2)
        return fail(why, "malformed branch offer");
      const kernel::Selector sels[2] = {kernel::Selector::pi1, kernel::Selector::pi2};
      const TypeRef branches[2] = {type->left(), type->right()};
      for (int i = 0; i < 2; ++i) {
        const ReplayStep& s = w.steps[i];
        if (!(s.action == Action::receive(a, Payload::selector(sels[i]))))
          return fail(why, "branch offer receives the wrong action");
        if (!replayable(s, config, why)) return false;
        if (!verify(*w.children[i], s.after, a, branches[i], why)) return false;
      }
      return true;
    }

    case WitnessKind::TensorSplit: {
      if (type->kind() != TypeKind::Tensor)
        return fail(why, "channel send against type " + types::print_type(type));
      if (w.steps.size() != 1 || w.children.size() != 2)
        return fail(why, "malformed channel send");
      const ReplayStep& s = w.steps[0];
      if (!(s.action == Action::send(a, Payload::channel(w.sent))))
        return fail(why, "channel send has the wrong action");
      if (!replayable(s, config, why)) return false;
      if (!(w.left.merged_with(w.right) == s.after))
        return fail(why, "the recorded split does not reassemble the remainder");
      return verify(*w.children[0], w.left, w.sent, type->left(), why) &&
             verify(*w.children[1], w.right, a, type->right(), why);
    }

    case WitnessKind::LolliCases: {
      if (type->kind() != TypeKind::Lolli)
        return fail(why, "channel receive against type " + types::print_type(type));
      if (w.steps.empty() || w.steps.size() != w.children.size() ||
          w.steps.size() != w.peer_configs.size() ||
          w.steps.size() != w.peer_chans.size())
        return fail(why, "malformed channel receive cases");
      for (std::size_t i = 0; i < w.steps.size(); ++i) {
        const ReplayStep& s = w.steps[i];
        if (!(s.action == Action::receive(a, Payload::channel(w.peer_chans[i]))))
          return fail(why, "channel receive has the wrong action");
        if (!replayable(s, config, why)) return false;
        Configuration composite = s.after.merged_with(w.peer_configs[i]);
        if (composite.duplicate_provider().has_value())
          return fail(why, "peer collides with the configuration");
        if (!verify(*w.children[i], composite, a, type->right(), why)) return false;
      }
      return true;
    }
  }
  return fail(why, "unknown witness node");
}

}  // namespace

std::string witness_to_json(const Witness& witness) {
  return witness_json(witness).dump();
}

bool verify_witness(const Witness& witness, const Configuration& config,
                    ChannelName provider, const TypeRef& type, std::string* why) {
  return verify(witness, config, provider, type, why);
}

}  // namespace sesscheck::logrel
