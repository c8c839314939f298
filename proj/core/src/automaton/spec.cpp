#include "sesscheck/automaton/spec.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "sesscheck/kernel/process.hpp"

namespace sesscheck::automata {

namespace {

using nlohmann::json;

const char* kind_name(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::ReceiveSelector: return "recv_sel";
    case EdgeKind::SendSelector: return "send_sel";
    case EdgeKind::SendClose: return "send_close";
  }
  return "?";
}

}  // namespace

void AutomatonSpec::normalize() {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void AutomatonSpec::validate() const {
  if (states.empty()) throw SpecError("machine declares no states", "states");
  std::set<std::string> known(states.begin(), states.end());
  if (!known.contains(initial))
    throw DanglingStateError("initial state \"" + initial + "\" is not declared");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const AutomatonEdge& e = edges[i];
    std::string path = "transitions[" + std::to_string(i) + "]";
    if (!known.contains(e.from))
      throw DanglingStateError("edge source \"" + e.from + "\" is not declared");
    if (e.kind == EdgeKind::SendClose) {
      if (e.to.has_value())
        throw SpecError("send_close must terminate the machine, not reach \"" + *e.to + "\"",
                        path + ".to");
    } else {
      if (!e.to.has_value()) throw SpecError("selector edge needs a target state", path + ".to");
      if (!known.contains(*e.to))
        throw DanglingStateError("edge target \"" + *e.to + "\" is not declared");
    }
  }
}

std::string AutomatonSpec::to_json() const {
  json transitions = json::array();
  for (const AutomatonEdge& e : edges) {
    json entry{{"from", e.from}, {"kind", kind_name(e.kind)}};
    if (e.kind != EdgeKind::SendClose) {
      entry["sel"] = kernel::selector_index(e.sel);
      entry["to"] = *e.to;
    }
    transitions.push_back(std::move(entry));
  }
  return json{{"states", states}, {"initial", initial}, {"transitions", std::move(transitions)}}
      .dump();
}

std::shared_ptr<const AutomatonSpec> AutomatonSpec::bit_flip() {
  static const std::shared_ptr<const AutomatonSpec> machine = [] {
    auto spec = std::make_shared<AutomatonSpec>();
    spec->states = {"S0", "S1", "S2", "S3"};
    spec->initial = "S0";
    using K = EdgeKind;
    using S = kernel::Selector;
    spec->edges = {
        {"S0", K::ReceiveSelector, S::pi1, "S1"},
        {"S0", K::ReceiveSelector, S::pi2, "S2"},
        {"S1", K::SendSelector, S::pi2, "S3"},
        {"S2", K::SendSelector, S::pi1, "S3"},
        {"S3", K::SendClose, S::pi1, std::nullopt},
    };
    spec->normalize();
    spec->validate();
    return std::shared_ptr<const AutomatonSpec>(std::move(spec));
  }();
  return machine;
}

std::shared_ptr<const AutomatonSpec> load_automaton(const std::string& text) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) throw SpecError("machine description is not valid JSON", "$");
  if (!value.is_object()) throw SpecError("machine description must be a JSON object", "$");
  for (const auto& [key, sub] : value.items()) {
    (void)sub;
    if (key != "states" && key != "initial" && key != "transitions")
      throw SpecError("unknown field \"" + key + "\"", key);
  }
  if (!value.contains("states") || !value.at("states").is_array())
    throw SpecError("\"states\" must be an array of names", "states");
  if (!value.contains("initial") || !value.at("initial").is_string())
    throw SpecError("\"initial\" must be a state name", "initial");
  if (!value.contains("transitions") || !value.at("transitions").is_array())
    throw SpecError("\"transitions\" must be an array", "transitions");

  auto spec = std::make_shared<AutomatonSpec>();
  std::set<std::string> seen_states;
  for (std::size_t i = 0; i < value.at("states").size(); ++i) {
    const json& s = value.at("states")[i];
    if (!s.is_string())
      throw SpecError("state name must be a string", "states[" + std::to_string(i) + "]");
    if (!seen_states.insert(s.get<std::string>()).second)
      throw SpecError("state \"" + s.get<std::string>() + "\" declared twice",
                      "states[" + std::to_string(i) + "]");
    spec->states.push_back(s.get<std::string>());
  }
  spec->initial = value.at("initial").get<std::string>();

  for (std::size_t i = 0; i < value.at("transitions").size(); ++i) {
    const json& t = value.at("transitions")[i];
    std::string path = "transitions[" + std::to_string(i) + "]";
    if (!t.is_object()) throw SpecError("transition must be an object", path);
    for (const auto& [key, sub] : t.items()) {
      (void)sub;
      if (key != "from" && key != "kind" && key != "sel" && key != "to")
        throw SpecError("unknown field \"" + key + "\"", path + "." + key);
    }
    if (!t.contains("from") || !t.at("from").is_string())
      throw SpecError("transition needs a \"from\" state", path + ".from");
    if (!t.contains("kind") || !t.at("kind").is_string())
      throw SpecError("transition needs a \"kind\"", path + ".kind");

    AutomatonEdge edge;
    edge.from = t.at("from").get<std::string>();
    auto kind = t.at("kind").get<std::string>();
    if (kind == "recv_sel") {
      edge.kind = EdgeKind::ReceiveSelector;
    } else if (kind == "send_sel") {
      edge.kind = EdgeKind::SendSelector;
    } else if (kind == "send_close") {
      edge.kind = EdgeKind::SendClose;
    } else {
      throw SpecError("kind must be recv_sel, send_sel, or send_close; got \"" + kind + "\"",
                      path + ".kind");
    }

    if (edge.kind == EdgeKind::SendClose) {
      if (t.contains("sel")) throw SpecError("send_close carries no selector", path + ".sel");
      if (t.contains("to") && !t.at("to").is_null())
        throw SpecError("send_close terminates the machine; drop \"to\"", path + ".to");
    } else {
      if (!t.contains("sel") || !t.at("sel").is_number_integer())
        throw SpecError("selector edge needs \"sel\" of 1 or 2", path + ".sel");
      int sel = t.at("sel").get<int>();
      if (sel != 1 && sel != 2)
        throw SpecError("\"sel\" must be 1 or 2, got " + std::to_string(sel), path + ".sel");
      edge.sel = kernel::selector_from_index(sel);
      if (!t.contains("to") || !t.at("to").is_string())
        throw SpecError("selector edge needs a \"to\" state", path + ".to");
      edge.to = t.at("to").get<std::string>();
    }
    spec->edges.push_back(std::move(edge));
  }

  spec->normalize();
  spec->validate();
  return spec;
}

std::vector<kernel::ObjTransition> automaton_transitions(
    const AutomatonSpec& spec, const std::string& state,
    kernel::ChannelName provider,
    const std::function<kernel::AtomicProcess(const std::string&)>& at_state) {
  std::vector<kernel::ObjTransition> out;
  for (const AutomatonEdge& e : spec.edges) {
    if (e.from != state) continue;
    switch (e.kind) {
      case EdgeKind::ReceiveSelector:
        out.push_back({kernel::Action::receive(
                           provider, kernel::Payload::selector(e.sel)),
                       {at_state(*e.to)}});
        break;
      case EdgeKind::SendSelector:
        out.push_back({kernel::Action::send(
                           provider, kernel::Payload::selector(e.sel)),
                       {at_state(*e.to)}});
        break;
      case EdgeKind::SendClose:
        out.push_back(
            {kernel::Action::send(provider, kernel::Payload::close()), {}});
        break;
    }
  }
  return out;
}

}  // namespace sesscheck::automata
