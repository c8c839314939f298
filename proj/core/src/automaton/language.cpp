#include "sesscheck/automaton/language.hpp"

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sesscheck/errors.hpp"
#include "sesscheck/kernel/registry.hpp"

namespace sesscheck::automata {
namespace {

using json = nlohmann::json;
using kernel::ChannelName;
using kernel::ObjectBody;

struct AutomatonBody final : ObjectBody {
  std::shared_ptr<const AutomatonSpec> spec;
  std::string state;

  AutomatonBody(std::shared_ptr<const AutomatonSpec> s, std::string st)
      : spec(std::move(s)), state(std::move(st)) {}
};

struct BitFlipBody final : ObjectBody {
  std::string state;

  explicit BitFlipBody(std::string st) : state(std::move(st)) {}
};

bool known_state(const AutomatonSpec& spec, const std::string& state) {
  return std::find(spec.states.begin(), spec.states.end(), state) !=
         spec.states.end();
}

// Machine bodies mention no channels; only the provider appears in their
// transitions, so renaming a body is the identity.
class AutomatonLang final : public kernel::ProcessLanguage {
 public:
  std::string_view name() const override { return "automaton"; }

  bool valid(const ObjectBody& body) const override {
    const auto* b = dynamic_cast<const AutomatonBody*>(&body);
    return b != nullptr && b->spec != nullptr && known_state(*b->spec, b->state);
  }

  std::string body_key(const ObjectBody& body) const override {
    const auto& b = dynamic_cast<const AutomatonBody&>(body);
    return b.spec->to_json() + "@" + b.state;
  }

  std::string body_to_json(const ObjectBody& body) const override {
    const auto& b = dynamic_cast<const AutomatonBody&>(body);
    json j;
    j["spec"] = json::parse(b.spec->to_json());
    j["state"] = b.state;
    return j.dump();
  }

  std::shared_ptr<const ObjectBody> body_from_json(const std::string& text) const override {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw MalformedConfigError("automaton body must be a JSON object");
    for (const auto& item : j.items())
      if (item.key() != "spec" && item.key() != "state")
        throw MalformedConfigError("unknown field in automaton body: " + item.key());
    if (!j.contains("spec") || !j.contains("state") || !j["state"].is_string())
      throw MalformedConfigError(
          "automaton body needs a \"spec\" object and a \"state\" string");
    std::shared_ptr<const AutomatonSpec> spec = load_automaton(j["spec"].dump());
    std::string state = j["state"].get<std::string>();
    if (!known_state(*spec, state))
      throw MalformedConfigError("automaton body state \"" + state +
                                 "\" is not declared by its spec");
    return std::make_shared<AutomatonBody>(std::move(spec), std::move(state));
  }

  void collect_channels(const ObjectBody&, std::set<ChannelName>&) const override {}

  std::shared_ptr<const ObjectBody> rename_body(const ObjectBody& body,
                                                const kernel::Renaming&) const override {
    const auto& b = dynamic_cast<const AutomatonBody&>(body);
    return std::make_shared<AutomatonBody>(b.spec, b.state);
  }

  std::vector<kernel::ObjTransition> transitions(const ObjectBody& body,
                                                 ChannelName provider,
                                                 const kernel::StepProbe&) const override {
    const auto& b = dynamic_cast<const AutomatonBody&>(body);
    return automaton_transitions(
        *b.spec, b.state, provider, [&](const std::string& next) {
          return kernel::AtomicProcess::proc(provider,
                                             automaton_object(b.spec, next));
        });
  }
};

class BitFlipLang final : public kernel::ProcessLanguage {
 public:
  std::string_view name() const override { return "bitflip"; }

  bool valid(const ObjectBody& body) const override {
    const auto* b = dynamic_cast<const BitFlipBody*>(&body);
    return b != nullptr && known_state(*AutomatonSpec::bit_flip(), b->state);
  }

  std::string body_key(const ObjectBody& body) const override {
    return dynamic_cast<const BitFlipBody&>(body).state;
  }

  std::string body_to_json(const ObjectBody& body) const override {
    return json(dynamic_cast<const BitFlipBody&>(body).state).dump();
  }

  std::shared_ptr<const ObjectBody> body_from_json(const std::string& text) const override {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_string())
      throw MalformedConfigError("bitflip body must be a JSON string");
    std::string state = j.get<std::string>();
    if (!known_state(*AutomatonSpec::bit_flip(), state))
      throw MalformedConfigError("unknown bitflip state \"" + state + "\"");
    return std::make_shared<BitFlipBody>(std::move(state));
  }

  void collect_channels(const ObjectBody&, std::set<ChannelName>&) const override {}

  std::shared_ptr<const ObjectBody> rename_body(const ObjectBody& body,
                                                const kernel::Renaming&) const override {
    return std::make_shared<BitFlipBody>(dynamic_cast<const BitFlipBody&>(body).state);
  }

  std::vector<kernel::ObjTransition> transitions(const ObjectBody& body,
                                                 ChannelName provider,
                                                 const kernel::StepProbe&) const override {
    const auto& b = dynamic_cast<const BitFlipBody&>(body);
    return automaton_transitions(
        *AutomatonSpec::bit_flip(), b.state, provider,
        [&](const std::string& next) {
          return kernel::AtomicProcess::proc(provider, bitflip_object(next));
        });
  }
};

}  // namespace

kernel::LangId automaton_lang_id() {
  static const kernel::LangId id =
      kernel::LanguageRegistry::instance().register_language(
          std::make_unique<AutomatonLang>());
  return id;
}

kernel::NamelessObject automaton_object(std::shared_ptr<const AutomatonSpec> spec,
                                        std::string state) {
  if (spec == nullptr || !known_state(*spec, state))
    throw MalformedConfigError("automaton state \"" + state +
                               "\" is not declared by its spec");
  return kernel::make_object(
      automaton_lang_id(),
      std::make_shared<AutomatonBody>(std::move(spec), std::move(state)));
}

kernel::NamelessConfiguration automaton_config(std::shared_ptr<const AutomatonSpec> spec) {
  std::string initial = spec->initial;
  return {kernel::Configuration{}, automaton_object(std::move(spec), std::move(initial))};
}

kernel::LangId bitflip_lang_id() {
  static const kernel::LangId id =
      kernel::LanguageRegistry::instance().register_language(
          std::make_unique<BitFlipLang>());
  return id;
}

kernel::NamelessObject bitflip_object(std::string_view state) {
  std::string st(state);
  if (!known_state(*AutomatonSpec::bit_flip(), st))
    throw MalformedConfigError("unknown bitflip state \"" + st + "\"");
  return kernel::make_object(bitflip_lang_id(),
                             std::make_shared<BitFlipBody>(std::move(st)));
}

}  // namespace sesscheck::automata
