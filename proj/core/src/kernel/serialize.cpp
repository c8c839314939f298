#include "sesscheck/kernel/serialize.hpp"

#include <nlohmann/json.hpp>

#include "sesscheck/errors.hpp"
#include "sesscheck/kernel/registry.hpp"

namespace sesscheck::kernel {

namespace {

using nlohmann::json;

json payload_to_value(const Payload& payload) {
  if (payload.is_selector()) return json{{"sel", selector_index(payload.as_selector())}};
  if (payload.is_close()) return json("close");
  return json{{"chan", payload.as_channel().id}};
}

Payload payload_from_value(const json& value) {
  if (value.is_string() && value.get<std::string>() == "close") return Payload::close();
  if (value.is_object() && value.contains("sel"))
    return Payload::selector(selector_from_index(value.at("sel").get<int>()));
  if (value.is_object() && value.contains("chan"))
    return Payload::channel(ChannelName{value.at("chan").get<std::uint64_t>()});
  throw MalformedConfigError("unrecognized payload encoding: " + value.dump());
}

json config_to_value(const Configuration& config) {
  const auto& registry = LanguageRegistry::instance();
  json procs = json::array();
  for (const AtomicProcess& p : config.procs()) {
    if (p.is_fwd()) {
      procs.push_back(json{{"fwd", {{"from", p.provider().id}, {"to", p.target().id}}}});
    } else {
      const ProcessLanguage& lang = registry.lookup(p.obj().lang());
      json body = json::parse(lang.body_to_json(p.obj().body()));
      procs.push_back(json{{"proc",
                            {{"chan", p.provider().id},
                             {"lang", std::string(lang.name())},
                             {"body", std::move(body)}}}});
    }
  }
  return json{{"procs", std::move(procs)}};
}

Configuration config_from_value(const json& value) {
  const auto& registry = LanguageRegistry::instance();
  if (!value.is_object() || !value.contains("procs") || !value.at("procs").is_array())
    throw MalformedConfigError("configuration must be an object with a \"procs\" array");
  std::vector<AtomicProcess> procs;
  for (const json& entry : value.at("procs")) {
    if (entry.is_object() && entry.contains("proc")) {
      const json& p = entry.at("proc");
      if (!p.contains("chan") || !p.contains("lang") || !p.contains("body"))
        throw MalformedConfigError("proc entry needs chan, lang, and body: " + entry.dump());
      auto lang_name = p.at("lang").get<std::string>();
      std::optional<LangId> id = registry.find(lang_name);
      if (!id.has_value())
        throw UnknownLanguageError("no process language registered under name \"" + lang_name +
                                   "\"");
      const ProcessLanguage& lang = registry.lookup(*id);
      auto body = lang.body_from_json(p.at("body").dump());
      if (!lang.valid(*body))
        throw MalformedConfigError("invalid " + lang_name + " body: " + p.at("body").dump());
      procs.push_back(
          AtomicProcess::proc(ChannelName{p.at("chan").get<std::uint64_t>()},
                              make_object(*id, std::move(body))));
    } else if (entry.is_object() && entry.contains("fwd")) {
      const json& f = entry.at("fwd");
      if (!f.contains("from") || !f.contains("to"))
        throw MalformedConfigError("fwd entry needs from and to: " + entry.dump());
      procs.push_back(AtomicProcess::fwd(ChannelName{f.at("from").get<std::uint64_t>()},
                                         ChannelName{f.at("to").get<std::uint64_t>()}));
    } else {
      throw MalformedConfigError("process entry must contain \"proc\" or \"fwd\": " +
                                 entry.dump());
    }
  }
  Configuration config = Configuration::of(std::move(procs));
  if (auto dup = config.duplicate_provider(); dup.has_value())
    throw DuplicateProviderError("channel " + to_string(*dup) + " has two providers");
  return config;
}

}  // namespace

std::string config_to_json(const Configuration& config) { return config_to_value(config).dump(); }

Configuration config_from_json(const std::string& text) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) throw MalformedConfigError("configuration is not valid JSON");
  return config_from_value(value);
}

std::string nameless_to_json(const NamelessConfiguration& config) {
  const ProcessLanguage& lang = LanguageRegistry::instance().lookup(config.head().lang());
  json head{{"lang", std::string(lang.name())},
            {"body", json::parse(lang.body_to_json(config.head().body()))}};
  return json{{"ambient", config_to_value(config.ambient())}, {"head", std::move(head)}}.dump();
}

NamelessConfiguration nameless_from_json(const std::string& text) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded() || !value.is_object() || !value.contains("ambient") ||
      !value.contains("head"))
    throw MalformedConfigError("nameless configuration needs \"ambient\" and \"head\"");
  Configuration ambient = config_from_value(value.at("ambient"));
  const json& h = value.at("head");
  if (!h.contains("lang") || !h.contains("body"))
    throw MalformedConfigError("head needs lang and body");
  const auto& registry = LanguageRegistry::instance();
  auto lang_name = h.at("lang").get<std::string>();
  std::optional<LangId> id = registry.find(lang_name);
  if (!id.has_value())
    throw UnknownLanguageError("no process language registered under name \"" + lang_name + "\"");
  auto body = registry.lookup(*id).body_from_json(h.at("body").dump());
  return NamelessConfiguration(std::move(ambient), make_object(*id, std::move(body)));
}

std::string action_to_json(const Action& action) {
  if (action.is_silent()) return json{{"silent", true}}.dump();
  const Labelled& l = action.label();
  return json{{"chan", l.chan.id},
              {"dir", l.dir == Direction::Send ? "!" : "?"},
              {"payload", payload_to_value(l.payload)}}
      .dump();
}

Action action_from_json(const std::string& text) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded() || !value.is_object())
    throw MalformedConfigError("action is not a JSON object");
  if (value.contains("silent")) return Action::silent();
  if (!value.contains("chan") || !value.contains("dir") || !value.contains("payload"))
    throw MalformedConfigError("labelled action needs chan, dir, and payload");
  ChannelName chan{value.at("chan").get<std::uint64_t>()};
  Payload payload = payload_from_value(value.at("payload"));
  auto dir = value.at("dir").get<std::string>();
  if (dir == "!") return Action::send(chan, payload);
  if (dir == "?") return Action::receive(chan, payload);
  throw MalformedConfigError("action dir must be \"!\" or \"?\", got \"" + dir + "\"");
}

}  // namespace sesscheck::kernel
