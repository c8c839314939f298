#include "sesscheck/kernel/registry.hpp"

#include "sesscheck/errors.hpp"

namespace sesscheck::kernel {

LanguageRegistry& LanguageRegistry::instance() {
  static LanguageRegistry registry;
  return registry;
}

LangId LanguageRegistry::register_language(std::unique_ptr<const ProcessLanguage> lang) {
  std::string name(lang->name());
  if (auto it = by_name_.find(name); it != by_name_.end()) return it->second;
  LangId id{static_cast<std::uint32_t>(langs_.size())};
  langs_.push_back(std::move(lang));
  by_name_.emplace(std::move(name), id);
  return id;
}

const ProcessLanguage& LanguageRegistry::lookup(LangId id) const {
  if (id.value >= langs_.size())
    throw UnknownLanguageError("no process language registered under id " +
                               std::to_string(id.value));
  return *langs_[id.value];
}

std::optional<LangId> LanguageRegistry::find(std::string_view name) const {
  if (auto it = by_name_.find(name); it != by_name_.end()) return it->second;
  return std::nullopt;
}

std::vector<LangId> LanguageRegistry::registered() const {
  std::vector<LangId> ids;
  ids.reserve(langs_.size());
  for (std::uint32_t i = 0; i < langs_.size(); ++i) ids.push_back(LangId{i});
  return ids;
}

NamelessObject make_object(LangId lang, std::shared_ptr<const ObjectBody> body) {
  const ProcessLanguage& impl = LanguageRegistry::instance().lookup(lang);
  std::string key = impl.body_key(*body);
  return NamelessObject(lang, std::move(body), std::move(key));
}

}  // namespace sesscheck::kernel
