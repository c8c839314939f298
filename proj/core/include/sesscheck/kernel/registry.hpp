#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sesscheck/kernel/language.hpp"
#include "sesscheck/kernel/object.hpp"

namespace sesscheck::kernel {

// Process-wide table of registered languages. Registration happens once per
// language during startup (idempotent per name); lookups are read-only after
// that, so no synchronization is provided.
class LanguageRegistry {
 public:
  static LanguageRegistry& instance();

  // Registers under the language's own name. Returns the existing id if the
  // name is already taken by a prior registration.
  LangId register_language(std::unique_ptr<const ProcessLanguage> lang);

  const ProcessLanguage& lookup(LangId id) const;  // throws UnknownLanguageError
  std::optional<LangId> find(std::string_view name) const;
  std::vector<LangId> registered() const;

 private:
  LanguageRegistry() = default;

  std::vector<std::unique_ptr<const ProcessLanguage>> langs_;
  std::map<std::string, LangId, std::less<>> by_name_;
};

// Convenience: NamelessObject with the key computed by the body's language.
NamelessObject make_object(LangId lang, std::shared_ptr<const ObjectBody> body);

}  // namespace sesscheck::kernel

namespace sesscheck {

// Registers the built-in languages (bit-flip machine, user automata, and the
// session calculus). Call once before deserializing configurations.
void register_builtin_languages();

}  // namespace sesscheck
