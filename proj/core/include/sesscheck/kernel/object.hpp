#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>

namespace sesscheck::kernel {

// Identifies a registered process language.
struct LangId {
  std::uint32_t value = 0;

  auto operator<=>(const LangId&) const = default;
};

// Language-specific process state. Concrete languages derive from this and
// downcast behind their LangId.
struct ObjectBody {
  virtual ~ObjectBody() = default;
};

// A process body tagged with its language, independent of any providing
// channel. `key` is the language's canonical serialization of the body;
// equality and ordering go through (lang, key) so the kernel never has to
// interpret bodies itself.
class NamelessObject {
 public:
  NamelessObject(LangId lang, std::shared_ptr<const ObjectBody> body, std::string key)
      : lang_(lang), body_(std::move(body)), key_(std::move(key)) {}

  LangId lang() const { return lang_; }
  const ObjectBody& body() const { return *body_; }
  const std::shared_ptr<const ObjectBody>& body_ptr() const { return body_; }
  const std::string& key() const { return key_; }

  friend bool operator==(const NamelessObject& a, const NamelessObject& b) {
    return a.lang_ == b.lang_ && a.key_ == b.key_;
  }
  friend std::strong_ordering operator<=>(const NamelessObject& a, const NamelessObject& b) {
    if (auto c = a.lang_ <=> b.lang_; c != 0) return c;
    return a.key_ <=> b.key_;
  }

 private:
  LangId lang_;
  std::shared_ptr<const ObjectBody> body_;
  std::string key_;
};

}  // namespace sesscheck::kernel
