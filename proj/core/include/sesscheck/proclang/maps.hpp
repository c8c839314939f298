#pragma once

#include <map>

namespace sesscheck::proclang {

// Two maps are related by R when their domains coincide and R holds on the
// values pointwise. This is how complement maps are tied to typing contexts.
template <class K, class V1, class V2, class R>
bool related_maps(const std::map<K, V1>& m1, const std::map<K, V2>& m2, R&& rel) {
  if (m1.size() != m2.size()) return false;
  auto it2 = m2.begin();
  for (auto it1 = m1.begin(); it1 != m1.end(); ++it1, ++it2) {
    if (it1->first != it2->first) return false;
    if (!rel(it1->second, it2->second)) return false;
  }
  return true;
}

// Applies f to every value, keeping keys.
template <class F, class K, class V>
auto map_vals(F&& f, const std::map<K, V>& m) {
  std::map<K, decltype(f(std::declval<const V&>()))> out;
  for (const auto& [k, v] : m) out.emplace(k, f(v));
  return out;
}

// The map without `x`; absent keys are fine.
template <class K, class V>
std::map<K, V> remove_key(std::map<K, V> m, const K& x) {
  m.erase(x);
  return m;
}

}  // namespace sesscheck::proclang
