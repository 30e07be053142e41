#pragma once

#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace vfe {

// Ordered key-value document. Text form is "key: value", structured form is
// "key=value", one entry per line in insertion order.
class Report {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "yes" : "no")); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  template <class T>
    requires std::is_arithmetic_v<T>
  void add(std::string key, T value) {
    add(std::move(key), std::to_string(value));
  }
  // key.count, then key.0, key.1, ...
  void add_list(const std::string& key, const std::vector<std::string>& values);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  const std::string* find(const std::string& key) const;

  std::string text() const;
  std::string structured() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace vfe
