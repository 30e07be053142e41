#include "report.hpp"

#include "errors.hpp"

namespace vfe {

void Report::add(std::string key, std::string value) {
  if (key.empty() || key.find_first_of(" =:\n") != std::string::npos)
    throw Error("internal: bad report key '" + key + "'");
  if (value.find('\n') != std::string::npos) throw Error("internal: multi-line report value");
  entries_.emplace_back(std::move(key), std::move(value));
}

void Report::add_list(const std::string& key, const std::vector<std::string>& values) {
  add(key + ".count", values.size());
  for (std::size_t i = 0; i < values.size(); ++i) add(key + "." + std::to_string(i), values[i]);
}

const std::string* Report::find(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

std::string Report::text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + ": " + v + "\n";
  return out;
}

std::string Report::structured() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

}  // namespace vfe
