#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vfree.hpp"

namespace vfe {

struct NamedEndo {
  std::string name;
  GEndo endo;
  friend bool operator==(const NamedEndo&, const NamedEndo&) = default;
};

// Raw parse of a presentation file; no semantic validation beyond what the
// grammar needs.
struct Input {
  Presentation presentation;
  std::vector<NamedEndo> endos;
  friend bool operator==(const Input&, const Input&) = default;
};

// Throws InputError with "line L, column C: ..." diagnostics.
Input parse_input(std::string_view text);
std::string serialize(const Input& input);

// A validated presentation together with its checked endomorphisms.
class Document {
 public:
  explicit Document(Input input);
  static Document from_text(std::string_view text) { return Document(parse_input(text)); }
  static Document from_file(const std::string& path);

  const VFGroup& group() const { return group_; }
  const std::vector<NamedEndo>& endos() const { return endos_; }
  // Throws InputError for unknown names.
  const GEndo& endo(const std::string& name) const;

 private:
  VFGroup group_;
  std::vector<NamedEndo> endos_;
};

}  // namespace vfe
