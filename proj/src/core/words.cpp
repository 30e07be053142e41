#include "words.hpp"

#include <cctype>

#include "errors.hpp"

namespace vfe {

Word Word::reduce(std::span<const Letter> raw) {
  WordBuilder b;
  b.reserve(raw.size());
  for (Letter x : raw) b.push(x);
  return std::move(b).build();
}

Word Word::reduce(std::span<const Letter> raw, std::size_t alphabet_size) {
  for (Letter x : raw)
    if (x.gen >= alphabet_size)
      throw DomainError("generator id " + std::to_string(x.gen) +
                        " outside alphabet of size " +
                        std::to_string(alphabet_size));
  return reduce(raw);
}

std::size_t Word::span_of_generators() const {
  std::size_t n = 0;
  for (Letter x : letters_) n = std::max<std::size_t>(n, x.gen + 1);
  return n;
}

Word concat(const Word& w1, const Word& w2) {
  WordBuilder b(w1);
  b.append(w2);
  return std::move(b).build();
}

Word concat(std::initializer_list<Word> parts) {
  WordBuilder b;
  for (const Word& w : parts) b.append(w);
  return std::move(b).build();
}

Word invert(const Word& w) {
  WordBuilder b;
  b.reserve(w.size());
  b.append_inverse(w);
  return std::move(b).build();
}

Word power(const Word& w, long k) {
  if (k < 0) return power(invert(w), -k);
  WordBuilder b;
  for (long i = 0; i < k; ++i) b.append(w);
  return std::move(b).build();
}

Word conjugate(const Word& w, const Word& u) {
  WordBuilder b;
  b.append_inverse(u);
  b.append(w);
  b.append(u);
  return std::move(b).build();
}

CyclicReduction cyclic_reduce(const Word& w) {
  const std::size_t n = w.size();
  std::size_t k = 0;
  while (2 * k + 1 < n && cancels(w[k], w[n - 1 - k])) ++k;
  std::vector<Letter> conj(w.begin(), w.begin() + static_cast<long>(k));
  std::vector<Letter> core(w.begin() + static_cast<long>(k),
                           w.end() - static_cast<long>(k));
  return {Word::reduce(core), Word::reduce(conj)};
}

PrimitiveRoot primitive_root(const Word& w) {
  if (w.empty()) throw DomainError("primitive root of the identity");
  auto [core, conj] = cyclic_reduce(w);
  const std::size_t n = core.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i)
      periodic = core[i] == core[i - d];
    if (!periodic) continue;
    std::vector<Letter> piece(core.begin(), core.begin() + static_cast<long>(d));
    WordBuilder b(conj);
    for (Letter x : piece) b.push(x);
    b.append_inverse(conj);
    return {std::move(b).build(), static_cast<unsigned>(n / d)};
  }
  return {w, 1};  // unreachable: d = n always matches
}

bool commute(const Word& w1, const Word& w2) {
  const bool direct = concat(w1, w2) == concat(w2, w1);
  if (w1.empty() || w2.empty()) return direct;
  // Nontrivial commuting elements of a free group share a primitive root.
  const bool by_root = primitive_root(w1).root == primitive_root(w2).root ||
                       primitive_root(w1).root == invert(primitive_root(w2).root);
  if (direct != by_root)
    throw Error("commutation cross-check disagrees");
  return direct;
}

bool is_valid_name(std::string_view name) {
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
  for (char ch : name)
    if (!((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_'))
      return false;
  return true;
}

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
      ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    if (!is_valid_name(names_[i]))
      throw InputError("invalid generator name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], i).second)
      throw InputError("duplicate generator name '" + names_[i] + "'");
  }
}

Alphabet Alphabet::generic(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    names.push_back(std::string(prefix) + std::to_string(i));
  return Alphabet(std::move(names));
}

std::optional<std::uint32_t> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Alphabet::format(Letter x) const {
  std::string s = x.gen < names_.size() ? names_[x.gen]
                                        : "?" + std::to_string(x.gen);
  if (x.inverse) s += "^-1";
  return s;
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (Letter x : w) {
    if (!out.empty()) out += ' ';
    out += format(x);
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  return parse_tokens(split_ws(text));
}

Word Alphabet::parse_tokens(std::span<const std::string> tokens) const {
  if (tokens.size() == 1 && tokens[0] == "1") return Word();
  std::vector<Letter> raw;
  raw.reserve(tokens.size());
  for (const std::string& tok : tokens) {
    std::string_view name = tok;
    bool inv = false;
    if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
      name.remove_suffix(3);
      inv = true;
    }
    auto g = find(name);
    if (!g) throw InputError("unknown generator '" + tok + "'");
    raw.push_back(Letter{*g, inv});
  }
  return Word::reduce(raw);
}

}  // namespace vfe
