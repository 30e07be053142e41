#include "io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "errors.hpp"

namespace vfe {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back({std::string(line.substr(i, j - i)), i + 1});
    i = j;
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Input run() {
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool seen_group = false;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(start, end - start);
      ++line_no;
      line_ = line_no;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      auto tokens = tokenize(line);
      if (!tokens.empty()) {
        if (!seen_group) {
          if (tokens[0].text != "[group]") fail(tokens[0], "expected [group]");
          if (tokens.size() > 1) fail(tokens[1], "expected end of line");
          seen_group = true;
          section_ = Section::group;
        } else {
          handle(tokens);
        }
      }
      if (end == text_.size()) break;
      start = end + 1;
    }
    if (!seen_group) throw InputError("missing [group]");
    finish_endo();
    if (!have_generators_) throw InputError("missing free_generators line");
    build_tables();
    return std::move(input_);
  }

 private:
  enum class Section { group, endo };

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw InputError("line " + std::to_string(line_) + ", column " + std::to_string(t.column) +
                     ": " + msg);
  }
  [[noreturn]] void fail_eol(const std::vector<Token>& tokens, const std::string& msg) const {
    const Token& last = tokens.back();
    fail(Token{"", last.column + last.text.size()}, msg);
  }

  void handle(const std::vector<Token>& tokens) {
    const std::string& head = tokens[0].text;
    if (head.size() >= 2 && head.front() == '[') {
      start_endo(tokens);
      return;
    }
    if (section_ == Section::group) {
      if (head == "free_generators")
        read_generators(tokens);
      else if (head == "cosets")
        read_cosets(tokens);
      else if (head == "rel")
        read_rel(tokens);
      else
        fail(tokens[0], "expected free_generators, cosets or rel");
    } else {
      read_image(tokens);
    }
  }

  void expect_equals(const std::vector<Token>& tokens, std::size_t at) {
    if (tokens.size() <= at) fail_eol(tokens, "expected '='");
    if (tokens[at].text != "=") fail(tokens[at], "expected '='");
  }

  void read_generators(const std::vector<Token>& tokens) {
    if (have_generators_) fail(tokens[0], "duplicate free_generators line");
    if (have_cosets_ || !rels_.empty()) fail(tokens[0], "free_generators must come first");
    expect_equals(tokens, 1);
    std::vector<std::string> names;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      if (!is_valid_name(tokens[i].text)) fail(tokens[i], "expected a generator name");
      for (const auto& n : names)
        if (n == tokens[i].text) fail(tokens[i], "duplicate generator name");
      names.push_back(tokens[i].text);
    }
    input_.presentation.free = Alphabet(std::move(names));
    have_generators_ = true;
  }

  void read_cosets(const std::vector<Token>& tokens) {
    if (!have_generators_) fail(tokens[0], "expected free_generators before cosets");
    if (have_cosets_) fail(tokens[0], "duplicate cosets line");
    if (!rels_.empty()) fail(tokens[0], "cosets must precede rel lines");
    expect_equals(tokens, 1);
    if (tokens.size() < 3 || tokens[2].text != "1")
      fail(tokens.size() < 3 ? Token{"", tokens[1].column + 1} : tokens[2], "expected '1' as the first coset");
    std::vector<std::string> names{"1"};
    for (std::size_t i = 3; i < tokens.size(); ++i) {
      if (!is_valid_name(tokens[i].text)) fail(tokens[i], "expected a coset name");
      if (input_.presentation.free.find(tokens[i].text))
        fail(tokens[i], "coset name clashes with a generator");
      for (const auto& n : names)
        if (n == tokens[i].text) fail(tokens[i], "duplicate coset name");
      names.push_back(tokens[i].text);
    }
    input_.presentation.cosets = std::move(names);
    have_cosets_ = true;
  }

  std::optional<std::uint32_t> coset_index(const std::string& name) const {
    const auto& c = input_.presentation.cosets;
    for (std::uint32_t i = 0; i < c.size(); ++i)
      if (c[i] == name) return i;
    return std::nullopt;
  }

  Word read_word(const std::vector<Token>& tokens, std::size_t from, std::size_t to) {
    if (from >= to) {
      if (from < tokens.size()) fail(tokens[from], "expected a word");
      fail_eol(tokens, "expected a word");
    }
    if (to - from == 1 && tokens[from].text == "1") return Word();
    std::vector<std::string> names;
    for (std::size_t i = from; i < to; ++i) {
      std::string_view t = tokens[i].text;
      std::string_view name = t;
      if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") name.remove_suffix(3);
      if (!input_.presentation.free.find(name)) fail(tokens[i], "expected a generator name");
      names.emplace_back(t);
    }
    return input_.presentation.free.parse_tokens(names);
  }

  void read_rel(const std::vector<Token>& tokens) {
    if (!have_generators_) fail(tokens[0], "expected free_generators before rel");
    if (tokens.size() < 3) fail_eol(tokens, "expected two names after rel");
    auto i = coset_index(tokens[1].text);
    if (!i || *i == 0) fail(tokens[1], "expected a coset name");
    expect_equals(tokens, 3);
    if (tokens.size() < 5) fail_eol(tokens, "expected a word");
    const Token& last = tokens.back();
    auto key = std::make_pair(tokens[1].text, tokens[2].text);
    if (rels_.count(key)) fail(tokens[0], "duplicate relation");
    if (auto a = input_.presentation.free.find(tokens[2].text)) {
      if (last.text != tokens[1].text) fail(last, "expected trailing coset " + tokens[1].text);
      rels_[key] = {read_word(tokens, 4, tokens.size() - 1), *i, line_};
    } else if (auto j = coset_index(tokens[2].text); j && *j != 0) {
      auto r = coset_index(last.text);
      if (!r) fail(last, "expected a trailing coset name");
      rels_[key] = {read_word(tokens, 4, tokens.size() - 1), *r, line_};
    } else {
      fail(tokens[2], "expected a generator or coset name");
    }
  }

  void start_endo(const std::vector<Token>& tokens) {
    finish_endo();
    const std::string& h = tokens[0].text;
    if (h != "[endo" || tokens.size() != 2 || tokens[1].text.back() != ']')
      fail(tokens[0], "expected [endo NAME]");
    std::string name = tokens[1].text.substr(0, tokens[1].text.size() - 1);
    if (!is_valid_name(name)) fail(tokens[1], "expected an endomorphism name");
    for (const auto& e : input_.endos)
      if (e.name == name) fail(tokens[1], "duplicate endomorphism name");
    if (!have_generators_) fail(tokens[0], "expected free_generators before endomorphisms");
    if (section_ == Section::group) build_tables();
    section_ = Section::endo;
    current_ = NamedEndo{name, {}};
    const auto& p = input_.presentation;
    assigned_letters_.assign(p.free.size(), false);
    assigned_cosets_.assign(p.cosets.size(), false);
    current_->endo.letter_images.assign(p.free.size(), GElement{});
    current_->endo.coset_images.assign(p.cosets.size(), GElement{});
    assigned_cosets_[0] = true;
  }

  void read_image(const std::vector<Token>& tokens) {
    if (tokens.size() < 2 || tokens[1].text != "->")
      fail(tokens.size() < 2 ? Token{"", tokens[0].column + tokens[0].text.size()} : tokens[1],
           "expected '->'");
    if (tokens.size() < 3) fail_eol(tokens, "expected an element");
    const auto& p = input_.presentation;
    // Trailing coset: a coset name, and not a lone "1".
    std::size_t word_end = tokens.size();
    std::uint32_t coset = 0;
    if (auto c = coset_index(tokens.back().text); c && (*c != 0 || tokens.size() >= 4)) {
      coset = *c;
      --word_end;
    }
    const GElement img{word_end > 2 ? read_word(tokens, 2, word_end) : Word(), coset};
    if (auto a = p.free.find(tokens[0].text)) {
      if (assigned_letters_[*a]) fail(tokens[0], "duplicate image");
      assigned_letters_[*a] = true;
      current_->endo.letter_images[*a] = img;
    } else if (auto c = coset_index(tokens[0].text); c && *c != 0) {
      if (assigned_cosets_[*c]) fail(tokens[0], "duplicate image");
      assigned_cosets_[*c] = true;
      current_->endo.coset_images[*c] = img;
    } else {
      fail(tokens[0], "expected a generator or coset name");
    }
  }

  void finish_endo() {
    if (!current_) return;
    const auto& p = input_.presentation;
    for (std::uint32_t a = 0; a < p.free.size(); ++a)
      if (!assigned_letters_[a])
        throw InputError("endomorphism " + current_->name + ": missing image of " + p.free.name(a));
    for (std::uint32_t i = 1; i < p.cosets.size(); ++i)
      if (!assigned_cosets_[i])
        throw InputError("endomorphism " + current_->name + ": missing image of " + p.cosets[i]);
    input_.endos.push_back(std::move(*current_));
    current_.reset();
  }

  void build_tables() {
    if (tables_built_) return;
    tables_built_ = true;
    Presentation& p = input_.presentation;
    const std::size_t m = p.cosets.size(), n = p.free.size();
    p.twist.assign(m, std::vector<Word>(n));
    p.product_word.assign(m, std::vector<Word>(m));
    p.product_coset.assign(m, std::vector<std::uint32_t>(m, 0));
    for (std::uint32_t a = 0; a < n; ++a) p.twist[0][a] = Word::of(pos(a));
    for (std::uint32_t j = 0; j < m; ++j) {
      p.product_coset[0][j] = j;
      p.product_coset[j][0] = j;
    }
    for (std::uint32_t i = 1; i < m; ++i) {
      for (std::uint32_t a = 0; a < n; ++a) {
        auto it = rels_.find({p.cosets[i], p.free.name(a)});
        if (it == rels_.end())
          throw InputError("missing relation rel " + p.cosets[i] + " " + p.free.name(a));
        p.twist[i][a] = it->second.word;
      }
      for (std::uint32_t j = 1; j < m; ++j) {
        auto it = rels_.find({p.cosets[i], p.cosets[j]});
        if (it == rels_.end())
          throw InputError("missing relation rel " + p.cosets[i] + " " + p.cosets[j]);
        p.product_word[i][j] = it->second.word;
        p.product_coset[i][j] = it->second.coset;
      }
    }
  }

  struct Rel {
    Word word;
    std::uint32_t coset;
    std::size_t line;
  };

  std::string_view text_;
  std::size_t line_ = 0;
  Section section_ = Section::group;
  bool have_generators_ = false, have_cosets_ = false, tables_built_ = false;
  std::map<std::pair<std::string, std::string>, Rel> rels_;
  Input input_;
  std::optional<NamedEndo> current_;
  std::vector<bool> assigned_letters_, assigned_cosets_;
};

std::string element_line(const Presentation& p, const GElement& g) {
  if (g.word.empty()) return p.cosets[g.coset];
  std::string s = p.free.format(g.word);
  if (g.coset != 0) s += " " + p.cosets[g.coset];
  return s;
}

}  // namespace

Input parse_input(std::string_view text) { return Parser(text).run(); }

std::string serialize(const Input& input) {
  const Presentation& p = input.presentation;
  std::ostringstream out;
  out << "[group]\nfree_generators =";
  for (const auto& n : p.free.names()) out << ' ' << n;
  out << '\n';
  if (p.cosets.size() > 1) {
    out << "cosets =";
    for (const auto& c : p.cosets) out << ' ' << c;
    out << '\n';
  }
  for (std::uint32_t i = 1; i < p.cosets.size(); ++i) {
    for (std::uint32_t a = 0; a < p.free.size(); ++a)
      out << "rel " << p.cosets[i] << ' ' << p.free.name(a) << " = "
          << p.free.format(p.twist[i][a]) << ' ' << p.cosets[i] << '\n';
    for (std::uint32_t j = 1; j < p.cosets.size(); ++j)
      out << "rel " << p.cosets[i] << ' ' << p.cosets[j] << " = "
          << p.free.format(p.product_word[i][j]) << ' ' << p.cosets[p.product_coset[i][j]]
          << '\n';
  }
  for (const NamedEndo& e : input.endos) {
    out << "\n[endo " << e.name << "]\n";
    for (std::uint32_t a = 0; a < p.free.size(); ++a)
      out << p.free.name(a) << " -> " << element_line(p, e.endo.letter_images[a]) << '\n';
    for (std::uint32_t i = 1; i < p.cosets.size(); ++i)
      out << p.cosets[i] << " -> " << element_line(p, e.endo.coset_images[i]) << '\n';
  }
  return out.str();
}

Document::Document(Input input)
    : group_(std::move(input.presentation)), endos_(std::move(input.endos)) {
  for (const NamedEndo& e : endos_)
    if (auto diag = endo_check(group_, e.endo); !diag.empty())
      throw InputError("endomorphism " + e.name + ": " + diag.front());
}

Document Document::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

const GEndo& Document::endo(const std::string& name) const {
  for (const NamedEndo& e : endos_)
    if (e.name == name) return e.endo;
  throw InputError("no endomorphism named " + name);
}

}  // namespace vfe
