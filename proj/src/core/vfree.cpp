#include "vfree.hpp"

#include <set>

#include "errors.hpp"

namespace vfe {

namespace {

GElement raw_mult(const Presentation& p, const std::vector<FreeEndo>& twists,
                  const GElement& g, const GElement& h) {
  WordBuilder b(g.word);
  b.append(twists[g.coset].apply(h.word));
  b.append(p.product_word[g.coset][h.coset]);
  return {std::move(b).build(), p.product_coset[g.coset][h.coset]};
}

std::string element_text(const Presentation& p, const GElement& g) {
  if (g.word.empty()) return p.cosets[g.coset] == "1" ? "1" : p.cosets[g.coset];
  std::string s = p.free.format(g.word);
  if (g.coset != 0) s += " " + p.cosets[g.coset];
  return s;
}

}  // namespace

Presentation Presentation::free_group(Alphabet free) {
  Presentation p;
  p.free = std::move(free);
  std::vector<Word> id;
  for (std::uint32_t a = 0; a < p.free.size(); ++a) id.push_back(Word::of(pos(a)));
  p.twist = {id};
  p.product_word = {{Word()}};
  p.product_coset = {{0}};
  return p;
}

std::vector<std::string> validate(const Presentation& p) {
  std::vector<std::string> diag;
  const std::size_t m = p.cosets.size(), n = p.free.size();
  if (m == 0 || p.cosets[0] != "1") {
    diag.push_back("coset list must start with 1");
    return diag;
  }
  std::set<std::string> seen;
  for (std::size_t i = 1; i < m; ++i) {
    if (!is_valid_name(p.cosets[i]))
      diag.push_back("invalid coset name '" + p.cosets[i] + "'");
    if (!seen.insert(p.cosets[i]).second)
      diag.push_back("duplicate coset name '" + p.cosets[i] + "'");
    if (p.free.find(p.cosets[i]))
      diag.push_back("coset name '" + p.cosets[i] + "' clashes with a generator");
  }
  if (p.twist.size() != m || p.product_word.size() != m || p.product_coset.size() != m) {
    diag.push_back("relation tables do not match the coset count");
    return diag;
  }
  for (std::size_t i = 0; i < m; ++i)
    if (p.twist[i].size() != n || p.product_word[i].size() != m ||
        p.product_coset[i].size() != m) {
      diag.push_back("relation tables do not match the coset count");
      return diag;
    }
  if (!diag.empty()) return diag;

  auto rel_twist = [&](std::size_t i, std::size_t a) {
    return "rel " + p.cosets[i] + " " + p.free.name(static_cast<std::uint32_t>(a));
  };
  auto rel_prod = [&](std::size_t i, std::size_t j) {
    return "rel " + p.cosets[i] + " " + p.cosets[j];
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t a = 0; a < n; ++a)
      if (!p.free.covers(p.twist[i][a]))
        diag.push_back(rel_twist(i, a) + ": unknown generator");
    for (std::size_t j = 0; j < m; ++j) {
      if (!p.free.covers(p.product_word[i][j]))
        diag.push_back(rel_prod(i, j) + ": unknown generator");
      if (p.product_coset[i][j] >= m)
        diag.push_back(rel_prod(i, j) + ": coset index out of range");
    }
  }
  if (!diag.empty()) return diag;

  for (std::size_t a = 0; a < n; ++a)
    if (p.twist[0][a] != Word::of(pos(static_cast<std::uint32_t>(a))))
      diag.push_back("identity coset must not twist generators");
  for (std::size_t j = 0; j < m; ++j) {
    if (!p.product_word[0][j].empty() || p.product_coset[0][j] != j ||
        !p.product_word[j][0].empty() || p.product_coset[j][0] != j)
      diag.push_back("identity coset must act trivially in " + rel_prod(0, j));
  }
  for (std::size_t i = 1; i < m; ++i) {
    bool right = false, left = false;
    for (std::size_t j = 0; j < m; ++j) {
      right = right || p.product_coset[i][j] == 0;
      left = left || p.product_coset[j][i] == 0;
    }
    if (!right || !left) diag.push_back("coset " + p.cosets[i] + " has no inverse coset");
  }
  for (std::size_t i = 1; i < m; ++i)
    if (!Automaton::from_generators(p.twist[i], n).is_whole_group())
      diag.push_back("twist of coset " + p.cosets[i] + " is not an automorphism of the free part");
  if (!diag.empty()) return diag;

  std::vector<FreeEndo> twists;
  for (std::size_t i = 0; i < m; ++i) twists.emplace_back(p.twist[i]);
  std::vector<GElement> probes;
  for (std::uint32_t i = 0; i < m; ++i) {
    probes.push_back({Word(), i});
    for (std::uint32_t a = 0; a < n; ++a) {
      probes.push_back({Word::of(pos(a)), i});
      probes.push_back({Word::of(neg(a)), i});
    }
  }
  for (const GElement& x : probes)
    for (const GElement& y : probes) {
      const GElement xy = raw_mult(p, twists, x, y);
      for (const GElement& z : probes) {
        if (raw_mult(p, twists, xy, z) != raw_mult(p, twists, x, raw_mult(p, twists, y, z))) {
          diag.push_back("associativity fails for (" + element_text(p, x) + ")(" +
                         element_text(p, y) + ")(" + element_text(p, z) + ")");
          return diag;
        }
      }
    }
  return diag;
}

VFGroup::VFGroup(Presentation p) : p_(std::move(p)) {
  if (auto diag = validate(p_); !diag.empty()) throw InputError(diag.front());
  const std::size_t m = p_.coset_count();
  for (std::size_t i = 0; i < m; ++i) twists_.emplace_back(p_.twist[i]);
  inverse_coset_.assign(m, 0);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j)
      if (p_.product_coset[j][i] == 0) inverse_coset_[i] = j;
}

GElement VFGroup::mult(const GElement& g, const GElement& h) const {
  return raw_mult(p_, twists_, g, h);
}

GElement VFGroup::inverse(const GElement& g) const {
  // (h b_j)(f b_i) = h tau_j(f) v_ji with r_ji = 1, so h = v_ji^-1 tau_j(f^-1).
  const std::uint32_t j = inverse_coset_[g.coset];
  WordBuilder b;
  b.append_inverse(p_.product_word[j][g.coset]);
  b.append(twists_[j].apply(invert(g.word)));
  return {std::move(b).build(), j};
}

GElement VFGroup::power(const GElement& g, long k) const {
  const GElement base = k < 0 ? inverse(g) : g;
  GElement out;
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out = mult(out, base);
  return out;
}

std::string VFGroup::format(const GElement& g) const { return element_text(p_, g); }

std::optional<std::uint32_t> VFGroup::find_coset(const std::string& name) const {
  for (std::uint32_t i = 0; i < p_.cosets.size(); ++i)
    if (p_.cosets[i] == name) return i;
  return std::nullopt;
}

GElement VFGroup::parse(const std::string& text) const { return parse_tokens(split_ws(text)); }

GElement VFGroup::parse_tokens(const std::vector<std::string>& tokens) const {
  if (tokens.empty()) throw InputError("expected an element");
  std::vector<std::string> word = tokens;
  std::uint32_t coset = 0;
  if (auto c = find_coset(tokens.back()); c && (*c != 0 || tokens.size() >= 2)) {
    coset = *c;
    word.pop_back();
  }
  if (word.empty()) return {Word(), coset};
  return {p_.free.parse_tokens(word), coset};
}

std::vector<GElement> VFGroup::generators() const {
  std::vector<GElement> out;
  for (std::uint32_t a = 0; a < rank(); ++a) out.push_back(letter(pos(a)));
  for (std::uint32_t i = 1; i < coset_count(); ++i) out.push_back(coset_rep(i));
  return out;
}

bool preserves_free_part(const GEndo& phi) {
  for (const GElement& x : phi.letter_images)
    if (x.coset != 0) return false;
  return true;
}

FreeEndo free_part(const GEndo& phi, std::size_t rank) {
  if (!preserves_free_part(phi) || phi.letter_images.size() != rank)
    throw DomainError("endomorphism does not map the free part into itself");
  std::vector<Word> images;
  for (const GElement& x : phi.letter_images) images.push_back(x.word);
  return FreeEndo(std::move(images));
}

GElement endo_apply(const VFGroup& g, const GEndo& phi, const GElement& x) {
  GElement img;
  if (preserves_free_part(phi)) {
    WordBuilder b;
    for (Letter l : x.word) {
      if (l.inverse)
        b.append_inverse(phi.letter_images[l.gen].word);
      else
        b.append(phi.letter_images[l.gen].word);
      if (b.size() > kDefaultMaxLetters)
        throw ResourceError("image word exceeds " + std::to_string(kDefaultMaxLetters) +
                            " letters");
    }
    img.word = std::move(b).build();
  } else {
    std::vector<GElement> inv;
    for (const GElement& y : phi.letter_images) inv.push_back(g.inverse(y));
    for (Letter l : x.word) {
      img = g.mult(img, l.inverse ? inv[l.gen] : phi.letter_images[l.gen]);
      if (img.word.size() > kDefaultMaxLetters)
        throw ResourceError("image word exceeds " + std::to_string(kDefaultMaxLetters) +
                            " letters");
    }
  }
  if (x.coset == 0) return img;
  return g.mult(img, phi.coset_images[x.coset]);
}

GElement endo_apply_power(const VFGroup& g, const GEndo& phi, const GElement& x,
                          unsigned long k) {
  GElement cur = x;
  for (unsigned long i = 0; i < k; ++i) cur = endo_apply(g, phi, cur);
  return cur;
}

std::vector<std::string> endo_check(const VFGroup& g, const GEndo& phi) {
  std::vector<std::string> diag;
  const Presentation& p = g.presentation();
  const std::size_t n = g.rank(), m = g.coset_count();
  if (phi.letter_images.size() != n) diag.push_back("wrong number of generator images");
  if (phi.coset_images.size() != m) diag.push_back("wrong number of coset images");
  if (!diag.empty()) return diag;
  auto check_element = [&](const GElement& x) {
    return x.coset < m && p.free.covers(x.word);
  };
  for (const GElement& x : phi.letter_images)
    if (!check_element(x)) diag.push_back("image outside the group");
  for (const GElement& x : phi.coset_images)
    if (!check_element(x)) diag.push_back("image outside the group");
  if (phi.coset_images[0] != GElement{})
    diag.push_back("the identity coset must map to the identity");
  if (!diag.empty()) return diag;

  auto word_image = [&](const Word& w) { return endo_apply(g, phi, GElement{w, 0}); };
  for (std::uint32_t i = 1; i < m; ++i) {
    for (std::uint32_t a = 0; a < n; ++a) {
      const GElement lhs = g.mult(phi.coset_images[i], phi.letter_images[a]);
      const GElement rhs = g.mult(word_image(p.twist[i][a]), phi.coset_images[i]);
      if (lhs != rhs)
        diag.push_back("relation " + p.cosets[i] + " " + p.free.name(a) + " = " +
                       p.free.format(p.twist[i][a]) + " " + p.cosets[i] + " is not preserved");
    }
    for (std::uint32_t j = 1; j < m; ++j) {
      const GElement lhs = g.mult(phi.coset_images[i], phi.coset_images[j]);
      const GElement rhs = g.mult(word_image(p.product_word[i][j]),
                                  phi.coset_images[p.product_coset[i][j]]);
      if (lhs != rhs)
        diag.push_back("relation " + p.cosets[i] + " " + p.cosets[j] + " = " +
                       element_text(p, {p.product_word[i][j], p.product_coset[i][j]}) +
                       " is not preserved");
    }
  }
  return diag;
}

void require_endo(const VFGroup& g, const GEndo& phi) {
  if (auto diag = endo_check(g, phi); !diag.empty()) throw InputError(diag.front());
}

GEndo identity_endo(const VFGroup& g) {
  GEndo id;
  for (std::uint32_t a = 0; a < g.rank(); ++a) id.letter_images.push_back(g.letter(pos(a)));
  for (std::uint32_t i = 0; i < g.coset_count(); ++i) id.coset_images.push_back(g.coset_rep(i));
  return id;
}

GEndo compose(const VFGroup& g, const GEndo& phi, const GEndo& psi) {
  GEndo out;
  for (const GElement& x : phi.letter_images) out.letter_images.push_back(endo_apply(g, psi, x));
  for (const GElement& x : phi.coset_images) out.coset_images.push_back(endo_apply(g, psi, x));
  return out;
}

GEndo power(const VFGroup& g, const GEndo& phi, unsigned long k) {
  GEndo result = identity_endo(g);
  GEndo square = phi;
  while (k > 0) {
    if (k & 1) result = compose(g, result, square);
    k >>= 1;
    if (k > 0) square = compose(g, square, square);
  }
  return result;
}

Restriction restrict_to_subgroup(const VFGroup& g, const GEndo& phi, const Automaton& s) {
  Restriction r;
  r.basis = s.basis();
  std::vector<Word> images;
  for (const Word& w : r.basis) {
    const GElement img = endo_apply(g, phi, GElement{w, 0});
    if (img.coset != 0 || !s.contains(img.word))
      throw DomainError("subgroup is not invariant under the endomorphism");
    images.push_back(s.rewrite_in_basis(img.word));
  }
  r.endo = FreeEndo(std::move(images));
  return r;
}

std::vector<std::uint32_t> quotient_endo(
    const VFGroup& g, const GEndo& phi, const std::vector<GElement>& reps,
    const std::function<std::optional<std::uint32_t>(const GElement&)>& locate) {
  std::vector<std::uint32_t> theta;
  for (const GElement& r : reps) {
    auto c = locate(endo_apply(g, phi, r));
    if (!c) throw DomainError("image coset is undetermined");
    theta.push_back(*c);
  }
  return theta;
}

std::vector<std::uint32_t> quotient_endo(const VFGroup& g, const GEndo& phi) {
  std::vector<GElement> reps;
  for (std::uint32_t i = 0; i < g.coset_count(); ++i) reps.push_back(g.coset_rep(i));
  return quotient_endo(g, phi, reps,
                       [](const GElement& x) { return std::optional<std::uint32_t>(x.coset); });
}

}  // namespace vfe
