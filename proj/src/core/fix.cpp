#include "fix.hpp"

#include <algorithm>

#include "errors.hpp"

namespace vfe {

std::string Completeness::str() const {
  return certified ? "CERTIFIED" : "BOUNDED(" + std::to_string(bound) + ")";
}

Completeness Completeness::meet(const Completeness& a, const Completeness& b) {
  if (a.certified) return b;
  if (b.certified) return a;
  return {false, std::min(a.bound, b.bound)};
}

namespace {

// Depth-first walk over reduced words of one length, keeping the image of
// the current prefix reduced in a buffer with an undo log.
class Enumerator {
 public:
  Enumerator(const FreeEndo& phi, std::size_t budget) : budget_(budget) {
    const std::size_t n = phi.alphabet_size();
    for (std::uint32_t g = 0; g < n; ++g) {
      const Word& w = phi.image(g);
      images_.emplace_back(w.begin(), w.end());
      const Word wi = invert(w);
      inverse_images_.emplace_back(wi.begin(), wi.end());
    }
  }

  // Calls on_fixed for each fixed word of exactly this length; false if the
  // budget ran out first.
  template <class F>
  bool run(std::size_t length, F&& on_fixed) {
    word_.clear();
    image_.clear();
    return descend(length, on_fixed);
  }

 private:
  struct Undo {
    std::size_t popped_from;  // offset into popped_
    std::size_t pushed;
  };

  void push(Letter x) {
    const auto& img = x.inverse ? inverse_images_[x.gen] : images_[x.gen];
    Undo u{popped_.size(), 0};
    std::size_t i = 0;
    while (i < img.size() && !image_.empty() && cancels(image_.back(), img[i])) {
      popped_.push_back(image_.back());
      image_.pop_back();
      ++i;
    }
    for (; i < img.size(); ++i) image_.push_back(img[i]);
    work_ += img.size();
    u.pushed = img.size() - (popped_.size() - u.popped_from);
    undo_.push_back(u);
    word_.push_back(x);
  }

  void pop() {
    const Undo u = undo_.back();
    undo_.pop_back();
    image_.resize(image_.size() - u.pushed);
    while (popped_.size() > u.popped_from) {
      image_.push_back(popped_.back());
      popped_.pop_back();
    }
    word_.pop_back();
  }

  template <class F>
  bool descend(std::size_t left, F& on_fixed) {
    if (++work_ > budget_) return false;
    if (left == 0) {
      if (image_ == word_) on_fixed(word_);
      return true;
    }
    for (std::uint32_t g = 0; g < images_.size(); ++g)
      for (bool inv : {false, true}) {
        const Letter x{g, inv};
        if (!word_.empty() && cancels(word_.back(), x)) continue;
        push(x);
        const bool ok = descend(left - 1, on_fixed);
        pop();
        if (!ok) return false;
      }
    return true;
  }

  std::vector<std::vector<Letter>> images_, inverse_images_;
  std::vector<Letter> word_, image_, popped_;
  std::vector<Undo> undo_;
  std::size_t work_ = 0;  // nodes visited plus image letters pushed
  std::size_t budget_;
};

}  // namespace

FixResult fix_free_bounded(const FreeEndo& phi, const FixOptions& opts) {
  if (opts.length_bound < 1) throw DomainError("length bound must be at least 1");
  const std::size_t n = phi.alphabet_size();
  if (phi.is_identity()) return {Automaton::whole_group(n), {true, 0}};

  std::vector<Word> gens;
  Automaton sub(n);
  Enumerator walk(phi, opts.node_budget);
  std::size_t complete_to = 0;
  for (std::size_t len = 1; len <= opts.length_bound; ++len) {
    const bool finished = walk.run(len, [&](const std::vector<Letter>& w) {
      const Word word = Word::reduce(w);
      if (sub.contains(word)) return;
      gens.push_back(word);
      sub = Automaton::from_generators(gens, n);
    });
    if (!finished) break;
    complete_to = len;
  }
  if (complete_to == 0)
    throw ResourceError("fixed-point enumeration budget exhausted before length 1");
  for (const Word& w : sub.basis())
    if (phi.apply(w) != w) throw Error("internal: non-fixed word in fixed subgroup");
  return {std::move(sub), {false, complete_to}};
}

std::optional<Automaton> fix_from_stable_image(const FreeEndo& phi) {
  const std::size_t n = phi.alphabet_size();
  const StableImage s = stable_image(phi);
  if (s.image.rank() == 0) return Automaton(n);
  if (s.image.rank() > 1) return std::nullopt;
  // Im = <z> and phi(z) = z^e with e != 0; z^k is fixed iff e = 1 or k = 0.
  const Word z = s.image.basis().front();
  if (phi.apply(z) == z) return Automaton::from_generators(std::vector<Word>{z}, n);
  return Automaton(n);
}

SubgroupCoset x_u(const FreeEndo& psi, const Word& u, const FixOptions& opts) {
  const std::size_t k = psi.alphabet_size();
  if (u.span_of_generators() > k) throw DomainError("u is outside the endomorphism's alphabet");
  if (u.empty()) {
    FixResult fix = fix_free_bounded(psi, opts);
    return {std::move(fix.subgroup), Word(), false, fix.complete};
  }
  // psi' on F' * <c>: c -> u^-1 c.
  const std::uint32_t c = static_cast<std::uint32_t>(k);
  std::vector<Word> images = psi.images();
  images.push_back(concat(invert(u), Word::of(pos(c))));
  const FixResult fix = fix_free_bounded(FreeEndo(std::move(images)), opts);
  const Automaton& a = fix.subgroup;

  // Subgroup part: Fix(psi') n F', read over the first k letters.
  const Automaton c_free = intersect(a, Automaton::from_generators(
                                            [&] {
                                              std::vector<Word> gens;
                                              for (std::uint32_t g = 0; g < k; ++g)
                                                gens.push_back(Word::of(pos(g)));
                                              return gens;
                                            }(),
                                            k + 1));
  SubgroupCoset out;
  out.subgroup = Automaton::from_edges(c_free.vertex_count(), 0, c_free.edges(), k);
  out.complete = fix.complete;

  // Witness: a c-free path from the base to a vertex whose c-edge returns to it.
  std::vector<Word> label(a.vertex_count());
  std::vector<bool> seen(a.vertex_count(), false);
  std::vector<std::uint32_t> queue{0};
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    if (a.step(v, pos(c)) == 0u) {
      out.representative = label[v];
      if (psi.apply(out.representative) != concat(out.representative, u))
        throw Error("internal: coset witness does not satisfy x psi = x u");
      return out;
    }
    for (std::uint32_t g = 0; g < k; ++g)
      for (Letter x : {pos(g), neg(g)})
        if (auto w = a.step(v, x); w && !seen[*w]) {
          seen[*w] = true;
          label[*w] = concat(label[v], Word::of(x));
          queue.push_back(*w);
        }
  }
  out.empty = true;
  return out;
}

GFixResult fix_vfree(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi,
                     const FixOptions& opts) {
  GFixResult out;
  const Restriction psi = restrict_to_subgroup(g, phi, fi.automaton());
  out.basis = psi.basis;
  out.core = fix_free_bounded(psi.endo, opts);
  out.complete = out.core.complete;
  for (const Word& w : out.core.subgroup.basis())
    out.generators.push_back(GElement{evaluate(w, psi.basis), 0});

  const auto& reps = fi.coset_reps();
  for (std::uint32_t i = 1; i < reps.size(); ++i) {
    CosetPiece piece;
    piece.coset = i;
    const GElement t = g.mult(reps[i], endo_apply(g, phi, g.inverse(reps[i])));
    piece.in_f_prime = fi.contains(t);
    piece.complete = {true, 0};
    if (piece.in_f_prime) {
      piece.u = fi.automaton().rewrite_in_basis(t.word);
      const SubgroupCoset x = x_u(psi.endo, piece.u, opts);
      piece.complete = x.complete;
      if (!x.empty) {
        piece.empty = false;
        piece.representative = g.mult(GElement{evaluate(x.representative, psi.basis), 0}, reps[i]);
        if (endo_apply(g, phi, piece.representative) != piece.representative)
          throw Error("internal: coset representative is not fixed");
        out.generators.push_back(piece.representative);
      }
    }
    out.complete = Completeness::meet(out.complete, piece.complete);
    out.pieces.push_back(std::move(piece));
  }
  for (const GElement& x : out.generators)
    if (endo_apply(g, phi, x) != x) throw Error("internal: generator is not fixed");
  return out;
}

}  // namespace vfe
