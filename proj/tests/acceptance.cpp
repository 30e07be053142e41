// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "evfix.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "subgroup.hpp"
#include "vfe/vfe.h"

using namespace vfe;

namespace {

// Collects the failed sub-checks of one criterion.
struct Outcome {
  std::vector<std::string> failures;
  std::string note;
  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string fixture_path(const std::string& name) {
  return std::string(VFE_FIXTURE_DIR) + "/" + name;
}

// Runs one C API command on a fixture and keeps its report.
class Run {
 public:
  Run(const std::string& file, const std::function<vfe_status(vfe_group*, vfe_report**)>& f) {
    if (vfe_group_load_file(fixture_path(file).c_str(), &g_) != VFE_OK) {
      status_ = VFE_ERR_INPUT;
      return;
    }
    status_ = f(g_, &r_);
  }
  ~Run() {
    vfe_report_free(r_);
    vfe_group_free(g_);
  }
  Run(const Run&) = delete;
  Run& operator=(const Run&) = delete;

  vfe_status status() const { return status_; }
  std::string get(const std::string& key) const {
    const char* v = r_ ? vfe_report_get(r_, key.c_str()) : nullptr;
    return v ? v : "<missing>";
  }
  std::vector<std::string> list(const std::string& key) const {
    std::vector<std::string> out;
    const std::string n = get(key + ".count");
    if (n == "<missing>") return out;
    for (std::size_t i = 0; i < std::stoul(n); ++i) out.push_back(get(key + "." + std::to_string(i)));
    return out;
  }

 private:
  vfe_group* g_ = nullptr;
  vfe_report* r_ = nullptr;
  vfe_status status_ = VFE_ERR_INTERNAL;
};

vfe_options defaults() {
  vfe_options o;
  vfe_options_init(&o);
  return o;
}

struct Setup {
  Document doc;
  FullyInvariantSubgroup fi;
  explicit Setup(const std::string& file)
      : doc(testing::fixture(file)), fi(compute_fully_invariant(doc.group())) {}
  const VFGroup& g() const { return doc.group(); }
};

std::vector<oracle::OWord> oracle_images(const GEndo& phi) {
  std::vector<oracle::OWord> out;
  for (const GElement& x : phi.letter_images) out.push_back(oracle::from_word(x.word));
  return out;
}

oracle::Dihedral as_dihedral(const GElement& x) {
  return {exponent_sum(x.word, 0), static_cast<int>(x.coset)};
}

GElement random_element(std::mt19937& rng, const VFGroup& g, std::size_t len) {
  return {testing::random_word(rng, g.rank(), len),
          static_cast<std::uint32_t>(rng() % g.coset_count())};
}

const char* const kFree[] = {"f2_corpus.grp", "f3_corpus.grp"};
const char* const kAll[] = {"f2_corpus.grp", "f3_corpus.grp", "dinf.grp", "zz2.grp", "z3.grp"};

Outcome criterion1() {
  Outcome o;
  const vfe_options opts = defaults();
  {
    Run r("f2_aba.grp", [&](vfe_group* g, vfe_report** out) { return vfe_fix(g, "phi", &opts, out); });
    o.check(r.get("complete") == "BOUNDED(12)", "fix flag is " + r.get("complete"));
    o.check(r.list("generator").empty(), "fix is not trivial");
  }
  {
    Run r("f2_aba.grp", [&](vfe_group* g, vfe_report** out) { return vfe_evfix_fg(g, "phi", &opts, out); });
    o.check(r.get("verdict") == "NO", "evfix-fg verdict " + r.get("verdict"));
    o.check(r.get("relative_index") == "INFINITE", "relative index " + r.get("relative_index"));
  }
  auto member = [&](const char* element) {
    Run r("f2_aba.grp", [&](vfe_group* g, vfe_report** out) {
      return vfe_evfix_member(g, "phi", element, &opts, out);
    });
    return r.get("evfix");
  };
  o.check(member("b") == "yes", "evfix-member rejects b");
  o.check(member("a b a^-1 b a^-1") == "yes", "evfix-member rejects a b a^-1 b a^-1");
  o.check(member("a") == "no", "evfix-member accepts a");
  vfe_options trust = opts;
  trust.trust_oracle = 1;
  Run n("f2_aba.grp", [&](vfe_group* g, vfe_report** out) { return vfe_normal(g, "phi", &trust, out); });
  o.check(n.get("verdict") == "KERNEL_UNION", "normal verdict " + n.get("verdict"));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const vfe_options opts = defaults();
  const Alphabet ab({"a", "b"});
  auto automaton = [&](const std::vector<std::string>& gens) {
    std::vector<Word> ws;
    for (const auto& s : gens) ws.push_back(ab.parse(s));
    return Automaton::from_generators(ws, 2);
  };
  {
    Run r("f2_bab.grp", [&](vfe_group* g, vfe_report** out) { return vfe_fix(g, "phi", &opts, out); });
    o.check(automaton(r.list("generator")) == automaton({"b a b^-1"}), "fix is not <b a b^-1>");
  }
  {
    Run r("f2_bab.grp", [&](vfe_group* g, vfe_report** out) { return vfe_evfix_fg(g, "phi", &opts, out); });
    o.check(r.get("verdict") == "YES", "evfix-fg verdict " + r.get("verdict"));
    const Index idx = automaton(r.list("generator")).index();
    o.check(idx && *idx == 1, "generators do not have index 1");
  }
  Run n("f2_bab.grp", [&](vfe_group* g, vfe_report** out) { return vfe_normal(g, "phi", &opts, out); });
  o.check(n.get("verdict") == "WHOLE_GROUP", "normal verdict " + n.get("verdict"));
  return o;
}

// Orbit of a dihedral element, or 0 if it does not close within cap steps.
std::size_t dihedral_orbit(const oracle::Dihedral& xi, const oracle::Dihedral& ti,
                           oracle::Dihedral e, std::size_t cap) {
  std::set<oracle::Dihedral> seen;
  for (std::size_t i = 0; i <= cap; ++i) {
    if (!seen.insert(e).second) return seen.size();
    // The oracle rewrites letter by letter; a finite orbit never gets this far.
    if (e.k > 10'000 || e.k < -10'000) return 0;
    e = oracle::dihedral_apply(xi, ti, e);
  }
  return 0;
}

Outcome criterion3() {
  Outcome o;
  std::size_t endos = 0, finite = 0;
  for (const std::string file : kFree) {
    const Setup s(file);
    for (const auto& [name, phi] : s.doc.endos()) {
      ++endos;
      const std::size_t c = c_phi(s.g(), phi, s.fi).c_phi;
      const auto images = oracle_images(phi);
      for (const auto& w : oracle::all_words(s.g().rank(), 6)) {
        const auto size = oracle::free_orbit_size(images, w, 100, 1000);
        if (!size) continue;
        ++finite;
        o.check(*size <= c, file + " " + name + ": orbit of size " + std::to_string(*size) +
                                " above c_phi " + std::to_string(c));
      }
    }
  }
  const Setup d("dinf.grp");
  for (const auto& [name, phi] : d.doc.endos()) {
    ++endos;
    const std::size_t c = c_phi(d.g(), phi, d.fi).c_phi;
    const auto xi = as_dihedral(phi.letter_images[0]), ti = as_dihedral(phi.coset_images[1]);
    for (const auto& e : oracle::dihedral_ball(6)) {
      const std::size_t size = dihedral_orbit(xi, ti, e, 200);
      if (!size) continue;
      ++finite;
      o.check(size <= c, "dinf " + name + ": orbit of size " + std::to_string(size));
    }
  }
  o.check(endos >= 28, "fixture set too small");
  o.note = std::to_string(endos) + " endos, " + std::to_string(finite) + " finite orbits";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::size_t words = 0;
  for (const std::string file : kFree) {
    const Setup s(file);
    for (const auto& [name, phi] : s.doc.endos()) {
      const std::size_t c = c_phi(s.g(), phi, s.fi).c_phi;
      const auto images = oracle_images(phi);
      // Images under phi^c and phi^(c+1), by the oracle's substitution.
      std::vector<oracle::OWord> pc = images;
      for (std::size_t k = 1; k < c; ++k)
        for (auto& w : pc) w = oracle::apply(images, w);
      std::vector<oracle::OWord> pc1 = pc;
      for (auto& w : pc1) w = oracle::apply(images, w);
      for (const auto& w : oracle::all_words(s.g().rank(), 6)) {
        ++words;
        const bool a = oracle::apply(pc, w).empty(), b = oracle::apply(pc1, w).empty();
        o.check(a == b, file + " " + name + ": kernel chain moves at " +
                            vfe::Alphabet::generic(s.g().rank()).format(oracle::to_word(w)));
      }
    }
  }
  const Setup d("dinf.grp");
  for (const auto& [name, phi] : d.doc.endos()) {
    const std::size_t c = c_phi(d.g(), phi, d.fi).c_phi;
    const auto xi = as_dihedral(phi.letter_images[0]), ti = as_dihedral(phi.coset_images[1]);
    for (auto e : oracle::dihedral_ball(6)) {
      ++words;
      for (std::size_t k = 0; k < c; ++k) e = oracle::dihedral_apply(xi, ti, e);
      const bool a = e == oracle::Dihedral{};
      const bool b = oracle::dihedral_apply(xi, ti, e) == oracle::Dihedral{};
      o.check(a == b, "dinf " + name + ": kernel chain moves");
    }
  }
  o.note = std::to_string(words) + " words";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const std::map<unsigned long, unsigned long> known{{1, 2}, {2, 4}, {3, 6}};
  for (unsigned long n = 1; n <= 8; ++n) {
    const auto b = aut_order_bound(n);
    o.check(b == oracle::torsion_order(n), "n = " + std::to_string(n) + " disagrees with oracle");
    if (known.count(n)) o.check(b == known.at(n), "n = " + std::to_string(n) + " wrong value");
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const vfe_options opts = defaults();
  auto finite = [&](const char* file, const char* endo) {
    Run r(file, [&](vfe_group* g, vfe_report** out) { return vfe_finite_order(g, endo, &opts, out); });
    if (r.get("result") != "FINITE") return r.get("result");
    return "FINITE(" + r.get("preperiod") + "," + r.get("period") + ")";
  };
  auto stab = [&](const char* file, const char* endo) {
    Run r(file, [&](vfe_group* g, vfe_report** out) { return vfe_stabilizes(g, endo, &opts, out); });
    return r.get("result");
  };
  o.check(finite("identity.grp", "phi") == "FINITE(0,1)", "identity: " + finite("identity.grp", "phi"));
  o.check(finite("swap.grp", "phi") == "FINITE(0,2)", "swap: " + finite("swap.grp", "phi"));
  o.check(stab("swap.grp", "phi") == "NONE", "swap stabilizes " + stab("swap.grp", "phi"));
  o.check(finite("f2_aba.grp", "phi") == "INFINITE", "aba: " + finite("f2_aba.grp", "phi"));
  o.check(stab("vanishing.grp", "phi") == "1", "vanishing stabilizes " + stab("vanishing.grp", "phi"));
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937 rng(2024);
  std::size_t checked = 0;
  while (checked < 100) {
    const std::size_t r = 2 + rng() % 2, d = 1 + rng() % 7;
    std::vector<Edge> edges;
    for (std::uint32_t g = 0; g < r; ++g) {
      std::vector<std::uint32_t> perm(d);
      for (std::uint32_t i = 0; i < d; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::uint32_t i = 0; i < d; ++i) edges.push_back({i, g, perm[i]});
    }
    const Automaton h = Automaton::from_edges(d, 0, edges, r);
    const Index idx = h.index();
    o.check(idx.has_value(), "coset-complete automaton reported infinite index");
    if (idx) o.check(h.rank() - 1 == *idx * (r - 1), "Schreier formula fails");
    ++checked;
  }
  o.note = std::to_string(checked) + " subgroups";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t samples = 0, skipped = 0;
  for (const std::string file : kAll) {
    const Setup s(file);
    const auto& g = s.g();
    for (const auto& [name, phi] : s.doc.endos()) {
      const std::string where = file + " " + name + ": ";
      const CPhiCertificate c = c_phi(g, phi, s.fi);
      const GFixResult fix = fix_vfree(g, phi, s.fi, {.length_bound = 8});
      const VSubgroup fixed(g, s.fi, fix.generators);
      const bool mono = kernel_finite(g, phi, s.fi) && finite_stable_kernel(g, phi, s.fi).size() == 1;
      for (const auto& x : fix.generators)
        o.check(in_evfix(g, phi, c, x), where + "Fix generator outside EvFix");
      std::mt19937 rng(99);
      std::vector<GElement> ev;
      for (int i = 0; i < 1000; ++i) {
        const GElement x = random_element(rng, g, 5);
        try {
          const bool e = in_evfix(g, phi, c, x);
          const bool is_fixed = endo_apply(g, phi, x) == x;
          const OrbitReport orb = orbit(g, phi, x, c.c_phi);
          const bool periodic = orb.finite() && orb.preperiod == 0;
          if (is_fixed) o.check(e, where + "fixed point outside EvFix");
          o.check((e && periodic) == is_fixed, where + "EvFix and Per do not meet in Fix");
          if (is_fixed) o.check(fixed.contains(x), where + "fixed point outside computed Fix");
          if (mono) o.check(e == is_fixed, where + "monomorphism with EvFix != Fix");
          if (e) ev.push_back(x);
          ++samples;
        } catch (const ResourceError&) {
          ++skipped;
        }
      }
      for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
        try {
          o.check(in_evfix(g, phi, c, g.mult(ev[i], ev[i + 1])), where + "EvFix not closed");
          o.check(in_evfix(g, phi, c, g.inverse(ev[i])), where + "EvFix not closed under inverse");
        } catch (const ResourceError&) {
          ++skipped;
        }
      }
    }
  }
  o.note = std::to_string(samples) + " samples, " + std::to_string(skipped) + " over the length guard";
  return o;
}

Outcome criterion9() {
  Outcome o;
  Run v("dinf.grp", [](vfe_group* g, vfe_report** out) { return vfe_validate(g, out); });
  o.check(v.status() == VFE_OK && v.get("valid") == "yes", "validate fails");
  const Setup s("dinf.grp");
  const auto& g = s.g();
  const Index free_index = relative_index(s.fi.automaton(), Automaton::whole_group(g.rank()));
  o.check(free_index.has_value(), "F' has infinite index");
  for (const auto& [name, phi] : s.doc.endos())
    for (const Word& w : s.fi.basis())
      o.check(s.fi.contains(endo_apply(g, phi, GElement{w, 0})), "F' not invariant under " + name);
  const GEndo& conj = s.doc.endo("conj_x");
  const GFixResult fix = fix_vfree(g, conj, s.fi);
  const VSubgroup sub(g, s.fi, fix.generators);
  std::size_t n = 0;
  for (const auto& x : testing::ball(g, 8)) {
    ++n;
    const bool brute = endo_apply(g, conj, x) == x;
    o.check(brute == (x.coset == 0), "centralizer of x is not <x> at " + g.format(x));
    o.check(sub.contains(x) == brute, "Fix disagrees with brute force at " + g.format(x));
  }
  o.note = std::to_string(n) + " elements";
  return o;
}

Outcome criterion10() {
  Outcome o;
  o.check(rank_bound(Setup("f2_corpus.grp").fi) == 3, "F_2 bound is not 3");
  o.check(rank_bound(Setup("f3_corpus.grp").fi) == 4, "F_3 bound is not 4");
  std::size_t yes = 0;
  for (const std::string file : kAll) {
    const Setup s(file);
    for (const auto& [name, phi] : s.doc.endos()) {
      const EvFixReport r = evfix_is_fg(s.g(), phi, s.fi, {});
      if (r.verdict != Verdict::Yes) continue;
      ++yes;
      o.check(r.reduced_count <= rank_bound(s.fi), file + " " + name + ": generator count above bound");
    }
  }
  o.note = std::to_string(yes) + " YES verdicts";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                      criterion5, criterion6, criterion7, criterion8,
                                                      criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool pass = o.failures.empty();
    failed += !pass;
    std::printf("criterion %zu: %s", i + 1, pass ? "PASS" : "FAIL");
    if (!o.note.empty()) std::printf(" (%s)", o.note.c_str());
    std::printf(" [%.1fs]\n", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    std::set<std::string> shown;
    for (const auto& f : o.failures)
      if (shown.insert(f).second && shown.size() <= 10) std::printf("  - %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
