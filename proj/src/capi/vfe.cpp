#include "vfe/vfe.h"

#include <memory>
#include <optional>
#include <string>

#include "errors.hpp"
#include "evfix.hpp"
#include "fix.hpp"
#include "invariant.hpp"
#include "io.hpp"
#include "orbit.hpp"
#include "report.hpp"
#include "subgroup.hpp"

struct vfe_group {
  vfe::Document doc;
  std::optional<vfe::FullyInvariantSubgroup> fi;
  std::string serialized;

  const vfe::FullyInvariantSubgroup& invariant() {
    if (!fi) fi = vfe::compute_fully_invariant(doc.group());
    return *fi;
  }
};

struct vfe_report {
  vfe::Report report;
  std::string rendered;
};

namespace {

thread_local std::string last_error;

vfe_status fail(vfe_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

template <class F>
vfe_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const vfe::InputError& e) {
    return fail(VFE_ERR_INPUT, e.what());
  } catch (const vfe::ResourceError& e) {
    return fail(VFE_ERR_RESOURCE, e.what());
  } catch (const vfe::DomainError& e) {
    return fail(VFE_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VFE_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(VFE_ERR_INTERNAL, e.what());
  }
}

vfe::FixOptions fix_options(const vfe_options* o) {
  vfe::FixOptions f;
  if (o) {
    if (o->length_bound < 1) throw vfe::DomainError("length bound must be at least 1");
    f.length_bound = o->length_bound;
    f.node_budget = o->node_budget;
  }
  return f;
}

vfe::EvFixOptions evfix_options(const vfe_options* o) {
  vfe::EvFixOptions e;
  e.fix = fix_options(o);
  e.trust_oracle = o && o->trust_oracle;
  return e;
}

bool tracing(const vfe_options* o) { return o && o->trace; }

struct Context {
  vfe_group* g;
  const vfe::VFGroup& group;
  const vfe::GEndo* endo;
  std::string endo_name;
};

Context context(const vfe_group* g, const char* endo) {
  if (!g) throw vfe::DomainError("null group handle");
  auto* mg = const_cast<vfe_group*>(g);  // only the lazy F' cache is written
  Context c{mg, mg->doc.group(), nullptr, ""};
  if (endo) {
    for (const auto& e : mg->doc.endos())
      if (e.name == endo) c.endo = &e.endo;
    if (!c.endo) throw vfe::DomainError(std::string("unknown endomorphism '") + endo + "'");
    c.endo_name = endo;
  }
  return c;
}

vfe::GElement parse_element(const Context& c, const char* text) {
  if (!text) throw vfe::DomainError("null element");
  return c.group.parse(text);
}

vfe_status emit(vfe::Report r, vfe_report** out, vfe_status s = VFE_OK) {
  if (!out) throw vfe::DomainError("null report pointer");
  *out = new vfe_report{std::move(r), {}};
  return s;
}

std::vector<std::string> format_all(const vfe::VFGroup& g, const std::vector<vfe::GElement>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(g.format(x));
  return out;
}

std::vector<std::string> edge_lines(const vfe::Automaton& a, const vfe::Alphabet* names) {
  std::vector<std::string> out;
  const std::string dump = a.dump(names);
  std::size_t start = 0;
  while (start < dump.size()) {
    const std::size_t end = dump.find('\n', start);
    out.push_back(dump.substr(start, end - start));
    start = end == std::string::npos ? dump.size() : end + 1;
  }
  return out;
}

std::string index_str(const vfe::Index& i) { return i ? std::to_string(*i) : "INFINITE"; }

void add_certificate(vfe::Report& r, const vfe::CPhiCertificate& c, bool trace) {
  r.add("c_phi", c.c_phi);
  r.add("period_bound", c.period.bound);
  r.add("straight_bound", c.straight.bound);
  r.add("aut_order_bound", c.period.aut_bound);
  if (!trace) return;
  std::vector<std::string> cosets;
  for (const auto& p : c.period.cosets) {
    std::string line = "coset " + std::to_string(p.coset) + " orbit";
    for (auto q : p.theta_orbit) line += " " + std::to_string(q);
    line += p.period ? " period " + std::to_string(*p.period) + " bound " + std::to_string(p.bound)
                     : " nonperiodic";
    cosets.push_back(line);
  }
  r.add_list("trace.period", cosets);
  std::vector<std::string> steps;
  for (const auto& s : c.straight.steps)
    steps.push_back("j " + std::to_string(s.j) + " rank " + std::to_string(s.rank) + "->" +
                    std::to_string(s.next_rank) + " index " + std::to_string(s.index) + "->" +
                    std::to_string(s.next_index));
  r.add_list("trace.straight", steps);
  r.add("trace.vanishing", c.straight.vanishing);
  if (c.straight.vanishing) r.add("trace.largest_orbit", c.straight.largest_orbit);
}

vfe_status evfix_report(const vfe_group* g, const char* endo, const vfe_options* opts,
                        vfe_report** out, bool periodic, bool dump) {
  const Context c = context(g, endo);
  const auto& fi = c.g->invariant();
  const vfe::EvFixOptions eo = evfix_options(opts);
  vfe::EvFixReport e;
  vfe::CPhiCertificate cert;
  if (periodic) {
    e = vfe::evper_is_fg(c.group, *c.endo, fi, eo);
    cert = vfe::c_phi(c.group, vfe::power(c.group, *c.endo, e.power), fi);
  } else {
    cert = vfe::c_phi(c.group, *c.endo, fi);
    e = vfe::evfix_is_fg(c.group, *c.endo, cert, fi, vfe::fix_vfree(c.group, *c.endo, fi, eo.fix),
                         eo);
  }
  vfe::Report r;
  r.add("endo", c.endo_name);
  r.add("subgroup", periodic ? "EvPer" : "EvFix");
  if (periodic) r.add("power", e.power);
  r.add("verdict", vfe::to_string(e.verdict));
  if (e.verdict == vfe::Verdict::Unknown) r.add("leaning", vfe::to_string(e.leaning));
  r.add("branch", vfe::to_string(e.branch));
  r.add("kernel_finite", e.kernel_finite);
  r.add("fix_complete", e.fix_complete.str());
  if (e.branch == vfe::EvFixReport::Branch::Index)
    r.add("relative_index", index_str(e.relative_index));
  if (e.index_in_f) r.add("index_in_f_prime", *e.index_in_f);
  if (e.power_witness) r.add("power_witness", c.group.format(*e.power_witness));
  if (e.branch == vfe::EvFixReport::Branch::FiniteKernel)
    r.add_list("kernel", format_all(c.group, e.kernel));
  r.add("c_phi", cert.c_phi);
  if (e.verdict == vfe::Verdict::Yes) {
    r.add_list("generator", format_all(c.group, e.generators));
    r.add("generators_complete", e.generators_complete.str());
    r.add("reduced_count", e.reduced_count);
    r.add("rank_bound", vfe::rank_bound(fi));
    if (dump) {
      const vfe::VSubgroup s(c.group, fi, e.generators);
      r.add_list("reduced", format_all(c.group, s.reduced_generators()));
      r.add_list("free_part", edge_lines(s.free_part(), &c.group.presentation().free));
    }
  }
  if (tracing(opts)) add_certificate(r, cert, true);
  return emit(std::move(r), out, e.verdict == vfe::Verdict::Unknown ? VFE_UNKNOWN : VFE_OK);
}

}  // namespace

extern "C" {

void vfe_options_init(vfe_options* opts) {
  if (!opts) return;
  opts->length_bound = 12;
  opts->node_budget = vfe::FixOptions{}.node_budget;
  opts->cap = 0;
  opts->trust_oracle = 0;
  opts->trace = 0;
}

const char* vfe_version(void) { return "0.1.0"; }

const char* vfe_last_error(void) { return last_error.c_str(); }

vfe_status vfe_group_load_file(const char* path, vfe_group** out) {
  return guarded([&] {
    if (!path || !out) throw vfe::DomainError("null argument");
    *out = new vfe_group{vfe::Document::from_file(path), std::nullopt, {}};
    return VFE_OK;
  });
}

vfe_status vfe_group_load_text(const char* text, vfe_group** out) {
  return guarded([&] {
    if (!text || !out) throw vfe::DomainError("null argument");
    *out = new vfe_group{vfe::Document::from_text(text), std::nullopt, {}};
    return VFE_OK;
  });
}

void vfe_group_free(vfe_group* g) { delete g; }

size_t vfe_group_endo_count(const vfe_group* g) { return g ? g->doc.endos().size() : 0; }

const char* vfe_group_endo_name(const vfe_group* g, size_t i) {
  if (!g || i >= g->doc.endos().size()) return nullptr;
  return g->doc.endos()[i].name.c_str();
}

const char* vfe_group_serialize(const vfe_group* g) {
  if (!g) return nullptr;
  auto* mg = const_cast<vfe_group*>(g);
  if (mg->serialized.empty())
    mg->serialized = vfe::serialize(vfe::Input{g->doc.group().presentation(), g->doc.endos()});
  return mg->serialized.c_str();
}

vfe_status vfe_validate(const vfe_group* g, vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, nullptr);
    vfe::Report r;
    r.add("valid", true);
    r.add("free_rank", c.group.rank());
    r.add("cosets", c.group.coset_count());
    r.add("free", c.group.is_free());
    std::vector<std::string> names;
    for (const auto& e : c.g->doc.endos()) names.push_back(e.name);
    r.add_list("endo", names);
    return emit(std::move(r), out);
  });
}

vfe_status vfe_invariant(const vfe_group* g, const vfe_options* opts, vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, nullptr);
    const auto& fi = c.g->invariant();
    vfe::Report r;
    r.add("index_in_g", fi.index_in_g());
    r.add("rank", fi.rank());
    r.add("kernels", fi.homs().size());
    std::vector<std::string> basis;
    for (const auto& w : fi.basis()) basis.push_back(c.group.presentation().free.format(w));
    r.add_list("basis", basis);
    r.add_list("coset_rep", format_all(c.group, fi.coset_reps()));
    if (tracing(opts))
      r.add_list("automaton", edge_lines(fi.automaton(), &c.group.presentation().free));
    return emit(std::move(r), out);
  });
}

vfe_status vfe_fix(const vfe_group* g, const char* endo, const vfe_options* opts,
                   vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, endo);
    const auto& fi = c.g->invariant();
    const vfe::GFixResult f = vfe::fix_vfree(c.group, *c.endo, fi, fix_options(opts));
    vfe::Report r;
    r.add("endo", c.endo_name);
    r.add("complete", f.complete.str());
    r.add("core_rank", f.core.subgroup.rank());
    r.add("core_complete", f.core.complete.str());
    r.add_list("generator", format_all(c.group, f.generators));
    std::vector<std::string> pieces;
    for (const auto& p : f.pieces) {
      std::string line = "coset " + c.group.format(fi.coset_reps()[p.coset]) + ": ";
      if (!p.in_f_prime)
        line += "empty (twisted element outside F')";
      else if (p.empty)
        line += "empty (" + p.complete.str() + ")";
      else
        line += c.group.format(p.representative) + " (" + p.complete.str() + ")";
      pieces.push_back(line);
    }
    r.add_list("piece", pieces);
    if (tracing(opts)) {
      std::vector<vfe::Word> core;
      for (const auto& w : f.core.subgroup.basis()) core.push_back(vfe::evaluate(w, f.basis));
      r.add_list("core_automaton",
                 edge_lines(vfe::Automaton::from_generators(core, c.group.rank()),
                            &c.group.presentation().free));
    }
    return emit(std::move(r), out);
  });
}

vfe_status vfe_orbit(const vfe_group* g, const char* endo, const char* element,
                     const vfe_options* opts, vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, endo);
    const vfe::GElement x = parse_element(c, element);
    std::size_t cap = opts ? opts->cap : 0;
    if (cap == 0) cap = vfe::c_phi(c.group, *c.endo, c.g->invariant()).c_phi;
    const vfe::OrbitReport o = vfe::orbit(c.group, *c.endo, x, cap);
    vfe::Report r;
    r.add("endo", c.endo_name);
    r.add("element", c.group.format(x));
    r.add("cap", cap);
    r.add("status", o.finite() ? std::string("FINITE") : "EXCEEDED(" + std::to_string(cap) + ")");
    if (o.finite()) {
      r.add("preperiod", o.preperiod);
      r.add("period", o.period);
      r.add("size", o.elements.size());
      r.add_list("orbit", format_all(c.group, o.elements));
    } else {
      // The words grow without bound here; their lengths are what matters.
      std::vector<std::string> lengths;
      for (const auto& e : o.elements) lengths.push_back(std::to_string(e.word.size()));
      r.add_list("length", lengths);
    }
    return emit(std::move(r), out);
  });
}

vfe_status vfe_cphi(const vfe_group* g, const char* endo, const vfe_options* opts,
                    vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, endo);
    const auto& fi = c.g->invariant();
    vfe::Report r;
    r.add("endo", c.endo_name);
    r.add("f_prime_rank", fi.rank());
    r.add("f_prime_index", fi.index_in_g());
    add_certificate(r, vfe::c_phi(c.group, *c.endo, fi), tracing(opts));
    return emit(std::move(r), out);
  });
}

vfe_status vfe_finite_order(const vfe_group* g, const char* endo, const vfe_options* opts,
                            vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, endo);
    const auto cert = vfe::c_phi(c.group, *c.endo, c.g->invariant());
    const vfe::FiniteOrder f = vfe::is_finite_order(c.group, *c.endo, cert);
    vfe::Report r;
    r.add("endo", c.endo_name);
    r.add("result", f.finite ? "FINITE" : "INFINITE");
    if (f.finite) {
      r.add("preperiod", f.preperiod);
      r.add("period", f.period);
    }
    add_certificate(r, cert, tracing(opts));
    return emit(std::move(r), out);
  });
}

vfe_status vfe_stabilizes(const vfe_group* g, const char* endo, const vfe_options* opts,
                          vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, endo);
    const auto cert = vfe::c_phi(c.group, *c.endo, c.g->invariant());
    const auto m = vfe::stabilizes(c.group, *c.endo, cert);
    vfe::Report r;
    r.add("endo", c.endo_name);
    r.add("result", m ? std::to_string(*m) : std::string("NONE"));
    add_certificate(r, cert, tracing(opts));
    return emit(std::move(r), out);
  });
}

vfe_status vfe_kernel_member(const vfe_group* g, const char* endo, const char* element,
                             const vfe_options* opts, vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, endo);
    const vfe::GElement x = parse_element(c, element);
    const auto cert = vfe::c_phi(c.group, *c.endo, c.g->invariant());
    vfe::Report r;
    r.add("endo", c.endo_name);
    r.add("element", c.group.format(x));
    r.add("in_stable_kernel", vfe::in_stable_kernel(c.group, *c.endo, cert, x));
    add_certificate(r, cert, tracing(opts));
    return emit(std::move(r), out);
  });
}

vfe_status vfe_evfix_member(const vfe_group* g, const char* endo, const char* element,
                            const vfe_options* opts, vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, endo);
    const vfe::GElement x = parse_element(c, element);
    const auto cert = vfe::c_phi(c.group, *c.endo, c.g->invariant());
    vfe::Report r;
    r.add("endo", c.endo_name);
    r.add("element", c.group.format(x));
    r.add("evfix", vfe::in_evfix(c.group, *c.endo, cert, x));
    r.add("evper", vfe::in_evper(c.group, *c.endo, cert, x));
    add_certificate(r, cert, tracing(opts));
    return emit(std::move(r), out);
  });
}

vfe_status vfe_evfix_fg(const vfe_group* g, const char* endo, const vfe_options* opts,
                        vfe_report** out) {
  return guarded([&] { return evfix_report(g, endo, opts, out, false, false); });
}

vfe_status vfe_evfix_gens(const vfe_group* g, const char* endo, const vfe_options* opts,
                          vfe_report** out) {
  return guarded([&] { return evfix_report(g, endo, opts, out, false, true); });
}

vfe_status vfe_evper_fg(const vfe_group* g, const char* endo, const vfe_options* opts,
                        vfe_report** out) {
  return guarded([&] { return evfix_report(g, endo, opts, out, true, false); });
}

vfe_status vfe_normal(const vfe_group* g, const char* endo, const vfe_options* opts,
                      vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, endo);
    if (!c.group.is_free()) throw vfe::DomainError("normal requires a free group (one coset)");
    const vfe::FreeEndo phi = vfe::free_part(*c.endo, c.group.rank());
    const auto cert = vfe::c_phi(c.group, *c.endo, c.g->invariant());
    const auto fix = vfe::fix_free_bounded(phi, fix_options(opts));
    const vfe::NormalityReport n =
        vfe::normality_free(phi, cert, fix, opts && opts->trust_oracle);
    vfe::Report r;
    r.add("endo", c.endo_name);
    r.add("verdict", vfe::to_string(n.verdict));
    if (n.verdict == vfe::Normality::Unknown) r.add("leaning", vfe::to_string(n.leaning));
    r.add("vanishing", n.vanishing);
    r.add("fix_complete", n.fix_complete.str());
    add_certificate(r, cert, tracing(opts));
    return emit(std::move(r), out,
                n.verdict == vfe::Normality::Unknown ? VFE_UNKNOWN : VFE_OK);
  });
}

vfe_status vfe_rank_bound(const vfe_group* g, const vfe_options* /*opts*/, vfe_report** out) {
  return guarded([&] {
    const Context c = context(g, nullptr);
    const auto& fi = c.g->invariant();
    vfe::Report r;
    r.add("f_prime_rank", fi.rank());
    r.add("f_prime_index", fi.index_in_g());
    r.add("rank_bound", vfe::rank_bound(fi));
    return emit(std::move(r), out);
  });
}

vfe_status vfe_aut_order_bound(unsigned long n, vfe_report** out) {
  return guarded([&] {
    vfe::Report r;
    r.add("n", n);
    r.add("aut_order_bound", vfe::aut_order_bound(n));
    return emit(std::move(r), out);
  });
}

void vfe_report_free(vfe_report* r) { delete r; }

size_t vfe_report_size(const vfe_report* r) { return r ? r->report.entries().size() : 0; }

const char* vfe_report_key(const vfe_report* r, size_t i) {
  if (!r || i >= r->report.entries().size()) return nullptr;
  return r->report.entries()[i].first.c_str();
}

const char* vfe_report_value(const vfe_report* r, size_t i) {
  if (!r || i >= r->report.entries().size()) return nullptr;
  return r->report.entries()[i].second.c_str();
}

const char* vfe_report_get(const vfe_report* r, const char* key) {
  if (!r || !key) return nullptr;
  const std::string* v = r->report.find(key);
  return v ? v->c_str() : nullptr;
}

const char* vfe_report_render(vfe_report* r, vfe_format format) {
  if (!r) return nullptr;
  r->rendered = format == VFE_FORMAT_STRUCTURED ? r->report.structured() : r->report.text();
  return r->rendered.c_str();
}

}  // extern "C"
