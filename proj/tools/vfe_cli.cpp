// vfe: command-line front end over the C API.
#include <cstdio>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "vfe/vfe.h"

namespace {

enum Exit { kDecided = 0, kInput = 1, kUnknown = 2, kResource = 3, kInternal = 4 };

int exit_code(vfe_status s) {
  switch (s) {
    case VFE_OK: return kDecided;
    case VFE_UNKNOWN: return kUnknown;
    case VFE_ERR_INPUT:
    case VFE_ERR_ARGUMENT: return kInput;
    case VFE_ERR_RESOURCE: return kResource;
    default: return kInternal;
  }
}

struct Config {
  std::string file, endo, element;
  unsigned long n = 0;
  std::size_t bound = 12, cap = 0;
  bool trust = false, trace = false;
  std::string format = "text";
};

using Command = std::function<vfe_status(const vfe_group*, const vfe_options*, vfe_report**)>;

int finish(vfe_status s, vfe_report* r, const Config& c) {
  if (r) {
    std::fputs(vfe_report_render(r, c.format == "structured" ? VFE_FORMAT_STRUCTURED
                                                             : VFE_FORMAT_TEXT),
               stdout);
    vfe_report_free(r);
  }
  if (s != VFE_OK && s != VFE_UNKNOWN) std::fprintf(stderr, "error: %s\n", vfe_last_error());
  return exit_code(s);
}

int run(const Config& c, const Command& cmd) {
  vfe_group* g = nullptr;
  vfe_status s = vfe_group_load_file(c.file.c_str(), &g);
  if (s != VFE_OK) return finish(s, nullptr, c);
  vfe_options o;
  vfe_options_init(&o);
  o.length_bound = c.bound;
  o.cap = c.cap;
  o.trust_oracle = c.trust;
  o.trace = c.trace;
  vfe_report* r = nullptr;
  s = cmd(g, &o, &r);
  vfe_group_free(g);
  return finish(s, r, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Endomorphisms of virtually free groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vfe_version()));
  Config c;
  Command cmd;

  auto common = [&](CLI::App* sub, bool endo, bool element) {
    sub->add_option("file", c.file, "presentation file")->required();
    if (endo) sub->add_option("endo", c.endo, "endomorphism name")->required();
    if (element) sub->add_option("element", c.element, "element of the group")->required();
    sub->add_option("--bound", c.bound, "length bound for the Fix search")
        ->check(CLI::PositiveNumber);
    sub->add_option("--cap", c.cap, "orbit cap (default: C_phi)")->check(CLI::PositiveNumber);
    sub->add_flag("--trust-oracle", c.trust, "treat a bounded Fix as exact");
    sub->add_flag("--trace", c.trace, "dump certificates");
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
  };
  auto plain = [&](const char* name, const char* help,
                   vfe_status (*f)(const vfe_group*, const vfe_options*, vfe_report**)) {
    auto* sub = app.add_subcommand(name, help);
    common(sub, false, false);
    sub->callback([&, f] { cmd = f; });
  };
  auto with_endo = [&](const char* name, const char* help,
                       vfe_status (*f)(const vfe_group*, const char*, const vfe_options*,
                                       vfe_report**)) {
    auto* sub = app.add_subcommand(name, help);
    common(sub, true, false);
    sub->callback([&, f] {
      cmd = [&, f](const vfe_group* g, const vfe_options* o, vfe_report** r) {
        return f(g, c.endo.c_str(), o, r);
      };
    });
  };
  auto with_element = [&](const char* name, const char* help,
                          vfe_status (*f)(const vfe_group*, const char*, const char*,
                                          const vfe_options*, vfe_report**)) {
    auto* sub = app.add_subcommand(name, help);
    common(sub, true, true);
    sub->callback([&, f] {
      cmd = [&, f](const vfe_group* g, const vfe_options* o, vfe_report** r) {
        return f(g, c.endo.c_str(), c.element.c_str(), o, r);
      };
    });
  };

  plain("validate", "parse and check a presentation file",
        [](const vfe_group* g, const vfe_options*, vfe_report** r) { return vfe_validate(g, r); });
  plain("invariant", "the fully invariant free subgroup F'", vfe_invariant);
  with_endo("fix", "fixed subgroup", vfe_fix);
  with_element("orbit", "forward orbit of an element", vfe_orbit);
  with_endo("cphi", "bound on finite orbit sizes", vfe_cphi);
  with_endo("finite-order", "is the endomorphism of finite order", vfe_finite_order);
  with_endo("stabilizes", "least m with phi^m = phi^(m+1)", vfe_stabilizes);
  with_element("kernel-member", "membership in the stable kernel", vfe_kernel_member);
  with_element("evfix-member", "membership in EvFix and EvPer", vfe_evfix_member);
  with_endo("evfix-fg", "is EvFix finitely generated", vfe_evfix_fg);
  with_endo("evper-fg", "is EvPer finitely generated", vfe_evper_fg);
  with_endo("evfix-gens", "evfix-fg with the reduced generating set", vfe_evfix_gens);
  with_endo("normal", "normality of EvFix (free groups only)", vfe_normal);
  plain("rank-bound", "bound on the rank of a finitely generated EvFix", vfe_rank_bound);

  auto* aob = app.add_subcommand("aut-order-bound", "max order of a finite-order automorphism of F_n");
  aob->add_option("n", c.n, "rank")->required();
  aob->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));
  bool standalone = false;
  aob->callback([&] { standalone = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }
  if (standalone) {
    vfe_report* r = nullptr;
    const vfe_status s = vfe_aut_order_bound(c.n, &r);
    return finish(s, r, c);
  }
  return run(c, cmd);
}
