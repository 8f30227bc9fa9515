#pragma once

// The jetmetric command line. run() parses argv, executes one subcommand and
// writes a single JSON report to `out`. Exit status: 0 on success, 1 when the
// computation raised a typed error (reported in the JSON), 2 on usage errors
// (message on `err`, no report).

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jetmetric/artin/operations.hpp"
#include "jetmetric/cli/report.hpp"
#include "jetmetric/errors.hpp"
#include "jetmetric/hilbert/hilbert.hpp"
#include "jetmetric/metric/distance.hpp"
#include "jetmetric/presentation/presentation.hpp"
#include "jetmetric/presentation/template.hpp"
#include "jetmetric/resolution/resolution.hpp"
#include "jetmetric/slopes/slopes.hpp"

#ifndef JETMETRIC_VERSION
#define JETMETRIC_VERSION "0.1.0"
#endif

namespace jetmetric::cli {

struct InputFile {
  std::string path;
  std::string text;
};

inline InputFile read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Usage, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return {path, buf.str()};
}

inline std::string base_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

inline std::pair<long, long> usage_range(const std::string& text, const std::string& flag) {
  try {
    return pres::parse_range(text);
  } catch (const Error& e) {
    fail(ErrorKind::Usage, flag + ": " + e.message());
  }
}

// State shared by the subcommands of one invocation.
struct Invocation {
  std::string subcommand;
  std::vector<InputFile> inputs;
  Json parameters = Json::object();
  Json result;
  Json evidence = Json::object();

  pres::AnyPresentation load(const std::string& path) {
    inputs.push_back(read_input(path));
    return pres::parse_presentation(inputs.back().text);
  }

  Json report() const {
    Json in = Json::array();
    for (const auto& f : inputs) in.push_back(Json{{"path", base_name(f.path)}, {"fnv1a64", fnv1a64(f.text)}});
    return Json{{"schema", "jetmetric/1"},
                {"version", JETMETRIC_VERSION},
                {"subcommand", subcommand},
                {"inputs", in},
                {"parameters", parameters}};
  }
};

template <class Fn>
decltype(auto) visit_pair(const pres::AnyPresentation& p, const pres::AnyPresentation& q, Fn&& fn) {
  metric::require_same_kind(p, q);
  return std::visit(
      [&](const auto& x) {
        using P = std::decay_t<decltype(x)>;
        return fn(x, std::get<P>(q));
      },
      p);
}

struct Options {
  std::string file, file_b, template_file;
  unsigned order = 0;
  unsigned max_order = 6;
  unsigned ext = 1;
  std::uint64_t effort = 1000000;
  std::string window, range;
  unsigned cap = 4;
  unsigned degree_cap = 0;
  std::string which, slope = "delta0", of = "residue";
  unsigned tail = 3;
};

inline iso::SearchBudget budget(const Options& o) { return {o.ext, o.effort}; }

inline void cmd_jets(Invocation& inv, const Options& o) {
  inv.parameters = Json{{"order", o.order}};
  const auto p = inv.load(o.file);
  std::visit(
      [&](const auto& x) {
        const auto a = artin::jet(x, o.order);
        inv.result = algebra_summary(a);
        inv.result["basis_size"] = a.dim();
        if (!a.is_zero_ring()) {
          inv.result["socle_dim"] = artin::socle(a).dim;
          inv.result["gorenstein"] = artin::is_gorenstein_artinian(a);
        }
      },
      p);
}

inline void cmd_hilbert(Invocation& inv, const Options& o) {
  const auto p = inv.load(o.file);
  std::visit(
      [&](const auto& x) {
        if (x.graded()) {
          const unsigned N = o.order ? o.order : hilbert::default_prefix_length(x);
          inv.parameters["prefix"] = N;
          const auto h = hilbert::hilbert_series(x, N);
          inv.result = Json{{"series_prefix", sizes(h.series_prefix)},
                            {"rational_form", rational_form(*h.rational_form)}};
          inv.result["degreewise"] = h.degreewise ? polynomial(*h.degreewise) : Json(nullptr);
          inv.result["cumulative"] = polynomial(h.cumulative);
          inv.result["dim"] = h.dim;
          inv.result["mult"] = rational(h.mult);
          inv.evidence["source"] = h.source;
        }
        if (!x.graded() || !o.window.empty()) {
          const auto [lo, hi] = o.window.empty() ? std::pair<long, long>{4, 8} : usage_range(o.window, "--window");
          if (lo < 1) fail(ErrorKind::Usage, "--window must start at 1 or later");
          inv.parameters["window"] = std::to_string(lo) + ".." + std::to_string(hi);
          const auto fit = hilbert::hs_polynomial_from_jets(x, static_cast<unsigned>(lo), static_cast<unsigned>(hi));
          const auto dm = hilbert::dim_mult(fit.poly);
          Json jets{{"cumulative", polynomial(fit.poly)},
                    {"dim", dm.d},
                    {"mult", rational(dm.e)},
                    {"certified", fit.certified},
                    {"verified_on", std::to_string(fit.verify_lo) + ".." + std::to_string(fit.verify_hi)}};
          if (x.graded()) {
            inv.evidence["from_jets"] = jets;
          } else {
            inv.result = Json{{"cumulative", jets["cumulative"]}, {"dim", dm.d}, {"mult", rational(dm.e)}};
            inv.evidence = Json{{"source", "jet-window"}, {"certified", fit.certified},
                                {"verified_on", jets["verified_on"]}};
          }
        }
      },
      p);
}

inline void cmd_distance(Invocation& inv, const Options& o, bool defpair) {
  inv.parameters = Json{{"max_order", o.max_order}, {"ext", o.ext}, {"effort", o.effort}};
  const auto p = inv.load(o.file);
  const auto q = inv.load(o.file_b);
  const Json j = visit_pair(p, q, [&](const auto& x, const auto& y) {
    const auto jets = [&](unsigned n) {
      return defpair ? std::pair{artin::defpair_jet(x, n), artin::defpair_jet(y, n)}
                     : std::pair{artin::jet(x, n), artin::jet(y, n)};
    };
    const auto d = defpair ? metric::defpair_distance(x, y, o.max_order, budget(o))
                           : metric::jet_distance(x, y, o.max_order, budget(o));
    return distance(d, jets);
  });
  inv.result = j["result"];
  inv.evidence = j["evidence"];
}

inline slopes::Slope parse_slope(const std::string& s) {
  if (s == "delta0") return slopes::Slope::delta0;
  if (s == "eps0") return slopes::Slope::eps0;
  if (s == "hilbert") return slopes::Slope::hilbert;
  fail(ErrorKind::Usage, "--slope must be delta0, eps0 or hilbert");
}

inline void cmd_slopes(Invocation& inv, const Options& o) {
  inv.parameters = Json{{"which", o.which}};
  const bool needs_order = o.which == "delta0" || o.which == "eps0";
  if (needs_order) {
    if (o.order == 0) fail(ErrorKind::Usage, "--which " + o.which + " needs --order");
    inv.parameters["order"] = o.order;
  }
  std::vector<unsigned long> orders;
  slopes::Slope slope = slopes::Slope::delta0;
  if (o.which == "trace") {
    if (o.range.empty()) fail(ErrorKind::Usage, "--which trace needs --range a..b");
    slope = parse_slope(o.slope);
    const auto [lo, hi] = usage_range(o.range, "--range");
    if (lo < 1) fail(ErrorKind::Usage, "--range must start at 1 or later");
    for (long n = lo; n <= hi; ++n) orders.push_back(static_cast<unsigned long>(n));
    inv.parameters["slope"] = o.slope;
    inv.parameters["range"] = o.range;
  }
  const auto p = inv.load(o.file);
  std::visit(
      [&](const auto& x) {
        if (o.which == "delta0" || o.which == "eps0") {
          const auto l = hilbert::jet_lengths(x, o.order);
          inv.evidence["lengths"] = l.source;
          inv.result = o.which == "delta0" ? delta0(slopes::delta0_of_jet(l, o.order)) : eps0(slopes::eps0_of_jet(l, o.order));
        } else if (o.which == "rho") {
          inv.result = rho(slopes::rho(x));
        } else if (o.which == "quasidim") {
          const auto q = slopes::quasi_dimension(x);
          inv.result = Json{{"rounded", q.rounded}, {"n_used", q.n_used}, {"certificate", q.certificate}};
          inv.evidence = Json{{"rho", rho(q.rho)}, {"delta0", delta0(q.delta)}};
        } else if (o.which == "trace") {
          inv.result = trace(slopes::slope_trace(x, slope, orders));
        } else {
          fail(ErrorKind::Usage, "--which must be delta0, eps0, rho, quasidim or trace");
        }
      },
      p);
}

inline void cmd_resolve(Invocation& inv, const Options& o) {
  if (o.of != "residue" && o.of != "quotient") fail(ErrorKind::Usage, "--of must be residue or quotient");
  const auto p = inv.load(o.file);
  std::visit(
      [&](const auto& x) {
        resolution::ResolutionData r;
        if (o.of == "residue") {
          unsigned top = 1;
          for (const auto& g : x.gens) top = std::max(top, g.degree());
          const unsigned dcap = o.degree_cap ? o.degree_cap : o.cap * std::max(1u, top - 1) + 1;
          inv.parameters = Json{{"of", o.of}, {"cap", o.cap}, {"degree_cap", dcap}};
          r = resolution::betti_residue_field(x, o.cap, dcap);
        } else {
          inv.parameters = Json{{"of", o.of}};
          if (o.degree_cap) inv.parameters["degree_cap"] = o.degree_cap;
          r = resolution::minimal_resolution_of_quotient(x, o.degree_cap);
        }
        inv.result = betti(r);
        inv.evidence = resolution_evidence(r);
      },
      p);
}

inline void cmd_classify(Invocation& inv, const Options& o) {
  const auto p = inv.load(o.file);
  std::visit(
      [&](const auto& x) {
        const auto c = resolution::depth_and_classify(x);
        inv.result = Json{{"depth", c.depth}, {"dim", c.dim}, {"pd", c.pd}, {"embdim", c.embdim},
                          {"regular", c.regular}, {"cohen_macaulay", c.cohen_macaulay}};
        inv.result["gorenstein"] = c.gorenstein == resolution::Tri::unknown ? Json("unknown")
                                                                             : Json(c.gorenstein == resolution::Tri::yes);
        inv.evidence = Json{{"betti", betti(c.resolution)}, {"resolution", resolution_evidence(c.resolution)},
                            {"auslander_buchsbaum", c.depth + c.pd == x.nvars()}};
      },
      p);
}

inline void cmd_euler(Invocation& inv, const Options& o) {
  const auto p = inv.load(o.file);
  std::visit(
      [&](const auto& x) {
        const auto e = hilbert::euler_characteristic(x);
        inv.result = Json{{"chi", rational(e.chi)}};
        if (e.genus) inv.result["genus"] = rational(*e.genus);
        inv.evidence = Json{{"polynomial", polynomial(e.polynomial)}, {"series", rational_form(e.series)}};
      },
      p);
}

inline void cmd_limit(Invocation& inv, const Options& o) {
  inv.inputs.push_back(read_input(o.template_file));
  std::optional<long> lo, hi;
  if (!o.range.empty()) std::tie(lo, hi) = usage_range(o.range, "--range");
  const auto tpl = pres::parse_template(inv.inputs.back().text, lo, hi);
  inv.parameters = Json{{"order", o.order}, {"range", std::to_string(tpl.lo) + ".." + std::to_string(tpl.hi)},
                        {"ext", o.ext}, {"effort", o.effort}, {"tail", o.tail}};
  const auto any = metric::limit_jets(tpl, o.order, budget(o), o.tail);
  std::visit(
      [&](const auto& r) {
        using F = std::decay_t<decltype(r.stable_jet.field())>;
        inv.result = Json{{"w0", r.w0}, {"minimal_certified", r.minimal_certified},
                          {"stable_jet", algebra_summary(r.stable_jet)}};
        Json entries = Json::array();
        for (const auto& [w, v] : r.entries) {
          const auto member = std::get<pres::Presentation<F>>(pres::instantiate_template(tpl, w));
          Json j = verdict(v, artin::jet(member, o.order), r.stable_jet);
          j["w"] = w;
          entries.push_back(std::move(j));
        }
        inv.evidence = Json{{"against_w", tpl.hi}, {"entries", entries}};
      },
      any);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact jets, deformation distances and slope invariants of local and graded algebras", "jetmetric"};
  app.require_subcommand(1);
  app.set_version_flag("--version", JETMETRIC_VERSION);
  Options o;
  std::map<CLI::App*, std::function<void(Invocation&)>> handlers;

  auto order_opt = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("-n,--order", o.order, "jet order")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };
  auto search_opts = [&](CLI::App* s) {
    s->add_option("--ext", o.ext, "extension degree budget (search over F_{p^k}, k <= ext)")->check(CLI::Range(1u, 12u));
    s->add_option("--effort", o.effort, "search effort budget");
  };

  auto* jets = app.add_subcommand("jets", "jet R/m^n of a presentation");
  jets->add_option("file", o.file)->required();
  order_opt(jets, true);
  handlers[jets] = [&](Invocation& inv) { cmd_jets(inv, o); };

  auto* hil = app.add_subcommand("hilbert", "Hilbert series and Hilbert-Samuel polynomials");
  hil->add_option("file", o.file)->required();
  order_opt(hil, false);
  hil->add_option("--window", o.window, "jet window a..b for the jet-length fit");
  handlers[hil] = [&](Invocation& inv) { cmd_hilbert(inv, o); };

  for (const bool defpair : {false, true}) {
    auto* d = app.add_subcommand(defpair ? "defpair-distance" : "distance",
                                 defpair ? "distance between deformation pairs" : "deformation distance bounds");
    d->add_option("a", o.file)->required();
    d->add_option("b", o.file_b)->required();
    d->add_option("--max-order", o.max_order, "highest jet order compared")->check(CLI::Range(1u, 64u));
    search_opts(d);
    handlers[d] = [&, defpair](Invocation& inv) { cmd_distance(inv, o, defpair); };
  }

  auto* sl = app.add_subcommand("slopes", "delta0, eps0, rho, quasi-dimension and slope traces");
  sl->add_option("file", o.file)->required();
  sl->add_option("--which", o.which)->required()->check(CLI::IsMember({"delta0", "eps0", "rho", "quasidim", "trace"}));
  order_opt(sl, false);
  sl->add_option("--slope", o.slope, "slope traced by --which trace")->check(CLI::IsMember({"delta0", "eps0", "hilbert"}));
  sl->add_option("--range", o.range, "orders a..b traced by --which trace");
  handlers[sl] = [&](Invocation& inv) { cmd_slopes(inv, o); };

  auto* res = app.add_subcommand("resolve", "graded minimal free resolutions");
  res->add_option("file", o.file)->required();
  res->add_option("--cap", o.cap, "homological cap for the residue field")->check(CLI::Range(1u, 64u));
  res->add_option("--degree-cap", o.degree_cap, "internal degree cap");
  res->add_option("--of", o.of, "residue (field over the ring) or quotient (S/I over S)")
      ->check(CLI::IsMember({"residue", "quotient"}));
  handlers[res] = [&](Invocation& inv) { cmd_resolve(inv, o); };

  auto* cls = app.add_subcommand("classify", "depth, dimension and regular/CM/Gorenstein flags");
  cls->add_option("file", o.file)->required();
  handlers[cls] = [&](Invocation& inv) { cmd_classify(inv, o); };

  auto* eul = app.add_subcommand("euler", "Euler characteristic and genus of Proj");
  eul->add_option("file", o.file)->required();
  handlers[eul] = [&](Invocation& inv) { cmd_euler(inv, o); };

  auto* lim = app.add_subcommand("limit", "stabilization of jets along a family");
  lim->add_option("--template", o.template_file, "family template in w")->required();
  order_opt(lim, true);
  lim->add_option("--range", o.range, "override the template range a..b");
  lim->add_option("--tail", o.tail, "members checked pairwise at the end of the range")->check(CLI::Range(2u, 16u));
  search_opts(lim);
  handlers[lim] = [&](Invocation& inv) { cmd_limit(inv, o); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Invocation inv;
  inv.subcommand = chosen->get_name();
  Json report;
  int code = 0;
  try {
    handlers.at(chosen)(inv);
    report = inv.report();
    report["result"] = inv.result;
    report["evidence"] = inv.evidence;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Usage) {
      err << "usage error: " << e.message() << "\n";
      return 2;
    }
    report = inv.report();
    report["error"] = Json{{"kind", std::string(e.name())}, {"message", e.message()}};
    code = 1;
  } catch (const std::exception& e) {
    report = inv.report();
    report["error"] = Json{{"kind", std::string(error_name(ErrorKind::Inconsistency))}, {"message", e.what()}};
    code = 1;
  }
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace jetmetric::cli
