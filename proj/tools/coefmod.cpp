// coefmod: command-line front end for the coefmod library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coefmod/coefmod.hpp"
#include "coefmod/spec_file.hpp"

using namespace coefmod;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitError = 2;

struct Context {
  std::string command;
  std::string spec_path;
  std::optional<std::string> sub_path;
  std::string suite;
  std::string kind = "br";
  std::string values;
  std::uint64_t seed = 1;
  int k = 0;
  int n0 = 1;
  int samples = 50;
  std::optional<int> top;
  bool json = false;
  bool trunc_probe = false;
  Options opt;
};

struct Outcome {
  Json result;
  std::optional<bool> verdict;
};

std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json rationals(const std::vector<mpq_class>& v) {
  Json out = Json::array();
  for (const auto& a : v) out.push_back(a.get_str());
  return out;
}

Json fit_json(const FittedPolynomial& f) {
  return Json{{"degree", f.degree},
              {"top_dimension", f.top_dimension},
              {"binomial_coeffs", rationals(f.binomial_coeffs)},
              {"monomial_coeffs", rationals(f.monomial_coeffs)},
              {"stabilization_index", f.stabilization_index},
              {"confirmed", f.confirmed}};
}

Json table_json(const std::vector<std::uint64_t>& t) {
  Json out = Json::array();
  for (auto v : t) out.push_back(v);
  return out;
}

template <ExactField F>
Json module_json(const ModulePresentation<F>& m) {
  return m.generator_strings();
}

template <ExactField F>
Json polys_json(const std::vector<Poly<F>>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

template <ExactField F>
Json witness_json(const ReductionWitness<F>& w) {
  return Json{{"n0", w.n0}, {"r", w.r}, {"seed", w.seed}, {"elements", polys_json(w.elems)}, {"warnings", w.warnings}};
}

template <ExactField F>
Json cert_json(const CoefficientCertificate<F>& c) {
  Json out{{"k", c.k},
           {"s", c.s},
           {"graded", c.graded},
           {"module", module_json(c.result)},
           {"degree_threshold", c.degree.threshold},
           {"threshold_inclusive", c.degree.inclusive},
           {"fit", fit_json(c.degree.fit)},
           {"checks_passed", c.checks_passed},
           {"join_stable", c.join_stable},
           {"draws", c.draws}};
  out["n0"] = c.n0;
  out["reduction"] = c.reduction ? witness_json(*c.reduction) : Json(nullptr);
  return out;
}

Json probe_json(const ProbeReport& p) {
  return Json{{"complement_size", p.complement_size},
              {"tested", p.tested},
              {"exhaustive", p.exhaustive},
              {"counterexamples", p.counterexamples},
              {"undecided", p.undecided}};
}

std::vector<std::uint64_t> parse_values(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::usage, "--values expects comma-separated nonnegative integers");
    }
  }
  return out;
}

LengthKind parse_kind(const std::string& k) {
  if (k == "br") return LengthKind::buchsbaum_rim;
  if (k == "ra") return LengthKind::rees_amao;
  if (k == "fiber") return LengthKind::fiber;
  if (k == "graded") return LengthKind::graded;
  throw Error(Errc::usage, "unknown --kind " + k + " (br, ra, fiber, graded)");
}

template <ExactField F>
class Runner {
 public:
  Runner(const Context& ctx, ModulePresentation<F> m, std::optional<ModulePresentation<F>> sub)
      : ctx_(ctx), m_(std::move(m)), sub_(std::move(sub)) {}

  Outcome run(const Options& opt) {
    Rng rng(ctx_.seed);
    const auto& c = ctx_.command;
    if (c == "inspect") return inspect(opt);
    if (c == "lengths") return {table_json(lengths(opt)), std::nullopt};
    if (c == "fit") return fit_cmd(opt);
    if (c == "saturate") {
      auto s = saturate(m_);
      return {Json{{"module", module_json(s.module)}, {"index", s.index}}, std::nullopt};
    }
    if (c == "rr") {
      auto r = ratliff_rush(m_, opt.rr_max, opt.rr_window);
      return {Json{{"module", module_json(r.module)}, {"index", r.index}}, std::nullopt};
    }
    if (c == "closure") return {Json{{"module", module_json(integral_closure_monomial(m_))}}, std::nullopt};
    if (c == "qmod") return {Json{{"module", module_json(relative_integral_closure(m_))}}, std::nullopt};
    if (c == "fitting") return {Json{{"ideal", module_json(fitting_ideal(m_))}}, std::nullopt};
    if (c == "spread") {
      auto s = analytic_spread(m_, opt.n_max, opt.window, opt.extra);
      return {Json{{"s", s.s}, {"table", table_json(s.table)}, {"fit", fit_json(s.fit)}}, std::nullopt};
    }
    if (c == "redcheck") {
      auto chk = is_reduction(need_sub(), m_, opt.r_max, opt.extra);
      Json out{{"reduction", chk.reduction}, {"r_max", chk.r_max}};
      out["r"] = chk.reduction ? Json(chk.r) : Json(nullptr);
      out["rees_fit"] = chk.rees_fit ? fit_json(*chk.rees_fit) : Json(nullptr);
      return {out, chk.reduction};
    }
    if (c == "minred") {
      int s = analytic_spread(m_, opt.n_max, opt.window, opt.extra).s;
      auto w = minimal_reduction(m_, ctx_.n0, s, rng, opt, s);
      return {witness_json(w), std::nullopt};
    }
    if (c == "coeff") return coeff(rng, opt);
    if (c == "coeff-chain") return chain(rng, opt);
    if (c == "gcoeff") return gcoeff(rng, opt);
    if (c == "check-5-8") return check_5_8(rng, opt);
    if (c == "verify") return verify(rng, opt);
    throw Error(Errc::usage, "unknown command " + c);
  }

 private:
  const ModulePresentation<F>& need_sub() const {
    if (!sub_) throw Error(Errc::usage, "command needs --sub <spec>");
    return *sub_;
  }

  Outcome inspect(const Options& opt) {
    const auto& r = m_.ring();
    Json out{{"field", r.field.name()}, {"xvars", r.d}, {"rank", r.p}, {"generators", module_json(m_)},
             {"monomial", m_.monomial()}};
    auto w = colength_exponent(m_);
    out["colength_exponent"] = w.c ? Json(*w.c) : Json("infinite");
    out["colength_method"] = w.method;
    try {
      out["analytic_spread"] = analytic_spread(m_, opt.n_max, opt.window, opt.extra).s;
    } catch (const Error& e) {
      out["analytic_spread"] = std::string("undecided: ") + e.what();
    }
    return {out, std::nullopt};
  }

  std::vector<std::uint64_t> lengths(const Options& opt) {
    auto kind = parse_kind(ctx_.kind);
    switch (kind) {
      case LengthKind::buchsbaum_rim:
        return length_table(ModulePresentation<F>::free(m_.ring(), 1), m_, opt.n_max, opt.extra);
      case LengthKind::rees_amao:
        return length_table(m_, need_sub(), opt.n_max, opt.extra);
      case LengthKind::fiber:
        return fiber_table(m_, opt.n_max, opt.extra);
      case LengthKind::graded: {
        auto ideal = fitting_ideal(m_);
        std::vector<std::uint64_t> out;
        auto pw = m_;
        for (int n = 1; n <= opt.n_max; ++n) {
          out.push_back(length_of_quotient(pw, product(ideal, pw), 1, opt.extra));
          pw = product(pw, m_);
        }
        return out;
      }
    }
    return {};
  }

  Outcome fit_cmd(const Options& opt) {
    auto table = lengths(opt);
    auto kind = parse_kind(ctx_.kind);
    std::optional<int> top = ctx_.top;
    if (!top && kind == LengthKind::buchsbaum_rim) top = m_.ring().d + m_.ring().p - 1;
    auto f = fit(NumericalFunction::from_table(kind, table), opt.window, top);
    return {Json{{"kind", length_kind_name(kind)}, {"table", table_json(table)}, {"fit", fit_json(f)}}, std::nullopt};
  }

  Outcome coeff(Rng& rng, const Options& opt) {
    if (ctx_.k < 1) throw Error(Errc::usage, "coeff needs --k >= 1");
    auto cert = coefficient_module(m_, ctx_.k, rng, opt);
    Json out{{"certificate", cert_json(cert)}};
    bool ok = true;
    if (m_.monomial() && cert.result.monomial()) {
      auto probe = maximality_probe(m_, cert, ctx_.samples, rng, opt);
      out["maximality_probe"] = probe_json(probe);
      ok = probe.clean();
    }
    return {out, ok};
  }

  Outcome chain(Rng& rng, const Options& opt) {
    auto ch = coefficient_chain(m_, rng, opt);
    Json links = Json::array();
    bool ok = ch.nested;
    for (const auto& c : ch.links) {
      Json l = cert_json(c);
      if (m_.monomial() && c.result.monomial()) {
        auto probe = maximality_probe(m_, c, ctx_.samples, rng, opt);
        l["maximality_probe"] = probe_json(probe);
        ok = ok && probe.clean();
      }
      links.push_back(l);
    }
    Json out{{"s", ch.s}, {"bottom", module_json(ch.bottom)}, {"links", links}};
    out["top"] = ch.top ? module_json(*ch.top) : Json(nullptr);
    out["nested"] = ch.nested;
    return {out, ok};
  }

  Outcome gcoeff(Rng& rng, const Options& opt) {
    if (ctx_.k >= 1) {
      auto cert = assoc_graded_coefficient_module(m_, ctx_.k, rng, opt);
      return {Json{{"certificate", cert_json(cert)}}, std::nullopt};
    }
    auto ch = assoc_graded_chain(m_, rng, opt);
    Json links = Json::array();
    for (const auto& c : ch.links) links.push_back(cert_json(c));
    return {Json{{"s", ch.s},
                 {"bottom", module_json(ch.bottom)},
                 {"top", module_json(*ch.top)},
                 {"links", links},
                 {"nested", ch.nested}},
            ch.nested};
  }

  Outcome check_5_8(Rng& rng, const Options& opt) {
    if (ctx_.k < 1) throw Error(Errc::usage, "check-5-8 needs --k >= 1");
    auto rep = check_thm_5_8_condition(m_, ctx_.k, opt.n_max, rng, opt);
    return {Json{{"hypothesis_met", rep.hypothesis_met}, {"k", rep.k}, {"holds", rep.holds}, {"fails", rep.fails}},
            std::nullopt};
  }

  Outcome verify(Rng& rng, const Options& opt) {
    const auto& s = ctx_.suite;
    if (s == "prop52") {
      auto r = check_prop_5_2(m_, rng, opt);
      return {Json{{"pass", r.pass},
                   {"coefficient_module", module_json(r.coefficient)},
                   {"ratliff_rush_in_saturation", module_json(r.ratliff_rush_sat)}},
              r.pass};
    }
    if (s == "chain") return chain(rng, opt);
    if (s == "preservation") {
      auto r = check_coefficient_preservation(m_, ctx_.k, rng, opt);
      Json out{{"hypothesis_met", r.hypothesis_met}, {"k", r.k}, {"pass", r.pass},
               {"e_module", rationals(r.e_module)}, {"e_coefficient_module", rationals(r.e_coefficient)}};
      return {out, r.hypothesis_met && r.pass};
    }
    if (s == "cor59") {
      Json rows = Json::array();
      bool ok = true;
      std::vector<int> ks;
      if (ctx_.k >= 1) {
        ks.push_back(ctx_.k);
      } else {
        for (int k = 1; k <= m_.ring().d; ++k) ks.push_back(k);
      }
      for (int k : ks) {
        auto r = check_ideal_power_predicates(m_, k, std::min(opt.n_max, 4), rng, opt);
        rows.push_back(Json{{"k", k},
                            {"graded_predicate", r.graded_predicate},
                            {"coefficient_predicate", r.coefficient_predicate},
                            {"graded_fails", r.graded_fails},
                            {"coefficient_fails", r.coefficient_fails},
                            {"agree", r.agree()}});
        ok = ok && r.agree();
      }
      return {Json{{"rows", rows}, {"pass", ok}}, ok};
    }
    if (s == "closure") {
      auto q = relative_integral_closure(m_);
      bool idem = same_module(relative_integral_closure(q), q);
      bool red = is_reduction(m_, q, opt.r_max, opt.extra).reduction;
      bool pass = idem && red;
      return {Json{{"q", module_json(q)}, {"idempotent", idem}, {"reduction_of_q", red}, {"pass", pass}}, pass};
    }
    if (s == "rees") {
      const auto& n = need_sub();
      auto chk = is_reduction(n, m_, opt.r_max, opt.extra);
      auto table = length_table(m_, n, opt.n_max, opt.extra);
      auto deg = degree_test(NumericalFunction::from_table(LengthKind::rees_amao, table),
                             m_.ring().d + m_.ring().p - 1, false, opt.window);
      bool agree = chk.reduction == deg.holds;
      return {Json{{"reduction", chk.reduction},
                   {"table", table_json(table)},
                   {"fit", fit_json(deg.fit)},
                   {"degree_below_top", deg.holds},
                   {"pass", agree}},
              agree};
    }
    throw Error(Errc::usage, "unknown suite `" + s + "` (prop52, chain, preservation, cor59, closure, rees)");
  }

  const Context& ctx_;
  ModulePresentation<F> m_;
  std::optional<ModulePresentation<F>> sub_;
};

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v) {
      if (e.is_structured()) return false;
    }
    return true;
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object()) {
      out << pad << it.key() << ":\n";
      render_text(v, out, indent + 2);
    } else if (flat(v)) {
      out << pad << it.key() << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
      out << "]\n";
    } else if (v.is_array()) {
      out << pad << it.key() << ":\n";
      for (const auto& e : v) {
        out << pad << "  -\n";
        render_text(e, out, indent + 4);
      }
    } else {
      out << pad << it.key() << ": " << scalar(v) << "\n";
    }
  }
}

template <ExactField F>
int execute(const Context& ctx, Json& report, const ModulePresentation<F>& m,
            const std::optional<ModulePresentation<F>>& sub) {
  Runner<F> runner(ctx, m, sub);
  auto out = runner.run(ctx.opt);
  report["result"] = out.result;
  bool ok = out.verdict.value_or(true);
  if (out.verdict) report["verdict"] = *out.verdict ? "pass" : "fail";
  if (ctx.trunc_probe) {
    Json probe;
    for (int extra = 1; extra <= 2; ++extra) {
      Options opt = ctx.opt;
      opt.extra = ctx.opt.extra + extra;
      bool same = runner.run(opt).result == out.result;
      probe["extra+" + std::to_string(extra)] = same ? "identical" : "differs";
      ok = ok && same;
    }
    report["trunc_probe"] = probe;
  }
  return ok ? kExitOk : kExitVerdict;
}

int run_fit_values(const Context& ctx, Json& report) {
  auto kind = parse_kind(ctx.kind);
  auto table = parse_values(ctx.values);
  auto f = fit(NumericalFunction::from_table(kind, table), ctx.opt.window, ctx.top);
  report["result"] = Json{{"kind", length_kind_name(kind)}, {"table", table_json(table)}, {"fit", fit_json(f)}};
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coefficient modules, closures and Buchsbaum-Rim functions of modules over k[x1..xd]"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_option("--seed", ctx.seed, "RNG seed")->capture_default_str();
  app.add_option("--nmax", ctx.opt.n_max, "length table size")->capture_default_str()->check(CLI::Range(2, 64));
  app.add_option("--budget", ctx.opt.budget, "reduction draws per coefficient module")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000));
  app.add_flag("--json", ctx.json, "emit a JSON report");
  app.add_flag("--trunc-probe", ctx.trunc_probe, "re-run with enlarged truncation bounds and compare");

  struct Cmd {
    const char* name;
    const char* help;
  };
  const std::vector<Cmd> cmds = {
      {"inspect", "ring, generators, colength and analytic spread"},
      {"lengths", "length table (--kind br|ra|fiber|graded)"},
      {"fit", "eventual polynomial of a length table"},
      {"saturate", "saturation with respect to the maximal ideal"},
      {"rr", "Ratliff-Rush closure"},
      {"closure", "integral closure (monomial modules)"},
      {"qmod", "relative integral closure (closure within the saturation)"},
      {"fitting", "Fitting ideal of the maximal minors"},
      {"spread", "analytic spread from minimal generator counts of powers"},
      {"redcheck", "is the --sub module a reduction"},
      {"minred", "random minimal reduction of a power (--n0)"},
      {"coeff", "coefficient module M_k (--k) with maximality probe"},
      {"coeff-chain", "full coefficient chain with nesting and probes"},
      {"gcoeff", "associated-graded coefficient module (--k, or the whole chain)"},
      {"check-5-8", "power condition (M^n)_[k] = I(M) M^n for n <= --nmax"},
      {"verify", "verification suite: prop52, chain, preservation, cor59, closure, rees"},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    std::string name = c.name;
    if (name == "verify") sub->add_option("suite", ctx.suite, "suite name")->required();
    auto* spec = sub->add_option("spec", ctx.spec_path, "module spec file");
    if (name == "fit") {
      sub->add_option("--values", ctx.values, "fit a literal comma-separated table instead of a spec");
      sub->add_option("--top", ctx.top, "top dimension of the binomial basis");
    } else {
      spec->required();
    }
    if (name == "lengths" || name == "fit") sub->add_option("--kind", ctx.kind, "br, ra, fiber or graded");
    if (name == "lengths" || name == "fit" || name == "redcheck" || name == "verify") {
      sub->add_option("--sub", ctx.sub_path, "spec of the smaller module of a pair");
    }
    if (name == "coeff" || name == "gcoeff" || name == "check-5-8" || name == "verify") {
      sub->add_option("--k", ctx.k, "coefficient index")->check(CLI::Range(0, 64));
    }
    if (name == "minred") sub->add_option("--n0", ctx.n0, "power of M to reduce")->check(CLI::Range(1, 16));
    if (name == "coeff" || name == "coeff-chain" || name == "verify") {
      sub->add_option("--samples", ctx.samples, "maximality probe samples per link")->check(CLI::Range(0, 100000));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }
  ctx.command = app.get_subcommands().front()->get_name();
  ctx.opt.probe_samples = ctx.samples;

  Json report;
  report["schema"] = 1;
  std::string echo;
  for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);
  report["command"] = echo;
  report["seed"] = ctx.seed;
  int code = kExitOk;
  try {
    if (ctx.command == "fit" && !ctx.values.empty()) {
      if (!ctx.spec_path.empty()) throw Error(Errc::usage, "fit takes either a spec or --values");
      code = run_fit_values(ctx, report);
    } else {
      if (ctx.spec_path.empty()) throw Error(Errc::usage, ctx.command + " needs a spec file");
      auto text = read_file(ctx.spec_path);
      report["input"] = ctx.spec_path;
      report["input_digest"] = digest(text);
      auto raw = parse_spec_text(text);
      std::optional<RawSpec> raw_sub;
      if (ctx.sub_path) {
        auto sub_text = read_file(*ctx.sub_path);
        report["sub_input"] = *ctx.sub_path;
        report["sub_input_digest"] = digest(sub_text);
        raw_sub = parse_spec_text(sub_text);
        if (raw_sub->field != raw.field || raw_sub->xvars != raw.xvars || raw_sub->rank != raw.rank) {
          throw Error(Errc::ring_mismatch, "--sub spec has a different field, xvars or rank");
        }
      }
      if (!raw.label.empty()) report["label"] = raw.label;
      code = with_spec(raw, [&](const auto& m) {
        using Mod = std::decay_t<decltype(m)>;
        std::optional<Mod> sub;
        if (raw_sub) sub = build_module(*raw_sub, m.ring().field);
        return execute(ctx, report, m, sub);
      });
    }
  } catch (const ParseError& e) {
    report["error"] = Json{{"code", errc_name(e.code())}, {"message", e.what()}, {"line", e.line()},
                           {"column", e.column()}};
    code = kExitError;
  } catch (const Error& e) {
    report["error"] = Json{{"code", errc_name(e.code())}, {"message", e.what()}};
    code = kExitError;
  }

  if (ctx.json) {
    std::cout << report.dump(2) << "\n";
  } else if (report.contains("error")) {
    std::cerr << ctx.spec_path << (ctx.spec_path.empty() ? "" : ": ") << report["error"]["message"].get<std::string>()
              << "\n";
  } else {
    render_text(report, std::cout, 0);
  }
  if (ctx.json && report.contains("error")) std::cerr << report["error"]["message"].get<std::string>() << "\n";
  return code;
}
