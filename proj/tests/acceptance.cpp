// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "samples.hpp"

using namespace coefmod;
using namespace coefmod::testing;

namespace {

using P = ModulePresentation<Fp>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

P parse_module(const RingDescriptor<Fp>& r, std::vector<std::string> gens, Exp tdeg = 1) {
  std::vector<Poly<Fp>> ps;
  for (const auto& g : gens) ps.push_back(parse_poly(g, r));
  return P(r, tdeg, ps);
}

P ideal(const std::vector<std::string>& gens) { return parse_module(ring_fp(2, 1), gens); }

P mf() { return parse_module(ring_fp(2, 2), {"x1*t1", "x2*t1", "x1*t2", "x2*t2"}); }

P example_ideal() { return ideal({"x1^4*t1", "x1^3*x2*t1", "x1*x2^3*t1", "x2^4*t1"}); }

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + v[i];
  return out;
}

std::string chain_key(const ChainReport<Fp>& ch) {
  std::string out;
  for (const auto& c : ch.links) out += c.result.to_string() + ";";
  return out;
}

// Criterion 4 samples, shared with criteria 10 and 11.
std::vector<P> chain_samples() {
  Rng rng(2024);
  std::vector<P> out;
  for (int i = 0; i < 10; ++i) out.push_back(ideal_module(random_primary_ideal(rng, 2, 8, 3)));
  for (int i = 0; i < 5; ++i) out.push_back(random_primary_module(rng, 2, 2));
  return out;
}

std::vector<ChainReport<Fp>> chains_for(const std::vector<P>& samples, const Options& opt) {
  Rng rng(77);
  std::vector<ChainReport<Fp>> out;
  for (const auto& m : samples) out.push_back(coefficient_chain(m, rng, opt));
  return out;
}

Outcome buchsbaum_rim_golden() {
  auto m = mf();
  auto table = length_table(P::free(m.ring(), 1), m, 8);
  bool ok = true;
  for (int n = 1; n <= 8; ++n) {
    // rank(Sym_n F) * l(R/m^n) = (n + 1) * n(n + 1)/2.
    std::uint64_t oracle = static_cast<std::uint64_t>(n + 1) * (static_cast<std::uint64_t>(n) * (n + 1) / 2);
    ok = ok && table[static_cast<std::size_t>(n - 1)] == oracle;
  }
  auto f = fit(NumericalFunction::from_table(LengthKind::buchsbaum_rim, table), 3, 3);
  const auto& e = f.binomial_coeffs;
  ok = ok && e.size() == 4 && e[0] == 3 && e[1] == 1 && e[2] == 0 && e[3] == 0;
  std::ostringstream s;
  s << "e = (" << e[0] << "," << e[1] << "," << e[2] << "," << e[3] << ")";
  return {ok, s.str()};
}

// Brute-force stabilization of the monomial colons (I^{n+1} : I^n).
MonomialIdeal ratliff_rush_oracle(const MonomialIdeal& i, int n_max) {
  MonomialIdeal acc = i;
  MonomialIdeal pn = i;
  for (int n = 1; n <= n_max; ++n) {
    MonomialIdeal next = pn * i;
    acc = acc + next.colon(pn);
    pn = next;
  }
  return acc;
}

Outcome ratliff_rush_oracle_check() {
  auto i = example_ideal();
  auto rr = ratliff_rush(i).module;
  auto expected = sum(i, ideal({"x1^2*x2^2*t1"}));
  auto oracle = ratliff_rush_oracle(i.monomial_module().component({1}), 12);
  bool ok = same_module(rr, expected) && rr.monomial_module().component({1}) == oracle;
  return {ok, rr.to_string()};
}

Outcome prop_5_2() {
  Rng rng(52);
  int passed = 0, total = 0;
  auto r = check_prop_5_2(example_ideal(), rng);
  total++;
  passed += r.pass;
  Rng samples(520);
  for (int i = 0; i < 10; ++i) {
    int d = i < 5 ? 2 : 3;
    auto m = ideal_module(random_primary_ideal(samples, d, d == 2 ? 7 : 4, 3));
    total++;
    passed += check_prop_5_2(m, rng).pass;
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) + " equal"};
}

Outcome chain_properties(const std::vector<P>& samples, const std::vector<ChainReport<Fp>>& chains,
                         double seconds) {
  int ok = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& ch = chains[i];
    bool good = ch.nested && ch.top && verify_nesting(ch);
    for (const auto& c : ch.links) good = good && c.degree.holds && c.degree.fit.degree < ch.s - c.k;
    ok += good;
  }
  std::ostringstream s;
  s << ok << "/" << samples.size() << " chains nested with degrees < s-k, " << seconds << " s";
  return {ok == static_cast<int>(samples.size()) && seconds < 300, s.str()};
}

Outcome rees_criterion() {
  Rng rng(55);
  int agree = 0, reductions = 0;
  for (int i = 0; i < 20; ++i) {
    auto m = ideal_module(random_primary_ideal(rng, 2, 6, 3));
    auto n = random_subpair(rng, m);
    bool red = is_reduction(n, m, 8).reduction;
    auto table = length_table(m, n, 10);
    bool low = degree_test(NumericalFunction::from_table(LengthKind::rees_amao, table), 2).holds;
    agree += red == low;
    reductions += red;
  }
  return {agree == 20, std::to_string(agree) + "/20 agree (" + std::to_string(reductions) + " reductions, " +
                           std::to_string(20 - reductions) + " non-reductions)"};
}

Outcome closure_laws() {
  Rng rng(66);
  int ok = 0;
  for (int i = 0; i < 10; ++i) {
    auto m = i < 7 ? ideal_module(random_primary_ideal(rng, 2, 7, 3)) : random_primary_module(rng, 2, 2);
    auto q = relative_integral_closure(m);
    ok += same_module(relative_integral_closure(q), q) && is_reduction(m, q, 8).reduction;
  }
  auto j = ideal({"x1^2*t1", "x2^2*t1"});
  auto closure = integral_closure_monomial(j);
  bool example = same_module(closure, ideal({"x1^2*t1", "x1*x2*t1", "x2^2*t1"}));
  // LP membership against the power test on every monomial of degree <= 3.
  bool oracles = true;
  std::vector<ExpVec> points;
  for (const auto& g : j.monomial_module().generators()) points.push_back(joint_exponent(g));
  for (Exp a = 0; a <= 3; ++a) {
    for (Exp b = 0; a + b <= 3; ++b) {
      Monomial u({a, b}, {1});
      bool lp = in_newton_polyhedron(points, joint_exponent(u));
      bool pw = closure_power_witness(j.monomial_module(), u, 6) > 0;
      oracles = oracles && lp == pw && lp == closure.monomial_module().contains(u);
    }
  }
  return {ok == 10 && example && oracles,
          std::to_string(ok) + "/10 samples; closure of (x1^2, x2^2) = " + closure.to_string()};
}

Outcome graded_chain() {
  Rng rng(77);
  Rng samples(770);
  int ok = 0;
  std::vector<P> ms;
  for (int i = 0; i < 5; ++i) ms.push_back(ideal_module(random_primary_ideal(samples, 2, 5, 2)));
  ms.push_back(mf());
  for (const auto& m : ms) {
    auto g = assoc_graded_chain(m, rng);
    bool good = g.nested && contains(g.links.back().result, g.bottom) && contains(m, g.links.front().result);
    for (const auto& c : g.links) good = good && c.degree.fit.degree <= g.s - (c.k + 1);
    ok += good;
  }
  auto fitt = fitting_ideal(mf());
  bool m2 = same_module(fitt, parse_module(mf().ring(), {"x1^2", "x1*x2", "x2^2"}, 0));
  return {ok == 6 && m2, std::to_string(ok) + "/6 graded chains; I(mF) = " + fitt.to_string()};
}

Outcome coefficient_preservation() {
  Rng rng(88);
  auto j = ideal({"x1^2*t1", "x2^2*t1"});
  auto rep = check_coefficient_preservation(j, 0, rng);
  // Staircase oracles: l(R/(x^2,y^2)^n) = 2n(n+1), l(R/m^{2n}) = n(2n+1).
  auto free = P::free(j.ring(), 1);
  auto tj = length_table(free, j, 6);
  auto tc = length_table(free, ideal({"x1^2*t1", "x1*x2*t1", "x2^2*t1"}), 6);
  bool staircase = true;
  for (int n = 1; n <= 6; ++n) {
    staircase = staircase && tj[static_cast<std::size_t>(n - 1)] == static_cast<std::uint64_t>(2 * n * (n + 1));
    staircase = staircase && tc[static_cast<std::size_t>(n - 1)] == static_cast<std::uint64_t>(n * (2 * n + 1));
  }
  bool e0 = rep.hypothesis_met && rep.e_module[0] == 4 && rep.e_coefficient[0] == 4;
  Rng samples(880);
  int ok = 0;
  for (int i = 0; i < 5; ++i) {
    auto m = ideal_module(random_primary_ideal(samples, 2, 7, 3));
    auto r = check_coefficient_preservation(m, 2, rng);
    ok += r.hypothesis_met && r.pass;
  }
  return {e0 && staircase && ok == 5,
          "e0 = " + rep.e_module[0].get_str() + " and " + rep.e_coefficient[0].get_str() + "; " + std::to_string(ok) +
              "/5 samples keep e_0..e_s"};
}

Outcome cor_5_9() {
  Rng rng(99);
  Rng samples(990);
  int agree = 0, total = 0;
  std::vector<std::string> verdicts;
  for (int i = 0; i < 5; ++i) {
    auto m = ideal_module(random_primary_ideal(samples, 2, 4, 2));
    for (int k = 1; k <= 2; ++k) {
      auto r = check_ideal_power_predicates(m, k, 4, rng);
      ++total;
      agree += r.agree();
      verdicts.push_back(std::string(r.graded_predicate ? "T" : "F") + (r.coefficient_predicate ? "T" : "F"));
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree [" + join(verdicts) + "]"};
}

Outcome maximality(const std::vector<P>& samples, const std::vector<ChainReport<Fp>>& chains) {
  Rng rng(1010);
  std::size_t tested = 0, counter = 0, undecided = 0, links = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (const auto& c : chains[i].links) {
      auto r = maximality_probe(samples[i], c, 50, rng);
      tested += r.tested;
      counter += r.counterexamples.size();
      undecided += r.undecided.size();
      ++links;
    }
  }
  return {counter == 0 && undecided == 0,
          std::to_string(links) + " links, " + std::to_string(tested) + " complement elements tested, " +
              std::to_string(counter) + " counterexamples, " + std::to_string(undecided) + " undecided"};
}

Outcome determinism_and_truncation(const std::vector<P>& samples, const std::vector<ChainReport<Fp>>& chains) {
  bool ok = true;
  std::vector<std::string> notes;
  auto again = chains_for(samples, Options{});
  for (std::size_t i = 0; i < samples.size(); ++i) ok = ok && chain_key(again[i]) == chain_key(chains[i]);
  notes.push_back(ok ? "re-run identical" : "re-run differs");
  for (int extra = 1; extra <= 2; ++extra) {
    Options opt;
    opt.extra = extra;
    auto probed = chains_for(samples, opt);
    bool same = true;
    for (std::size_t i = 0; i < samples.size(); ++i) same = same && chain_key(probed[i]) == chain_key(chains[i]);
    auto i = example_ideal();
    Rng r1(3), r2(3);
    Options base;
    same = same && coefficient_module(i, 2, r1, base).result.to_string() ==
                       coefficient_module(i, 2, r2, opt).result.to_string();
    // General regime: mF with disguised generators, truncation D + extra.
    auto m = mf();
    auto g = m.gens();
    g[0] = g[0] + g[1].scaled(4);
    P general(m.ring(), 1, g);
    auto free = P::free(m.ring(), 1);
    same = same && length_table(free, general, 4, 0) == length_table(free, general, 4, extra);
    Rng r3(5), r4(5);
    auto gi = example_ideal().gens();
    gi[1] = gi[1] + gi[2].scaled(6);
    P gen_ideal(example_ideal().ring(), 1, gi);
    same = same && same_module(ratliff_rush(gen_ideal).module, ratliff_rush(example_ideal()).module);
    same = same && same_module(coefficient_module(gen_ideal, 2, r3, base).result,
                               coefficient_module(gen_ideal, 2, r4, opt).result);
    ok = ok && same;
    notes.push_back("D+" + std::to_string(extra) + (same ? " identical" : " differs"));
  }
  return {ok, join(notes)};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const std::string& name, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s  [%2d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  auto samples = chain_samples();
  std::vector<ChainReport<Fp>> chains;
  double chain_seconds = 0;

  report(1, "Buchsbaum-Rim golden value for mF", buchsbaum_rim_golden);
  report(2, "Ratliff-Rush closure against monomial oracle", ratliff_rush_oracle_check);
  report(3, "M_s equals Ratliff-Rush closure within the saturation", prop_5_2);
  report(4, "coefficient chain nesting and degrees", [&] {
    auto t0 = std::chrono::steady_clock::now();
    chains = chains_for(samples, Options{});
    chain_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return chain_properties(samples, chains, chain_seconds);
  });
  report(5, "reduction test against the Rees degree criterion", rees_criterion);
  report(6, "relative integral closure laws", closure_laws);
  report(7, "associated-graded chain and Fitting ideal of mF", graded_chain);
  report(8, "Buchsbaum-Rim coefficient preservation", coefficient_preservation);
  report(9, "power predicates for ideals agree", cor_5_9);
  report(10, "maximality probe on every chain link", [&] {
    if (chains.size() != samples.size()) return Outcome{false, "chains of criterion 4 unavailable"};
    return maximality(samples, chains);
  });
  report(11, "determinism and truncation soundness", [&] {
    if (chains.size() != samples.size()) return Outcome{false, "chains of criterion 4 unavailable"};
    return determinism_and_truncation(samples, chains);
  });
  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
