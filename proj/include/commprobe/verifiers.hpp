#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "commprobe/automorphism.hpp"
#include "commprobe/neumann.hpp"
#include "commprobe/probability.hpp"
#include "commprobe/report.hpp"
#include "commprobe/structure.hpp"
#include "commprobe/words.hpp"

namespace commprobe {

namespace detail {

inline TheoremReport start_report(std::string id, const FiniteGroup& g, std::optional<Ratio> eps) {
  TheoremReport r;
  r.theorem_id = std::move(id);
  r.group = g.name();
  r.group_order = g.order();
  r.epsilon = eps;
  return r;
}

inline void probability_hypothesis(TheoremReport& r, std::string name, const Ratio& pr) {
  r.key_probability = pr;
  r.hypothesis_holds = !r.epsilon || *r.epsilon <= pr;
  r.hypothesis.push_back({std::move(name), pr.str(), r.hypothesis_holds});
}

inline void class_bounded_witness(TheoremReport& r, const FiniteGroup& g, std::size_t max_class,
                                  std::size_t derived_term) {
  auto best = best_class_bounded(all_normal_subgroups(g), max_class, derived_term);
  WitnessSpec spec;
  spec.max_class = max_class;
  spec.derived_term = derived_term;
  r.witness = make_witness(*best, spec);
  r.data("witness_index", r.witness->index());
  r.data("witness_derived_order", r.witness->derived_order);
}

inline Word require_supported_word(const Word& w) {
  if (!classify_word(w))
    throw HypothesisViolation("word " + w.str() +
                              " is not an Engel word [x,y,...,y] or a power-commutator word [x^n,y1,...,yk]");
  return w;
}

}  // namespace detail

/// Pr(G) >= eps: best class-2 normal subgroup by index.
inline TheoremReport verify_neumann(const FiniteGroup& g, const Ratio& eps) {
  auto r = detail::start_report("neumann", g, eps);
  detail::probability_hypothesis(r, "Pr(G)", commuting_probability(g));
  detail::class_bounded_witness(r, g, 2, 2);
  return r;
}

/// Pr(F*(G), G) >= eps: best class-2 normal subgroup by index.
inline TheoremReport verify_fitting(const FiniteGroup& g, const Ratio& eps) {
  auto r = detail::start_report("fitting", g, eps);
  Subgroup fstar = generalized_fitting(g);
  detail::probability_hypothesis(r, "Pr(F*(G),G)", relative_commuting_probability(fstar));
  r.data("fstar_order", fstar.order());
  auto cls = nilpotency_class(fstar);
  r.data("fstar_class_at_most_2", (cls && *cls <= 2) ? "true" : "false");
  if (r.hypothesis_holds) {
    // T from the decomposition with K = F*(G)
    DecompositionReport d = neumann_decompose(fstar, eps);
    InducedGroup ind = induced_group(d.T);
    Subgroup fstar_t = ind.lift(generalized_fitting(ind.group));
    r.data("T_order", d.T.order());
    r.data("fstar_T_order", fstar_t.order());
    // only claimed once T = F*(T), so recorded rather than checked
    r.data("fstar_T_in_Z3_T", fstar_t.is_subgroup_of(hypercenter_term(d.T, 3)) ? "true" : "false");
    r.check("F*(G) cap T = F*(T)", intersection(fstar, d.T) == fstar_t);
    r.check("decomposition checks", d.all_checks_pass());
  }
  detail::class_bounded_witness(r, g, 2, 2);
  return r;
}

/// Pr(K, G) >= eps for some K containing gamma_i(G): best normal subgroup of
/// class at most i+1, reporting |gamma_{i+1}(R)|.
inline TheoremReport verify_gamma(const FiniteGroup& g, std::size_t i, const Ratio& eps,
                                  const std::optional<Subgroup>& k = std::nullopt) {
  if (i == 0) throw Error("gamma verifier needs i >= 1");
  auto r = detail::start_report("gamma", g, eps);
  r.parameters = "i=" + std::to_string(i);
  Subgroup gi = gamma(g, i);
  Subgroup kk = k.value_or(gi);
  require_same_parent(g, kk);
  if (!gi.is_subgroup_of(kk)) throw HypothesisViolation("K does not contain gamma_" + std::to_string(i) + "(G)");
  Ratio pk = relative_commuting_probability(kk);
  Ratio pg = relative_commuting_probability(gi);
  detail::probability_hypothesis(r, "Pr(K,G)", pk);
  r.data("gamma_i_order", gi.order());
  r.data("Pr(gamma_i(G),G)", pg.str());
  r.check("Pr(gamma_i(G),G) >= Pr(K,G)", pk <= pg);
  detail::class_bounded_witness(r, g, i + 1, i + 1);
  return r;
}

/// Pr(K, G) >= eps for K containing w(G): least e with G^e nilpotent.
inline TheoremReport verify_virtual_nilpotency(const FiniteGroup& g, const Word& w, const Ratio& eps,
                                               const std::optional<Subgroup>& k = std::nullopt) {
  detail::require_supported_word(w);
  auto r = detail::start_report("virtual-nilpotency", g, eps);
  r.parameters = "word=" + w.str();
  Subgroup wg = verbal_subgroup(g, w);
  Subgroup kk = k.value_or(wg);
  require_same_parent(g, kk);
  if (!wg.is_subgroup_of(kk)) throw HypothesisViolation("K does not contain w(G)");
  detail::probability_hypothesis(r, "Pr(K,G)", relative_commuting_probability(kk));
  r.data("verbal_order", wg.order());
  const std::uint64_t ex = exponent(g);
  r.data("exponent", std::to_string(ex));
  for (std::uint64_t e : divisors(ex)) {
    Subgroup ge = power_subgroup(g, e);
    auto cls = nilpotency_class(ge);
    if (!cls) continue;
    r.data("e", std::to_string(e));
    r.data("c", *cls);
    WitnessSpec spec;
    spec.label = "G^e";
    r.witness = make_witness(ge, spec);
    break;
  }
  r.check("some power subgroup is nilpotent", r.witness.has_value());
  return r;
}

/// Runs the decomposition with K = w(G) and reports exponents of the lower
/// central terms of T.
inline TheoremReport verify_exp_theorem(const FiniteGroup& g, const Word& w, const Ratio& eps) {
  auto family = *classify_word(detail::require_supported_word(w));
  auto r = detail::start_report("exp", g, eps);
  r.parameters = "word=" + w.str();
  Subgroup wg = verbal_subgroup(g, w);
  r.data("is_law", is_law(g, w) ? "true" : "false");
  r.data("verbal_order", wg.order());
  DecompositionReport d = neumann_decompose(wg, eps);
  r.key_probability = d.actual_pr;
  r.hypothesis_holds = d.hypothesis_holds;
  r.hypothesis.push_back({"Pr(w(G),G)", d.actual_pr.str(), d.hypothesis_holds});
  r.data("T_order", d.T.order());
  r.data("index_G_T", d.index_G_T);
  r.check("decomposition checks", d.all_checks_pass());

  auto series = lower_central_series(d.T);
  auto term = [&](std::size_t c) { return series.terms[std::min(c, series.terms.size()) - 1]; };
  r.data("exp_gamma_k4_T", std::to_string(exponent(term(family.k + 4))));
  // least c1 from which the exponents of gamma_c(T) no longer change
  std::size_t c1 = series.terms.size();
  std::uint64_t tail = exponent(series.terms.back());
  while (c1 > 1 && exponent(series.terms[c1 - 2]) == tail) --c1;
  r.data("c1", c1);
  r.data("exp_gamma_c1_T", std::to_string(tail));
  return r;
}

/// Pr(P, G) >= eps for a Sylow p-subgroup P: largest class-2 normal p-subgroup L.
inline TheoremReport verify_sylow(const FiniteGroup& g, std::uint64_t p, const Ratio& eps) {
  if (!is_prime(p)) throw HypothesisViolation(std::to_string(p) + " is not prime");
  if (g.order() % p != 0)
    throw HypothesisViolation(std::to_string(p) + " does not divide |G| = " + std::to_string(g.order()));
  auto r = detail::start_report("sylow", g, eps);
  r.parameters = "p=" + std::to_string(p);
  Subgroup sp = sylow_subgroup(g, p);
  detail::probability_hypothesis(r, "Pr(P,G)", relative_commuting_probability(sp));
  Subgroup op = o_p(g, p);
  r.check("O_p(G) <= P", op.is_subgroup_of(sp));
  std::vector<Subgroup> candidates;
  for (auto& n : all_normal_subgroups(g))
    if (is_power_of(n.order(), p)) candidates.push_back(std::move(n));
  auto best = best_class_bounded(candidates, 2);
  WitnessSpec spec;
  spec.label = "L";
  spec.max_class = 2;
  spec.p_group = p;
  spec.contained_in = op;
  r.witness = make_witness(*best, spec);
  r.data("P_order", sp.order());
  r.data("index_P_L", sp.order() / best->order());
  r.data("witness_derived_order", r.witness->derived_order);
  return r;
}

/// Every Sylow subgroup has Pr(P, G) >= eps: R is the join of the per-prime L_p.
inline TheoremReport verify_all_sylow(const FiniteGroup& g, const Ratio& eps) {
  auto r = detail::start_report("all-sylow", g, eps);
  std::vector<Subgroup> parts;
  std::optional<Ratio> least;
  for (std::uint64_t p : prime_divisors(g.order())) {
    TheoremReport sub = verify_sylow(g, p, eps);
    const std::string tag = "p" + std::to_string(p);
    r.hypothesis.push_back({"Pr(P" + std::to_string(p) + ",G)", sub.key_probability->str(), sub.hypothesis_holds});
    r.hypothesis_holds = r.hypothesis_holds && sub.hypothesis_holds;
    if (!least || *sub.key_probability < *least) least = sub.key_probability;
    for (auto& c : sub.checks) r.checks.push_back({tag + ": " + c.name, c.passed, c.detail});
    r.check(tag + ": L revalidated", sub.witness->revalidated);
    r.data("L" + std::to_string(p) + "_order", sub.witness->subgroup.order());
    parts.push_back(sub.witness->subgroup);
  }
  r.key_probability = least;
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b)
      r.check("[L_p, L_q] = 1 for parts " + std::to_string(a) + "," + std::to_string(b),
              commutator_of_subgroups(parts[a], parts[b]).is_trivial());
  Subgroup rr = Subgroup::trivial(g);
  for (const auto& l : parts) rr = join(rr, l);
  WitnessSpec spec;
  spec.max_class = 2;
  r.witness = make_witness(rr, spec);
  r.data("witness_index", rr.index());
  r.data("witness_derived_order", r.witness->derived_order);
  return r;
}

/// Pr(K,G) <= Pr(KN/N, G/N) Pr(N cap K, N) over the given normal subgroups.
inline TheoremReport verify_quoti(const Subgroup& k, const std::vector<Subgroup>& normals) {
  const FiniteGroup& g = k.parent();
  auto r = detail::start_report("quoti", g, std::nullopt);
  r.parameters = "K_order=" + std::to_string(k.order());
  std::size_t holds = 0, equal = 0;
  for (const auto& n : normals) {
    QuotiReport q = quoti_inequality_check(k, n);
    std::string tag = "N" + std::to_string(&n - normals.data()) + "(order " + std::to_string(n.order()) + ")";
    r.check(tag + ": Pr(K,G) <= product", q.holds, q.lhs.str() + " <= " + q.rhs.str());
    if (n.is_trivial() || n.is_whole()) r.check(tag + ": equality at trivial or full N", q.equal);
    holds += q.holds;
    equal += q.equal;
  }
  r.data("normal_subgroups", normals.size());
  r.data("rows_holding", holds);
  r.data("rows_equal", equal);
  return r;
}

/// X^(3r) = <X> for the least r with (r+1)|X| > |G| on the given sets.
inline TheoremReport verify_product_length(const FiniteGroup& g, const std::vector<ElementSet>& sets) {
  auto r = detail::start_report("product-length", g, std::nullopt);
  std::size_t max_r = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const ElementSet& x = sets[i];
    std::size_t rl = g.order() / x.count();
    max_r = std::max(max_r, rl);
    bool ok = symmetric_set_power(g, x, 3 * rl) == closure(g, x).members();
    r.check("set " + std::to_string(i) + ": X^(3r) = <X>", ok,
            "|X| = " + std::to_string(x.count()) + ", r = " + std::to_string(rl));
  }
  r.data("sets", sets.size());
  r.data("max_r", max_r);
  return r;
}

/// `count` symmetric identity-containing subsets of G from a seeded generator.
inline std::vector<ElementSet> random_symmetric_sets(const FiniteGroup& g, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ElementSet> out;
  for (std::size_t i = 0; i < count; ++i) {
    // density ranges over (0, 1) so both sparse and dense sets appear
    std::uniform_real_distribution<double> dens(0.02, 0.9);
    std::bernoulli_distribution keep(dens(rng));
    ElementSet x = g.empty_set();
    x.set(g.identity());
    for (Element e = 0; e < g.order(); ++e)
      if (keep(rng)) {
        x.set(e);
        x.set(g.inv(e));
      }
    out.push_back(std::move(x));
  }
  return out;
}

/// C_{G/N}(A) = N C_G(A)/N for every A-invariant normal N.
inline TheoremReport verify_cc(const AutomorphismGroup& a) {
  const FiniteGroup& g = a.group();
  auto r = detail::start_report("cc", g, std::nullopt);
  r.parameters = "aut=" + detail::automorphism_names(a.generators());
  bool coprime = is_coprime_action(a);
  r.hypothesis_holds = coprime;
  r.hypothesis.push_back({"gcd(|G|,|A|) = 1", "|A|=" + std::to_string(a.order()), coprime});
  if (!coprime)
    throw HypothesisViolation("action is not coprime: |G| = " + std::to_string(g.order()) +
                              ", |A| = " + std::to_string(a.order()));
  std::size_t tested = 0;
  for (const auto& n : all_normal_subgroups(g)) {
    bool inv = std::all_of(a.generators().begin(), a.generators().end(),
                           [&](const Automorphism& phi) { return is_invariant(n, phi); });
    if (!inv) continue;
    auto q = coprime_quotient_check(a, n);
    r.check("N of order " + std::to_string(n.order()) + " #" + std::to_string(tested) + ": sides equal", q.equal,
            "|lhs| = " + std::to_string(q.lhs.order()) + ", |rhs| = " + std::to_string(q.rhs.order()));
    ++tested;
  }
  r.data("invariant_normal_subgroups", tested);
  r.data("fixed_point_order", fixed_point_subgroup(a).order());
  return r;
}

inline TheoremReport verify_eee(const FiniteGroup& g, const std::vector<Automorphism>& gens, std::uint64_t p) {
  auto r = detail::start_report("eee", g, std::nullopt);
  r.parameters = "aut=" + detail::automorphism_names(gens) + ";p=" + std::to_string(p);
  auto e = elementary_abelian_bound_check(g, gens, p);
  r.data("m", e.m);
  r.data("bound", e.bound.str());
  r.data("faithful", e.faithful ? "true" : "false");
  r.data("tight", boost::multiprecision::cpp_int(g.order()) == e.bound ? "true" : "false");
  r.check("|G| <= m^(p+1)", e.holds, std::to_string(g.order()) + " <= " + e.bound.str());
  return r;
}

/// Commutator data for A = K against every normal subgroup B.
inline TheoremReport verify_normal_lemma(const Subgroup& k) {
  const FiniteGroup& g = k.parent();
  auto r = detail::start_report("normal-lemma", g, std::nullopt);
  r.parameters = "K_order=" + std::to_string(k.order());
  std::size_t i = 0;
  for (const auto& b : all_normal_subgroups(g)) {
    auto d = bounded_class_commutator_data(k, b);
    std::string tag = "B" + std::to_string(i++);
    r.data(tag, "|B|=" + std::to_string(b.order()) + " m_A=" + std::to_string(d.m_A) +
                    " m_B=" + std::to_string(d.m_B) + " |[A,B]|=" + std::to_string(d.order_AB) +
                    " closure_abelian=" + (d.B_closure_abelian ? "true" : "false"));
    if (d.AB_in_intersection) r.check(tag + ": [A,B] <= A cap B", *d.AB_in_intersection);
  }
  return r;
}

inline TheoremReport verify_cristi_data(const Subgroup& k) {
  const FiniteGroup& g = k.parent();
  auto r = detail::start_report("cristi-data", g, std::nullopt);
  r.parameters = "K_order=" + std::to_string(k.order());
  auto d = cristi_data(k);
  r.data("m", d.m);
  r.data("closure_order", d.closure_order);
  r.data("closure_derived_order", d.derived_order);
  // m = 1 means K is central, so its normal closure is abelian.
  if (d.m == 1) r.check("m = 1 gives abelian closure", d.derived_order == 1);
  return r;
}

/// gamma_k class data for k = 1 .. up to the point the lower series stops.
inline TheoremReport verify_glas_data(const FiniteGroup& g, std::optional<std::size_t> only_k = std::nullopt) {
  auto r = detail::start_report("glas-data", g, std::nullopt);
  std::size_t last = only_k.value_or(lower_central_series(g).terms.size());
  std::size_t first = only_k.value_or(1);
  if (only_k) r.parameters = "k=" + std::to_string(*only_k);
  for (std::size_t k = first; k <= last; ++k) {
    auto d = gamma_class_data(g, k);
    std::string tag = "k" + std::to_string(k);
    r.data(tag + "_n", d.n);
    r.data(tag + "_gamma_k1_order", d.gamma_k1_order);
    // n = 1 means gamma_k(G) is central, hence gamma_{k+1}(G) = 1.
    if (d.n == 1) r.check(tag + ": n = 1 gives trivial gamma_{k+1}", d.gamma_k1_order == 1);
  }
  return r;
}

}  // namespace commprobe
