#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "commprobe/probability.hpp"
#include "commprobe/report.hpp"
#include "commprobe/structure.hpp"

namespace commprobe {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline void require_epsilon(const Ratio& eps) {
  if (eps.num() <= 0 || eps.num() > eps.den()) throw Error("epsilon must satisfy 0 < eps <= 1, got " + eps.str());
}

inline void require_symmetric(const FiniteGroup& g, const ElementSet& s, const char* what) {
  if (!s.test(g.identity())) throw std::logic_error(std::string(what) + " lost the identity");
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
    if (!s.test(g.inv(static_cast<Element>(i)))) throw std::logic_error(std::string(what) + " is not symmetric");
}

/// size * num <= bound * den, i.e. size <= bound * eps^-1 without division.
inline bool at_most_over_eps(std::size_t size, std::int64_t bound, const Ratio& eps) {
  return static_cast<__int128>(size) * eps.num() <= static_cast<__int128>(bound) * eps.den();
}

/// ceil(6 / eps).
inline std::size_t six_over_eps(const Ratio& eps) {
  return static_cast<std::size_t>((6 * eps.den() + eps.num() - 1) / eps.num());
}

}  // namespace detail

/// {x in K : |x^G| <= 2/eps}.
inline ElementSet small_G_class_set(const Subgroup& k, const Ratio& eps) {
  detail::require_epsilon(eps);
  const FiniteGroup& g = k.parent();
  ElementSet x = g.empty_set();
  k.for_each([&](Element e) {
    if (detail::at_most_over_eps(g.class_size(e), 2, eps)) x.set(e);
  });
  detail::require_symmetric(g, x, "small G-class set");
  return x;
}

/// {y in G : |y^K| <= 2/eps}.
inline ElementSet small_K_class_set(const Subgroup& k, const Ratio& eps) {
  detail::require_epsilon(eps);
  const FiniteGroup& g = k.parent();
  ElementSet y = g.empty_set();
  for (Element e = 0; e < g.order(); ++e)
    if (detail::at_most_over_eps(k.order() / relative_centralizer_order(k, e), 2, eps)) y.set(e);
  detail::require_symmetric(g, y, "small K-class set");
  return y;
}

/// The decomposition read again inside G/[L,L], L the normal closure of B.
struct QuotientView {
  std::size_t LL_order = 1;
  std::size_t order = 0;
  Ratio actual_pr;
  bool hypothesis_holds = false;
  std::size_t index_K_B = 1, index_G_E = 1, index_G_T = 1;
  std::size_t TB_order = 1, N_order = 1;
  std::vector<Check> checks;
};

struct DecompositionReport {
  Ratio epsilon;
  Ratio actual_pr;
  bool hypothesis_holds;
  Subgroup K;
  ElementSet X;
  Subgroup B;
  ElementSet Y;
  Subgroup E;
  Subgroup T;
  std::size_t index_K_B, index_G_E, index_G_T;
  Subgroup TB_commutator;
  Subgroup N;
  Subgroup B0;
  bool B0_in_K;
  std::optional<Subgroup> H;
  std::size_t max_class_b_in_G;
  std::size_t max_class_e_under_B;
  /// Least r with (r+1)|X| > |K|; B = X^{3r} is checked.
  std::size_t product_length_r;
  std::size_t exponent_bound;  // ceil(6/eps)
  BigInt class_bound;          // (2/eps)^ceil(6/eps), rounded down
  std::optional<QuotientView> quotient_view;
  std::vector<Check> checks;

  const FiniteGroup& group() const { return K.parent(); }
  bool all_checks_pass() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    if (quotient_view)
      for (const auto& c : quotient_view->checks)
        if (!c.passed) return false;
    return true;
  }
};

/// H = {g in T : [N,g] = 1 and [K,g] <= B0} for K normal in G.
inline Subgroup series_stabilizer(const DecompositionReport& r) {
  if (!is_normal(r.K)) throw HypothesisViolation("series stabilizer needs K normal in G");
  const FiniteGroup& g = r.group();
  std::vector<Element> ngens = generating_set(r.N);
  std::vector<Element> kgens = generating_set(r.K);
  ElementSet s = g.empty_set();
  r.T.for_each([&](Element t) {
    for (Element n : ngens)
      if (g.commutator(n, t) != g.identity()) return;
    // B0 is normal, so [k,t] in B0 for generators k gives [K,t] <= B0.
    for (Element k : kgens)
      if (!r.B0.contains(g.commutator(k, t))) return;
    s.set(t);
  });
  Subgroup h(g, std::move(s));
  if (!h.verify_closed()) throw std::logic_error("series stabilizer is not closed");
  return h;
}

inline bool intersection_in_third_center(const Subgroup& k, const Subgroup& h) {
  Subgroup z3 = hypercenter_term(h, 3);
  return intersection(k, h).members().is_subset_of(z3.members());
}

namespace detail {

/// Set product of all distinct conjugates of `c`.
inline ElementSet product_of_conjugates(const Subgroup& c) {
  const FiniteGroup& g = c.parent();
  std::vector<ElementSet> conjugates;
  for (Element x = 0; x < g.order(); ++x) {
    ElementSet s = conjugate(c, x).members();
    if (std::find(conjugates.begin(), conjugates.end(), s) == conjugates.end()) conjugates.push_back(std::move(s));
  }
  ElementSet prod = g.empty_set();
  prod.set(g.identity());
  for (const auto& cs : conjugates) {
    std::vector<Element> right = to_vector(cs);
    ElementSet next = g.empty_set();
    for (auto p = prod.find_first(); p != ElementSet::npos; p = prod.find_next(p))
      for (Element y : right) next.set(g.mul(static_cast<Element>(p), y));
    prod = std::move(next);
  }
  return prod;
}

inline DecompositionReport decompose(const Subgroup& k, const Ratio& eps, bool with_quotient_view);

}  // namespace detail

/// Builds X, B, Y, E, T, N, B0 (and H when K is normal) for any eps and
/// records which exact consequences of Pr(K,G) >= eps hold.
inline DecompositionReport neumann_decompose(const Subgroup& k, const Ratio& eps) {
  return detail::decompose(k, eps, true);
}

namespace detail {

inline DecompositionReport decompose(const Subgroup& k, const Ratio& eps, bool with_quotient_view) {
  detail::require_epsilon(eps);
  const FiniteGroup& g = k.parent();

  Ratio pr = relative_commuting_probability(k);
  bool hyp = eps <= pr;
  ElementSet x = small_G_class_set(k, eps);
  Subgroup b = closure(g, x);
  ElementSet y = small_K_class_set(k, eps);
  Subgroup e = closure(g, y);
  Subgroup t = normal_core(e);
  Subgroup tb = commutator_of_subgroups(t, b);
  Subgroup n = normal_closure(tb);
  Subgroup b0 = normal_closure(b);

  std::size_t max_b = 0;
  b.for_each([&](Element v) { max_b = std::max<std::size_t>(max_b, g.class_size(v)); });
  std::size_t max_e = 0;
  e.for_each([&](Element v) { max_e = std::max(max_e, b.order() / relative_centralizer_order(b, v)); });

  const std::size_t xs = x.count();
  const std::size_t r_len = k.order() / xs;  // least r with (r+1)|X| > |K|
  const std::size_t kexp = six_over_eps(eps);
  BigInt bound = boost::multiprecision::pow(BigInt(2 * eps.den()), static_cast<unsigned>(kexp)) /
                 boost::multiprecision::pow(BigInt(eps.num()), static_cast<unsigned>(kexp));

  DecompositionReport r{eps,     pr,       hyp,   k,  x,  b,  y,    e,           t,     k.order() / b.order(),
                        e.index(), t.index(), tb, n, b0, b0.is_subgroup_of(k), std::nullopt, max_b, max_e,
                        r_len,   kexp,     bound, std::nullopt, {}};

  auto check = [&](std::string name, bool ok, std::string detail = {}) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  check("T normal in G", is_normal(t));
  check("T <= E", t.is_subgroup_of(e));
  check("B <= K", b.is_subgroup_of(k));
  check("N normal in G", is_normal(n));
  check("[T,B] <= N", tb.is_subgroup_of(n));
  if (g.order() <= verifier_cap()) {
    bool maximal = true;
    for (const auto& m : all_normal_subgroups(g))
      if (m.order() > t.order() && m.is_subgroup_of(e)) maximal = false;
    check("T is the largest normal subgroup inside E", maximal);
  }
  check("N is the product of the conjugates of [T,B]", product_of_conjugates(tb) == n.members());
  check("X^(3r) = <X>", symmetric_set_power(g, x, 3 * r_len) == b.members(),
        "r = " + std::to_string(r_len));

  if (hyp) {
    const __int128 num = eps.num(), den = eps.den();
    check("|X| > (eps/2)|K|", 2 * static_cast<__int128>(xs) * den > num * static_cast<__int128>(k.order()));
    check("|Y| > (eps/2)|G|",
          2 * static_cast<__int128>(y.count()) * den > num * static_cast<__int128>(g.order()));
    check("[K:B] <= 2/eps", at_most_over_eps(r.index_K_B, 2, eps));
    check("[G:E] <= 2/eps", at_most_over_eps(r.index_G_E, 2, eps));
    check("3r <= 6/eps", at_most_over_eps(3 * r_len, 6, eps));
    // |b^G| <= (2/eps)^k  <=>  |b^G| * num^k <= (2 den)^k
    BigInt lhs = BigInt(max_b) * boost::multiprecision::pow(BigInt(eps.num()), static_cast<unsigned>(kexp));
    BigInt rhs = boost::multiprecision::pow(BigInt(2 * eps.den()), static_cast<unsigned>(kexp));
    check("|b^G| <= (2/eps)^ceil(6/eps) for b in B", lhs <= rhs, "max |b^G| = " + std::to_string(max_b));
  }

  if (is_normal(k)) {
    r.H = series_stabilizer(r);
    check("K cap H <= Z3(H)", intersection_in_third_center(k, *r.H));
  }

  if (with_quotient_view) {
    Subgroup ll = derived_subgroup(b0);
    QuotientView v;
    v.LL_order = ll.order();
    if (ll.is_trivial()) {
      v.order = g.order();
      v.actual_pr = pr;
      v.hypothesis_holds = hyp;
      v.index_K_B = r.index_K_B;
      v.index_G_E = r.index_G_E;
      v.index_G_T = r.index_G_T;
      v.TB_order = tb.order();
      v.N_order = n.order();
    } else {
      Quotient q = quotient_group(ll);
      DecompositionReport qr = decompose(q.image(k), eps, false);
      v.order = q.group.order();
      v.actual_pr = qr.actual_pr;
      v.hypothesis_holds = qr.hypothesis_holds;
      v.index_K_B = qr.index_K_B;
      v.index_G_E = qr.index_G_E;
      v.index_G_T = qr.index_G_T;
      v.TB_order = qr.TB_commutator.order();
      v.N_order = qr.N.order();
      v.checks = std::move(qr.checks);
      // Pr can only grow in the quotient.
      v.checks.push_back({"Pr(K,G) <= Pr(K/[L,L], G/[L,L])", pr <= qr.actual_pr, {}});
    }
    r.quotient_view = std::move(v);
  }
  return r;
}

}  // namespace detail

struct CommutatorPairData {
  std::size_t m_A = 1;  // max over y in B of [A : C_A(y)]
  std::size_t m_B = 1;  // max over x in A of [B : C_B(x)]
  std::size_t order_AB = 1;
  bool A_normal = false;
  bool B_normal = false;
  bool B_closure_abelian = false;
  /// [A,B] <= A cap B, meaningful when both are normal.
  std::optional<bool> AB_in_intersection;
};

inline CommutatorPairData bounded_class_commutator_data(const Subgroup& a, const Subgroup& b) {
  a.same_parent(b);
  CommutatorPairData d;
  b.for_each([&](Element y) { d.m_A = std::max(d.m_A, a.order() / relative_centralizer_order(a, y)); });
  a.for_each([&](Element x) { d.m_B = std::max(d.m_B, b.order() / relative_centralizer_order(b, x)); });
  Subgroup ab = commutator_of_subgroups(a, b);
  d.order_AB = ab.order();
  d.A_normal = is_normal(a);
  d.B_normal = is_normal(b);
  d.B_closure_abelian = is_abelian(normal_closure(b));
  if (d.A_normal && d.B_normal) d.AB_in_intersection = ab.is_subgroup_of(intersection(a, b));
  return d;
}

struct NormalClosureData {
  std::size_t m = 1;  // max over x in K of |x^G|
  std::size_t closure_order = 1;
  std::size_t derived_order = 1;  // |[H,H]| for H the normal closure of K
};

inline NormalClosureData cristi_data(const Subgroup& k) {
  const FiniteGroup& g = k.parent();
  NormalClosureData d;
  k.for_each([&](Element x) { d.m = std::max<std::size_t>(d.m, g.class_size(x)); });
  Subgroup h = normal_closure(k);
  d.closure_order = h.order();
  d.derived_order = derived_subgroup(h).order();
  return d;
}

struct GammaClassData {
  std::size_t k = 1;
  std::size_t n = 1;  // max over x in G of |x^{gamma_k(G)}|
  std::size_t gamma_k_order = 1;
  std::size_t gamma_k1_order = 1;
};

inline GammaClassData gamma_class_data(const FiniteGroup& g, std::size_t k) {
  if (k == 0) throw Error("gamma_class_data needs k >= 1");
  GammaClassData d;
  d.k = k;
  Subgroup gk = gamma(g, k);
  d.gamma_k_order = gk.order();
  for (Element x = 0; x < g.order(); ++x) d.n = std::max(d.n, gk.order() / relative_centralizer_order(gk, x));
  d.gamma_k1_order = gamma(g, k + 1).order();
  return d;
}

}  // namespace commprobe
