#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "commprobe/group.hpp"
#include "commprobe/quotient.hpp"
#include "commprobe/subgroup.hpp"

namespace commprobe {

// ---------------------------------------------------------------- arithmetic

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

/// Largest power of p dividing n.
inline std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_power_of(std::uint64_t n, std::uint64_t p) { return p_part(n, p) == n; }

// ---------------------------------------------------------- central series

enum class SeriesKind { lower, upper };

struct CentralSeriesReport {
  SeriesKind kind;
  /// lower: gamma_1, gamma_2, ...; upper: Z_0, Z_1, ...; ends at the first
  /// repeated term (which is not duplicated).
  std::vector<Subgroup> terms;
  /// Index of the last distinct term (1-based for lower, 0-based for upper).
  std::size_t stabilized_at = 0;
};

/// Lower central series of a subgroup H computed inside its parent:
/// gamma_1 = H, gamma_{i+1} = [gamma_i, H].
inline CentralSeriesReport lower_central_series(const Subgroup& h) {
  CentralSeriesReport r{SeriesKind::lower, {h}, 1};
  for (;;) {
    Subgroup next = commutator_of_subgroups(r.terms.back(), h);
    if (next == r.terms.back()) break;
    r.terms.push_back(std::move(next));
  }
  r.stabilized_at = r.terms.size();
  return r;
}

inline CentralSeriesReport lower_central_series(const FiniteGroup& g) {
  return lower_central_series(Subgroup::whole(g));
}

/// gamma_i(H) for i >= 1.
inline Subgroup gamma(const Subgroup& h, std::size_t i) {
  if (i == 0) throw Error("lower central series terms start at gamma_1");
  auto r = lower_central_series(h);
  return r.terms[std::min(i, r.terms.size()) - 1];
}

inline Subgroup gamma(const FiniteGroup& g, std::size_t i) { return gamma(Subgroup::whole(g), i); }

/// Z_0 = 1, Z_{i+1} = preimage of Z(G/Z_i).
inline CentralSeriesReport upper_central_series(const FiniteGroup& g) {
  CentralSeriesReport r{SeriesKind::upper, {Subgroup::trivial(g)}, 0};
  for (;;) {
    Quotient q = quotient_group(r.terms.back());
    Subgroup next = q.preimage(center(q.group));
    if (next == r.terms.back()) break;
    r.terms.push_back(std::move(next));
  }
  r.stabilized_at = r.terms.size() - 1;
  return r;
}

/// Upper central series of a subgroup H, taken in H itself and lifted back.
inline CentralSeriesReport upper_central_series(const Subgroup& h) {
  InducedGroup ind = induced_group(h);
  auto local = upper_central_series(ind.group);
  CentralSeriesReport r{SeriesKind::upper, {}, local.stabilized_at};
  for (const auto& t : local.terms) r.terms.push_back(ind.lift(t));
  return r;
}

inline Subgroup hypercenter_term(const FiniteGroup& g, std::size_t i) {
  auto r = upper_central_series(g);
  return r.terms[std::min(i, r.terms.size() - 1)];
}

inline Subgroup hypercenter_term(const Subgroup& h, std::size_t i) {
  auto r = upper_central_series(h);
  return r.terms[std::min(i, r.terms.size() - 1)];
}

/// Least c with gamma_{c+1}(H) = 1, or nullopt when H is not nilpotent.
inline std::optional<std::size_t> nilpotency_class(const Subgroup& h) {
  auto r = lower_central_series(h);
  if (!r.terms.back().is_trivial()) return std::nullopt;
  return r.terms.size() - 1;
}

inline std::optional<std::size_t> nilpotency_class(const FiniteGroup& g) {
  return nilpotency_class(Subgroup::whole(g));
}

inline bool is_nilpotent(const Subgroup& h) { return nilpotency_class(h).has_value(); }

/// Derived series reaches the trivial group.
inline bool is_solvable(const Subgroup& h) {
  Subgroup cur = h;
  while (!cur.is_trivial()) {
    Subgroup next = derived_subgroup(cur);
    if (next == cur) return false;
    cur = std::move(next);
  }
  return true;
}

inline bool is_p_group(const Subgroup& h, std::uint64_t p) { return is_power_of(h.order(), p); }

// ------------------------------------------------------- Sylow and Fitting

/// A Sylow p-subgroup, grown from the trivial group by repeatedly adjoining the
/// least p-element that normalizes the current p-subgroup without lying in it.
inline Subgroup sylow_subgroup(const FiniteGroup& g, std::uint64_t p) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  const std::uint64_t target = p_part(g.order(), p);
  Subgroup cur = Subgroup::trivial(g);
  while (cur.order() < target) {
    Subgroup norm = normalizer(cur);
    std::optional<Element> pick;
    norm.for_each([&](Element x) {
      if (!pick && !cur.contains(x) && is_power_of(g.element_order(x), p)) pick = x;
    });
    if (!pick) throw std::logic_error("no normalizing p-element found below the Sylow order");
    ElementSet seed = cur.members();
    seed.set(*pick);
    cur = closure(g, seed);
  }
  if (cur.order() != target) throw std::logic_error("Sylow construction overshot the p-part");
  return cur;
}

/// Largest normal p-subgroup: the core of any Sylow p-subgroup.
inline Subgroup o_p(const FiniteGroup& g, std::uint64_t p) {
  return normal_core(sylow_subgroup(g, p));
}

inline Subgroup fitting_subgroup(const FiniteGroup& g) {
  Subgroup f = Subgroup::trivial(g);
  for (auto p : prime_divisors(g.order())) f = join(f, o_p(g, p));
  if (!is_normal(f) || !is_nilpotent(f))
    throw std::logic_error("Fitting subgroup failed its normal/nilpotent self-check");
  return f;
}

// ----------------------------------------------- components and F*(G)

/// H is perfect and H/Z(H) is non-abelian simple.
inline bool is_quasisimple(const Subgroup& h) {
  if (h.is_trivial()) return false;
  if (!(derived_subgroup(h) == h)) return false;
  InducedGroup ind = induced_group(h);
  Quotient q = quotient_group(center(ind.group));
  if (q.group.is_abelian()) return false;
  return all_normal_subgroups(q.group, std::max(verifier_cap(), q.group.order())).size() == 2;
}

struct Components {
  std::vector<Subgroup> components;
  Subgroup layer;  // E(G)
};

/// Subnormal quasisimple subgroups of G and their join.
///
/// Walks chains of normal subgroups downwards from G; only non-solvable
/// subgroups are entered because every component is perfect and hence lies in
/// non-solvable members of any subnormal chain through it.
inline Components components_and_layer(const FiniteGroup& g, std::size_t cap = verifier_cap()) {
  if (g.order() > cap) throw CapExceeded("components_and_layer", g.order(), cap);
  std::set<ElementSet> visited;
  std::vector<Subgroup> subnormal;
  std::vector<Subgroup> stack{Subgroup::whole(g)};
  visited.insert(stack.back().members());
  while (!stack.empty()) {
    Subgroup s = stack.back();
    stack.pop_back();
    if (is_solvable(s)) continue;
    subnormal.push_back(s);
    InducedGroup ind = induced_group(s);
    for (const auto& n : all_normal_subgroups(ind.group, cap)) {
      Subgroup lifted = ind.lift(n);
      if (lifted == s || lifted.is_trivial()) continue;
      if (visited.insert(lifted.members()).second) stack.push_back(std::move(lifted));
    }
  }
  Components out{{}, Subgroup::trivial(g)};
  for (const auto& s : subnormal)
    if (is_quasisimple(s)) out.components.push_back(s);
  std::sort(out.components.begin(), out.components.end(), canonical_less);
  for (const auto& c : out.components) out.layer = join(out.layer, c);
  return out;
}

inline Subgroup generalized_fitting(const FiniteGroup& g, std::size_t cap = verifier_cap()) {
  Subgroup fstar = join(fitting_subgroup(g), components_and_layer(g, cap).layer);
  if (!is_normal(fstar)) throw std::logic_error("F*(G) failed its normality self-check");
  return fstar;
}

// ------------------------------------------------------------- exponents

inline std::uint64_t exponent(const Subgroup& h) {
  std::uint64_t e = 1;
  h.for_each([&](Element x) { e = std::lcm(e, std::uint64_t{h.parent().element_order(x)}); });
  return e;
}

inline std::uint64_t exponent(const FiniteGroup& g) { return exponent(Subgroup::whole(g)); }

/// H^e = < h^e : h in H >.
inline Subgroup power_subgroup(const Subgroup& h, std::uint64_t e) {
  if (e == 0) throw Error("power exponent must be positive");
  const FiniteGroup& g = h.parent();
  ElementSet seed = g.empty_set();
  h.for_each([&](Element x) { seed.set(g.pow(x, static_cast<std::int64_t>(e % g.element_order(x)))); });
  return closure(g, seed);
}

inline Subgroup power_subgroup(const FiniteGroup& g, std::uint64_t e) {
  return power_subgroup(Subgroup::whole(g), e);
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace commprobe
