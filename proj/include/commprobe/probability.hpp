#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "commprobe/quotient.hpp"
#include "commprobe/ratio.hpp"
#include "commprobe/subgroup.hpp"

namespace commprobe {

/// Pr(G): commuting pairs over |G|^2, via sum of centralizer orders.
inline Ratio commuting_probability(const FiniteGroup& g) {
  std::int64_t pairs = 0;
  for (Element x = 0; x < g.order(); ++x) pairs += static_cast<std::int64_t>(g.centralizer_order(x));
  const auto n = static_cast<std::int64_t>(g.order());
  Ratio by_pairs(pairs, n * n);
  Ratio by_classes(static_cast<std::int64_t>(g.class_count()), n);
  if (!(by_pairs == by_classes))
    throw std::logic_error("centralizer sum and class count disagree on Pr(G)");
  return by_pairs;
}

/// Pr(K,H) = |{(x,y) in K x H : xy = yx}| / (|K||H|) for K <= H.
inline Ratio relative_commuting_probability(const Subgroup& k, const Subgroup& h) {
  k.same_parent(h);
  if (!k.is_subgroup_of(h)) throw Error("Pr(K,H) requires K <= H");
  const FiniteGroup& g = h.parent();
  std::int64_t pairs = 0;
  if (h.is_whole()) {
    k.for_each([&](Element x) { pairs += static_cast<std::int64_t>(g.centralizer_order(x)); });
  } else {
    k.for_each([&](Element x) { pairs += static_cast<std::int64_t>(relative_centralizer_order(h, x)); });
  }
  return Ratio(pairs, static_cast<std::int64_t>(k.order()) * static_cast<std::int64_t>(h.order()));
}

/// Pr(K,G) with G the parent of K.
inline Ratio relative_commuting_probability(const Subgroup& k) {
  return relative_commuting_probability(k, Subgroup::whole(k.parent()));
}

struct QuotiReport {
  Ratio lhs;               // Pr(K,G)
  Ratio quotient_part;     // Pr(KN/N, G/N)
  Ratio intersection_part; // Pr(N cap K, N)
  Ratio rhs;
  bool holds = false;
  bool equal = false;
};

/// Pr(K,G) <= Pr(KN/N, G/N) * Pr(N cap K, N), all in exact arithmetic.
inline QuotiReport quoti_inequality_check(const Subgroup& k, const Subgroup& n) {
  k.same_parent(n);
  if (!is_normal(n)) throw Error("N is not normal in G");
  Quotient q = quotient_group(n);
  QuotiReport r;
  r.lhs = relative_commuting_probability(k);
  r.quotient_part = relative_commuting_probability(q.image(k));
  r.intersection_part = relative_commuting_probability(intersection(n, k), n);
  r.rhs = r.quotient_part * r.intersection_part;
  r.holds = r.lhs <= r.rhs;
  r.equal = r.lhs == r.rhs;
  return r;
}

struct ClassSizeProfile {
  /// |x^G| for x in K, sorted ascending.
  std::vector<std::size_t> sizes;
  /// (t, |{x in K : |x^G| <= t}|) at each distinct size t.
  std::vector<std::pair<std::size_t, std::size_t>> cumulative;

  std::size_t count_at_most(std::size_t t) const {
    return static_cast<std::size_t>(std::upper_bound(sizes.begin(), sizes.end(), t) - sizes.begin());
  }
};

inline ClassSizeProfile class_size_profile(const Subgroup& k) {
  const FiniteGroup& g = k.parent();
  ClassSizeProfile p;
  k.for_each([&](Element x) { p.sizes.push_back(g.class_size(x)); });
  std::sort(p.sizes.begin(), p.sizes.end());
  for (std::size_t i = 0; i < p.sizes.size(); ++i)
    if (i + 1 == p.sizes.size() || p.sizes[i + 1] != p.sizes[i])
      p.cumulative.emplace_back(p.sizes[i], i + 1);
  return p;
}

}  // namespace commprobe
