#pragma once

#include <set>
#include <vector>

#include "commprobe/group.hpp"
#include "commprobe/subgroup.hpp"

namespace commprobe {

struct Quotient {
  FiniteGroup group;
  GroupHom projection;
  /// Least element index of each coset, indexed by quotient element.
  std::vector<Element> representatives;

  Subgroup image(const Subgroup& h) const {
    ElementSet s = group.empty_set();
    h.for_each([&](Element x) { s.set(projection(x)); });
    return Subgroup(group, std::move(s));
  }

  Subgroup preimage(const Subgroup& q) const {
    const FiniteGroup& g = projection.source;
    ElementSet s = g.empty_set();
    for (Element x = 0; x < g.order(); ++x)
      if (q.contains(projection(x))) s.set(x);
    return Subgroup(g, std::move(s));
  }
};

/// G/N with cosets numbered by increasing least representative.
inline Quotient quotient_group(const Subgroup& n) {
  const FiniteGroup& g = n.parent();
  if (!is_normal(n)) throw Error("quotient by a subgroup that is not normal");
  const std::size_t order = g.order() / n.order();
  std::vector<Element> coset(g.order(), UINT32_MAX);
  std::vector<Element> reps;
  std::vector<Element> nelems = n.elements();
  for (Element x = 0; x < g.order(); ++x) {
    if (coset[x] != UINT32_MAX) continue;
    Element id = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element m : nelems) coset[g.mul(x, m)] = id;
  }
  std::vector<Element> mul(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) mul[a * order + b] = coset[g.mul(reps[a], reps[b])];
  const Element identity = coset[g.identity()];
  std::vector<Element> gens;
  std::set<Element> used;
  for (Element s : g.generators()) {
    Element q = coset[s];
    if (q != identity && used.insert(q).second) gens.push_back(q);
  }
  std::string name = g.name().empty() ? std::string{} : g.name() + "/N";
  FiniteGroup q = group_from_trusted_table(std::move(mul), order, identity, std::move(gens), name);
  GroupHom proj{g, q, std::move(coset)};
  return Quotient{q, std::move(proj), std::move(reps)};
}

/// A subgroup materialized as a group in its own right.
struct InducedGroup {
  FiniteGroup group;
  Subgroup source;
  std::vector<Element> embedding;  // local -> parent
  std::vector<Element> local;      // parent -> local, UINT32_MAX outside

  Subgroup lift(const Subgroup& h) const {
    require_same_parent(group, h);
    const FiniteGroup& g = source.parent();
    ElementSet s = g.empty_set();
    h.for_each([&](Element x) { s.set(embedding[x]); });
    return Subgroup(g, std::move(s));
  }

  /// (K intersect H) as a subgroup of the induced group.
  Subgroup restrict(const Subgroup& k) const {
    source.same_parent(k);
    ElementSet s = group.empty_set();
    k.for_each([&](Element x) {
      if (local[x] != UINT32_MAX) s.set(local[x]);
    });
    return Subgroup(group, std::move(s));
  }
};

/// Local elements are the members of H in increasing parent index.
inline InducedGroup induced_group(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  std::vector<Element> emb = h.elements();
  std::vector<Element> loc(g.order(), UINT32_MAX);
  for (Element i = 0; i < emb.size(); ++i) loc[emb[i]] = i;
  const std::size_t n = emb.size();
  std::vector<Element> mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = loc[g.mul(emb[a], emb[b])];
  std::vector<Element> gens;
  for (Element x : generating_set(h)) gens.push_back(loc[x]);
  FiniteGroup sub = group_from_trusted_table(std::move(mul), n, loc[g.identity()], std::move(gens));
  return InducedGroup{sub, h, std::move(emb), std::move(loc)};
}

}  // namespace commprobe
