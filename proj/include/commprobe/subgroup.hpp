#pragma once

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "commprobe/errors.hpp"
#include "commprobe/group.hpp"

namespace commprobe {

inline constexpr std::size_t kDefaultVerifierCap = 2000;

/// Cap on |G| for the exhaustive searches (normal subgroup lattice, components,
/// verifiers). Overridable with COMMPROBE_MAX_ORDER.
inline std::size_t verifier_cap() {
  if (const char* env = std::getenv("COMMPROBE_MAX_ORDER")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultVerifierCap;
}

struct CapExceeded : Error {
  CapExceeded(const std::string& what, std::size_t order, std::size_t cap)
      : Error(what + ": |G| = " + std::to_string(order) + " exceeds cap " + std::to_string(cap) +
              " (raise COMMPROBE_MAX_ORDER or use a smaller group)") {}
};

/// Subset of a parent group closed under multiplication and inverses.
///
/// Membership is a bitset over the parent's elements. Operations that combine
/// subgroups of different parents throw instead of reinterpreting indices.
class Subgroup {
 public:
  Subgroup(FiniteGroup parent, ElementSet members)
      : parent_(std::move(parent)), members_(std::move(members)) {
    if (members_.size() != parent_.order()) throw Error("member set size does not match parent");
    order_ = members_.count();
    if (!members_.test(parent_.identity())) throw Error("subgroup must contain the identity");
    if (parent_.order() % order_ != 0)
      throw Error("subgroup order " + std::to_string(order_) + " does not divide " +
                  std::to_string(parent_.order()));
  }

  static Subgroup whole(const FiniteGroup& g) { return Subgroup(g, g.full_set()); }
  static Subgroup trivial(const FiniteGroup& g) {
    ElementSet s = g.empty_set();
    s.set(g.identity());
    return Subgroup(g, std::move(s));
  }

  const FiniteGroup& parent() const noexcept { return parent_; }
  const ElementSet& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t index() const noexcept { return parent_.order() / order_; }
  bool contains(Element x) const { return members_.test(x); }
  bool is_trivial() const noexcept { return order_ == 1; }
  bool is_whole() const noexcept { return order_ == parent_.order(); }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(order_);
    for (auto i = members_.find_first(); i != ElementSet::npos; i = members_.find_next(i))
      out.push_back(static_cast<Element>(i));
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (auto i = members_.find_first(); i != ElementSet::npos; i = members_.find_next(i))
      f(static_cast<Element>(i));
  }

  bool is_subgroup_of(const Subgroup& other) const {
    same_parent(other);
    return members_.is_subset_of(other.members_);
  }

  /// Exhaustive closure check (O(|H|^2)).
  bool verify_closed() const {
    bool ok = true;
    for_each([&](Element a) {
      if (!ok) return;
      if (!contains(parent_.inv(a))) ok = false;
      for_each([&](Element b) {
        if (ok && !contains(parent_.mul(a, b))) ok = false;
      });
    });
    return ok;
  }

  void same_parent(const Subgroup& other) const {
    if (parent_.id() != other.parent_.id())
      throw Error("subgroups belong to different parent groups");
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_.id() == b.parent_.id() && a.members_ == b.members_;
  }

 private:
  FiniteGroup parent_;
  ElementSet members_;
  std::size_t order_ = 0;
};

/// Order by size, then by the sorted element list.
inline bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

inline void require_same_parent(const FiniteGroup& g, const Subgroup& h) {
  if (g.id() != h.parent().id()) throw Error("subgroup does not belong to this group");
}

inline ElementSet to_set(const FiniteGroup& g, const std::vector<Element>& elems) {
  ElementSet s = g.empty_set();
  for (Element x : elems) {
    if (x >= g.order()) throw Error("element index out of range");
    s.set(x);
  }
  return s;
}

inline std::vector<Element> to_vector(const ElementSet& s) {
  std::vector<Element> out;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
    out.push_back(static_cast<Element>(i));
  return out;
}

namespace detail {

/// Closure of `members` (already a subgroup or {identity}) after adjoining gens.
inline void close_under(const FiniteGroup& g, ElementSet& members, std::vector<Element>& list,
                        const std::vector<Element>& gens) {
  for (std::size_t i = 0; i < list.size(); ++i)
    for (Element s : gens) {
      Element y = g.mul(list[i], s);
      if (!members.test(y)) {
        members.set(y);
        list.push_back(y);
      }
    }
}

}  // namespace detail

/// Least subgroup containing every element of `seed`.
inline Subgroup closure(const FiniteGroup& g, const ElementSet& seed) {
  ElementSet members = g.empty_set();
  members.set(g.identity());
  std::vector<Element> list{g.identity()};
  std::vector<Element> gens;
  for (auto i = seed.find_first(); i != ElementSet::npos; i = seed.find_next(i)) {
    Element x = static_cast<Element>(i);
    if (members.test(x)) continue;
    gens.push_back(x);
    // restart from the identity: orbits under the enlarged generator list
    members.reset();
    members.set(g.identity());
    list.assign(1, g.identity());
    detail::close_under(g, members, list, gens);
  }
  return Subgroup(g, std::move(members));
}

inline Subgroup closure(const FiniteGroup& g, const std::vector<Element>& seed) {
  return closure(g, to_set(g, seed));
}

/// Greedy generating set of a subgroup, in increasing element order.
inline std::vector<Element> generating_set(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  ElementSet members = g.empty_set();
  members.set(g.identity());
  std::vector<Element> list{g.identity()};
  std::vector<Element> gens;
  h.for_each([&](Element x) {
    if (members.test(x)) return;
    gens.push_back(x);
    members.reset();
    members.set(g.identity());
    list.assign(1, g.identity());
    detail::close_under(g, members, list, gens);
  });
  return gens;
}

inline Subgroup join(const Subgroup& a, const Subgroup& b) {
  a.same_parent(b);
  if (b.is_subgroup_of(a)) return a;
  if (a.is_subgroup_of(b)) return b;
  return closure(a.parent(), a.members() | b.members());
}

inline Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  a.same_parent(b);
  return Subgroup(a.parent(), a.members() & b.members());
}

/// C_G(x)
inline Subgroup centralizer(const FiniteGroup& g, Element x) {
  ElementSet s = g.empty_set();
  for (Element y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == g.mul(y, x)) s.set(y);
  return Subgroup(g, std::move(s));
}

/// Elements of `ambient` commuting with every element of `set`.
inline Subgroup centralizer_of_set(const Subgroup& ambient, const ElementSet& set) {
  const FiniteGroup& g = ambient.parent();
  // a generating set of <set> suffices
  std::vector<Element> gens = generating_set(closure(g, set));
  ElementSet s = g.empty_set();
  ambient.for_each([&](Element y) {
    for (Element x : gens)
      if (g.mul(x, y) != g.mul(y, x)) return;
    s.set(y);
  });
  return Subgroup(g, std::move(s));
}

inline Subgroup centralizer_of_set(const FiniteGroup& g, const ElementSet& set) {
  return centralizer_of_set(Subgroup::whole(g), set);
}

inline Subgroup centralizer_of_subgroup(const Subgroup& ambient, const Subgroup& h) {
  ambient.same_parent(h);
  return centralizer_of_set(ambient, h.members());
}

inline Subgroup center(const FiniteGroup& g) {
  ElementSet s = g.empty_set();
  for (Element x = 0; x < g.order(); ++x)
    if (g.class_size(x) == 1) s.set(x);
  return Subgroup(g, std::move(s));
}

/// Conjugacy classes, each sorted, ordered by least member.
inline std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<std::vector<Element>> classes(g.class_count());
  for (Element x = 0; x < g.order(); ++x) classes[g.class_id(x)].push_back(x);
  std::sort(classes.begin(), classes.end());
  return classes;
}

inline std::size_t class_size(const FiniteGroup& g, Element x) { return g.class_size(x); }

/// x^H = { h^-1 x h : h in H }.
inline ElementSet relative_class(const Subgroup& h, Element x) {
  const FiniteGroup& g = h.parent();
  std::vector<Element> gens = generating_set(h);
  ElementSet orbit = g.empty_set();
  orbit.set(x);
  std::vector<Element> list{x};
  for (std::size_t i = 0; i < list.size(); ++i)
    for (Element s : gens) {
      Element y = g.conj(list[i], s);
      if (!orbit.test(y)) {
        orbit.set(y);
        list.push_back(y);
      }
    }
  return orbit;
}

/// |C_H(x)| for x anywhere in the parent group.
inline std::size_t relative_centralizer_order(const Subgroup& h, Element x) {
  const FiniteGroup& g = h.parent();
  std::size_t c = 0;
  h.for_each([&](Element y) {
    if (g.mul(x, y) == g.mul(y, x)) ++c;
  });
  return c;
}

inline bool is_normal(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  for (Element x : generating_set(h))
    for (Element s : g.generators())
      if (!h.contains(g.conj(x, s))) return false;
  return true;
}

/// Least normal subgroup of G containing H: generated by the union of the
/// classes meeting H.
inline Subgroup normal_closure(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  std::vector<bool> hit(g.class_count(), false);
  h.for_each([&](Element x) { hit[g.class_id(x)] = true; });
  ElementSet seed = g.empty_set();
  for (Element x = 0; x < g.order(); ++x)
    if (hit[g.class_id(x)]) seed.set(x);
  return closure(g, seed);
}

inline Subgroup normal_closure(const FiniteGroup& g, const ElementSet& seed) {
  return normal_closure(closure(g, seed));
}

/// Largest normal subgroup of G inside H: the union of the classes contained in H.
inline Subgroup normal_core(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  std::vector<std::size_t> inside(g.class_count(), 0);
  h.for_each([&](Element x) { ++inside[g.class_id(x)]; });
  ElementSet s = g.empty_set();
  for (Element x = 0; x < g.order(); ++x)
    if (inside[g.class_id(x)] == g.class_size(x)) s.set(x);
  return Subgroup(g, std::move(s));
}

inline Subgroup conjugate(const Subgroup& h, Element by) {
  const FiniteGroup& g = h.parent();
  ElementSet s = g.empty_set();
  h.for_each([&](Element x) { s.set(g.conj(x, by)); });
  return Subgroup(g, std::move(s));
}

inline Subgroup normalizer(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  std::vector<Element> gens = generating_set(h);
  ElementSet s = g.empty_set();
  for (Element y = 0; y < g.order(); ++y) {
    bool ok = true;
    for (Element x : gens)
      if (!h.contains(g.conj(x, y))) {
        ok = false;
        break;
      }
    if (ok) s.set(y);
  }
  return Subgroup(g, std::move(s));
}

/// [A,B] = < [a,b] : a in A, b in B >.
inline Subgroup commutator_of_subgroups(const Subgroup& a, const Subgroup& b) {
  a.same_parent(b);
  const FiniteGroup& g = a.parent();
  ElementSet seed = g.empty_set();
  a.for_each([&](Element x) { b.for_each([&](Element y) { seed.set(g.commutator(x, y)); }); });
  return closure(g, seed);
}

inline Subgroup derived_subgroup(const Subgroup& h) { return commutator_of_subgroups(h, h); }

inline bool is_abelian(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  auto gens = generating_set(h);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) return false;
  return true;
}

/// Every normal subgroup of G.
///
/// Each normal subgroup is the join of the normal closures <x^G> of its
/// elements, so closing {1} under joins with those atoms (one per class)
/// reaches the whole lattice. Sorted by canonical_less.
inline std::vector<Subgroup> all_normal_subgroups(const FiniteGroup& g,
                                                  std::size_t cap = verifier_cap()) {
  if (g.order() > cap) throw CapExceeded("all_normal_subgroups", g.order(), cap);
  std::vector<Subgroup> atoms;
  {
    std::set<ElementSet> seen_atoms;
    for (const auto& cls : conjugacy_classes(g)) {
      if (cls.front() == g.identity() && cls.size() == 1) continue;
      ElementSet seed = g.empty_set();
      seed.set(cls.front());
      Subgroup a = normal_closure(g, seed);
      if (seen_atoms.insert(a.members()).second) atoms.push_back(std::move(a));
    }
  }
  std::vector<Subgroup> out{Subgroup::trivial(g)};
  std::set<ElementSet> seen{out.front().members()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& a : atoms) {
      if (a.members().is_subset_of(out[i].members())) continue;
      Subgroup j = join(out[i], a);
      if (seen.insert(j.members()).second) out.push_back(std::move(j));
    }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

/// X^k = { x_1 ... x_k : x_i in X } for a symmetric X containing the identity.
inline ElementSet symmetric_set_power(const FiniteGroup& g, const ElementSet& x, std::size_t k) {
  if (x.size() != g.order()) throw Error("set size does not match group");
  if (!x.test(g.identity())) throw HypothesisViolation("set does not contain the identity");
  for (auto i = x.find_first(); i != ElementSet::npos; i = x.find_next(i))
    if (!x.test(g.inv(static_cast<Element>(i))))
      throw HypothesisViolation("set is not closed under inverses (element " + std::to_string(i) +
                                ")");
  if (k == 0) {
    ElementSet one = g.empty_set();
    one.set(g.identity());
    return one;
  }
  std::vector<Element> xs = to_vector(x);
  ElementSet power = x;
  for (std::size_t step = 1; step < k; ++step) {
    ElementSet next = power;  // identity in X, so X^j grows monotonically
    for (auto p = power.find_first(); p != ElementSet::npos; p = power.find_next(p))
      for (Element s : xs) next.set(g.mul(static_cast<Element>(p), s));
    if (next == power) break;
    power = std::move(next);
  }
  return power;
}

}  // namespace commprobe
