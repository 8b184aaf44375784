#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "commprobe/probability.hpp"
#include "commprobe/quotient.hpp"
#include "commprobe/report.hpp"
#include "commprobe/structure.hpp"

namespace commprobe {

/// A bijective endomorphism of a FiniteGroup, stored as a full element table.
/// Maps act on the right: (a * b)(x) applies a first, then b.
class Automorphism {
 public:
  /// Validates that `map` is a bijective homomorphism of `g`.
  Automorphism(FiniteGroup g, std::vector<Element> map, std::string name = {})
      : group_(std::move(g)), map_(std::move(map)), name_(std::move(name)) {
    const std::size_t n = group_.order();
    if (map_.size() != n) throw ValidationError("automorphism table has wrong size");
    std::vector<bool> hit(n, false);
    for (Element x : map_) {
      if (x >= n || hit[x]) throw ValidationError("automorphism " + name_ + " is not a bijection");
      hit[x] = true;
    }
    for (Element x = 0; x < n; ++x)
      for (Element s : group_.generators())
        if (map_[group_.mul(x, s)] != group_.mul(map_[x], map_[s]))
          throw ValidationError("automorphism " + name_ + " is not a homomorphism (element " +
                                std::to_string(x) + ", generator " + std::to_string(s) + ")");
    order_ = 1;
    std::vector<Element> cur = map_;
    while (!is_identity_table(cur)) {
      for (auto& c : cur) c = map_[c];
      ++order_;
    }
  }

  static Automorphism identity(const FiniteGroup& g) {
    std::vector<Element> m(g.order());
    std::iota(m.begin(), m.end(), Element{0});
    return Automorphism(g, std::move(m), "id");
  }

  const FiniteGroup& group() const noexcept { return group_; }
  const std::vector<Element>& map() const noexcept { return map_; }
  const std::string& name() const noexcept { return name_; }
  Automorphism renamed(std::string name) const {
    Automorphism a = *this;
    a.name_ = std::move(name);
    return a;
  }
  Element operator()(Element x) const { return map_[x]; }
  std::uint64_t order() const noexcept { return order_; }
  bool is_identity() const noexcept { return order_ == 1; }

  friend Automorphism operator*(const Automorphism& a, const Automorphism& b) {
    if (a.group_.id() != b.group_.id()) throw Error("composing automorphisms of different groups");
    std::vector<Element> m(a.map_.size());
    for (std::size_t x = 0; x < m.size(); ++x) m[x] = b.map_[a.map_[x]];
    return Automorphism(a.group_, std::move(m));
  }

  Automorphism power(std::int64_t k) const {
    std::int64_t e = ((k % static_cast<std::int64_t>(order_)) + order_) % order_;
    Automorphism r = identity(group_);
    for (std::int64_t i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  Automorphism inverse() const { return power(-1); }

  friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.map_ == b.map_; }

 private:
  static bool is_identity_table(const std::vector<Element>& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != i) return false;
    return true;
  }

  FiniteGroup group_;
  std::vector<Element> map_;
  std::string name_;
  std::uint64_t order_ = 1;
};

/// Extends generator images along the spanning tree and validates the result.
inline Automorphism automorphism_from_generator_images(const FiniteGroup& g, const std::vector<Element>& images,
                                                       std::string name = {}) {
  const auto& gens = g.generators();
  if (images.size() != gens.size())
    throw ValidationError("automorphism " + name + " needs " + std::to_string(gens.size()) +
                          " generator images, got " + std::to_string(images.size()));
  for (Element x : images)
    if (x >= g.order()) throw ValidationError("automorphism " + name + " image out of range");
  std::vector<Element> m(g.order(), UINT32_MAX);
  m[g.identity()] = g.identity();
  for (Element x : g.tree_order())
    if (x != g.identity()) m[x] = g.mul(m[g.word_parent(x)], images[g.word_generator(x)]);
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (m[gens[j]] != images[j])
      throw ValidationError("automorphism " + name + ": generator images are inconsistent");
  return Automorphism(g, std::move(m), std::move(name));
}

/// Closure of a list of automorphisms under composition.
class AutomorphismGroup {
 public:
  AutomorphismGroup(FiniteGroup g, std::vector<Automorphism> generators, std::size_t cap = 100000)
      : group_(std::move(g)), generators_(std::move(generators)) {
    for (const auto& a : generators_)
      if (a.group().id() != group_.id()) throw Error("automorphism acts on a different group");
    std::map<std::vector<Element>, std::size_t> seen;
    elements_.push_back(Automorphism::identity(group_));
    seen.emplace(elements_.front().map(), 0);
    for (std::size_t i = 0; i < elements_.size(); ++i)
      for (const auto& s : generators_) {
        Automorphism next = elements_[i] * s;
        if (seen.emplace(next.map(), elements_.size()).second) {
          if (elements_.size() >= cap) throw GroupTooLarge(elements_.size(), cap);
          elements_.push_back(std::move(next));
        }
      }
  }

  const FiniteGroup& group() const noexcept { return group_; }
  const std::vector<Automorphism>& generators() const noexcept { return generators_; }
  const std::vector<Automorphism>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }

  bool is_abelian() const {
    for (const auto& a : generators_)
      for (const auto& b : generators_)
        if (!(a * b == b * a)) return false;
    return true;
  }

  /// Every nontrivial element has order p (and the group is abelian).
  bool is_elementary_abelian(std::uint64_t p) const {
    if (!is_abelian()) return false;
    for (const auto& a : elements_)
      if (!a.is_identity() && a.order() != p) return false;
    return true;
  }

 private:
  FiniteGroup group_;
  std::vector<Automorphism> generators_;
  std::vector<Automorphism> elements_;
};

inline Subgroup fixed_point_subgroup(const Automorphism& phi) {
  const FiniteGroup& g = phi.group();
  ElementSet s = g.empty_set();
  for (Element x = 0; x < g.order(); ++x)
    if (phi(x) == x) s.set(x);
  Subgroup c(g, std::move(s));
  if (!c.verify_closed()) throw std::logic_error("fixed points of " + phi.name() + " are not closed");
  return c;
}

/// C_G(A) as the intersection of the fixed points of A's generators.
inline Subgroup fixed_point_subgroup(const AutomorphismGroup& a) {
  Subgroup c = Subgroup::whole(a.group());
  for (const auto& phi : a.generators()) c = intersection(c, fixed_point_subgroup(phi));
  return c;
}

inline bool is_coprime_action(const Automorphism& phi) {
  return std::gcd(static_cast<std::uint64_t>(phi.group().order()), phi.order()) == 1;
}

inline bool is_coprime_action(const AutomorphismGroup& a) {
  return std::gcd(static_cast<std::uint64_t>(a.group().order()), static_cast<std::uint64_t>(a.order())) == 1;
}

inline bool is_invariant(const Subgroup& n, const Automorphism& phi) {
  bool ok = true;
  n.for_each([&](Element x) {
    if (!n.contains(phi(x))) ok = false;
  });
  return ok;
}

struct CoprimeQuotientReport {
  Subgroup lhs;  // C_{G/N}(A)
  Subgroup rhs;  // N C_G(A) / N
  bool equal;
};

/// C_{G/N}(A) = N C_G(A) / N for a coprime A and an A-invariant normal N.
inline CoprimeQuotientReport coprime_quotient_check(const AutomorphismGroup& a, const Subgroup& n) {
  const FiniteGroup& g = a.group();
  require_same_parent(g, n);
  if (!is_coprime_action(a))
    throw HypothesisViolation("action is not coprime: |G| = " + std::to_string(g.order()) +
                              ", |A| = " + std::to_string(a.order()));
  if (!is_normal(n)) throw HypothesisViolation("N is not normal in G");
  for (const auto& phi : a.generators())
    if (!is_invariant(n, phi)) throw HypothesisViolation("N is not invariant under " + phi.name());
  Quotient q = quotient_group(n);
  ElementSet fixed = q.group.full_set();
  for (const auto& phi : a.generators()) {
    for (Element x = 0; x < g.order(); ++x)
      if (q.projection(phi(x)) != q.projection(phi(q.representatives[q.projection(x)])))
        throw std::logic_error("induced action on G/N is not well defined");
    for (Element c = 0; c < q.group.order(); ++c)
      if (q.projection(phi(q.representatives[c])) != c) fixed.reset(c);
  }
  Subgroup lhs(q.group, std::move(fixed));
  Subgroup rhs = q.image(fixed_point_subgroup(a));
  bool eq = lhs == rhs;
  return {std::move(lhs), std::move(rhs), eq};
}

struct ElementaryAbelianBoundReport {
  std::uint64_t p = 0;
  std::size_t rank = 0;
  std::size_t m = 0;  // max over a in A# of |C_G(a)|
  boost::multiprecision::cpp_int bound;  // m^(p+1)
  bool holds = false;
  bool faithful = false;
};

/// |G| <= m^(p+1) for an elementary abelian p-group A of rank >= 2 acting on
/// a p'-group G. A is given abstractly as Z_p^r by r commuting generators of
/// order dividing p, so non-faithful actions are allowed.
inline ElementaryAbelianBoundReport elementary_abelian_bound_check(const FiniteGroup& g,
                                                                   const std::vector<Automorphism>& gens,
                                                                   std::uint64_t p) {
  if (!is_prime(p)) throw HypothesisViolation(std::to_string(p) + " is not prime");
  if (gens.size() < 2) throw HypothesisViolation("A must have rank at least 2");
  if (g.order() % p == 0) throw HypothesisViolation("G is not a p'-group for p = " + std::to_string(p));
  for (const auto& a : gens) {
    if (a.group().id() != g.id()) throw Error("automorphism acts on a different group");
    if (p % a.order() != 0) throw HypothesisViolation(a.name() + " does not have order dividing p");
  }
  for (const auto& a : gens)
    for (const auto& b : gens)
      if (!(a * b == b * a)) throw HypothesisViolation("generators of A do not commute");

  ElementaryAbelianBoundReport r;
  r.p = p;
  r.rank = gens.size();
  r.faithful = true;
  std::vector<std::uint64_t> exps(gens.size(), 0);
  for (;;) {
    std::size_t i = 0;
    while (i < exps.size() && ++exps[i] == p) exps[i++] = 0;
    if (i == exps.size()) break;
    Automorphism a = Automorphism::identity(g);
    for (std::size_t j = 0; j < gens.size(); ++j) a = a * gens[j].power(static_cast<std::int64_t>(exps[j]));
    if (a.is_identity()) r.faithful = false;
    r.m = std::max(r.m, fixed_point_subgroup(a).order());
  }
  r.bound = boost::multiprecision::pow(boost::multiprecision::cpp_int(r.m), static_cast<unsigned>(p + 1));
  r.holds = boost::multiprecision::cpp_int(g.order()) <= r.bound;
  return r;
}

namespace detail {

inline std::string automorphism_names(const std::vector<Automorphism>& gens) {
  std::string s;
  for (const auto& a : gens) s += (s.empty() ? "" : ",") + a.name();
  return s;
}

/// Least-index nilpotent normal subgroup, re-validated.
inline Witness nilpotent_normal_witness(const FiniteGroup& g, std::optional<std::size_t> max_class) {
  auto normals = all_normal_subgroups(g);
  auto best = best_class_bounded(normals, max_class);
  WitnessSpec spec;
  spec.max_class = max_class;
  return make_witness(*best, spec);
}

}  // namespace detail

/// Coprime automorphism of prime order with Pr(C_G(phi), G) >= eps: reports
/// the least-index nilpotent normal subgroup found by search.
inline TheoremReport verify_auto_theorem(const Automorphism& phi, const Ratio& eps) {
  const FiniteGroup& g = phi.group();
  if (!is_prime(phi.order()))
    throw HypothesisViolation("automorphism " + phi.name() + " has order " + std::to_string(phi.order()) +
                              ", not a prime");
  if (!is_coprime_action(phi))
    throw HypothesisViolation("automorphism " + phi.name() + " of order " + std::to_string(phi.order()) +
                              " is not coprime to |G| = " + std::to_string(g.order()));
  TheoremReport r;
  r.theorem_id = "auto";
  r.group = g.name();
  r.group_order = g.order();
  r.parameters = "aut=" + phi.name() + ";p=" + std::to_string(phi.order());
  r.epsilon = eps;
  Subgroup k = fixed_point_subgroup(phi);
  Ratio pr = relative_commuting_probability(k);
  r.key_probability = pr;
  r.hypothesis_holds = eps <= pr;
  r.hypothesis.push_back({"Pr(C_G(phi),G)", pr.str(), r.hypothesis_holds});
  r.data("fixed_point_order", k.order());
  Subgroup fit = fitting_subgroup(g);
  r.data("fitting_order", fit.order());
  r.witness = detail::nilpotent_normal_witness(g, std::nullopt);
  r.witness->label = "R";
  r.data("witness_scope", "lower bound (normal subgroups searched)");
  r.check("witness is the Fitting subgroup", r.witness->subgroup == fit);
  return r;
}

/// Elementary abelian coprime A of order p^2 with Pr(C_G(phi), G) >= eps for
/// every nontrivial phi: reports the best class-2 normal subgroup.
inline TheoremReport verify_auto2_theorem(const AutomorphismGroup& a, const Ratio& eps) {
  const FiniteGroup& g = a.group();
  const std::size_t order = a.order();
  std::uint64_t p = 0;
  for (std::uint64_t q = 2; q * q <= order; ++q)
    if (q * q == order && is_prime(q)) p = q;
  if (p == 0 || !a.is_elementary_abelian(p))
    throw HypothesisViolation("A must be elementary abelian of order p^2, got order " + std::to_string(order));
  if (!is_coprime_action(a))
    throw HypothesisViolation("A of order " + std::to_string(order) + " is not coprime to |G| = " +
                              std::to_string(g.order()));
  TheoremReport r;
  r.theorem_id = "auto2";
  r.group = g.name();
  r.group_order = g.order();
  r.parameters = "aut=" + detail::automorphism_names(a.generators()) + ";p=" + std::to_string(p);
  r.epsilon = eps;
  r.hypothesis_holds = true;
  std::optional<Ratio> least;
  std::vector<ElementSet> subgroup_fixed;  // one per subgroup of order p
  std::map<std::vector<Element>, bool> cyclic_seen;
  for (std::size_t i = 1; i < a.elements().size(); ++i) {
    const Automorphism& phi = a.elements()[i];
    Subgroup c = fixed_point_subgroup(phi);
    Ratio pr = relative_commuting_probability(c);
    bool ok = eps <= pr;
    r.hypothesis_holds = r.hypothesis_holds && ok;
    if (!least || pr < *least) least = pr;
    r.hypothesis.push_back({"Pr(C_G(phi" + std::to_string(i) + "),G)", pr.str(), ok});
    bool same = true;
    for (std::uint64_t k = 2; k < p; ++k)
      if (!(fixed_point_subgroup(phi.power(static_cast<std::int64_t>(k))) == c)) same = false;
    r.check("C_G(phi" + std::to_string(i) + ") depends only on <phi>", same);
    // <phi> is identified by its least map among phi^1..phi^(p-1).
    std::vector<Element> key = phi.map();
    for (std::uint64_t k = 2; k < p; ++k) key = std::min(key, phi.power(static_cast<std::int64_t>(k)).map());
    if (cyclic_seen.emplace(key, true).second) subgroup_fixed.push_back(c.members());
  }
  r.key_probability = least;
  r.check("A has p+1 subgroups of order p", subgroup_fixed.size() == p + 1);
  for (std::size_t i = 0; i < subgroup_fixed.size(); ++i)
    r.data("G" + std::to_string(i + 1) + "_order", subgroup_fixed[i].count());
  r.witness = detail::nilpotent_normal_witness(g, 2);
  return r;
}

}  // namespace commprobe
