#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "commprobe/errors.hpp"
#include "commprobe/permutation.hpp"

namespace commprobe {

using Element = std::uint32_t;
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t kDefaultGroupCap = 20000;
inline constexpr std::size_t kFullAssociativityLimit = 512;

/// Fully materialized finite group: elements are the indices 0..order-1.
///
/// A FiniteGroup is a cheap handle to immutable shared tables, so copies are
/// O(1) and safe to hand to other threads. Two handles denote the same group
/// iff their id() matches.
class FiniteGroup {
 public:
  struct Tables {
    std::uint64_t id = 0;
    std::size_t n = 0;
    std::vector<Element> mul;
    std::vector<Element> inv;
    Element identity = 0;
    std::vector<Element> generators;
    // spanning tree of the Cayley graph: x == word_parent[x] * generators[word_gen[x]]
    std::vector<Element> word_parent;
    std::vector<std::uint32_t> word_gen;
    std::vector<std::uint32_t> element_order;
    std::vector<std::uint32_t> class_id;
    std::vector<std::uint32_t> class_size;
    std::size_t class_count = 0;
    std::size_t degree = 0;
    std::vector<Permutation> perms;
    std::unordered_map<Permutation, Element, PermutationHash> perm_index;
    bool associativity_sampled = false;
  };

  FiniteGroup() = default;
  FiniteGroup(std::shared_ptr<const Tables> tables, std::string name)
      : t_(std::move(tables)), name_(std::move(name)) {}

  std::uint64_t id() const noexcept { return t_ ? t_->id : 0; }
  const std::string& name() const noexcept { return name_; }
  FiniteGroup renamed(std::string name) const { return FiniteGroup(t_, std::move(name)); }

  std::size_t order() const noexcept { return t_->n; }
  Element identity() const noexcept { return t_->identity; }
  Element mul(Element a, Element b) const noexcept { return t_->mul[std::size_t(a) * t_->n + b]; }
  Element inv(Element a) const noexcept { return t_->inv[a]; }
  /// g^-1 x g
  Element conj(Element x, Element g) const noexcept { return mul(mul(inv(g), x), g); }
  /// [a,b] = a^-1 b^-1 a b
  Element commutator(Element a, Element b) const noexcept {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }
  Element pow(Element x, std::int64_t k) const noexcept {
    if (k < 0) {
      x = inv(x);
      k = -k;
    }
    k %= t_->element_order[x];
    Element r = identity();
    Element base = x;
    while (k > 0) {
      if (k & 1) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }

  std::uint32_t element_order(Element x) const noexcept { return t_->element_order[x]; }
  const std::vector<Element>& generators() const noexcept { return t_->generators; }
  std::size_t class_count() const noexcept { return t_->class_count; }
  std::uint32_t class_id(Element x) const noexcept { return t_->class_id[x]; }
  /// |x^G|
  std::uint32_t class_size(Element x) const noexcept { return t_->class_size[x]; }
  /// |C_G(x)|
  std::size_t centralizer_order(Element x) const noexcept { return t_->n / t_->class_size[x]; }

  bool is_abelian() const noexcept { return t_->class_count == t_->n; }
  bool associativity_sampled() const noexcept { return t_->associativity_sampled; }

  bool has_permutations() const noexcept { return !t_->perms.empty(); }
  std::size_t degree() const noexcept { return t_->degree; }
  const Permutation& permutation(Element x) const { return t_->perms.at(x); }
  std::optional<Element> find(const Permutation& p) const {
    auto it = t_->perm_index.find(p);
    if (it == t_->perm_index.end()) return std::nullopt;
    return it->second;
  }

  /// Generator indices spelling x along the spanning tree, left to right.
  std::vector<std::uint32_t> word_for(Element x) const {
    std::vector<std::uint32_t> word;
    while (x != t_->identity) {
      word.push_back(t_->word_gen[x]);
      x = t_->word_parent[x];
    }
    std::reverse(word.begin(), word.end());
    return word;
  }
  Element word_parent(Element x) const noexcept { return t_->word_parent[x]; }
  std::uint32_t word_generator(Element x) const noexcept { return t_->word_gen[x]; }

  /// Elements in spanning-tree discovery order (parents before children).
  std::vector<Element> tree_order() const {
    std::vector<Element> out;
    out.reserve(order());
    out.push_back(identity());
    std::vector<std::vector<Element>> children(order());
    for (Element x = 0; x < order(); ++x)
      if (x != identity()) children[t_->word_parent[x]].push_back(x);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (Element c : children[out[i]]) out.push_back(c);
    return out;
  }

  ElementSet empty_set() const { return ElementSet(order()); }
  ElementSet full_set() const { return ElementSet(order()).set(); }

  const Tables& tables() const noexcept { return *t_; }
  bool valid() const noexcept { return static_cast<bool>(t_); }

 private:
  std::shared_ptr<const Tables> t_;
  std::string name_;
};

/// Homomorphism given by its full image table.
struct GroupHom {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<Element> map;

  Element operator()(Element x) const { return map[x]; }

  /// Exact check: map(identity) is the identity and map(x g) == map(x) map(g)
  /// for every element x and generator g, which forces map(x y) == map(x) map(y).
  bool is_homomorphism() const {
    if (map.size() != source.order()) return false;
    if (map[source.identity()] != target.identity()) return false;
    for (Element x = 0; x < source.order(); ++x)
      for (Element g : source.generators())
        if (map[source.mul(x, g)] != target.mul(map[x], map[g])) return false;
    return true;
  }
};

namespace detail {

inline std::uint64_t next_group_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

/// Closure of a generator list under the table multiplication.
inline std::size_t closure_size(const std::vector<Element>& mul, std::size_t n, Element identity,
                                const std::vector<Element>& gens) {
  std::vector<bool> seen(n, false);
  std::vector<Element> queue{identity};
  seen[identity] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Element g : gens) {
      Element y = mul[std::size_t(queue[i]) * n + g];
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  return queue.size();
}

/// Fills the derived tables (inverses, spanning tree, orders, classes) of a
/// group whose multiplication, identity and generators are already set.
inline void finish_tables(FiniteGroup::Tables& t) {
  const std::size_t n = t.n;
  const Element e = t.identity;
  auto mul = [&](Element a, Element b) { return t.mul[std::size_t(a) * n + b]; };

  t.inv.assign(n, 0);
  for (Element x = 0; x < n; ++x) {
    bool found = false;
    for (Element y = 0; y < n; ++y)
      if (mul(x, y) == e) {
        t.inv[x] = y;
        found = true;
        break;
      }
    if (!found) throw ValidationError("element " + std::to_string(x) + " has no inverse");
  }

  t.word_parent.assign(n, e);
  t.word_gen.assign(n, UINT32_MAX);
  std::vector<bool> seen(n, false);
  std::vector<Element> queue{e};
  seen[e] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::uint32_t j = 0; j < t.generators.size(); ++j) {
      Element y = mul(queue[i], t.generators[j]);
      if (!seen[y]) {
        seen[y] = true;
        t.word_parent[y] = queue[i];
        t.word_gen[y] = j;
        queue.push_back(y);
      }
    }
  if (queue.size() != n)
    throw ValidationError("generators span " + std::to_string(queue.size()) + " of " +
                          std::to_string(n) + " elements");

  t.element_order.assign(n, 1);
  for (Element x = 0; x < n; ++x) {
    std::uint32_t k = 1;
    for (Element y = x; y != e; y = mul(y, x)) ++k;
    t.element_order[x] = k;
  }

  // conjugacy classes: orbits under conjugation by the generators
  t.class_id.assign(n, UINT32_MAX);
  t.class_size.assign(n, 0);
  std::uint32_t next = 0;
  for (Element x = 0; x < n; ++x) {
    if (t.class_id[x] != UINT32_MAX) continue;
    std::vector<Element> orbit{x};
    t.class_id[x] = next;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Element g : t.generators) {
        Element y = mul(mul(t.inv[g], orbit[i]), g);
        if (t.class_id[y] == UINT32_MAX) {
          t.class_id[y] = next;
          orbit.push_back(y);
        }
      }
    for (Element y : orbit) t.class_size[y] = static_cast<std::uint32_t>(orbit.size());
    ++next;
  }
  t.class_count = next;
}

/// Greedy generating set: scan elements in index order, keep those outside the
/// closure of the ones kept so far.
inline std::vector<Element> greedy_generators(const std::vector<Element>& mul, std::size_t n,
                                              Element identity) {
  std::vector<Element> gens;
  std::vector<bool> in(n, false);
  std::vector<Element> members{identity};
  in[identity] = true;
  for (Element x = 0; x < n && members.size() < n; ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    in[x] = true;
    members.push_back(x);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (Element g : gens) {
        Element y = mul[std::size_t(members[i]) * n + g];
        if (!in[y]) {
          in[y] = true;
          members.push_back(y);
        }
      }
  }
  return gens;
}

}  // namespace detail

/// Group generated by permutations of a common degree.
///
/// Elements are numbered in breadth-first discovery order from the identity
/// (so the identity is element 0), trying generators in the given order.
inline FiniteGroup group_from_generators(const std::vector<Permutation>& gens, std::size_t degree,
                                         std::size_t cap = kDefaultGroupCap,
                                         std::string name = {}) {
  for (const auto& g : gens)
    if (g.degree() != degree) throw Error("generators must share one degree");

  auto t = std::make_shared<FiniteGroup::Tables>();
  t->id = detail::next_group_id();
  t->degree = degree;
  Permutation id_perm(degree);
  t->perms.push_back(id_perm);
  t->perm_index.emplace(id_perm, 0);
  // right_gen[x * k + j] == x * g_j
  std::vector<Element> right_gen;
  for (std::size_t i = 0; i < t->perms.size(); ++i) {
    for (const auto& g : gens) {
      Permutation y = t->perms[i] * g;
      auto [it, inserted] = t->perm_index.emplace(y, static_cast<Element>(t->perms.size()));
      if (inserted) {
        if (t->perms.size() >= cap) throw GroupTooLarge(t->perms.size() + 1, cap);
        t->perms.push_back(std::move(y));
      }
      right_gen.push_back(it->second);
    }
  }
  const std::size_t n = t->perms.size();
  const std::size_t k = gens.size();
  t->n = n;
  t->identity = 0;
  for (const auto& g : gens) t->generators.push_back(t->perm_index.at(g));

  // BFS spanning tree over the generators, used to fill columns of mul
  std::vector<Element> parent(n, 0);
  std::vector<std::uint32_t> via(n, 0);
  {
    std::vector<bool> seen(n, false);
    std::vector<Element> queue{0};
    seen[0] = true;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::uint32_t j = 0; j < k; ++j) {
        Element y = right_gen[queue[i] * k + j];
        if (!seen[y]) {
          seen[y] = true;
          parent[y] = queue[i];
          via[y] = j;
          queue.push_back(y);
        }
      }
    // BFS discovery order coincides with element numbering
    t->mul.assign(n * n, 0);
    for (Element a = 0; a < n; ++a) t->mul[std::size_t(a) * n] = a;
    for (std::size_t qi = 1; qi < queue.size(); ++qi) {
      Element b = queue[qi];
      for (Element a = 0; a < n; ++a) {
        Element ap = t->mul[std::size_t(a) * n + parent[b]];
        t->mul[std::size_t(a) * n + b] = right_gen[ap * k + via[b]];
      }
    }
  }
  detail::finish_tables(*t);
  return FiniteGroup(std::move(t), std::move(name));
}

/// Validates and wraps a Cayley table (row a, column b holds a*b).
///
/// Associativity is checked on every triple up to kFullAssociativityLimit
/// elements and on 10 n^2 pseudo-random triples above it; the latter is
/// recorded in associativity_sampled().
inline FiniteGroup group_from_cayley_table(const std::vector<std::vector<Element>>& table,
                                           std::vector<Element> generators = {},
                                           std::string name = {},
                                           std::size_t cap = kDefaultGroupCap) {
  const std::size_t n = table.size();
  if (n == 0) throw ValidationError("empty Cayley table");
  if (n > cap) throw GroupTooLarge(n, cap);
  auto t = std::make_shared<FiniteGroup::Tables>();
  t->id = detail::next_group_id();
  t->n = n;
  t->mul.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n)
      throw ValidationError("row " + std::to_string(a) + " has " + std::to_string(table[a].size()) +
                            " entries, expected " + std::to_string(n));
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n)
        throw ValidationError("entry (" + std::to_string(a) + "," + std::to_string(b) +
                              ") out of range");
      t->mul[a * n + b] = table[a][b];
    }
  }
  auto mul = [&](std::size_t a, std::size_t b) { return std::size_t(t->mul[a * n + b]); };
  auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw ValidationError("non-associative triple (" + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n <= kFullAssociativityLimit) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i < 10 * n * n; ++i) check(pick(rng), pick(rng), pick(rng));
    t->associativity_sampled = true;
  }

  std::optional<Element> identity;
  for (Element e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) identity = e;
  }
  if (!identity) throw ValidationError("table has no two-sided identity");
  t->identity = *identity;
  for (Element x = 0; x < n; ++x) {
    bool ok = false;
    for (Element y = 0; y < n && !ok; ++y) ok = mul(x, y) == *identity && mul(y, x) == *identity;
    if (!ok) throw ValidationError("element " + std::to_string(x) + " has no two-sided inverse");
  }
  if (generators.empty()) generators = detail::greedy_generators(t->mul, n, *identity);
  for (Element g : generators)
    if (g >= n) throw ValidationError("generator index out of range");
  t->generators = std::move(generators);
  detail::finish_tables(*t);
  return FiniteGroup(std::move(t), std::move(name));
}

/// Trivial group on a given permutation degree.
inline FiniteGroup trivial_group(std::size_t degree = 1) {
  return group_from_generators({}, degree);
}

/// G x H with pair (g, h) stored at index g * |H| + h.
///
/// When both factors carry permutations the product acts on the disjoint
/// union of their points.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                                  std::size_t cap = kDefaultGroupCap, std::string name = {}) {
  const std::size_t ng = g.order(), nh = h.order();
  if (ng * nh > cap) throw GroupTooLarge(ng * nh, cap);
  const std::size_t n = ng * nh;
  auto t = std::make_shared<FiniteGroup::Tables>();
  t->id = detail::next_group_id();
  t->n = n;
  t->mul.resize(n * n);
  for (Element a1 = 0; a1 < ng; ++a1)
    for (Element a2 = 0; a2 < nh; ++a2)
      for (Element b1 = 0; b1 < ng; ++b1)
        for (Element b2 = 0; b2 < nh; ++b2)
          t->mul[(a1 * nh + a2) * n + b1 * nh + b2] =
              static_cast<Element>(g.mul(a1, b1) * nh + h.mul(a2, b2));
  t->identity = static_cast<Element>(g.identity() * nh + h.identity());
  for (Element x : g.generators()) t->generators.push_back(static_cast<Element>(x * nh + h.identity()));
  for (Element y : h.generators()) t->generators.push_back(static_cast<Element>(g.identity() * nh + y));
  if (g.has_permutations() && h.has_permutations()) {
    const std::size_t dg = g.degree(), dh = h.degree();
    t->degree = dg + dh;
    t->perms.reserve(n);
    for (Element a = 0; a < ng; ++a)
      for (Element b = 0; b < nh; ++b) {
        std::vector<Permutation::point_type> img(dg + dh);
        for (std::size_t i = 0; i < dg; ++i) img[i] = g.permutation(a)[i];
        for (std::size_t i = 0; i < dh; ++i)
          img[dg + i] = static_cast<Permutation::point_type>(dg + h.permutation(b)[i]);
        Permutation p(std::move(img));
        t->perm_index.emplace(p, static_cast<Element>(t->perms.size()));
        t->perms.push_back(std::move(p));
      }
  }
  detail::finish_tables(*t);
  return FiniteGroup(std::move(t), std::move(name));
}

/// Builds a group from an already-validated multiplication table. Used for
/// quotients and induced subgroups, whose tables are correct by construction.
inline FiniteGroup group_from_trusted_table(std::vector<Element> mul, std::size_t n,
                                            Element identity, std::vector<Element> generators,
                                            std::string name = {}) {
  auto t = std::make_shared<FiniteGroup::Tables>();
  t->id = detail::next_group_id();
  t->n = n;
  t->mul = std::move(mul);
  t->identity = identity;
  if (generators.empty() && n > 1) generators = detail::greedy_generators(t->mul, n, identity);
  t->generators = std::move(generators);
  detail::finish_tables(*t);
  return FiniteGroup(std::move(t), std::move(name));
}

}  // namespace commprobe
