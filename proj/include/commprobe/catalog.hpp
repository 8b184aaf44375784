#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "commprobe/automorphism.hpp"
#include "commprobe/group.hpp"
#include "commprobe/permutation.hpp"
#include "commprobe/quotient.hpp"

namespace commprobe {

/// A group together with the named automorphisms attached to it.
struct LoadedGroup {
  FiniteGroup group;
  std::vector<Automorphism> automorphisms;

  const Automorphism& automorphism(const std::string& name) const {
    for (const auto& a : automorphisms)
      if (a.name() == name) return a;
    throw Error("group " + group.name() + " has no automorphism named '" + name + "'");
  }
};

namespace catalog {

inline Permutation cycle_perm(std::size_t degree, std::size_t first, std::size_t length) {
  std::vector<Permutation::point_type> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  for (std::size_t i = 0; i < length; ++i)
    img[first + i] = static_cast<Permutation::point_type>(first + (i + 1) % length);
  return Permutation(std::move(img));
}

inline FiniteGroup cyclic(std::size_t n) {
  if (n == 1) return trivial_group(1).renamed("Z1");
  return group_from_generators({cycle_perm(n, 0, n)}, n, kDefaultGroupCap, "Z" + std::to_string(n));
}

/// Z_p^k acting on k disjoint p-cycles.
inline FiniteGroup elementary_abelian(std::size_t p, std::size_t k) {
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(cycle_perm(p * k, i * p, p));
  return group_from_generators(gens, p * k, kDefaultGroupCap, "Z" + std::to_string(p) + "^" + std::to_string(k));
}

/// Dihedral group of order 2n on the n-gon, named by its order.
inline FiniteGroup dihedral(std::size_t n) {
  std::vector<Permutation::point_type> refl(n);
  for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<Permutation::point_type>((n - i) % n);
  return group_from_generators({cycle_perm(n, 0, n), Permutation(refl)}, n, kDefaultGroupCap,
                               "D" + std::to_string(2 * n));
}

inline FiniteGroup symmetric(std::size_t n) {
  return group_from_generators({cycle_perm(n, 0, n), cycle_perm(n, 0, 2)}, n, kDefaultGroupCap,
                               "S" + std::to_string(n));
}

inline FiniteGroup alternating(std::size_t n) {
  // 3-cycles (1 2 3), (2 3 4), ... generate A_n
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i + 2 < n; ++i) gens.push_back(cycle_perm(n, i, 3));
  return group_from_generators(gens, n, kDefaultGroupCap, "A" + std::to_string(n));
}

/// Right-regular representation of the quaternion group on 8 points.
inline FiniteGroup quaternion() {
  Permutation i(std::vector<Permutation::point_type>{1, 4, 7, 2, 5, 0, 3, 6});
  Permutation j(std::vector<Permutation::point_type>{2, 3, 4, 5, 6, 7, 0, 1});
  return group_from_generators({i, j}, 8, kDefaultGroupCap, "Q8");
}

/// Unitriangular 3x3 matrices over F_3, acting on F_3^2 by
/// (x, y) -> (x + a, y + b x + c).
inline FiniteGroup heisenberg27() {
  std::vector<Permutation::point_type> shift(9), shear(9);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) {
      shift[x * 3 + y] = static_cast<Permutation::point_type>(((x + 1) % 3) * 3 + y);
      shear[x * 3 + y] = static_cast<Permutation::point_type>(x * 3 + (y + x) % 3);
    }
  return group_from_generators({Permutation(shift), Permutation(shear)}, 9, kDefaultGroupCap, "Heis27");
}

/// SL(2,3) acting on the 8 nonzero vectors of F_3^2.
inline FiniteGroup sl23() {
  std::vector<std::pair<int, int>> vecs;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a || b) vecs.emplace_back(a, b);
  auto index = [&](int a, int b) {
    for (std::size_t i = 0; i < vecs.size(); ++i)
      if (vecs[i] == std::pair{a % 3, b % 3}) return static_cast<Permutation::point_type>(i);
    throw std::logic_error("vector not found");
  };
  std::vector<Permutation::point_type> u(8), l(8);
  for (std::size_t i = 0; i < 8; ++i) {
    auto [a, b] = vecs[i];
    u[i] = index(a + b, b);  // row vector times [[1,0],[1,1]]
    l[i] = index(a, a + b);  // row vector times [[1,1],[0,1]]
  }
  return group_from_generators({Permutation(u), Permutation(l)}, 8, kDefaultGroupCap, "SL(2,3)");
}

/// Frobenius group of order 21: x -> x+1 and x -> 2x on Z_7.
inline FiniteGroup frobenius21() {
  std::vector<Permutation::point_type> dbl(7);
  for (std::size_t i = 0; i < 7; ++i) dbl[i] = static_cast<Permutation::point_type>(2 * i % 7);
  return group_from_generators({cycle_perm(7, 0, 7), Permutation(dbl)}, 7, kDefaultGroupCap, "F21");
}

/// Central product of two groups of order 8 with centres of order 2.
inline FiniteGroup central_product(const FiniteGroup& a, const FiniteGroup& b, const std::string& name) {
  FiniteGroup d = direct_product(a, b);
  Subgroup za = center(a), zb = center(b);
  Element ca = 0, cb = 0;
  za.for_each([&](Element x) { ca = x == a.identity() ? ca : x; });
  zb.for_each([&](Element x) { cb = x == b.identity() ? cb : x; });
  ElementSet s = d.empty_set();
  s.set(d.identity());
  s.set(static_cast<Element>(ca * b.order() + cb));
  Quotient q = quotient_group(Subgroup(d, std::move(s)));
  return q.group.renamed(name);
}

/// The element reached by a product of generator powers.
inline Element word(const FiniteGroup& g, std::initializer_list<std::pair<std::size_t, std::int64_t>> parts) {
  Element x = g.identity();
  for (auto [gen, e] : parts) x = g.mul(x, g.pow(g.generators().at(gen), e));
  return x;
}

inline LoadedGroup with_auts(FiniteGroup g, std::vector<std::pair<std::string, std::vector<Element>>> auts) {
  LoadedGroup lg{g, {}};
  for (auto& [name, images] : auts) lg.automorphisms.push_back(automorphism_from_generator_images(g, images, name));
  return lg;
}

struct Entry {
  std::string name;
  std::function<LoadedGroup()> build;
};

inline std::vector<Entry> entries() {
  std::vector<Entry> out;
  auto plain = [](std::function<FiniteGroup()> f) {
    return [f] { return LoadedGroup{f(), {}}; };
  };
  for (std::size_t n = 1; n <= 32; ++n) {
    if (n == 3) {
      out.push_back({"Z3", [] {
                       FiniteGroup g = cyclic(3);
                       return with_auts(g, {{"inv", {word(g, {{0, -1}})}}});
                     }});
    } else if (n == 7) {
      out.push_back({"Z7", [] {
                       FiniteGroup g = cyclic(7);
                       return with_auts(g, {{"sq", {word(g, {{0, 2}})}}});
                     }});
    } else {
      out.push_back({"Z" + std::to_string(n), plain([n] { return cyclic(n); })});
    }
  }
  for (std::size_t p : {2, 3, 5})
    for (std::size_t k : {2, 3}) {
      std::string name = "Z" + std::to_string(p) + "^" + std::to_string(k);
      if (p == 3 && k == 2) {
        out.push_back({name, [] {
                         FiniteGroup g = elementary_abelian(3, 2);
                         return with_auts(g, {{"swap", {word(g, {{1, 1}}), word(g, {{0, 1}})}},
                                              {"neg", {word(g, {{0, -1}}), word(g, {{1, -1}})}},
                                              {"neg1", {word(g, {{0, 1}}), word(g, {{1, -1}})}}});
                       }});
      } else if (p == 3 && k == 3) {
        out.push_back({name, [] {
                         FiniteGroup g = elementary_abelian(3, 3);
                         return with_auts(
                             g, {{"a", {word(g, {{0, -1}}), word(g, {{1, -1}}), word(g, {{2, 1}})}},
                                 {"b", {word(g, {{0, 1}}), word(g, {{1, -1}}), word(g, {{2, -1}})}}});
                       }});
      } else {
        out.push_back({name, plain([p, k] { return elementary_abelian(p, k); })});
      }
    }
  for (std::size_t n = 3; n <= 16; ++n)
    out.push_back({"D" + std::to_string(2 * n), plain([n] { return dihedral(n); })});
  out.push_back({"Q8", plain(quaternion)});
  out.push_back({"S3", [] {
                   FiniteGroup g = symmetric(3);
                   // conjugation by the transposition: inner, order 2, not coprime to 6
                   return with_auts(g, {{"conj", {word(g, {{0, -1}}), word(g, {{1, 1}})}}});
                 }});
  out.push_back({"S4", plain([] { return symmetric(4); })});
  out.push_back({"S5", plain([] { return symmetric(5); })});
  out.push_back({"A4", plain([] { return alternating(4); })});
  out.push_back({"A5", plain([] { return alternating(5); })});
  out.push_back({"Heis27", [] {
                   FiniteGroup g = heisenberg27();
                   return with_auts(g, {{"s", {word(g, {{0, -1}}), word(g, {{1, 1}})}},
                                        {"t", {word(g, {{0, 1}}), word(g, {{1, -1}})}}});
                 }});
  out.push_back({"ES32+", plain([] { return central_product(dihedral(4), dihedral(4), "ES32+"); })});
  out.push_back({"ES32-", plain([] { return central_product(dihedral(4), quaternion(), "ES32-"); })});
  out.push_back({"SL(2,3)", plain(sl23)});
  out.push_back({"F21", plain(frobenius21)});
  out.push_back({"S3xZ2", plain([] { return direct_product(symmetric(3), cyclic(2), kDefaultGroupCap, "S3xZ2"); })});
  return out;
}

inline std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& e : entries()) out.push_back(e.name);
  return out;
}

}  // namespace catalog

/// Looks up a builtin group by name, with or without the "builtin:" prefix.
inline LoadedGroup builtin_group(std::string name) {
  if (name.rfind("builtin:", 0) == 0) name = name.substr(8);
  for (const auto& e : catalog::entries())
    if (e.name == name) {
      LoadedGroup lg = e.build();
      lg.group = lg.group.renamed(e.name);
      for (auto& a : lg.automorphisms) a = Automorphism(lg.group, a.map(), a.name());
      return lg;
    }
  throw Error("unknown builtin group '" + name + "'");
}

/// Every builtin group in catalog order.
inline std::vector<LoadedGroup> builtin_catalog() {
  std::vector<LoadedGroup> out;
  for (const auto& name : catalog::names()) out.push_back(builtin_group(name));
  return out;
}

}  // namespace commprobe
