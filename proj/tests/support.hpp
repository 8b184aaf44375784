#pragma once

#include <ostream>
#include <random>
#include <vector>

#include "commprobe/commprobe.hpp"
#include "oracles.hpp"

namespace commprobe {

// readable gtest failure messages
inline void PrintTo(const Subgroup& h, std::ostream* os) {
  *os << h.parent().name() << "{";
  bool first = true;
  h.for_each([&](Element x) {
    *os << (first ? "" : ",") << x;
    first = false;
  });
  *os << "}";
}

inline void PrintTo(const Automorphism& a, std::ostream* os) { *os << "aut " << a.name(); }

}  // namespace commprobe

namespace support {

using namespace commprobe;

inline oracle::Set to_oracle(const ElementSet& s) {
  oracle::Set out(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s.test(i);
  return out;
}

inline oracle::Set to_oracle(const Subgroup& h) { return to_oracle(h.members()); }

inline Subgroup from_oracle(const FiniteGroup& g, const oracle::Set& s) {
  ElementSet e = g.empty_set();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i]) e.set(i);
  return Subgroup(g, std::move(e));
}

inline Element perm(const FiniteGroup& g, const char* cycles) {
  auto x = g.find(Permutation::from_cycles(cycles, g.degree()));
  if (!x) throw Error(std::string("permutation not in group: ") + cycles);
  return *x;
}

inline Subgroup gen(const FiniteGroup& g, std::initializer_list<const char*> cycles) {
  std::vector<Element> xs;
  for (const char* c : cycles) xs.push_back(perm(g, c));
  return closure(g, xs);
}

/// Closures of `count` random one- or two-element seeds, plus 1 and G.
inline std::vector<Subgroup> sample_subgroups(const FiniteGroup& g, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(g.order() - 1));
  std::vector<Subgroup> out{Subgroup::trivial(g), Subgroup::whole(g)};
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Element> seeds{pick(rng)};
    if (i % 2) seeds.push_back(pick(rng));
    out.push_back(closure(g, seeds));
  }
  return out;
}

inline FiniteGroup G(const char* name) { return builtin_group(name).group; }

}  // namespace support
