#pragma once

#include <optional>
#include <string>
#include <vector>

#include "commprobe/ratio.hpp"
#include "commprobe/structure.hpp"
#include "commprobe/subgroup.hpp"

namespace commprobe {

/// An exact sub-claim evaluated on a concrete group. A failed check is a
/// detected bug or a counterexample, never an expected outcome.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Quantity {
  std::string name;
  std::string value;
  std::optional<bool> holds;
};

struct DataPoint {
  std::string name;
  std::string value;
};

struct Witness {
  std::string label;  // "R", "L", ...
  Subgroup subgroup;
  std::optional<std::size_t> nilpotency_class;
  /// Order of the term the theorem bounds ([R,R], gamma_{i+1}(R), ...).
  std::string derived_label;
  std::size_t derived_order = 1;
  bool revalidated = false;
  std::vector<std::string> failures;

  std::size_t index() const { return subgroup.index(); }
};

struct TheoremReport {
  std::string theorem_id;
  std::string group;
  std::size_t group_order = 0;
  /// Extra parameters (prime, word, i, automorphism names) as "k=v;k=v".
  std::string parameters;
  std::optional<Ratio> epsilon;
  std::vector<Quantity> hypothesis;
  bool hypothesis_holds = true;
  /// The probability the hypothesis compares against epsilon, when there is one.
  std::optional<Ratio> key_probability;
  std::optional<Witness> witness;
  std::vector<DataPoint> data_points;
  std::vector<Check> checks;

  void data(std::string name, std::string value) {
    data_points.push_back({std::move(name), std::move(value)});
  }
  void data(std::string name, std::size_t value) { data(std::move(name), std::to_string(value)); }
  void check(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
  bool all_checks_pass() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !witness || witness->revalidated;
  }
};

inline std::string class_string(const std::optional<std::size_t>& c) {
  return c ? std::to_string(*c) : std::string("not-nilpotent");
}

/// Requirements a witness must meet, re-checked from raw definitions.
struct WitnessSpec {
  std::string label = "R";
  bool require_normal = true;
  std::optional<std::size_t> max_class;  // nullopt: only nilpotency required
  bool require_nilpotent = true;
  std::optional<std::uint64_t> p_group;  // witness must be a p-group
  std::optional<Subgroup> contained_in;
  /// Lower-central term whose order is reported: 2 gives [R,R].
  std::size_t derived_term = 2;
};

namespace detail {

/// Normality by conjugating every member by every group element.
inline bool raw_is_normal(const Subgroup& r) {
  const FiniteGroup& g = r.parent();
  bool ok = true;
  for (Element x = 0; x < g.order() && ok; ++x)
    r.for_each([&](Element y) {
      if (ok && !r.contains(g.conj(y, x))) ok = false;
    });
  return ok;
}

/// Lower central series by explicit commutator generation, independent of the
/// cached series code path: gamma_{i+1} = < [a, b] : a in gamma_i, b in R >.
inline std::vector<Subgroup> raw_lower_series(const Subgroup& r) {
  const FiniteGroup& g = r.parent();
  std::vector<Subgroup> terms{r};
  for (;;) {
    ElementSet seed = g.empty_set();
    terms.back().for_each([&](Element a) { r.for_each([&](Element b) { seed.set(g.commutator(a, b)); }); });
    Subgroup next = closure(g, seed);
    if (next == terms.back()) break;
    terms.push_back(std::move(next));
  }
  return terms;
}

}  // namespace detail

/// Re-validates a witness against raw definitions and fills class/derived data.
inline Witness make_witness(const Subgroup& r, const WitnessSpec& spec) {
  Witness w{spec.label, r, std::nullopt, {}, 1, false, {}};
  if (!r.verify_closed()) w.failures.push_back("not closed under multiplication");
  if (spec.require_normal && !detail::raw_is_normal(r)) w.failures.push_back("not normal");
  auto terms = detail::raw_lower_series(r);
  if (terms.back().is_trivial()) w.nilpotency_class = terms.size() - 1;
  if (spec.require_nilpotent && !w.nilpotency_class) w.failures.push_back("not nilpotent");
  if (spec.max_class && (!w.nilpotency_class || *w.nilpotency_class > *spec.max_class))
    w.failures.push_back("class exceeds " + std::to_string(*spec.max_class));
  if (spec.p_group && !is_power_of(r.order(), *spec.p_group))
    w.failures.push_back("not a " + std::to_string(*spec.p_group) + "-group");
  if (spec.contained_in && !r.members().is_subset_of(spec.contained_in->members()))
    w.failures.push_back("not contained in the required subgroup");
  std::size_t t = spec.derived_term;
  w.derived_label = t == 2 ? "[" + spec.label + "," + spec.label + "]"
                           : "gamma_" + std::to_string(t) + "(" + spec.label + ")";
  w.derived_order = t - 1 < terms.size() ? terms[t - 1].order() : 1;
  w.revalidated = w.failures.empty();
  return w;
}

/// Among `candidates`, the nilpotent subgroup of class <= max_class with the
/// least index, ties broken by the smaller order of gamma_{derived_term} and
/// then by the lexicographically smaller sorted element list.
inline std::optional<Subgroup> best_class_bounded(const std::vector<Subgroup>& candidates,
                                                  std::optional<std::size_t> max_class,
                                                  std::size_t derived_term = 2) {
  std::optional<Subgroup> best;
  std::size_t best_derived = 0;
  std::vector<Element> best_elems;
  for (const auto& r : candidates) {
    auto series = lower_central_series(r);
    if (!series.terms.back().is_trivial()) continue;
    std::size_t cls = series.terms.size() - 1;
    if (max_class && cls > *max_class) continue;
    std::size_t derived = derived_term - 1 < series.terms.size() ? series.terms[derived_term - 1].order() : 1;
    auto elems = r.elements();
    bool better = !best || r.order() > best->order() ||
                  (r.order() == best->order() &&
                   (derived < best_derived || (derived == best_derived && elems < best_elems)));
    if (better) {
      best = r;
      best_derived = derived;
      best_elems = std::move(elems);
    }
  }
  return best;
}

}  // namespace commprobe
