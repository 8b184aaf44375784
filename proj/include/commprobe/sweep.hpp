#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "commprobe/catalog.hpp"
#include "commprobe/verifiers.hpp"

namespace commprobe {

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"neumann", "fitting",     "gamma",      "virtual-nilpotency",
                                            "exp",     "sylow",       "all-sylow",  "auto",
                                            "auto2",   "quoti",       "product-length", "cc",
                                            "eee",     "normal-lemma", "cristi-data", "glas-data"};
  return ids;
}

inline bool is_theorem_id(const std::string& id) {
  const auto& ids = theorem_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

/// Theorems whose hypothesis involves epsilon.
inline bool uses_epsilon(const std::string& id) {
  return id == "neumann" || id == "fitting" || id == "gamma" || id == "virtual-nilpotency" || id == "exp" ||
         id == "sylow" || id == "all-sylow" || id == "auto" || id == "auto2";
}

struct SweepOptions {
  std::string word = "comm(x,y,y)";
  std::size_t gamma_i = 2;
  std::size_t product_length_sets = 20;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// One verifier outcome; `refusal` is set when the inputs violate a hypothesis
/// the verifier requires (the row then carries no report).
struct SweepOutcome {
  std::optional<TheoremReport> report;
  std::string label;  // extra key distinguishing several runs of one theorem
  std::string refusal;
};

namespace detail {

inline std::vector<std::pair<std::size_t, std::size_t>> automorphism_pairs(const LoadedGroup& lg) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < lg.automorphisms.size(); ++a)
    for (std::size_t b = a + 1; b < lg.automorphisms.size(); ++b) out.emplace_back(a, b);
  return out;
}

template <class F>
SweepOutcome guarded(std::string label, F&& f) {
  SweepOutcome o;
  o.label = std::move(label);
  try {
    o.report = f();
  } catch (const HypothesisViolation& e) {
    o.refusal = e.what();
  }
  return o;
}

}  // namespace detail

/// Runs one theorem on one group as the sweep does, possibly several times
/// (per prime, per automorphism, per subgroup choice).
inline std::vector<SweepOutcome> run_theorem(const LoadedGroup& lg, const std::string& id,
                                             const std::optional<Ratio>& eps, const SweepOptions& opt) {
  const FiniteGroup& g = lg.group;
  std::vector<SweepOutcome> out;
  Ratio e = eps.value_or(Ratio(1, 1));
  if (id == "neumann") {
    out.push_back(detail::guarded("", [&] { return verify_neumann(g, e); }));
  } else if (id == "fitting") {
    out.push_back(detail::guarded("", [&] { return verify_fitting(g, e); }));
  } else if (id == "gamma") {
    out.push_back(detail::guarded("i=" + std::to_string(opt.gamma_i), [&] { return verify_gamma(g, opt.gamma_i, e); }));
  } else if (id == "virtual-nilpotency") {
    Word w = Word::parse(opt.word);
    out.push_back(detail::guarded("", [&] { return verify_virtual_nilpotency(g, w, e); }));
  } else if (id == "exp") {
    Word w = Word::parse(opt.word);
    out.push_back(detail::guarded("", [&] { return verify_exp_theorem(g, w, e); }));
  } else if (id == "sylow") {
    for (auto p : prime_divisors(g.order()))
      out.push_back(detail::guarded("p=" + std::to_string(p), [&] { return verify_sylow(g, p, e); }));
  } else if (id == "all-sylow") {
    out.push_back(detail::guarded("", [&] { return verify_all_sylow(g, e); }));
  } else if (id == "auto") {
    for (const auto& a : lg.automorphisms)
      out.push_back(detail::guarded("aut=" + a.name(), [&] { return verify_auto_theorem(a, e); }));
  } else if (id == "auto2") {
    for (auto [a, b] : detail::automorphism_pairs(lg)) {
      const auto& x = lg.automorphisms[a];
      const auto& y = lg.automorphisms[b];
      out.push_back(detail::guarded("aut=" + x.name() + "," + y.name(),
                                    [&] { return verify_auto2_theorem(AutomorphismGroup(g, {x, y}), e); }));
    }
  } else if (id == "quoti") {
    auto normals = all_normal_subgroups(g);
    out.push_back(detail::guarded("K=G", [&] { return verify_quoti(Subgroup::whole(g), normals); }));
    out.push_back(detail::guarded("K=gamma2", [&] { return verify_quoti(gamma(g, 2), normals); }));
  } else if (id == "product-length") {
    out.push_back(detail::guarded("", [&] {
      return verify_product_length(g, random_symmetric_sets(g, opt.product_length_sets, 0x5eed + g.order()));
    }));
  } else if (id == "cc") {
    for (const auto& a : lg.automorphisms)
      out.push_back(detail::guarded("aut=" + a.name(), [&] { return verify_cc(AutomorphismGroup(g, {a})); }));
  } else if (id == "eee") {
    for (auto [a, b] : detail::automorphism_pairs(lg)) {
      const auto& x = lg.automorphisms[a];
      const auto& y = lg.automorphisms[b];
      out.push_back(detail::guarded("aut=" + x.name() + "," + y.name(), [&] {
        std::uint64_t p = std::max(x.order(), y.order());
        return verify_eee(g, {x, y}, p);
      }));
    }
  } else if (id == "normal-lemma") {
    out.push_back(detail::guarded("K=G", [&] { return verify_normal_lemma(Subgroup::whole(g)); }));
  } else if (id == "cristi-data") {
    out.push_back(detail::guarded("K=G", [&] { return verify_cristi_data(Subgroup::whole(g)); }));
  } else if (id == "glas-data") {
    out.push_back(detail::guarded("", [&] { return verify_glas_data(g); }));
  } else {
    throw Error("unknown theorem id '" + id + "'");
  }
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string approx(const Ratio& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", r.to_double());
  return buf;
}

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "group",          "order",           "theorem_id",       "run",
      "parameters",     "eps",             "eps_approx",       "status",
      "hypothesis_holds", "key_pr",        "key_pr_approx",    "witness_label",
      "witness_index",  "witness_class",   "witness_derived_order", "witness_revalidated",
      "checks_total",   "checks_failed",   "data"};
  return cols;
}

inline std::vector<std::string> csv_row(const std::string& group, std::size_t order, const std::string& id,
                                        const std::optional<Ratio>& eps, const SweepOutcome& o) {
  std::vector<std::string> f{group, std::to_string(order), id, o.label};
  const TheoremReport* r = o.report ? &*o.report : nullptr;
  f.push_back(r ? r->parameters : "");
  f.push_back(eps ? eps->str() : "");
  f.push_back(eps ? approx(*eps) : "");
  if (!r) {
    f.push_back("refused: " + o.refusal);
    f.resize(csv_columns().size());
    return f;
  }
  f.push_back(r->all_checks_pass() ? "ok" : "check-failed");
  f.push_back(r->hypothesis_holds ? "true" : "false");
  f.push_back(r->key_probability ? r->key_probability->str() : "");
  f.push_back(r->key_probability ? approx(*r->key_probability) : "");
  if (r->witness) {
    f.push_back(r->witness->label);
    f.push_back(std::to_string(r->witness->index()));
    f.push_back(class_string(r->witness->nilpotency_class));
    f.push_back(std::to_string(r->witness->derived_order));
    f.push_back(r->witness->revalidated ? "true" : "false");
  } else {
    f.insert(f.end(), 5, "");
  }
  std::size_t failed = 0;
  for (const auto& c : r->checks) failed += !c.passed;
  f.push_back(std::to_string(r->checks.size()));
  f.push_back(std::to_string(failed));
  std::string data;
  for (const auto& d : r->data_points) data += (data.empty() ? "" : ";") + d.name + "=" + d.value;
  f.push_back(data);
  return f;
}

struct SweepSummary {
  std::size_t rows = 0;
  std::size_t refused = 0;
  std::size_t failed = 0;  // rows with a failed check or witness re-validation
};

/// Runs every (group, theorem, epsilon) job on a worker pool and writes CSV
/// rows in job order, independent of scheduling.
inline SweepSummary run_sweep(const std::vector<LoadedGroup>& groups, const std::vector<std::string>& theorems,
                              const std::vector<Ratio>& epsilons, std::ostream& csv, const SweepOptions& opt = {}) {
  for (const auto& t : theorems)
    if (!is_theorem_id(t)) throw Error("unknown theorem id '" + t + "'");
  struct Job {
    std::size_t group;
    std::string theorem;
    std::optional<Ratio> eps;
  };
  std::vector<Job> jobs;
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (const auto& t : theorems) {
      if (uses_epsilon(t)) {
        for (const auto& e : epsilons) jobs.push_back({gi, t, e});
      } else {
        jobs.push_back({gi, t, std::nullopt});
      }
    }

  std::vector<std::vector<std::vector<std::string>>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      const Job& job = jobs[j];
      const LoadedGroup& lg = groups[job.group];
      try {
        for (const auto& o : run_theorem(lg, job.theorem, job.eps, opt))
          results[j].push_back(csv_row(lg.group.name(), lg.group.order(), job.theorem, job.eps, o));
      } catch (const std::exception& e) {
        errors[j] = lg.group.name() + " " + job.theorem + ": " + e.what();
      }
    }
  };
  unsigned n = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw Error("sweep job failed: " + e);

  SweepSummary s;
  auto write = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) csv << (i ? "," : "") << csv_field(fields[i]);
    csv << "\n";
  };
  write(csv_columns());
  const std::size_t status_col = 7;
  for (const auto& rows : results)
    for (const auto& row : rows) {
      write(row);
      ++s.rows;
      if (row[status_col].rfind("refused", 0) == 0) ++s.refused;
      if (row[status_col] == "check-failed") ++s.failed;
    }
  return s;
}

}  // namespace commprobe
