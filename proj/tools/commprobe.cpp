// commprobe: command-line front end for the commuting-probability library.
//
// Exit status: 0 when every check holds, 1 when a check fails, 2 on usage,
// parse or hypothesis errors.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commprobe/commprobe.hpp"

namespace cp = commprobe;

namespace {

struct UsageError : cp::Error {
  using cp::Error::Error;
};

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  for (auto& x : out) {
    auto a = x.find_first_not_of(" \t");
    auto b = x.find_last_not_of(" \t");
    x = a == std::string::npos ? "" : x.substr(a, b - a + 1);
  }
  out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
  return out;
}

/// Generators as cycle notation "(1 2),(1 2 3)" for permutation groups or
/// element indices "3,5" for table groups.
cp::Subgroup parse_subgroup(const cp::FiniteGroup& g, const std::string& text) {
  std::vector<cp::Element> gens;
  for (const auto& item : split_top_level(text, ',')) {
    if (item.front() == '(') {
      if (!g.has_permutations()) throw UsageError("group " + g.name() + " has no permutation representation");
      auto p = cp::Permutation::from_cycles(item, g.degree());
      auto x = g.find(p);
      if (!x) throw UsageError("permutation " + item + " is not in " + g.name());
      gens.push_back(*x);
    } else {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(item, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != item.size() || v >= g.order()) throw UsageError("bad subgroup generator '" + item + "'");
      gens.push_back(static_cast<cp::Element>(v));
    }
  }
  return cp::closure(g, gens);
}

cp::Ratio parse_eps(const std::string& s) {
  try {
    return cp::Ratio::parse(s);
  } catch (const cp::Error& e) {
    throw UsageError("bad epsilon '" + s + "': " + e.what());
  }
}

std::string orders(const std::vector<cp::Subgroup>& terms) {
  std::string s;
  for (const auto& t : terms) s += (s.empty() ? "" : " > ") + std::to_string(t.order());
  return s;
}

int cmd_info(const cp::LoadedGroup& lg) {
  const auto& g = lg.group;
  std::cout << "group: " << g.name() << "\n";
  std::cout << "order: " << g.order() << "\n";
  std::cout << "classes: " << g.class_count() << "\n";
  std::cout << "center: " << cp::center(g).order() << "\n";
  std::cout << "Pr(G): " << cp::commuting_probability(g).str() << "\n";
  std::cout << "lower central series: " << orders(cp::lower_central_series(g).terms) << "\n";
  auto upper = cp::upper_central_series(g).terms;
  std::string up;
  for (const auto& t : upper) up += (up.empty() ? "" : " < ") + std::to_string(t.order());
  std::cout << "upper central series: " << up << "\n";
  std::cout << "nilpotency class: " << cp::class_string(cp::nilpotency_class(g)) << "\n";
  std::cout << "solvable: " << (cp::is_solvable(cp::Subgroup::whole(g)) ? "yes" : "no") << "\n";
  std::cout << "exponent: " << cp::exponent(g) << "\n";
  std::cout << "F(G): " << cp::fitting_subgroup(g).order() << "\n";
  std::cout << "F*(G): " << cp::generalized_fitting(g).order() << "\n";
  std::cout << "sylow:\n";
  for (auto p : cp::prime_divisors(g.order())) {
    auto sp = cp::sylow_subgroup(g, p);
    std::cout << "  p=" << p << " |P|=" << sp.order() << " |O_p|=" << cp::o_p(g, p).order()
              << " Pr(P,G)=" << cp::relative_commuting_probability(sp).str() << "\n";
  }
  for (const auto& a : lg.automorphisms)
    std::cout << "automorphism " << a.name() << ": order " << a.order() << ", fixed points "
              << cp::fixed_point_subgroup(a).order() << "\n";
  return 0;
}

std::vector<cp::Automorphism> pick_auts(const cp::LoadedGroup& lg, const std::string& names, const std::string& id) {
  if (names.empty()) throw UsageError(id + " needs --aut");
  std::vector<cp::Automorphism> out;
  for (const auto& n : split_top_level(names, ',')) {
    try {
      out.push_back(lg.automorphism(n));
    } catch (const cp::Error& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

struct VerifyArgs {
  std::string id, group;
  std::string epsilon, word, aut, subgroup, normal = "auto";
  std::uint64_t prime = 0;
  std::size_t i = 0;
  std::size_t samples = 50;
};

cp::TheoremReport run_verify(const cp::LoadedGroup& lg, const VerifyArgs& a) {
  const auto& g = lg.group;
  if (!cp::is_theorem_id(a.id)) throw UsageError("unknown theorem id '" + a.id + "'");
  std::optional<cp::Ratio> eps;
  if (!a.epsilon.empty()) eps = parse_eps(a.epsilon);
  if (cp::uses_epsilon(a.id) && !eps) throw UsageError(a.id + " needs --epsilon");
  std::optional<cp::Subgroup> k;
  if (!a.subgroup.empty()) k = parse_subgroup(g, a.subgroup);
  auto word = [&] {
    if (a.word.empty()) throw UsageError(a.id + " needs --word");
    try {
      return cp::Word::parse(a.word);
    } catch (const cp::ParseError& e) {
      throw UsageError(std::string("bad word: ") + e.what());
    }
  };
  const std::string& id = a.id;
  if (id == "neumann") return cp::verify_neumann(g, *eps);
  if (id == "fitting") return cp::verify_fitting(g, *eps);
  if (id == "gamma") return cp::verify_gamma(g, a.i ? a.i : 1, *eps, k);
  if (id == "virtual-nilpotency") return cp::verify_virtual_nilpotency(g, word(), *eps, k);
  if (id == "exp") return cp::verify_exp_theorem(g, word(), *eps);
  if (id == "sylow") {
    if (!a.prime) throw UsageError("sylow needs --prime");
    return cp::verify_sylow(g, a.prime, *eps);
  }
  if (id == "all-sylow") return cp::verify_all_sylow(g, *eps);
  if (id == "auto") {
    auto auts = pick_auts(lg, a.aut, id);
    if (auts.size() != 1) throw UsageError("auto takes exactly one automorphism");
    return cp::verify_auto_theorem(auts[0], *eps);
  }
  if (id == "auto2") return cp::verify_auto2_theorem(cp::AutomorphismGroup(g, pick_auts(lg, a.aut, id)), *eps);
  if (id == "quoti") {
    std::vector<cp::Subgroup> normals;
    if (a.normal == "auto") {
      normals = cp::all_normal_subgroups(g);
    } else {
      auto n = parse_subgroup(g, a.normal);
      if (!cp::is_normal(n)) throw UsageError("--normal subgroup is not normal in " + g.name());
      normals.push_back(n);
    }
    return cp::verify_quoti(k.value_or(cp::Subgroup::whole(g)), normals);
  }
  if (id == "product-length")
    return cp::verify_product_length(g, cp::random_symmetric_sets(g, a.samples, 0x5eed + g.order()));
  if (id == "cc") return cp::verify_cc(cp::AutomorphismGroup(g, pick_auts(lg, a.aut, id)));
  if (id == "eee") {
    auto auts = pick_auts(lg, a.aut, id);
    std::uint64_t p = a.prime;
    for (const auto& x : auts) p = std::max(p, x.order());
    return cp::verify_eee(g, auts, p);
  }
  if (id == "normal-lemma") return cp::verify_normal_lemma(k.value_or(cp::Subgroup::whole(g)));
  if (id == "cristi-data") return cp::verify_cristi_data(k.value_or(cp::Subgroup::whole(g)));
  if (id == "glas-data") return cp::verify_glas_data(g, a.i ? std::optional<std::size_t>(a.i) : std::nullopt);
  throw UsageError("unhandled theorem id '" + id + "'");
}

std::vector<cp::LoadedGroup> resolve_groups(const std::string& list) {
  std::vector<cp::LoadedGroup> out;
  for (const auto& item : split_top_level(list, ',')) {
    if (item == "builtin:all") {
      auto all = cp::builtin_catalog();
      out.insert(out.end(), all.begin(), all.end());
    } else if (std::filesystem::is_directory(item)) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(item))
        if (e.is_regular_file()) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) out.push_back(cp::load_group_file(f));
    } else {
      out.push_back(cp::load_group(item));
    }
  }
  if (out.empty()) throw UsageError("no groups given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact commuting-probability experiments on finite groups"};
  app.require_subcommand(1);

  std::string group;
  auto* info = app.add_subcommand("info", "Order, classes, series, Fitting subgroups and Sylow table");
  info->add_option("group", group, "builtin:NAME or group file")->required();

  std::string subgroup;
  auto* pr = app.add_subcommand("pr", "Exact Pr(G) or Pr(K,G)");
  pr->add_option("group", group, "builtin:NAME or group file")->required();
  pr->add_option("--subgroup", subgroup, "generators of K, e.g. \"(1 2),(1 2 3)\"");

  std::string epsilon;
  auto* dec = app.add_subcommand("decompose", "Run the X/B/Y/E/T/N decomposition and print it as JSON");
  dec->add_option("group", group, "builtin:NAME or group file")->required();
  dec->add_option("--epsilon", epsilon, "threshold p/q")->required();
  dec->add_option("--subgroup", subgroup, "generators of K (default: G)");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run one theorem verifier and print its report as JSON");
  ver->add_option("theorem", va.id, "theorem id")->required();
  ver->add_option("group", va.group, "builtin:NAME or group file")->required();
  ver->add_option("--epsilon", va.epsilon, "threshold p/q");
  ver->add_option("--prime", va.prime, "prime for sylow / eee");
  ver->add_option("--word", va.word, "word such as comm(x,y,y) or comm(pow(x,2),y1)");
  ver->add_option("--aut", va.aut, "automorphism name(s), comma separated");
  ver->add_option("--subgroup", va.subgroup, "generators of K");
  ver->add_option("--normal", va.normal, "auto, or generators of one normal subgroup");
  ver->add_option("--i", va.i, "series index for gamma / glas-data");
  ver->add_option("--samples", va.samples, "random sets for product-length");

  std::string groups = "builtin:all", theorems = "all", epsilons = "1/8,1/4,1/2,5/8,3/4", out_path;
  cp::SweepOptions sopt;
  auto* sw = app.add_subcommand("sweep", "Run verifiers over many groups and write CSV");
  sw->add_option("--groups", groups, "comma list of builtin:NAME, builtin:all, files or directories");
  sw->add_option("--theorems", theorems, "comma list of theorem ids or 'all'");
  sw->add_option("--epsilons", epsilons, "comma list of p/q thresholds");
  sw->add_option("--out", out_path, "CSV output path")->required();
  sw->add_option("--threads", sopt.threads, "worker threads (0: hardware concurrency)");
  sw->add_option("--word", sopt.word, "word for virtual-nilpotency and exp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*info) return cmd_info(cp::load_group(group));
    if (*pr) {
      auto lg = cp::load_group(group);
      cp::Ratio r = subgroup.empty() ? cp::commuting_probability(lg.group)
                                     : cp::relative_commuting_probability(parse_subgroup(lg.group, subgroup));
      std::cout << r.str() << "\n" << cp::approx(r) << "\n";
      return 0;
    }
    if (*dec) {
      auto lg = cp::load_group(group);
      auto k = subgroup.empty() ? cp::Subgroup::whole(lg.group) : parse_subgroup(lg.group, subgroup);
      auto rep = cp::neumann_decompose(k, parse_eps(epsilon));
      std::cout << cp::to_json(rep).dump(2) << "\n";
      return rep.all_checks_pass() ? 0 : 1;
    }
    if (*ver) {
      auto lg = cp::load_group(va.group);
      auto rep = run_verify(lg, va);
      std::cout << cp::to_json(rep).dump(2) << "\n";
      return rep.all_checks_pass() ? 0 : 1;
    }
    if (*sw) {
      std::vector<std::string> ids =
          theorems == "all" ? cp::theorem_ids() : split_top_level(theorems, ',');
      for (const auto& id : ids)
        if (!cp::is_theorem_id(id)) throw UsageError("unknown theorem id '" + id + "'");
      std::vector<cp::Ratio> eps;
      for (const auto& e : split_top_level(epsilons, ',')) eps.push_back(parse_eps(e));
      auto gs = resolve_groups(groups);
      std::ostringstream csv;
      auto summary = cp::run_sweep(gs, ids, eps, csv, sopt);
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw UsageError("cannot write " + out_path);
      out << csv.str();
      std::cerr << "rows: " << summary.rows << ", refused: " << summary.refused << ", failed: " << summary.failed
                << "\n";
      return summary.failed ? 1 : 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const cp::HypothesisViolation& e) {
    std::cerr << "hypothesis not satisfied: " << e.what() << "\n";
    return 2;
  } catch (const cp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
