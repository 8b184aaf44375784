#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "commprobe/catalog.hpp"

namespace commprobe {

// Line-based group files.
//
//   # comment
//   name S3               (optional)
//   perm 3                (1-based cycle notation follows)
//   gen (1 2 3)
//   gen (1 2)
//   aut swap              (one "gK -> word" line per generator)
//     g1 -> g1^-1
//     g2 -> g2
//
//   table 2               (0-based rows follow, then optional "gens i j")
//   0 1
//   1 0

namespace detail {

struct Line {
  std::size_t number;
  std::string text;   // comment stripped
  std::size_t indent;  // column of the first non-space character (0-based)
};

inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string s(text.substr(pos, end - pos));
    ++number;
    pos = end + 1;
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t indent = 0;
    while (indent < s.size() && std::isspace(static_cast<unsigned char>(s[indent]))) ++indent;
    if (indent == s.size()) continue;
    out.push_back({number, std::move(s), indent});
    if (end == text.size()) break;
  }
  return out;
}

/// First whitespace-separated word and the rest of the line.
inline std::pair<std::string, std::string> keyword(const Line& l) {
  std::size_t a = l.indent, b = a;
  while (b < l.text.size() && !std::isspace(static_cast<unsigned char>(l.text[b]))) ++b;
  std::size_t c = b;
  while (c < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[c]))) ++c;
  return {l.text.substr(a, b - a), l.text.substr(c)};
}

inline std::size_t parse_count(const std::string& s, const Line& l, std::size_t column, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(std::string("expected ") + what + ", got '" + s + "'", l.number, column + 1);
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + " out of range", l.number, column + 1);
  }
}

/// Words over g1, g2, ...: juxtaposed factors "gK" or "gK^e"; "1" is the identity.
inline Element parse_generator_word(const FiniteGroup& g, const std::string& s, std::size_t line,
                                    std::size_t column0) {
  Element x = g.identity();
  std::size_t i = 0;
  auto col = [&] { return column0 + i + 1; };
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip();
  if (i < s.size() && s[i] == '1') {
    ++i;
    skip();
    if (i != s.size()) throw ParseError("unexpected text after identity word", line, col());
    return x;
  }
  if (i == s.size()) throw ParseError("empty word", line, col());
  while (i < s.size()) {
    if (s[i] != 'g') throw ParseError(std::string("expected generator 'gK', got '") + s[i] + "'", line, col());
    std::size_t start = ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw ParseError("generator index missing after 'g'", line, col());
    std::size_t k = std::stoull(s.substr(start, i - start));
    if (k == 0 || k > g.generators().size())
      throw ParseError("generator g" + std::to_string(k) + " is not declared (group has " +
                           std::to_string(g.generators().size()) + ")",
                       line, column0 + start);
    std::int64_t e = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      bool neg = i < s.size() && s[i] == '-';
      if (neg) ++i;
      std::size_t es = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (es == i) throw ParseError("exponent missing after '^'", line, col());
      e = std::stoll(s.substr(es, i - es));
      if (neg) e = -e;
    }
    x = g.mul(x, g.pow(g.generators()[k - 1], e));
    skip();
  }
  return x;
}

}  // namespace detail

/// Parses the group file format; `default_name` is used when no name line is given.
inline LoadedGroup parse_group_file(std::string_view text, const std::string& default_name = "file") {
  auto lines = detail::split_lines(text);
  std::size_t i = 0;
  std::string name = default_name;
  if (i < lines.size() && detail::keyword(lines[i]).first == "name") {
    name = detail::keyword(lines[i]).second;
    if (name.empty()) throw ParseError("name line without a name", lines[i].number, lines[i].text.size() + 1);
    ++i;
  }
  if (i >= lines.size()) throw ParseError("missing 'perm' or 'table' header", lines.empty() ? 1 : lines.back().number, 1);

  auto [kind, arg] = detail::keyword(lines[i]);
  const detail::Line& header = lines[i];
  std::size_t arg_col = header.text.size() - arg.size();
  std::optional<FiniteGroup> g;
  ++i;
  if (kind == "perm") {
    std::size_t degree = detail::parse_count(arg, header, arg_col, "degree");
    if (degree == 0) throw ParseError("degree must be positive", header.number, arg_col + 1);
    std::vector<Permutation> gens;
    while (i < lines.size() && detail::keyword(lines[i]).first == "gen") {
      auto [kw, cyc] = detail::keyword(lines[i]);
      std::size_t col = lines[i].text.size() - cyc.size();
      try {
        gens.push_back(Permutation::from_cycles(cyc, degree));
      } catch (const ParseError& e) {
        throw ParseError(std::string("bad permutation: ") + e.what(), lines[i].number, col + 1);
      } catch (const Error& e) {
        throw ParseError(std::string("bad permutation: ") + e.what(), lines[i].number, col + 1);
      }
      ++i;
    }
    try {
      g = group_from_generators(gens, degree, kDefaultGroupCap, name);
    } catch (const GroupTooLarge& e) {
      throw ParseError(e.what(), header.number, 1);
    }
  } else if (kind == "table") {
    std::size_t n = detail::parse_count(arg, header, arg_col, "order");
    if (n == 0) throw ParseError("order must be positive", header.number, arg_col + 1);
    std::vector<std::vector<Element>> rows;
    for (std::size_t r = 0; r < n; ++r, ++i) {
      if (i >= lines.size()) throw ParseError("table needs " + std::to_string(n) + " rows", header.number, 1);
      const detail::Line& l = lines[i];
      std::vector<Element> row;
      std::size_t p = 0;
      while (p < l.text.size()) {
        while (p < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[p]))) ++p;
        std::size_t q = p;
        while (q < l.text.size() && !std::isspace(static_cast<unsigned char>(l.text[q]))) ++q;
        if (q > p) row.push_back(static_cast<Element>(detail::parse_count(l.text.substr(p, q - p), l, p, "entry")));
        p = q;
      }
      if (row.size() != n)
        throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n),
                         l.number, 1);
      rows.push_back(std::move(row));
    }
    std::vector<Element> gens;
    if (i < lines.size() && detail::keyword(lines[i]).first == "gens") {
      std::istringstream in(detail::keyword(lines[i]).second);
      std::string tok;
      while (in >> tok) gens.push_back(static_cast<Element>(detail::parse_count(tok, lines[i], 0, "generator index")));
      ++i;
    }
    try {
      g = group_from_cayley_table(rows, gens, name);
    } catch (const ValidationError& e) {
      throw ParseError(std::string("invalid table: ") + e.what(), header.number, 1);
    }
  } else {
    throw ParseError("expected 'perm' or 'table', got '" + kind + "'", header.number, header.indent + 1);
  }

  LoadedGroup out{*g, {}};
  while (i < lines.size()) {
    auto [kw, aname] = detail::keyword(lines[i]);
    if (kw != "aut") throw ParseError("unexpected '" + kw + "'", lines[i].number, lines[i].indent + 1);
    if (aname.empty()) throw ParseError("automorphism needs a name", lines[i].number, lines[i].text.size() + 1);
    const detail::Line& aut_line = lines[i];
    ++i;
    std::vector<std::optional<Element>> images(g->generators().size());
    while (i < lines.size() && detail::keyword(lines[i]).first != "aut") {
      const detail::Line& l = lines[i];
      auto arrow = l.text.find("->");
      if (arrow == std::string::npos) throw ParseError("expected 'gK -> word'", l.number, l.indent + 1);
      std::string lhs = l.text.substr(l.indent, arrow - l.indent);
      while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) lhs.pop_back();
      if (lhs.size() < 2 || lhs[0] != 'g' || lhs.find_first_not_of("0123456789", 1) != std::string::npos)
        throw ParseError("expected a generator name before '->'", l.number, l.indent + 1);
      std::size_t k = std::stoull(lhs.substr(1));
      if (k == 0 || k > images.size())
        throw ParseError("generator " + lhs + " is not declared", l.number, l.indent + 1);
      if (images[k - 1]) throw ParseError("image of " + lhs + " given twice", l.number, l.indent + 1);
      images[k - 1] = detail::parse_generator_word(*g, l.text.substr(arrow + 2), l.number, arrow + 2);
      ++i;
    }
    std::vector<Element> imgs;
    for (std::size_t k = 0; k < images.size(); ++k) {
      if (!images[k])
        throw ParseError("automorphism " + aname + " has no image for g" + std::to_string(k + 1), aut_line.number, 1);
      imgs.push_back(*images[k]);
    }
    try {
      out.automorphisms.push_back(automorphism_from_generator_images(*g, imgs, aname));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), aut_line.number, 1);
    }
  }
  return out;
}

/// Prints a group in the file format; parse(print(G)) rebuilds identical tables.
inline std::string print_group_file(const LoadedGroup& lg) {
  const FiniteGroup& g = lg.group;
  std::ostringstream out;
  if (!g.name().empty()) out << "name " << g.name() << "\n";
  // The perm form renumbers elements in BFS order, so groups numbered some
  // other way (direct products) are written as tables.
  bool perm_form = g.has_permutations();
  if (perm_form) {
    std::vector<Permutation> gens;
    for (Element s : g.generators()) gens.push_back(g.permutation(s));
    FiniteGroup rebuilt = group_from_generators(gens, g.degree(), g.order());
    for (Element x = 0; x < g.order() && perm_form; ++x) perm_form = rebuilt.permutation(x) == g.permutation(x);
  }
  if (perm_form) {
    out << "perm " << g.degree() << "\n";
    for (Element s : g.generators()) out << "gen " << g.permutation(s).to_cycles() << "\n";
  } else {
    out << "table " << g.order() << "\n";
    for (Element a = 0; a < g.order(); ++a) {
      for (Element b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
      out << "\n";
    }
    out << "gens";
    for (Element s : g.generators()) out << " " << s;
    out << "\n";
  }
  for (const auto& a : lg.automorphisms) {
    out << "aut " << a.name() << "\n";
    for (std::size_t k = 0; k < g.generators().size(); ++k) {
      out << "  g" << k + 1 << " -> ";
      auto w = g.word_for(a(g.generators()[k]));
      if (w.empty()) out << "1";
      for (std::size_t j = 0; j < w.size(); ++j) out << (j ? " " : "") << "g" << w[j] + 1;
      out << "\n";
    }
  }
  return out.str();
}

inline LoadedGroup load_group_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_group_file(ss.str(), path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

/// "builtin:NAME" or a path to a group file.
inline LoadedGroup load_group(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) return builtin_group(spec);
  return load_group_file(spec);
}

}  // namespace commprobe
