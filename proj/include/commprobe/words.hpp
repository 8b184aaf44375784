#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commprobe/errors.hpp"
#include "commprobe/group.hpp"
#include "commprobe/subgroup.hpp"

namespace commprobe {

inline constexpr std::uint64_t kDefaultTupleCap = 100'000'000;

namespace detail {

/// x < y < y1 < y2 < y10 < z: alphabetic prefix first, then numeric suffix
/// (absent suffix sorts first).
inline bool variable_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    std::string prefix = s.substr(0, i);
    long long suffix = i == s.size() ? -1 : std::stoll(s.substr(i));
    return std::pair{prefix, suffix};
  };
  return split(a) < split(b);
}

}  // namespace detail

/// Group word as an expression tree over named variables.
///
/// Commutators are left-normed: comm(a, b, c) = [[a, b], c] with
/// [a, b] = a^-1 b^-1 a b.
class Word {
 public:
  enum class Kind { variable, inverse, product, power, commutator };

  static Word var(std::string name) {
    if (name.empty()) throw Error("empty variable name");
    auto n = std::make_shared<Node>();
    n->kind = Kind::variable;
    n->name = std::move(name);
    return Word(std::move(n));
  }
  static Word inverse(Word w) { return unary(Kind::inverse, std::move(w), 0); }
  static Word power(Word w, std::int64_t e) { return unary(Kind::power, std::move(w), e); }
  static Word product(std::vector<Word> ws) {
    if (ws.size() < 2) throw Error("product needs at least two factors");
    return nary(Kind::product, std::move(ws));
  }
  static Word commutator(std::vector<Word> ws) {
    if (ws.size() < 2) throw Error("commutator needs at least two entries");
    return nary(Kind::commutator, std::move(ws));
  }

  Kind kind() const noexcept { return node_->kind; }
  const std::string& name() const noexcept { return node_->name; }
  std::int64_t exponent() const noexcept { return node_->exponent; }
  std::vector<Word> children() const {
    std::vector<Word> out;
    for (const auto& c : node_->children) out.push_back(Word(c));
    return out;
  }

  /// Distinct variable names in canonical order; assignments follow this order.
  std::vector<std::string> variables() const {
    std::vector<std::string> names;
    collect(*node_, names);
    std::sort(names.begin(), names.end(), detail::variable_less);
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
  }
  std::size_t arity() const { return variables().size(); }

  std::string str() const { return print(*node_); }

  friend bool operator==(const Word& a, const Word& b) { return equal(*a.node_, *b.node_); }

  /// Parses the prefix syntax: variables ([a-z][a-z0-9]*), inv(w), pow(w, n),
  /// mul(w1, w2, ...), comm(w1, w2, ...).
  static Word parse(std::string_view text) {
    Parser p{text, 0};
    Word w = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("unexpected trailing input");
    return w;
  }

  /// Value of the word with variables()[i] bound to assignment[i].
  Element evaluate(const FiniteGroup& g, std::span<const Element> assignment) const {
    auto vars = variables();
    if (assignment.size() != vars.size())
      throw Error("assignment has " + std::to_string(assignment.size()) + " entries, word arity is " +
                  std::to_string(vars.size()));
    return eval(*node_, g, vars, assignment);
  }

  /// Postfix form for repeated evaluation.
  class Program {
   public:
    Element run(const FiniteGroup& g, std::span<const Element> a, std::vector<Element>& stack) const {
      stack.clear();
      for (const Op& op : ops_) {
        switch (op.kind) {
          case Kind::variable: stack.push_back(a[static_cast<std::size_t>(op.arg)]); break;
          case Kind::inverse: stack.back() = g.inv(stack.back()); break;
          case Kind::power: stack.back() = g.pow(stack.back(), op.arg); break;
          case Kind::product: {
            Element r = stack.back();
            stack.pop_back();
            stack.back() = g.mul(stack.back(), r);
            break;
          }
          case Kind::commutator: {
            Element r = stack.back();
            stack.pop_back();
            stack.back() = g.commutator(stack.back(), r);
            break;
          }
        }
      }
      return stack.back();
    }

   private:
    friend class Word;
    struct Op {
      Kind kind;
      std::int64_t arg;
    };
    std::vector<Op> ops_;
  };

  Program compile() const {
    Program p;
    auto vars = variables();
    emit(*node_, vars, p.ops_);
    return p;
  }

 private:
  struct Node {
    Kind kind = Kind::variable;
    std::string name;
    std::int64_t exponent = 0;
    std::vector<std::shared_ptr<const Node>> children;
  };

  explicit Word(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Word unary(Kind k, Word w, std::int64_t e) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->exponent = e;
    n->children.push_back(std::move(w.node_));
    return Word(std::move(n));
  }
  static Word nary(Kind k, std::vector<Word> ws) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    for (auto& w : ws) n->children.push_back(std::move(w.node_));
    return Word(std::move(n));
  }

  static void emit(const Node& n, const std::vector<std::string>& vars, std::vector<Program::Op>& ops) {
    switch (n.kind) {
      case Kind::variable: {
        auto it = std::find(vars.begin(), vars.end(), n.name);
        ops.push_back({Kind::variable, it - vars.begin()});
        return;
      }
      case Kind::inverse:
      case Kind::power:
        emit(*n.children[0], vars, ops);
        ops.push_back({n.kind, n.exponent});
        return;
      case Kind::product:
      case Kind::commutator:
        emit(*n.children[0], vars, ops);
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          emit(*n.children[i], vars, ops);
          ops.push_back({n.kind, 0});
        }
        return;
    }
  }

  static void collect(const Node& n, std::vector<std::string>& out) {
    if (n.kind == Kind::variable) out.push_back(n.name);
    for (const auto& c : n.children) collect(*c, out);
  }

  static bool equal(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.name != b.name || a.exponent != b.exponent ||
        a.children.size() != b.children.size())
      return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
      if (!equal(*a.children[i], *b.children[i])) return false;
    return true;
  }

  static std::string print(const Node& n) {
    auto list = [&](const char* head) {
      std::string s = std::string(head) + "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) s += ", ";
        s += print(*n.children[i]);
      }
      return s + ")";
    };
    switch (n.kind) {
      case Kind::variable: return n.name;
      case Kind::inverse: return "inv(" + print(*n.children[0]) + ")";
      case Kind::power: return "pow(" + print(*n.children[0]) + ", " + std::to_string(n.exponent) + ")";
      case Kind::product: return list("mul");
      case Kind::commutator: return list("comm");
    }
    return {};
  }

  static Element eval(const Node& n, const FiniteGroup& g, const std::vector<std::string>& vars,
                      std::span<const Element> a) {
    switch (n.kind) {
      case Kind::variable: {
        auto it = std::find(vars.begin(), vars.end(), n.name);
        return a[static_cast<std::size_t>(it - vars.begin())];
      }
      case Kind::inverse: return g.inv(eval(*n.children[0], g, vars, a));
      case Kind::power: return g.pow(eval(*n.children[0], g, vars, a), n.exponent);
      case Kind::product: {
        Element r = eval(*n.children[0], g, vars, a);
        for (std::size_t i = 1; i < n.children.size(); ++i)
          r = g.mul(r, eval(*n.children[i], g, vars, a));
        return r;
      }
      case Kind::commutator: {
        Element r = eval(*n.children[0], g, vars, a);
        for (std::size_t i = 1; i < n.children.size(); ++i)
          r = g.commutator(r, eval(*n.children[i], g, vars, a));
        return r;
      }
    }
    return g.identity();
  }

  struct Parser {
    std::string_view text;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& what) const {
      throw ParseError(what + " in word '" + std::string(text) + "'", 1, pos + 1);
    }
    void skip() {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    void expect(char c) {
      skip();
      if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
      ++pos;
    }
    std::string ident() {
      skip();
      std::size_t start = pos;
      if (pos < text.size() && std::islower(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        while (pos < text.size() && (std::islower(static_cast<unsigned char>(text[pos])) ||
                                     std::isdigit(static_cast<unsigned char>(text[pos]))))
          ++pos;
      }
      if (pos == start) fail("expected a variable or function");
      return std::string(text.substr(start, pos - start));
    }
    std::int64_t integer() {
      skip();
      bool neg = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
      std::size_t start = pos;
      std::int64_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos++] - '0');
        if (v > 1'000'000'000) fail("exponent too large");
      }
      if (pos == start) fail("expected an integer");
      return neg ? -v : v;
    }
    std::vector<Word> args() {
      std::vector<Word> out{expr()};
      for (;;) {
        skip();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          out.push_back(expr());
        } else {
          break;
        }
      }
      expect(')');
      return out;
    }
    Word expr() {
      std::string id = ident();
      skip();
      bool call = pos < text.size() && text[pos] == '(';
      if (!call) {
        if (id == "inv" || id == "pow" || id == "mul" || id == "comm") fail("'" + id + "' needs arguments");
        return Word::var(id);
      }
      ++pos;
      if (id == "inv") {
        Word w = expr();
        expect(')');
        return Word::inverse(std::move(w));
      }
      if (id == "pow") {
        Word w = expr();
        expect(',');
        std::int64_t e = integer();
        expect(')');
        return Word::power(std::move(w), e);
      }
      if (id == "mul" || id == "comm") {
        auto a = args();
        if (a.size() < 2) fail(id + " needs at least two arguments");
        return id == "mul" ? Word::product(std::move(a)) : Word::commutator(std::move(a));
      }
      fail("unknown function '" + id + "'");
    }
  };

  std::shared_ptr<const Node> node_;
};

/// [x, y, ..., y] with y repeated k times.
inline Word engel_word(std::size_t k) {
  if (k < 1) throw Error("Engel word needs k >= 1");
  std::vector<Word> entries{Word::var("x")};
  for (std::size_t i = 0; i < k; ++i) entries.push_back(Word::var("y"));
  return Word::commutator(std::move(entries));
}

/// [x^n, y1, ..., yk]; x^1 is written as plain x.
inline Word power_commutator_word(std::int64_t n, std::size_t k) {
  if (n < 1 || k < 1) throw Error("power-commutator word needs n >= 1 and k >= 1");
  std::vector<Word> entries{n == 1 ? Word::var("x") : Word::power(Word::var("x"), n)};
  for (std::size_t i = 1; i <= k; ++i) entries.push_back(Word::var("y" + std::to_string(i)));
  return Word::commutator(std::move(entries));
}

struct WordFamily {
  enum class Kind { engel, power_commutator } kind;
  std::int64_t n = 1;  // power on the first entry (1 for Engel words)
  std::size_t k = 1;   // number of trailing entries
};

/// Recognizes the built-in virtual-nilpotency families up to variable naming.
/// [x, y] is reported as the power-commutator word with n = k = 1.
inline std::optional<WordFamily> classify_word(const Word& w) {
  if (w.kind() != Word::Kind::commutator) return std::nullopt;
  auto c = w.children();
  std::int64_t n = 1;
  std::string head;
  if (c[0].kind() == Word::Kind::variable) {
    head = c[0].name();
  } else if (c[0].kind() == Word::Kind::power && c[0].children()[0].kind() == Word::Kind::variable &&
             c[0].exponent() >= 1) {
    head = c[0].children()[0].name();
    n = c[0].exponent();
  } else {
    return std::nullopt;
  }
  std::vector<std::string> tail;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i].kind() != Word::Kind::variable || c[i].name() == head) return std::nullopt;
    tail.push_back(c[i].name());
  }
  const std::size_t k = tail.size();
  bool all_same = std::all_of(tail.begin(), tail.end(), [&](const auto& s) { return s == tail[0]; });
  if (n == 1 && k >= 2 && all_same) return WordFamily{WordFamily::Kind::engel, 1, k};
  auto sorted = tail;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
    return WordFamily{WordFamily::Kind::power_commutator, n, k};
  return std::nullopt;
}

struct TupleCapExceeded : Error {
  TupleCapExceeded(std::size_t order, std::size_t arity, std::uint64_t cap)
      : Error("word evaluation needs |G|^arity = " + std::to_string(order) + "^" +
              std::to_string(arity) + " assignments, cap is " + std::to_string(cap) +
              "; use a smaller group or a word with fewer variables") {}
};

namespace detail {

inline void check_tuple_cap(std::size_t order, std::size_t arity, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (total > cap / std::max<std::size_t>(order, 1)) throw TupleCapExceeded(order, arity, cap);
    total *= order;
  }
  if (total > cap) throw TupleCapExceeded(order, arity, cap);
}

/// Calls f(value) for every assignment over the elements of `domain`; stops
/// early when f returns false.
template <class F>
void for_each_value(const Word& w, const FiniteGroup& g, const std::vector<Element>& domain, F&& f) {
  const std::size_t arity = w.arity();
  const Word::Program prog = w.compile();
  std::vector<Element> stack;
  std::vector<Element> a(arity, domain.front());
  std::vector<std::size_t> idx(arity, 0);
  for (;;) {
    if (!f(prog.run(g, a, stack))) return;
    std::size_t i = 0;
    while (i < arity) {
      if (++idx[i] < domain.size()) {
        a[i] = domain[idx[i]];
        break;
      }
      idx[i] = 0;
      a[i] = domain[0];
      ++i;
    }
    if (i == arity) return;
  }
}

}  // namespace detail

/// w(H): subgroup generated by all values of w on tuples from H (exhaustive).
inline Subgroup verbal_subgroup(const Subgroup& h, const Word& w, std::uint64_t cap = kDefaultTupleCap) {
  const FiniteGroup& g = h.parent();
  detail::check_tuple_cap(h.order(), w.arity(), cap);
  ElementSet values = g.empty_set();
  detail::for_each_value(w, g, h.elements(), [&](Element v) {
    values.set(v);
    return true;
  });
  return closure(g, values);
}

inline Subgroup verbal_subgroup(const FiniteGroup& g, const Word& w, std::uint64_t cap = kDefaultTupleCap) {
  return verbal_subgroup(Subgroup::whole(g), w, cap);
}

/// True iff every evaluation of w in H is the identity.
inline bool is_law(const Subgroup& h, const Word& w, std::uint64_t cap = kDefaultTupleCap) {
  const FiniteGroup& g = h.parent();
  detail::check_tuple_cap(h.order(), w.arity(), cap);
  bool law = true;
  detail::for_each_value(w, g, h.elements(), [&](Element v) {
    law = v == g.identity();
    return law;
  });
  return law;
}

inline bool is_law(const FiniteGroup& g, const Word& w, std::uint64_t cap = kDefaultTupleCap) {
  return is_law(Subgroup::whole(g), w, cap);
}

}  // namespace commprobe
