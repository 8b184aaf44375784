#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "commprobe/errors.hpp"

namespace commprobe {

/// Permutation of {0, ..., degree-1} acting on the right: point i goes to images[i].
///
/// Products compose left to right, so (a * b)[i] == b[a[i]].
class Permutation {
 public:
  using point_type = std::uint32_t;

  explicit Permutation(std::size_t degree) : images_(degree) {
    if (degree == 0) throw Error("permutation degree must be positive");
    for (std::size_t i = 0; i < degree; ++i) images_[i] = static_cast<point_type>(i);
  }

  explicit Permutation(std::vector<point_type> images) : images_(std::move(images)) {
    if (images_.empty()) throw Error("permutation degree must be positive");
    std::vector<bool> seen(images_.size(), false);
    for (point_type p : images_) {
      if (p >= images_.size() || seen[p]) throw ValidationError("images do not form a bijection");
      seen[p] = true;
    }
  }

  std::size_t degree() const noexcept { return images_.size(); }
  point_type operator[](std::size_t i) const { return images_[i]; }
  const std::vector<point_type>& images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw Error("degree mismatch in permutation product");
    std::vector<point_type> out(a.degree());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = b.images_[a.images_[i]];
    return Permutation(std::move(out), unchecked{});
  }

  Permutation inverse() const {
    std::vector<point_type> out(degree());
    for (std::size_t i = 0; i < out.size(); ++i) out[images_[i]] = static_cast<point_type>(i);
    return Permutation(std::move(out), unchecked{});
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  /// Parses 1-based cycle notation such as "(1 2 3)(4 5)" or "()"; commas may
  /// separate points.
  static Permutation from_cycles(std::string_view text, std::size_t degree) {
    std::vector<point_type> images(degree);
    for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<point_type>(i);
    std::vector<bool> used(degree, false);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ','))
        ++pos;
    };
    skip_ws();
    if (pos == text.size()) throw ParseError("empty permutation");
    while (pos < text.size()) {
      if (text[pos] != '(')
        throw ParseError("expected '(' in cycle notation '" + std::string(text) + "'", 0, pos + 1);
      ++pos;
      std::vector<point_type> cycle;
      for (;;) {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unterminated cycle", 0, pos + 1);
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        std::size_t start = pos;
        std::uint64_t v = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
          v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
          if (v > degree + 1) v = degree + 1;
          ++pos;
        }
        if (pos == start) throw ParseError("expected a point number", 0, pos + 1);
        if (v < 1 || v > degree)
          throw ValidationError("point " + std::to_string(v) + " outside 1.." +
                                std::to_string(degree));
        point_type p = static_cast<point_type>(v - 1);
        if (used[p]) throw ValidationError("point " + std::to_string(v) + " repeated in cycles");
        used[p] = true;
        cycle.push_back(p);
      }
      for (std::size_t i = 0; i < cycle.size(); ++i)
        images[cycle[i]] = cycle[(i + 1) % cycle.size()];
      skip_ws();
    }
    return Permutation(std::move(images), unchecked{});
  }

  /// 1-based cycle notation; the identity prints as "()".
  std::string to_cycles() const {
    std::string out;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      out += '(';
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) out += ' ';
        out += std::to_string(j + 1);
        first = false;
        j = images_[j];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

 private:
  struct unchecked {};
  Permutation(std::vector<point_type> images, unchecked) : images_(std::move(images)) {}

  std::vector<point_type> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : p.images()) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

}  // namespace commprobe
