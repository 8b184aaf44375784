#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace commprobe {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Closure or table materialization would exceed the configured element cap.
struct GroupTooLarge : Error {
  GroupTooLarge(std::size_t partial, std::size_t cap)
      : Error("group too large: closure reached " + std::to_string(partial) +
              " elements, cap is " + std::to_string(cap)),
        partial_count(partial),
        cap(cap) {}
  std::size_t partial_count;
  std::size_t cap;
};

/// A Cayley table or homomorphism failed validation.
struct ValidationError : Error {
  using Error::Error;
};

/// A lemma or theorem hypothesis is not satisfied by the inputs.
struct HypothesisViolation : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? "line " + std::to_string(line) + ":" + std::to_string(column) + ": " + what
                   : what),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

}  // namespace commprobe
