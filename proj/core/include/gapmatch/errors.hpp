#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gapmatch {

// Violated operation precondition (bad lengths, out-of-range symbols, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed instance or container file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A randomized construction exhausted its retry cap.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, std::size_t achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  std::size_t achieved() const noexcept { return achieved_; }

 private:
  std::size_t achieved_;
};

inline void require(bool cond, const char* what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace gapmatch
