#pragma once

#include <stdexcept>
#include <string>

namespace dicontainer {

// Exit-code classes used by the command-line front end:
//   usage / parse errors            -> 1
//   precondition and budget errors  -> 2
//   verification failures           -> 3

class ParseError : public std::runtime_error {
 public:
  enum class Kind { malformed, loop, duplicate, vertex_range };

  ParseError(Kind kind, int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }

 private:
  Kind kind_;
  int line_;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested work exceeds a declared enumeration or memory budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checked property (coverage, sparsity, a lemma bound) did not hold.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dicontainer
