#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dynmode {

// Position or index outside the valid range of a container.
class range_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Internal bookkeeping went wrong (negative count, decrement of an absent symbol).
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operation not valid in the current state (empty source block, zero slots).
class state_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Caller misuse of an API contract, e.g. a stale cursor.
class usage_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by audit-mode checks when a structural invariant fails.
class audit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Error tied to a line of textual input (traces, family files, query streams).
class input_error : public std::runtime_error {
 public:
  input_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dynmode
