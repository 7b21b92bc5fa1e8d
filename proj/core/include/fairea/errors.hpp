#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fairea {

// Base class for all errors raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad ids, out-of-range classes, broken file contents.
class validation_error : public error {
 public:
  using error::error;
};

// No complete matching exists for the requested cover.
class infeasible_error : public error {
 public:
  explicit infeasible_error(const std::string& what,
                            std::vector<std::string> blocking = {})
      : error(what), blocking_(std::move(blocking)) {}

  // Open positions that could not be covered, when known.
  const std::vector<std::string>& blocking_positions() const { return blocking_; }

 private:
  std::vector<std::string> blocking_;
};

// Instance too large for an exhaustive method.
class scale_error : public error {
 public:
  using error::error;
};

// Assortativity undefined (single effective class).
class degenerate_error : public error {
 public:
  using error::error;
};

// Attribute planting could not reach the target within budget.
class planting_error : public error {
 public:
  planting_error(const std::string& what, double best_achieved)
      : error(what), best_achieved_(best_achieved) {}

  double best_achieved() const { return best_achieved_; }

 private:
  double best_achieved_ = 0.0;
};

}  // namespace fairea
