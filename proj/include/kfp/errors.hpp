#pragma once

#include <stdexcept>
#include <string>

namespace kfp {

// Input text could not be parsed. `line` is 1-based, 0 when not applicable.
struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& msg, int line_no = 0)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

// The nondegeneracy hypothesis (tr_minus + min |grad V| > 0) fails, so the
// lower-bound constant is undefined.
struct HypothesisViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newton refinement failed on one or more flagged cells; the cells are
// carried in the message.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bracketed search exhausted its domain without finding an admissible value.
struct SearchNotFound : std::runtime_error {
  double worst_value;
  SearchNotFound(const std::string& msg, double worst) : std::runtime_error(msg), worst_value(worst) {}
};

// An iterative solver stagnated or hit its iteration cap.
struct Breakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kfp
