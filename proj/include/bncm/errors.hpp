#pragma once

#include <stdexcept>
#include <string>

namespace bncm {

// Base for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejectable input: bad files, bad instance shape, over-budget requests.
// The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// A broken internal invariant. Always a bug, never a user problem.
// The CLI maps these to exit code 3.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  explicit ParseError(const std::string& msg) : InputError("ParseError: " + msg) {}
};

class IOFailure : public InputError {
 public:
  explicit IOFailure(const std::string& msg) : InputError("IOFailure: " + msg) {}
};

class OddCardinality : public InputError {
 public:
  explicit OddCardinality(const std::string& msg) : InputError("OddCardinality: " + msg) {}
};

class DuplicatePoints : public InputError {
 public:
  explicit DuplicatePoints(const std::string& msg) : InputError("DuplicatePoints: " + msg) {}
};

class NotConvexPosition : public InputError {
 public:
  explicit NotConvexPosition(const std::string& msg) : InputError("NotConvexPosition: " + msg) {}
};

class NotCocircular : public InputError {
 public:
  explicit NotCocircular(const std::string& msg) : InputError("NotCocircular: " + msg) {}
};

class BudgetExceeded : public InputError {
 public:
  explicit BudgetExceeded(const std::string& msg) : InputError("BudgetExceeded: " + msg) {}
};

class EmptyMatching : public InputError {
 public:
  explicit EmptyMatching(const std::string& msg) : InputError("EmptyMatching: " + msg) {}
};

class IndexOutOfRange : public InputError {
 public:
  explicit IndexOutOfRange(const std::string& msg) : InputError("IndexOutOfRange: " + msg) {}
};

class DegenerateDelta : public InputError {
 public:
  explicit DegenerateDelta(const std::string& msg) : InputError("DegenerateDelta: " + msg) {}
};

class EmptyCell : public InputError {
 public:
  explicit EmptyCell(const std::string& msg) : InputError("EmptyCell: " + msg) {}
};

class NotEnoughPoints : public InputError {
 public:
  explicit NotEnoughPoints(const std::string& msg) : InputError("NotEnoughPoints: " + msg) {}
};

class OddCount : public InputError {
 public:
  explicit OddCount(const std::string& msg) : InputError("OddCount: " + msg) {}
};

// An edge's endpoints landed in cells that are neither equal nor adjacent.
// Only reachable when the edge is longer than the grid construction allows.
class NonAdjacentCells : public InvariantError {
 public:
  explicit NonAdjacentCells(const std::string& msg) : InvariantError("NonAdjacentCells: " + msg) {}
};

// One of the six reduction post-conditions failed after a full fixpoint.
class PropertyViolation : public InvariantError {
 public:
  PropertyViolation(int property, const std::string& msg)
      : InvariantError("PropertyViolation(" + std::to_string(property) + "): " + msg),
        property_(property) {}
  int property() const { return property_; }

 private:
  int property_;
};

// A structural claim about a rule application failed at firing time.
class ClaimViolation : public InvariantError {
 public:
  explicit ClaimViolation(const std::string& msg) : InvariantError("ClaimViolation: " + msg) {}
};

}  // namespace bncm
