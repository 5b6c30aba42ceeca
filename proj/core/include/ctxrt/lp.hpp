#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ctxrt/rational.hpp"

namespace ctxrt::lp {

/// One linear row with its right-hand side.
struct Constraint {
  RationalVector row;
  Rational rhs;
};

/// Exact linear program over `variables` unknowns.
///
/// `eq` rows mean row.x == rhs, `ge` rows mean row.x >= rhs. Each variable has
/// a lower bound (0 unless overridden); std::nullopt makes it free. Without an
/// objective the program is a pure feasibility query; with one it is
/// maximized.
struct LinearProgram {
  std::size_t variables = 0;
  std::optional<RationalVector> objective;
  std::vector<Constraint> eq;
  std::vector<Constraint> ge;
  std::vector<std::optional<Rational>> lower_bounds;  // empty means all 0

  explicit LinearProgram(std::size_t n = 0) : variables(n) {}

  void add_eq(RationalVector row, Rational rhs) { eq.push_back({std::move(row), std::move(rhs)}); }
  void add_ge(RationalVector row, Rational rhs) { ge.push_back({std::move(row), std::move(rhs)}); }
  /// Convenience for row.x <= rhs.
  void add_le(RationalVector row, Rational rhs);
  void set_lower_bound(std::size_t var, std::optional<Rational> bound);
  std::optional<Rational> lower_bound(std::size_t var) const;
};

enum class Status { feasible, infeasible, optimal, unbounded };

std::string to_string(Status s);

struct LpOutcome {
  Status status = Status::infeasible;
  RationalVector solution;           // set when feasible or optimal
  std::optional<Rational> objective_value;  // set when optimal
  std::size_t pivots = 0;

  bool has_solution() const { return status == Status::feasible || status == Status::optimal; }
};

/// Two-phase revised simplex in exact arithmetic. Dantzig pricing with a
/// Bland fallback on degenerate runs; a double-precision pass only suggests
/// the starting basis.
/// Throws InputError on malformed dimensions. Any returned solution has been
/// re-substituted into every constraint with zero residual.
LpOutcome solve(const LinearProgram& program);

/// True iff `x` satisfies every constraint and bound of `program` exactly.
bool satisfies(const LinearProgram& program, const RationalVector& x);

}  // namespace ctxrt::lp
