#include "ctxrt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ctxrt/error.hpp"

namespace ctxrt::lp {

void LinearProgram::add_le(RationalVector row, Rational rhs) {
  for (auto& v : row) v = -v;
  add_ge(std::move(row), -rhs);
}

void LinearProgram::set_lower_bound(std::size_t var, std::optional<Rational> bound) {
  if (var >= variables) throw InputError("lower bound index out of range");
  if (lower_bounds.empty()) lower_bounds.assign(variables, Rational(0));
  lower_bounds[var] = std::move(bound);
}

std::optional<Rational> LinearProgram::lower_bound(std::size_t var) const {
  if (lower_bounds.empty()) return Rational(0);
  return lower_bounds[var];
}

std::string to_string(Status s) {
  switch (s) {
    case Status::feasible: return "feasible";
    case Status::infeasible: return "infeasible";
    case Status::optimal: return "optimal";
    case Status::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

void check_dimensions(const LinearProgram& p) {
  auto check = [&](const std::vector<Constraint>& rows, const char* what) {
    for (const auto& c : rows) {
      if (c.row.size() != p.variables) {
        throw InputError(std::string(what) + " row has " + std::to_string(c.row.size()) +
                         " coefficients, expected " + std::to_string(p.variables));
      }
    }
  };
  check(p.eq, "equality");
  check(p.ge, "inequality");
  if (p.objective && p.objective->size() != p.variables) {
    throw InputError("objective has wrong length");
  }
  if (!p.lower_bounds.empty() && p.lower_bounds.size() != p.variables) {
    throw InputError("lower bound vector has wrong length");
  }
}

// Standard form: minimize cost.x subject to A x = b, x >= 0.
struct StandardForm {
  std::size_t rows = 0;
  std::vector<SparseColumn> columns;
  RationalVector rhs;
  RationalVector cost;
  // original variable -> (positive column, negative column or npos)
  std::vector<std::pair<std::size_t, std::size_t>> var_columns;
  RationalVector shift;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

StandardForm to_standard_form(const LinearProgram& p) {
  StandardForm sf;
  sf.rows = p.eq.size() + p.ge.size();
  sf.rhs.assign(sf.rows, Rational(0));
  sf.shift.assign(p.variables, Rational(0));

  std::vector<const Constraint*> all_rows;
  for (const auto& c : p.eq) all_rows.push_back(&c);
  for (const auto& c : p.ge) all_rows.push_back(&c);
  for (std::size_t i = 0; i < sf.rows; ++i) sf.rhs[i] = all_rows[i]->rhs;

  for (std::size_t v = 0; v < p.variables; ++v) {
    SparseColumn col;
    for (std::size_t i = 0; i < sf.rows; ++i) {
      const Rational& a = all_rows[i]->row[v];
      if (sgn(a) != 0) col.emplace_back(i, a);
    }
    auto bound = p.lower_bound(v);
    Rational c = p.objective ? Rational(-(*p.objective)[v]) : Rational(0);
    if (bound) {
      sf.shift[v] = *bound;
      if (sgn(*bound) != 0) {
        for (const auto& [i, a] : col) sf.rhs[i] -= a * *bound;
      }
      sf.var_columns.emplace_back(sf.columns.size(), npos);
      sf.columns.push_back(std::move(col));
      sf.cost.push_back(c);
    } else {
      SparseColumn neg = col;
      for (auto& entry : neg) entry.second = -entry.second;
      std::size_t pos_index = sf.columns.size();
      sf.columns.push_back(std::move(col));
      sf.cost.push_back(c);
      sf.columns.push_back(std::move(neg));
      sf.cost.push_back(-c);
      sf.var_columns.emplace_back(pos_index, pos_index + 1);
    }
  }
  for (std::size_t k = 0; k < p.ge.size(); ++k) {
    sf.columns.push_back(SparseColumn{{p.eq.size() + k, Rational(-1)}});
    sf.cost.push_back(Rational(0));
  }
  return sf;
}

class RevisedSimplex {
 public:
  explicit RevisedSimplex(StandardForm& sf) : sf_(sf), m_(sf.rows), n_(sf.columns.size()) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (sgn(sf_.rhs[i]) < 0) {
        sf_.rhs[i] = -sf_.rhs[i];
        negated_rows_.push_back(i);
      }
    }
    for (std::size_t i : negated_rows_) {
      for (auto& col : sf_.columns) {
        for (auto& [row, a] : col) {
          if (row == i) a = -a;
        }
      }
    }
    binv_.assign(m_, RationalVector(m_, Rational(0)));
    for (std::size_t i = 0; i < m_; ++i) binv_[i][i] = 1;
    basis_.resize(m_);
    in_basis_.assign(n_ + m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      in_basis_[n_ + i] = true;
    }
    xb_ = sf_.rhs;
  }

  // Returns true when feasible.
  bool phase_one() {
    RationalVector cost(n_ + m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) cost[n_ + i] = 1;
    iterate(cost);
    for (std::size_t i = 0; i < m_; ++i) {
      if (is_artificial(basis_[i]) && sgn(xb_[i]) != 0) return false;
    }
    drive_out_artificials();
    return true;
  }

  // Returns false when unbounded.
  bool phase_two() {
    RationalVector cost(n_ + m_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost[j] = sf_.cost[j];
    return iterate(cost);
  }

  RationalVector standard_solution() const {
    RationalVector x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) x[basis_[i]] = xb_[i];
    }
    return x;
  }

  std::size_t pivots() const { return pivots_; }

  // Replaces the starting basis when `basis` is nonsingular and primal
  // feasible; otherwise keeps the slack basis. Returns whether it was taken.
  bool warm_start(const std::vector<std::size_t>& basis) {
    if (basis.size() != m_) return false;
    std::vector<bool> used(n_ + m_, false);
    for (std::size_t j : basis) {
      if (j >= n_ + m_ || used[j]) return false;
      used[j] = true;
    }
    // Gauss-Jordan on [B | I].
    std::vector<RationalVector> a(m_, RationalVector(m_, Rational(0)));
    for (std::size_t c = 0; c < m_; ++c) {
      const std::size_t j = basis[c];
      if (is_artificial(j)) {
        a[j - n_][c] = 1;
      } else {
        for (const auto& [i, v] : sf_.columns[j]) a[i][c] = v;
      }
    }
    std::vector<RationalVector> inv(m_, RationalVector(m_, Rational(0)));
    for (std::size_t i = 0; i < m_; ++i) inv[i][i] = 1;
    std::vector<std::size_t> row_of(m_);
    std::vector<bool> done(m_, false);
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t r = npos;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!done[i] && sgn(a[i][c]) != 0) {
          r = i;
          break;
        }
      }
      if (r == npos) return false;
      done[r] = true;
      row_of[c] = r;
      const Rational piv = a[r][c];
      for (auto& v : a[r]) if (sgn(v) != 0) v /= piv;
      for (auto& v : inv[r]) if (sgn(v) != 0) v /= piv;
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == r || sgn(a[i][c]) == 0) continue;
        const Rational f = a[i][c];
        for (std::size_t k = 0; k < m_; ++k) {
          if (sgn(a[r][k]) != 0) a[i][k] -= f * a[r][k];
          if (sgn(inv[r][k]) != 0) inv[i][k] -= f * inv[r][k];
        }
      }
    }
    std::vector<RationalVector> binv(m_);
    RationalVector xb(m_, Rational(0));
    for (std::size_t c = 0; c < m_; ++c) {
      binv[c] = std::move(inv[row_of[c]]);
      for (std::size_t k = 0; k < m_; ++k) {
        if (sgn(binv[c][k]) != 0) xb[c] += binv[c][k] * sf_.rhs[k];
      }
      if (sgn(xb[c]) < 0) return false;
    }
    binv_ = std::move(binv);
    xb_ = std::move(xb);
    basis_ = basis;
    in_basis_.assign(n_ + m_, false);
    for (std::size_t j : basis_) in_basis_[j] = true;
    return true;
  }

 private:
  bool is_artificial(std::size_t j) const { return j >= n_; }

  Rational column_dot(const RationalVector& dense_row, std::size_t j) const {
    Rational acc(0);
    if (is_artificial(j)) return dense_row[j - n_];
    for (const auto& [i, a] : sf_.columns[j]) acc += dense_row[i] * a;
    return acc;
  }

  RationalVector ftran(std::size_t j) const {
    RationalVector u(m_, Rational(0));
    if (is_artificial(j)) {
      for (std::size_t i = 0; i < m_; ++i) u[i] = binv_[i][j - n_];
      return u;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      Rational acc(0);
      for (const auto& [k, a] : sf_.columns[j]) {
        if (sgn(binv_[i][k]) != 0) acc += binv_[i][k] * a;
      }
      u[i] = std::move(acc);
    }
    return u;
  }

  void pivot(std::size_t r, std::size_t j, const RationalVector& u) {
    const Rational piv = u[r];
    for (auto& v : binv_[r]) {
      if (sgn(v) != 0) v /= piv;
    }
    xb_[r] /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(u[i]) == 0) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        if (sgn(binv_[r][k]) != 0) binv_[i][k] -= u[i] * binv_[r][k];
      }
      xb_[i] -= u[i] * xb_[r];
    }
    in_basis_[basis_[r]] = false;
    basis_[r] = j;
    in_basis_[j] = true;
    ++pivots_;
  }

  // Most negative reduced cost while the objective moves; after a run of
  // degenerate pivots, Bland's rule (lowest index) until it moves again, which
  // rules out cycling. Artificial columns never re-enter.
  bool iterate(const RationalVector& cost) {
    constexpr std::size_t kDegenerateLimit = 8;
    std::size_t degenerate_run = 0;
    for (;;) {
      const bool bland = degenerate_run >= kDegenerateLimit;
      RationalVector y(m_, Rational(0));
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& cb = cost[basis_[i]];
        if (sgn(cb) == 0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          if (sgn(binv_[i][k]) != 0) y[k] += cb * binv_[i][k];
        }
      }
      std::size_t entering = npos;
      Rational best;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis_[j]) continue;
        Rational reduced = cost[j] - column_dot(y, j);
        if (sgn(reduced) >= 0) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (entering == npos || reduced < best) {
          entering = j;
          best = std::move(reduced);
        }
      }
      if (entering == npos) return true;

      RationalVector u = ftran(entering);
      std::size_t leave = npos;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(u[i]) <= 0) continue;
        Rational ratio = xb_[i] / u[i];
        if (leave == npos || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == npos) return false;
      degenerate_run = sgn(best_ratio) == 0 ? degenerate_run + 1 : 0;
      pivot(leave, entering, u);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis_[j]) continue;
        if (sgn(column_dot(binv_[r], j)) != 0) {
          pivot(r, j, ftran(j));
          break;
        }
      }
      // Otherwise the row is redundant: every real column has a zero there and
      // the artificial stays basic at level zero for good.
    }
  }

  StandardForm& sf_;
  std::size_t m_;
  std::size_t n_;
  std::vector<RationalVector> binv_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  RationalVector xb_;
  std::vector<std::size_t> negated_rows_;
  std::size_t pivots_ = 0;
};


// Floating-point twin of RevisedSimplex, used only to find a good starting
// basis for the exact solver. Its verdicts are never trusted.
class FloatSimplex {
 public:
  explicit FloatSimplex(const StandardForm& sf) : m_(sf.rows), n_(sf.columns.size()) {
    columns_.reserve(n_);
    for (const auto& col : sf.columns) {
      std::vector<std::pair<std::size_t, double>> c;
      for (const auto& [i, a] : col) c.emplace_back(i, a.get_d());
      columns_.push_back(std::move(c));
    }
    // Small deterministic rhs perturbation breaks the ties behind degenerate
    // stalling; the exact solver sees the true data.
    for (std::size_t i = 0; i < m_; ++i) {
      const double r = sf.rhs[i].get_d();
      const double jitter = 1e-7 * (1.0 + static_cast<double>((i * 2654435761u) % 1000) / 1000.0);
      rhs_.push_back(r + jitter * (1.0 + std::abs(r)));
    }
    for (const auto& c : sf.cost) cost_.push_back(c.get_d());
    basis_.resize(m_);
    in_basis_.assign(n_ + m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      in_basis_[n_ + i] = true;
    }
    refactor();
  }

  std::vector<std::size_t> run(bool with_objective) {
    std::vector<double> cost(n_ + m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) cost[n_ + i] = 1.0;
    if (!iterate(cost)) return basis_;
    double infeasibility = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeasibility += xb_[i];
    }
    if (infeasibility > 1e-4) return basis_;
    drive_out_artificials();
    if (with_objective) {
      std::fill(cost.begin(), cost.end(), 0.0);
      for (std::size_t j = 0; j < n_; ++j) cost[j] = cost_[j];
      iterate(cost);
    }
    return basis_;
  }

 private:
  static constexpr double kTol = 1e-9;

  double entry(std::size_t row, std::size_t j) const {
    double acc = 0;
    if (j >= n_) return binv_[row][j - n_];
    for (const auto& [k, a] : columns_[j]) acc += binv_[row][k] * a;
    return acc;
  }

  // Rebuilds B^{-1} and x_B from the basis; false when B is numerically singular.
  bool refactor() {
    std::vector<std::vector<double>> a(m_, std::vector<double>(m_, 0.0));
    for (std::size_t c = 0; c < m_; ++c) {
      const std::size_t j = basis_[c];
      if (j >= n_) a[j - n_][c] = 1.0;
      else for (const auto& [i, v] : columns_[j]) a[i][c] = v;
    }
    std::vector<std::vector<double>> inv(m_, std::vector<double>(m_, 0.0));
    for (std::size_t i = 0; i < m_; ++i) inv[i][i] = 1.0;
    std::vector<std::size_t> row_of(m_);
    std::vector<bool> done(m_, false);
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t r = npos;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!done[i] && (r == npos || std::abs(a[i][c]) > std::abs(a[r][c]))) r = i;
      }
      if (r == npos || std::abs(a[r][c]) < kTol) return false;
      done[r] = true;
      row_of[c] = r;
      const double piv = a[r][c];
      for (auto& v : a[r]) v /= piv;
      for (auto& v : inv[r]) v /= piv;
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == r || a[i][c] == 0.0) continue;
        const double f = a[i][c];
        for (std::size_t k = 0; k < m_; ++k) {
          a[i][k] -= f * a[r][k];
          inv[i][k] -= f * inv[r][k];
        }
      }
    }
    binv_.assign(m_, {});
    xb_.assign(m_, 0.0);
    for (std::size_t c = 0; c < m_; ++c) {
      binv_[c] = inv[row_of[c]];
      for (std::size_t k = 0; k < m_; ++k) xb_[c] += binv_[c][k] * rhs_[k];
      if (xb_[c] < 0 && xb_[c] > -1e-7) xb_[c] = 0;
    }
    return true;
  }

  void pivot(std::size_t r, std::size_t j, const std::vector<double>& u) {
    const double piv = u[r];
    for (auto& v : binv_[r]) v /= piv;
    xb_[r] /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || u[i] == 0.0) continue;
      for (std::size_t k = 0; k < m_; ++k) binv_[i][k] -= u[i] * binv_[r][k];
      xb_[i] -= u[i] * xb_[r];
      if (xb_[i] < 0 && xb_[i] > -kTol) xb_[i] = 0;
    }
    const std::size_t old = basis_[r];
    in_basis_[old] = false;
    basis_[r] = j;
    in_basis_[j] = true;
    if (++pivots_ % 50 == 0 && !refactor()) {
      // Numerically singular after this pivot: revert it.
      in_basis_[j] = false;
      basis_[r] = old;
      in_basis_[old] = true;
      refactor();
    }
  }

  // Returns false when the pivot budget runs out or the problem looks unbounded.
  bool iterate(const std::vector<double>& cost) {
    const std::size_t budget = 20 * (m_ + n_) + 1000;
    std::size_t degenerate_run = 0;
    for (std::size_t step = 0; step < budget; ++step) {
      const bool bland = degenerate_run >= 8;
      std::vector<double> y(m_, 0.0);
      for (std::size_t i = 0; i < m_; ++i) {
        const double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) y[k] += cb * binv_[i][k];
      }
      std::size_t entering = npos;
      double best = -kTol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis_[j]) continue;
        double reduced = cost[j];
        for (const auto& [k, a] : columns_[j]) reduced -= y[k] * a;
        if (reduced < best) {
          entering = j;
          best = reduced;
          if (bland) break;
        }
      }
      if (entering == npos) return true;
      std::vector<double> u(m_);
      for (std::size_t i = 0; i < m_; ++i) u[i] = entry(i, entering);
      std::size_t leave = npos;
      double best_ratio = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (u[i] <= kTol) continue;
        const double ratio = xb_[i] / u[i];
        if (leave == npos || ratio < best_ratio - kTol ||
            (ratio <= best_ratio + kTol && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == npos) return false;
      degenerate_run = best_ratio <= kTol ? degenerate_run + 1 : 0;
      pivot(leave, entering, u);
    }
    return false;
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis_[j] || std::abs(entry(r, j)) <= 1e-7) continue;
        std::vector<double> u(m_);
        for (std::size_t i = 0; i < m_; ++i) u[i] = entry(i, j);
        pivot(r, j, u);
        break;
      }
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<std::pair<std::size_t, double>>> columns_;
  std::vector<double> rhs_;
  std::vector<double> cost_;
  std::vector<std::vector<double>> binv_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  std::vector<double> xb_;
  std::size_t pivots_ = 0;
};

}  // namespace

bool satisfies(const LinearProgram& program, const RationalVector& x) {
  if (x.size() != program.variables) return false;
  auto dot = [&](const RationalVector& row) {
    Rational acc(0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (sgn(row[j]) != 0) acc += row[j] * x[j];
    }
    return acc;
  };
  for (const auto& c : program.eq) {
    if (dot(c.row) != c.rhs) return false;
  }
  for (const auto& c : program.ge) {
    if (dot(c.row) < c.rhs) return false;
  }
  for (std::size_t v = 0; v < program.variables; ++v) {
    auto lb = program.lower_bound(v);
    if (lb && x[v] < *lb) return false;
  }
  return true;
}

LpOutcome solve(const LinearProgram& program) {
  check_dimensions(program);
  StandardForm sf = to_standard_form(program);
  RevisedSimplex simplex(sf);
  if (sf.rows > 0 && !sf.columns.empty()) {
    FloatSimplex guide(sf);
    simplex.warm_start(guide.run(program.objective.has_value()));
  }

  LpOutcome out;
  if (!simplex.phase_one()) {
    out.status = Status::infeasible;
    out.pivots = simplex.pivots();
    return out;
  }
  bool bounded = true;
  if (program.objective) bounded = simplex.phase_two();
  out.pivots = simplex.pivots();
  if (!bounded) {
    out.status = Status::unbounded;
    return out;
  }

  RationalVector xs = simplex.standard_solution();
  out.solution.assign(program.variables, Rational(0));
  for (std::size_t v = 0; v < program.variables; ++v) {
    auto [pos, neg] = sf.var_columns[v];
    Rational value = xs[pos] + sf.shift[v];
    if (neg != npos) value -= xs[neg];
    out.solution[v] = std::move(value);
  }
  if (!satisfies(program, out.solution)) {
    throw std::logic_error("simplex produced a solution that fails re-substitution");
  }
  if (program.objective) {
    Rational obj(0);
    for (std::size_t v = 0; v < program.variables; ++v) obj += (*program.objective)[v] * out.solution[v];
    out.objective_value = std::move(obj);
    out.status = Status::optimal;
  } else {
    out.status = Status::feasible;
  }
  return out;
}

}  // namespace ctxrt::lp
