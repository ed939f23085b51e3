#include "bairelab/lp.hpp"

#include <stdexcept>

namespace bairelab {

void LinearProgram::add_row(std::vector<Rational> coeffs, Relation rel, Rational b) {
  if (coeffs.size() != num_vars) throw std::invalid_argument("row width does not match num_vars");
  rows.push_back(std::move(coeffs));
  relations.push_back(rel);
  rhs.push_back(std::move(b));
}

namespace {

using Relation = LinearProgram::Relation;

/// Dense tableau. Column layout: original variables, then one slack or
/// surplus per inequality row, then one artificial per Equal/GreaterEq row.
/// obj_[j] holds z_j - c_j; obj_.back() holds the current objective value.
class Tableau {
public:
  explicit Tableau(const LinearProgram& lp) : m_(lp.rows.size()), n_(lp.num_vars) {
    flipped_.assign(m_, false);
    std::vector<Relation> rel = lp.relations;
    for (std::size_t i = 0; i < m_; ++i) {
      if (lp.rhs[i].sign() < 0) {
        flipped_[i] = true;
        if (rel[i] == Relation::LessEq) {
          rel[i] = Relation::GreaterEq;
        } else if (rel[i] == Relation::GreaterEq) {
          rel[i] = Relation::LessEq;
        }
      }
    }
    std::size_t slack_count = 0;
    std::size_t art_count = 0;
    for (Relation r : rel) {
      if (r != Relation::Equal) ++slack_count;
      if (r != Relation::LessEq) ++art_count;
    }
    first_art_ = n_ + slack_count;
    cols_ = first_art_ + art_count;
    rows_.assign(m_, std::vector<Rational>(cols_ + 1));
    basis_.assign(m_, 0);
    unit_col_.assign(m_, 0);
    std::size_t slack = n_;
    std::size_t art = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      auto& row = rows_[i];
      for (std::size_t j = 0; j < n_; ++j) row[j] = flipped_[i] ? -lp.rows[i][j] : lp.rows[i][j];
      row[cols_] = flipped_[i] ? -lp.rhs[i] : lp.rhs[i];
      if (rel[i] == Relation::LessEq) {
        row[slack] = Rational(1);
        unit_col_[i] = slack++;
      } else {
        if (rel[i] == Relation::GreaterEq) row[slack++] = Rational(-1);
        row[art] = Rational(1);
        unit_col_[i] = art++;
      }
      basis_[i] = unit_col_[i];
    }
  }

  LpSolution solve(const LinearProgram& lp) {
    LpSolution out;
    // Phase I: maximize -(sum of artificials).
    std::vector<Rational> phase1(cols_);
    for (std::size_t j = first_art_; j < cols_; ++j) phase1[j] = Rational(-1);
    reset_objective(phase1);
    run(cols_, out.pivots);
    if (obj_[cols_].sign() < 0) {
      out.status = LpSolution::Status::Infeasible;
      return out;
    }
    expel_artificials(out.pivots);

    std::vector<Rational> cost(cols_);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = lp.objective[j];
    reset_objective(cost);
    if (!run(first_art_, out.pivots)) {
      out.status = LpSolution::Status::Unbounded;
      return out;
    }
    out.status = LpSolution::Status::Optimal;
    out.value = obj_[cols_];
    out.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) out.x[basis_[i]] = rows_[i][cols_];
    }
    out.duals.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      out.duals[i] = flipped_[i] ? -obj_[unit_col_[i]] : obj_[unit_col_[i]];
    }
    return out;
  }

private:
  void reset_objective(const std::vector<Rational>& cost) {
    cost_ = cost;
    obj_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) obj_[j] = -cost_[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (!rows_[i][j].is_zero()) obj_[j] += cb * rows_[i][j];
      }
    }
  }

  /// Pivots until optimal (true) or unbounded (false). Only columns below
  /// `allowed` may enter.
  bool run(std::size_t allowed, std::size_t& pivots) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (obj_[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (rows_[i][enter].sign() <= 0) continue;
        Rational ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

  /// Artificials still basic after phase I sit at level zero; swap them for
  /// any real column with a nonzero entry. Rows with none are redundant.
  void expel_artificials(std::size_t& pivots) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (!rows_[i][j].is_zero()) {
          pivot(i, j);
          ++pivots;
          break;
        }
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = Rational(1) / rows_[r][c];
    auto& prow = rows_[r];
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (!prow[j].is_zero()) prow[j] *= inv;
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c].is_zero()) return;
      const Rational factor = row[c];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (!prow[j].is_zero()) row[j] -= factor * prow[j];
      }
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(obj_);
    basis_[r] = c;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t cols_ = 0;
  std::size_t first_art_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> obj_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> unit_col_;
  std::vector<bool> flipped_;
};

} // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  if (lp.objective.size() != lp.num_vars) throw std::invalid_argument("objective width does not match num_vars");
  Tableau tableau(lp);
  return tableau.solve(lp);
}

bool certifies_optimum(const LinearProgram& lp, const LpSolution& s) {
  if (s.status != LpSolution::Status::Optimal) return false;
  if (s.x.size() != lp.num_vars || s.duals.size() != lp.rows.size()) return false;
  Rational primal(0);
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (s.x[j].sign() < 0) return false;
    primal += lp.objective[j] * s.x[j];
  }
  Rational dual(0);
  std::vector<Rational> aty(lp.num_vars);
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    Rational ax(0);
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      ax += lp.rows[i][j] * s.x[j];
      aty[j] += lp.rows[i][j] * s.duals[i];
    }
    switch (lp.relations[i]) {
    case Relation::LessEq:
      if (ax > lp.rhs[i] || s.duals[i].sign() < 0) return false;
      break;
    case Relation::GreaterEq:
      if (ax < lp.rhs[i] || s.duals[i].sign() > 0) return false;
      break;
    case Relation::Equal:
      if (ax != lp.rhs[i]) return false;
      break;
    }
    dual += lp.rhs[i] * s.duals[i];
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (aty[j] < lp.objective[j]) return false;
  }
  return primal == dual && primal == s.value;
}

} // namespace bairelab
