#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kmwb/rational.hpp"

namespace kmwb {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    Rat objective;
    RatVec x;
};

namespace detail {

// Two-phase primal simplex with Bland's rule, exact rational arithmetic.
// Solves  min c.x  s.t.  A x = b, x >= 0.
class StandardSimplex {
  public:
    StandardSimplex(std::vector<RatVec> a, RatVec b, RatVec c)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
        m_ = a_.size();
        n_ = m_ ? a_[0].size() : c_.size();
    }

    LPSolution solve() {
        // Phase 1: flip rows to make b >= 0, add artificial basis.
        size_t width = n_ + m_ + 1;  // original + artificials + rhs
        rows_.assign(m_, RatVec(width, Rat(0)));
        basis_.resize(m_);
        for (size_t i = 0; i < m_; ++i) {
            int sign = b_[i] < 0 ? -1 : 1;
            for (size_t j = 0; j < n_; ++j) rows_[i][j] = sign * a_[i][j];
            rows_[i][n_ + i] = 1;
            rows_[i][width - 1] = sign * b_[i];
            basis_[i] = n_ + i;
        }
        obj_.assign(width, Rat(0));
        for (size_t j = n_; j < n_ + m_; ++j) obj_[j] = 1;
        for (size_t i = 0; i < m_; ++i)
            for (size_t j = 0; j < width; ++j) obj_[j] -= rows_[i][j];
        for (size_t j = n_; j < n_ + m_; ++j) obj_[j] = 0;  // basics stay reduced to zero

        iterate(n_ + m_);
        if (-obj_[width - 1] > 0) return {LPStatus::Infeasible, Rat(0), {}};

        // Drive remaining artificials out of the basis; drop redundant rows.
        for (size_t i = 0; i < m_;) {
            if (basis_[i] < n_) {
                ++i;
                continue;
            }
            size_t j = 0;
            for (; j < n_; ++j)
                if (rows_[i][j] != 0) break;
            if (j < n_) {
                pivot(i, j);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                --m_;
            }
        }

        // Phase 2: real objective over original columns only.
        size_t rhs = width - 1;
        obj_.assign(width, Rat(0));
        for (size_t j = 0; j < n_; ++j) obj_[j] = c_[j];
        for (size_t i = 0; i < m_; ++i) {
            const Rat& cb = c_[basis_[i]];
            if (cb == 0) continue;
            for (size_t j = 0; j < width; ++j) obj_[j] -= cb * rows_[i][j];
        }
        if (!iterate(n_)) return {LPStatus::Unbounded, Rat(0), {}};

        LPSolution sol;
        sol.status = LPStatus::Optimal;
        sol.objective = -obj_[rhs];
        sol.x.assign(n_, Rat(0));
        for (size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) sol.x[basis_[i]] = rows_[i][rhs];
        return sol;
    }

  private:
    // Bland's rule; returns false on unboundedness.
    bool iterate(size_t ncols) {
        size_t rhs = obj_.size() - 1;
        for (;;) {
            size_t enter = ncols;
            for (size_t j = 0; j < ncols; ++j)
                if (obj_[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == ncols) return true;
            size_t leave = m_;
            Rat best;
            for (size_t i = 0; i < m_; ++i) {
                if (rows_[i][enter] <= 0) continue;
                Rat ratio = rows_[i][rhs] / rows_[i][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    void pivot(size_t row, size_t col) {
        Rat p = rows_[row][col];
        for (auto& v : rows_[row]) v /= p;
        for (size_t i = 0; i < m_; ++i) {
            if (i == row || rows_[i][col] == 0) continue;
            Rat f = rows_[i][col];
            for (size_t j = 0; j < rows_[i].size(); ++j) rows_[i][j] -= f * rows_[row][j];
        }
        if (obj_[col] != 0) {
            Rat f = obj_[col];
            for (size_t j = 0; j < obj_.size(); ++j) obj_[j] -= f * rows_[row][j];
        }
        basis_[row] = col;
    }

    std::vector<RatVec> a_;
    RatVec b_;
    RatVec c_;
    size_t m_ = 0;
    size_t n_ = 0;
    std::vector<RatVec> rows_;
    RatVec obj_;
    std::vector<size_t> basis_;
};

}  // namespace detail

enum class Rel { Eq, Le, Ge };

/// Small exact LP front end: nonnegative or free variables, mixed relations.
/// Free variables are split internally; inequalities get slacks.
class LinearProgram {
  public:
    int add_var(bool nonneg = true) {
        nonneg_.push_back(nonneg);
        return static_cast<int>(nonneg_.size()) - 1;
    }

    void add_constraint(std::vector<std::pair<int, Rat>> terms, Rel rel, Rat rhs) {
        cons_.push_back({std::move(terms), rel, std::move(rhs)});
    }

    void set_objective(std::vector<std::pair<int, Rat>> terms, bool maximize) {
        objective_ = std::move(terms);
        maximize_ = maximize;
    }

    LPSolution solve() const {
        // Column layout: per variable one column (nonneg) or two (free, split
        // x = x+ - x-), then one slack per inequality.
        std::vector<size_t> col_of(nonneg_.size());
        size_t ncols = 0;
        for (size_t v = 0; v < nonneg_.size(); ++v) {
            col_of[v] = ncols;
            ncols += nonneg_[v] ? 1 : 2;
        }
        size_t slack_base = ncols;
        for (const auto& con : cons_)
            if (con.rel != Rel::Eq) ++ncols;

        std::vector<RatVec> a(cons_.size(), RatVec(ncols, Rat(0)));
        RatVec b(cons_.size(), Rat(0));
        size_t slack = slack_base;
        for (size_t i = 0; i < cons_.size(); ++i) {
            for (const auto& [v, coef] : cons_[i].terms) {
                a[i][col_of[v]] += coef;
                if (!nonneg_[v]) a[i][col_of[v] + 1] -= coef;
            }
            b[i] = cons_[i].rhs;
            if (cons_[i].rel == Rel::Le) a[i][slack++] = 1;
            if (cons_[i].rel == Rel::Ge) a[i][slack++] = -1;
        }
        RatVec c(ncols, Rat(0));
        for (const auto& [v, coef] : objective_) {
            Rat eff = maximize_ ? Rat(-coef) : coef;
            c[col_of[v]] += eff;
            if (!nonneg_[v]) c[col_of[v] + 1] -= eff;
        }

        LPSolution raw = detail::StandardSimplex(std::move(a), std::move(b), std::move(c)).solve();
        if (raw.status != LPStatus::Optimal) return raw;
        LPSolution sol;
        sol.status = LPStatus::Optimal;
        sol.objective = maximize_ ? Rat(-raw.objective) : raw.objective;
        sol.x.resize(nonneg_.size());
        for (size_t v = 0; v < nonneg_.size(); ++v)
            sol.x[v] = nonneg_[v] ? raw.x[col_of[v]] : Rat(raw.x[col_of[v]] - raw.x[col_of[v] + 1]);
        return sol;
    }

  private:
    struct Constraint {
        std::vector<std::pair<int, Rat>> terms;
        Rel rel;
        Rat rhs;
    };
    std::vector<bool> nonneg_;
    std::vector<Constraint> cons_;
    std::vector<std::pair<int, Rat>> objective_;
    bool maximize_ = false;
};

}  // namespace kmwb
