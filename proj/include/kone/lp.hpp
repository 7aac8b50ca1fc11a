#ifndef KONE_LP_HPP
#define KONE_LP_HPP

// Dense two-phase simplex for small-row, many-column problems
//
//     minimize c^T x  subject to  A x = b,  x >= 0.
//
// Every cone predicate in the library reduces to one of these programs; the
// row count is the ambient dimension and the column count is the number of
// generators, so a full tableau is cheap. Dantzig pricing is used until a run
// of degenerate pivots is seen, after which the solve switches to Bland's rule.

#include "kone/linalg.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace kone::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Options {
    double feas_tol = 1e-9;
    double pivot_tol = 1e-11;
    double cost_tol = 1e-11;
    int max_iterations = 100000;
    int degenerate_before_bland = 30;
};

struct Result {
    Status status = Status::Infeasible;
    Vector x;
    double objective = 0.0;
    /// L1 norm of b - A x for the returned x (clipped to x >= 0).
    double residual = std::numeric_limits<double>::infinity();
};

namespace detail {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Simplex {
public:
    Simplex(const Matrix& a, const Vector& b, const Options& opt)
        : opt_(opt), m_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols()))
    {
        t_.setZero(m_ + 1, n_ + m_ + 1);
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            const double sign = b[i] < 0.0 ? -1.0 : 1.0;
            t_.row(i).head(n_) = sign * a.row(i);
            t_(i, n_ + i) = 1.0;
            t_(i, rhs()) = sign * b[i];
            basis_[i] = n_ + i;
        }
        allowed_.assign(n_ + m_, true);
    }

    /// Phase 1: minimize the sum of artificials. Returns false on iteration limit.
    bool phase_one()
    {
        t_.row(m_).setZero();
        for (int i = 0; i < m_; ++i) {
            t_.row(m_).head(n_) -= t_.row(i).head(n_);
            t_(m_, rhs()) -= t_(i, rhs());
        }
        if (!run()) {
            return false;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_ || std::abs(t_(i, rhs())) > opt_.feas_tol) {
                continue;
            }
            int best = -1;
            double best_abs = opt_.pivot_tol;
            for (int j = 0; j < n_; ++j) {
                if (std::abs(t_(i, j)) > best_abs) {
                    best_abs = std::abs(t_(i, j));
                    best = j;
                }
            }
            if (best >= 0) {
                pivot(i, best);
            }
        }
        for (int j = n_; j < n_ + m_; ++j) {
            allowed_[j] = false;
        }
        return true;
    }

    /// Phase 2 with cost vector c. Returns false on unbounded or iteration limit.
    Status phase_two(const Vector& c)
    {
        t_.row(m_).setZero();
        t_.row(m_).head(n_) = c.transpose();
        for (int i = 0; i < m_; ++i) {
            const int bj = basis_[i];
            const double cb = bj < n_ ? c[bj] : 0.0;
            if (cb != 0.0) {
                t_.row(m_) -= cb * t_.row(i);
            }
        }
        if (!run()) {
            return unbounded_ ? Status::Unbounded : Status::IterationLimit;
        }
        return Status::Optimal;
    }

    Vector solution() const
    {
        Vector x = Vector::Zero(n_);
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_) {
                x[basis_[i]] = std::max(0.0, t_(i, rhs()));
            }
        }
        return x;
    }

    bool unbounded() const { return unbounded_; }

private:
    int rhs() const { return n_ + m_; }

    void pivot(int r, int s)
    {
        const double inv = 1.0 / t_(r, s);
        t_.row(r) *= inv;
        t_(r, s) = 1.0;
        for (int i = 0; i <= m_; ++i) {
            if (i == r) {
                continue;
            }
            const double f = t_(i, s);
            if (f != 0.0) {
                t_.row(i) -= f * t_.row(r);
                t_(i, s) = 0.0;
            }
        }
        basis_[r] = s;
    }

    bool run()
    {
        unbounded_ = false;
        bool bland = false;
        int degenerate = 0;
        for (int iter = 0; iter < opt_.max_iterations; ++iter) {
            int s = -1;
            double best = -opt_.cost_tol;
            for (int j = 0; j < n_ + m_; ++j) {
                if (!allowed_[j]) {
                    continue;
                }
                const double rc = t_(m_, j);
                if (rc < best) {
                    s = j;
                    if (bland) {
                        break;
                    }
                    best = rc;
                }
            }
            if (s < 0) {
                return true;
            }
            int r = -1;
            double ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i) {
                const double a = t_(i, s);
                if (a <= opt_.pivot_tol) {
                    continue;
                }
                const double q = std::max(0.0, t_(i, rhs())) / a;
                if (r < 0 || q < ratio - 1e-14) {
                    r = i;
                    ratio = q;
                } else if (q <= ratio + 1e-14) {
                    const bool take = bland ? basis_[i] < basis_[r] : a > t_(r, s);
                    if (take) {
                        r = i;
                        ratio = std::min(ratio, q);
                    }
                }
            }
            if (r < 0) {
                unbounded_ = true;
                return false;
            }
            if (ratio <= 1e-14) {
                if (++degenerate > opt_.degenerate_before_bland) {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            pivot(r, s);
        }
        return false;
    }

    Options opt_;
    int m_;
    int n_;
    Tableau t_;
    std::vector<int> basis_;
    std::vector<bool> allowed_;
    bool unbounded_ = false;
};

inline double residual_l1(const Matrix& a, const Vector& b, const Vector& x)
{
    return (b - a * x).lpNorm<1>();
}

} // namespace detail

/// Finds x >= 0 with A x = b. Feasible when the recovered point has an L1
/// residual of at most feas_tol * max(1, |b|_1).
inline Result find_feasible(const Matrix& a, const Vector& b, const Options& opt = {})
{
    if (a.rows() != b.size()) {
        throw DimensionMismatch("lp: row count differs from right-hand side");
    }
    Result out;
    if (a.cols() == 0) {
        out.x = Vector::Zero(0);
        out.residual = b.lpNorm<1>();
        out.status = out.residual <= opt.feas_tol * std::max(1.0, b.lpNorm<1>()) ? Status::Optimal
                                                                                : Status::Infeasible;
        return out;
    }
    detail::Simplex sx(a, b, opt);
    const bool done = sx.phase_one();
    out.x = sx.solution();
    out.residual = detail::residual_l1(a, b, out.x);
    if (out.residual <= opt.feas_tol * std::max(1.0, b.lpNorm<1>())) {
        out.status = Status::Optimal;
    } else {
        out.status = done ? Status::Infeasible : Status::IterationLimit;
    }
    return out;
}

/// Minimizes c^T x over {x >= 0 : A x = b}.
inline Result minimize(const Matrix& a, const Vector& b, const Vector& c, const Options& opt = {})
{
    if (a.cols() != c.size()) {
        throw DimensionMismatch("lp: cost vector length differs from column count");
    }
    if (a.rows() != b.size()) {
        throw DimensionMismatch("lp: row count differs from right-hand side");
    }
    Result out;
    detail::Simplex sx(a, b, opt);
    if (!sx.phase_one()) {
        out.status = Status::IterationLimit;
        return out;
    }
    Vector x1 = sx.solution();
    if (detail::residual_l1(a, b, x1) > opt.feas_tol * std::max(1.0, b.lpNorm<1>())) {
        out.status = Status::Infeasible;
        out.x = x1;
        out.residual = detail::residual_l1(a, b, x1);
        return out;
    }
    out.status = sx.phase_two(c);
    out.x = sx.solution();
    out.residual = detail::residual_l1(a, b, out.x);
    out.objective = c.dot(out.x);
    return out;
}

} // namespace kone::lp

#endif
