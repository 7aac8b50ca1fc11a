#ifndef KONE_TESTS_ORACLES_HPP
#define KONE_TESTS_ORACLES_HPP

// Brute-force references that share no code path with the simplex solver.

#include "kone/cone.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <vector>

namespace oracle {

using kone::Matrix;
using kone::Vector;

/// min |G a - x| over a >= 0, by least squares on every column subset.
/// Exact for a handful of generators: the optimum is an unconstrained
/// least-squares fit on its support.
inline double nnls_residual(const Matrix& g, const Vector& x)
{
    const int k = static_cast<int>(g.cols());
    double best = x.norm();
    for (unsigned mask = 1; mask < (1U << k); ++mask) {
        std::vector<int> cols;
        for (int i = 0; i < k; ++i) {
            if (mask & (1U << i)) {
                cols.push_back(i);
            }
        }
        Matrix sub(g.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t i = 0; i < cols.size(); ++i) {
            sub.col(static_cast<Eigen::Index>(i)) = g.col(cols[i]);
        }
        const Vector a = sub.completeOrthogonalDecomposition().solve(x);
        if (a.minCoeff() < 0.0) {
            continue;
        }
        best = std::min(best, (sub * a - x).norm());
    }
    return best;
}

inline bool nnls_member(const Matrix& g, const Vector& x, double rel = 1e-9)
{
    return nnls_residual(g, x) <= rel * std::max(1.0, x.norm());
}

/// ||x||_{K,c} by bisection on "E_{1/t} x in K" with the NNLS test.
/// Returns +inf when no t up to 1e12 works.
inline double bisection_norm(const Vector& x, const Matrix& g, const Vector& c, int steps = 200)
{
    const Vector u = c.normalized();
    const double along = u.dot(x);
    const Vector perp = x - along * u;
    auto member_at = [&](double t) {
        const Vector y = along * u + perp / t;
        return nnls_member(g, y, 1e-12);
    };
    if (perp.norm() <= 1e-14 * x.norm()) {
        return 0.0;
    }
    double hi = 1.0;
    while (!member_at(hi)) {
        hi *= 2.0;
        if (hi > 1e12) {
            return std::numeric_limits<double>::infinity();
        }
    }
    double lo = hi / 2.0;
    while (member_at(lo) && lo > 1e-12) {
        hi = lo;
        lo /= 2.0;
    }
    for (int i = 0; i < steps && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (member_at(mid) ? hi : lo) = mid;
    }
    return hi;
}

/// Number of primitive binary necklaces of length n (Moebius sum).
inline long primitive_necklaces(int n)
{
    auto mobius = [](int k) {
        int result = 1;
        for (int p = 2; p * p <= k; ++p) {
            if (k % p == 0) {
                k /= p;
                if (k % p == 0) {
                    return 0;
                }
                result = -result;
            }
        }
        return k > 1 ? -result : result;
    };
    long sum = 0;
    for (int dv = 1; dv <= n; ++dv) {
        if (n % dv == 0) {
            sum += mobius(dv) * (1L << (n / dv));
        }
    }
    return sum / n;
}

/// Rotation classes of primitive words of length n over {1..m}, by brute force.
inline std::set<std::vector<int>> primitive_classes(int m, int n)
{
    std::set<std::vector<int>> out;
    std::vector<int> w(static_cast<std::size_t>(n), 1);
    while (true) {
        bool primitive = true;
        for (int p = 1; p < n && primitive; ++p) {
            if (n % p != 0) {
                continue;
            }
            bool periodic = true;
            for (int i = p; i < n; ++i) {
                if (w[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(i - p)]) {
                    periodic = false;
                    break;
                }
            }
            primitive = !periodic;
        }
        if (primitive) {
            std::vector<int> best = w;
            for (int r = 1; r < n; ++r) {
                std::vector<int> rot(w.begin() + r, w.end());
                rot.insert(rot.end(), w.begin(), w.begin() + r);
                best = std::max(best, rot);
            }
            out.insert(best);
        }
        int i = n - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == m) {
            w[static_cast<std::size_t>(i)] = 1;
            --i;
        }
        if (i < 0) {
            break;
        }
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

/// Angle-free ray distance |a/|a| - b/|b||.
inline double ray_distance(const Vector& a, const Vector& b)
{
    return (a.normalized() - b.normalized()).norm();
}

} // namespace oracle

#endif
