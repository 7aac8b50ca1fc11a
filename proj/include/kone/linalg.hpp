#ifndef KONE_LINALG_HPP
#define KONE_LINALG_HPP

#include "kone/tolerances.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <variant>
#include <vector>

namespace kone {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Leading eigenvalue of a matrix together with a unit right eigenvector.
struct PerronData {
    double eigenvalue = 0.0;
    Vector right_vector;
    bool simple = false;
    /// Geometric multiplicity one; other eigenvalues may share the spectral circle.
    bool unique_vector = false;
    double spectral_radius = 0.0;
};

/// No real nonnegative eigenvalue attains the spectral radius.
struct NoPerron {
    double spectral_radius = 0.0;
    std::complex<double> leading;
};

using PerronResult = std::variant<PerronData, NoPerron>;

inline bool all_finite(const Matrix& a)
{
    return a.allFinite();
}

/// Flips `v` so that its largest-magnitude component is positive.
inline Vector canonical_sign(Vector v)
{
    if (v.size() == 0) {
        return v;
    }
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-12)) {
            best = i;
        }
    }
    if (v[best] < 0.0) {
        v = -v;
    }
    return v;
}

/// Spectral data of `a`: the leading real nonnegative eigenvalue, a unit
/// eigenvector for it and whether that eigenvector is simple. Simplicity needs
/// geometric multiplicity one and no other eigenvalue on the spectral circle.
/// The sign of the vector is canonical but carries no meaning; callers orient it.
inline PerronResult leading_eigenpair(const Matrix& a, const Tolerances& tol)
{
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw DimensionMismatch("leading_eigenpair: matrix must be square and nonempty");
    }
    if (!all_finite(a)) {
        throw Error("leading_eigenpair: matrix has non-finite entries");
    }
    const Eigen::Index d = a.rows();
    Eigen::EigenSolver<Matrix> solver(a, false);
    if (solver.info() != Eigen::Success) {
        throw Error("leading_eigenpair: eigenvalue iteration did not converge");
    }
    const Eigen::VectorXcd ev = solver.eigenvalues();

    double rho = 0.0;
    Eigen::Index lead = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (std::abs(ev[i]) > rho) {
            rho = std::abs(ev[i]);
            lead = i;
        }
    }
    // A defective zero eigenvalue splits into a small complex cluster under
    // rounding; such a matrix has Perron value 0 and no simple eigenvector.
    const bool nilpotent = rho <= 1e-6 * a.norm();
    const double gap = tol.eig_gap * rho;

    // A Jordan block at rho splits into rho +- i*delta with delta ~ eps^(1/k);
    // only a clearly non-real leading eigenvalue rules out a Perron value.
    const double imag_tol = std::max(gap, 1e-4 * rho);
    Eigen::Index perron = nilpotent ? lead : -1;
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto z = ev[i];
        if (std::abs(z.imag()) <= imag_tol && z.real() >= -gap && std::abs(z) >= rho - gap) {
            if (perron < 0 || z.real() > ev[perron].real()) {
                perron = i;
            }
        }
    }
    if (perron < 0) {
        return NoPerron{rho, ev[lead]};
    }

    PerronData out;
    out.eigenvalue = nilpotent ? 0.0 : std::max(0.0, ev[perron].real());
    out.spectral_radius = rho;

    int on_circle = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (std::abs(ev[i]) >= rho - gap) {
            ++on_circle;
        }
    }

    Matrix shifted = a - out.eigenvalue * Matrix::Identity(d, d);
    Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double norm_a = std::max(a.norm(), std::numeric_limits<double>::min());
    int null_dim = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] <= 1e-9 * norm_a) {
            ++null_dim;
        }
    }
    null_dim = std::max(null_dim, 1);
    Vector v = svd.matrixV().col(d - 1).normalized();
    // Two steps of inverse iteration with a tiny shift sharpen the null vector.
    const double shift = out.eigenvalue + 1e-10 * std::max(rho, 1.0);
    Eigen::PartialPivLU<Matrix> lu(a - shift * Matrix::Identity(d, d));
    for (int k = 0; k < 2; ++k) {
        Vector w = lu.solve(v);
        const double n = w.norm();
        if (!std::isfinite(n) || n == 0.0) {
            break;
        }
        w /= n;
        if ((a * w - out.eigenvalue * w).norm() > (a * v - out.eigenvalue * v).norm()) {
            break;
        }
        v = w;
    }
    out.right_vector = canonical_sign(v);
    out.unique_vector = null_dim == 1;
    out.simple = out.unique_vector && on_circle == 1 && !nilpotent;
    return out;
}

/// Entrywise arithmetic mean.
inline Matrix mean_matrix(const std::vector<Matrix>& family)
{
    if (family.empty()) {
        throw Error("mean_matrix: empty family");
    }
    Matrix sum = Matrix::Zero(family.front().rows(), family.front().cols());
    for (const auto& m : family) {
        if (m.rows() != sum.rows() || m.cols() != sum.cols()) {
            throw DimensionMismatch("mean_matrix: matrices differ in shape");
        }
        sum += m;
    }
    return sum / static_cast<double>(family.size());
}

/// Basis change that makes the left and right leading eigenvectors coincide.
///
/// P = v v^T / (v*, v) + kappa (I - v* v*^T / (v*, v*)) maps v* to v and is
/// positive definite; V is its lower Cholesky factor and c = V^{-1} v / |V^{-1} v|.
struct Alignment {
    Matrix P;
    Matrix V;
    Matrix V_inv;
    Vector c;
};

inline Alignment build_alignment(const Vector& v, const Vector& v_star, double kappa, const Tolerances& tol)
{
    if (v.size() != v_star.size() || v.size() == 0) {
        throw DimensionMismatch("build_alignment: vector sizes differ");
    }
    if (!(kappa > 0.0)) {
        throw Error("build_alignment: kappa must be positive");
    }
    const double nv = v.norm();
    const double ns = v_star.norm();
    if (nv == 0.0 || ns == 0.0) {
        throw ZeroVector("build_alignment: zero eigenvector");
    }
    const double cosine = v.dot(v_star) / (nv * ns);
    if (cosine <= tol.sign_eps) {
        throw NonPositivePairing("build_alignment: (v*, v) is not positive");
    }
    const Vector u = v / nv;
    const Vector w = v_star / v_star.dot(u);
    const Eigen::Index d = v.size();

    Alignment out;
    out.P = u * u.transpose() / w.dot(u)
        + kappa * (Matrix::Identity(d, d) - w * w.transpose() / w.squaredNorm());
    out.P = 0.5 * (out.P + out.P.transpose());
    Eigen::LLT<Matrix> llt(out.P);
    if (llt.info() != Eigen::Success) {
        throw Error("build_alignment: P is not numerically positive definite");
    }
    out.V = llt.matrixL();
    out.V_inv = llt.matrixL().solve(Matrix::Identity(d, d));
    out.c = (out.V_inv * u).normalized();
    return out;
}

/// Orthonormal matrix whose first column is the unit vector `c`, built from a
/// single Householder reflection so equal inputs give equal outputs.
inline Matrix orthonormal_completion(const Vector& c)
{
    const Eigen::Index d = c.size();
    if (d == 0) {
        throw DimensionMismatch("orthonormal_completion: empty vector");
    }
    const double n = c.norm();
    if (std::abs(n - 1.0) > 1e-8) {
        throw Error("orthonormal_completion: vector must have unit length");
    }
    Vector e1 = Vector::Zero(d);
    e1[0] = 1.0;
    // H = I - 2 w w^T / |w|^2. With w = e1 - c, H e1 = c; with w = e1 + c,
    // H e1 = -c. Pick the branch whose w is far from zero; the remaining
    // columns span c^perp either way, and the first is set to c exactly.
    const Vector w = c[0] >= 0.0 ? Vector(e1 + c) : Vector(e1 - c);
    Matrix h = Matrix::Identity(d, d) - 2.0 * w * w.transpose() / w.squaredNorm();
    h.col(0) = c;
    return h;
}

/// Numerical rank of a set of column vectors.
inline int numerical_rank(const Matrix& columns, double rel_tol = 1e-9)
{
    if (columns.cols() == 0 || columns.rows() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<Matrix> svd(columns);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) {
        return 0;
    }
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > rel_tol * sv[0]) {
            ++rank;
        }
    }
    return rank;
}

} // namespace kone

#endif
