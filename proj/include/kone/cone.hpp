#ifndef KONE_CONE_HPP
#define KONE_CONE_HPP

#include "kone/linalg.hpp"
#include "kone/lp.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace kone {

/// Pointed cone given by unit generator rays, stored as matrix columns.
class GeneratorCone {
public:
    GeneratorCone() = default;
    explicit GeneratorCone(int dim) : gens_(dim, 0) {}

    /// Normalizes and deduplicates `rays`; zero vectors are rejected.
    GeneratorCone(int dim, const std::vector<Vector>& rays, const Tolerances& tol) : gens_(dim, 0)
    {
        for (const auto& r : rays) {
            append(r, tol);
        }
    }

    int dim() const { return static_cast<int>(gens_.rows()); }
    int size() const { return static_cast<int>(gens_.cols()); }
    bool empty() const { return gens_.cols() == 0; }

    const Matrix& matrix() const { return gens_; }
    Vector generator(int i) const { return gens_.col(i); }

    std::vector<Vector> generators() const
    {
        std::vector<Vector> out;
        out.reserve(size());
        for (int i = 0; i < size(); ++i) {
            out.emplace_back(gens_.col(i));
        }
        return out;
    }

    /// Index of a generator within dedup_angle of the ray of x, or -1.
    int find_ray(const Vector& x, const Tolerances& tol) const
    {
        const double n = x.norm();
        if (n == 0.0) {
            return -1;
        }
        const Vector u = x / n;
        for (int i = 0; i < size(); ++i) {
            if ((gens_.col(i) - u).norm() < tol.dedup_angle) {
                return i;
            }
        }
        return -1;
    }

    /// Appends x/|x| unless the ray is already present. Returns true if added.
    bool append(const Vector& x, const Tolerances& tol)
    {
        if (x.size() != dim()) {
            throw DimensionMismatch("GeneratorCone: vector dimension differs from cone dimension");
        }
        const double n = x.norm();
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw ZeroVector("GeneratorCone: cannot add a zero or non-finite ray");
        }
        if (find_ray(x, tol) >= 0) {
            return false;
        }
        gens_.conservativeResize(Eigen::NoChange, gens_.cols() + 1);
        gens_.col(gens_.cols() - 1) = x / n;
        return true;
    }

    void remove(int i)
    {
        const Eigen::Index n = gens_.cols();
        if (i < n - 1) {
            gens_.block(0, i, gens_.rows(), n - 1 - i) = gens_.block(0, i + 1, gens_.rows(), n - 1 - i).eval();
        }
        gens_.conservativeResize(Eigen::NoChange, n - 1);
    }

private:
    Matrix gens_;
};

/// Returns K with the ray of x added unless an existing generator is within dedup_angle.
inline GeneratorCone add_ray(const GeneratorCone& k, const Vector& x, const Tolerances& tol)
{
    GeneratorCone out = k;
    out.append(x, tol);
    return out;
}

/// {x : (u_i, x) >= 0 for all i}; output-only representation.
struct HalfspaceCone {
    int dim = 0;
    std::vector<Vector> normals;

    bool contains(const Vector& x, double slack = 0.0) const
    {
        for (const auto& u : normals) {
            if (u.dot(x) < -slack * x.norm()) {
                return false;
            }
        }
        return true;
    }
};

enum class MembershipMode { Boundary, Interior };

namespace detail {

inline lp::Options lp_options(const Tolerances& tol)
{
    lp::Options o;
    o.feas_tol = tol.lp_feas;
    return o;
}

inline bool contains_unit(const Matrix& gens, const Vector& u, const Tolerances& tol)
{
    return lp::find_feasible(gens, u, lp_options(tol)).status == lp::Status::Optimal;
}

} // namespace detail

/// Boundary mode: x = sum alpha_i g_i with alpha >= 0, up to lp_feas relative to |x|.
/// Interior mode: x +- tau e_k are members for every k, tau = member_margin |x|.
inline bool membership(const Vector& x, const GeneratorCone& k, MembershipMode mode, const Tolerances& tol)
{
    if (x.size() != k.dim()) {
        throw DimensionMismatch("membership: vector dimension differs from cone dimension");
    }
    const double n = x.norm();
    if (n == 0.0) {
        return mode == MembershipMode::Boundary;
    }
    if (k.empty()) {
        return false;
    }
    const Vector u = x / n;
    if (mode == MembershipMode::Boundary) {
        return detail::contains_unit(k.matrix(), u, tol);
    }
    const double tau = tol.member_margin;
    for (int i = 0; i < k.dim(); ++i) {
        for (double sign : {1.0, -1.0}) {
            Vector p = u;
            p[i] += sign * tau;
            if (!detail::contains_unit(k.matrix(), p, tol)) {
                return false;
            }
        }
    }
    return true;
}

/// Boundary membership, or the ray of x is one of the generators up to dedup_angle.
inline bool covers(const GeneratorCone& k, const Vector& x, const Tolerances& tol)
{
    return k.find_ray(x, tol) >= 0 || membership(x, k, MembershipMode::Boundary, tol);
}

/// True iff +-e_i lie in K for every coordinate i.
inline bool is_full_space(const GeneratorCone& k, const Tolerances& tol)
{
    if (k.empty()) {
        return false;
    }
    for (int i = 0; i < k.dim(); ++i) {
        for (double sign : {1.0, -1.0}) {
            Vector e = Vector::Zero(k.dim());
            e[i] = sign;
            if (!detail::contains_unit(k.matrix(), e, tol)) {
                return false;
            }
        }
    }
    return true;
}

/// K is pointed iff no convex combination of its generators vanishes.
inline bool is_pointed(const GeneratorCone& k, const Tolerances& tol)
{
    if (k.empty()) {
        return true;
    }
    Matrix a(k.dim() + 1, k.size());
    a.topRows(k.dim()) = k.matrix();
    a.row(k.dim()).setOnes();
    Vector b = Vector::Zero(k.dim() + 1);
    b[k.dim()] = 1.0;
    return lp::find_feasible(a, b, detail::lp_options(tol)).status != lp::Status::Optimal;
}

/// Linear span dimension of the generators.
inline int cone_dimension(const GeneratorCone& k)
{
    return numerical_rank(k.matrix());
}

/// Drops generators lying in the cone of the others; the cone itself is unchanged.
inline GeneratorCone extreme_generators(const GeneratorCone& k, const Tolerances& tol)
{
    GeneratorCone out = k;
    for (int i = out.size() - 1; i >= 0 && out.size() > 1; --i) {
        Matrix others(out.dim(), out.size() - 1);
        others.leftCols(i) = out.matrix().leftCols(i);
        others.rightCols(out.size() - 1 - i) = out.matrix().rightCols(out.size() - 1 - i);
        if (detail::contains_unit(others, out.generator(i), tol)) {
            out.remove(i);
        }
    }
    return out;
}

/// Center ray, its orthonormal completion and the scale of E_t = C diag(1,t,..,t) C^T.
/// V / V_inv carry the basis change the cone lives in (identity when unused).
struct ScalingContext {
    Vector c;
    Matrix C;
    double t = 1.0;
    Matrix V;
    Matrix V_inv;

    static ScalingContext make(const Vector& center, double t)
    {
        if (!(t > 0.0)) {
            throw Error("ScalingContext: t must be positive");
        }
        ScalingContext ctx;
        ctx.c = center.normalized();
        ctx.C = orthonormal_completion(ctx.c);
        ctx.t = t;
        ctx.V = Matrix::Identity(center.size(), center.size());
        ctx.V_inv = ctx.V;
        return ctx;
    }

    ScalingContext with_scale(double s) const
    {
        ScalingContext out = *this;
        out.t = s;
        return out;
    }

    Matrix scaling_matrix() const
    {
        Vector diag = Vector::Constant(c.size(), t);
        diag[0] = 1.0;
        return C * diag.asDiagonal() * C.transpose();
    }
};

/// E_t x.
inline Vector apply_scaling(const ScalingContext& ctx, const Vector& x)
{
    Vector y = ctx.C.transpose() * x;
    y.tail(y.size() - 1) *= ctx.t;
    return ctx.C * y;
}

namespace detail {

/// Cone-norm in coordinates where the center is e1: gens and x already rotated by C^T.
/// Returns +inf when x lies in no scaled copy of the cone.
inline double cone_norm_rotated(const Vector& x, const Matrix& gens, const Tolerances& tol)
{
    const Eigen::Index d = x.size();
    const Vector u = x / x.norm();
    Matrix a(d, gens.cols() + 1);
    a.leftCols(gens.cols()) = gens;
    a.col(gens.cols()) = -u;
    a(0, gens.cols()) = 0.0;
    Vector b = Vector::Zero(d);
    b[0] = u[0];
    Vector cost = Vector::Zero(gens.cols() + 1);
    cost[gens.cols()] = -1.0;
    const lp::Result r = lp::minimize(a, b, cost, lp_options(tol));
    switch (r.status) {
    case lp::Status::Unbounded:
        return 0.0;
    case lp::Status::Optimal: {
        const double tau = r.x[gens.cols()];
        if (tau <= 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        return 1.0 / tau;
    }
    default:
        return std::numeric_limits<double>::infinity();
    }
}

} // namespace detail

/// inf{t > 0 : x in E_t K}. Undefined (nullopt) when (x, c) <= sign_eps |x|.
/// Zero on the center ray; +inf when no scaled copy contains x.
inline std::optional<double> cone_norm(const Vector& x, const GeneratorCone& k, const ScalingContext& ctx,
                                       const Tolerances& tol)
{
    if (x.size() != k.dim() || ctx.c.size() != k.dim()) {
        throw DimensionMismatch("cone_norm: dimension mismatch");
    }
    const double n = x.norm();
    if (n == 0.0 || x.dot(ctx.c) <= tol.sign_eps * n) {
        return std::nullopt;
    }
    if (k.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    return detail::cone_norm_rotated(ctx.C.transpose() * x, ctx.C.transpose() * k.matrix(), tol);
}

/// co(S) + K.
struct ConicPolytope {
    std::vector<Vector> base_points;
    GeneratorCone recession;
};

/// x = sum lambda_i s_i + sum mu_j g_j with lambda in the simplex and mu >= 0.
inline bool polytope_membership(const Vector& x, const ConicPolytope& p, const Tolerances& tol)
{
    const int d = p.recession.dim();
    if (x.size() != d) {
        throw DimensionMismatch("polytope_membership: dimension mismatch");
    }
    if (p.base_points.empty()) {
        throw Error("polytope_membership: empty base point set");
    }
    const int ns = static_cast<int>(p.base_points.size());
    Matrix a = Matrix::Zero(d + 1, ns + p.recession.size());
    for (int i = 0; i < ns; ++i) {
        if (p.base_points[i].size() != d) {
            throw DimensionMismatch("polytope_membership: base point dimension mismatch");
        }
        a.col(i).head(d) = p.base_points[i];
        a(d, i) = 1.0;
    }
    a.block(0, ns, d, p.recession.size()) = p.recession.matrix();
    Vector b(d + 1);
    b.head(d) = x;
    b[d] = 1.0;
    return lp::find_feasible(a, b, detail::lp_options(tol)).status == lp::Status::Optimal;
}

} // namespace kone

#endif
