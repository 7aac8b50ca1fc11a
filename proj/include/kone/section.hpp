#ifndef KONE_SECTION_HPP
#define KONE_SECTION_HPP

#include "kone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

namespace kone {

enum class SectionPlane { Center, Axis };

/// Polygon cut from a 3-D cone by an affine plane, vertices in angular order.
struct CrossSection {
    SectionPlane plane = SectionPlane::Center;
    /// Plane normal: the center c, or the coordinate axis e_k.
    Vector normal;
    int axis = 2;
    /// Vertices in R^3 (on the plane) and in plane coordinates.
    std::vector<Vector> points;
    std::vector<Eigen::Vector2d> coords;
    /// Generators that do not meet the plane.
    int dropped = 0;
};

/// Normalized sum of the unit generators; interior for a pointed full cone.
inline Vector default_center(const GeneratorCone& k)
{
    if (k.empty()) {
        throw Error("default_center: empty cone");
    }
    Vector s = k.matrix().rowwise().sum();
    if (s.norm() == 0.0) {
        throw ZeroVector("default_center: generators sum to zero");
    }
    return s.normalized();
}

/// Cuts K with (n, x) = 1, where n = c for Center and n = e_axis for Axis.
/// Rays with (n, g) <= sign_eps miss the plane and are counted in `dropped`.
inline CrossSection cross_section(const GeneratorCone& k, SectionPlane plane, const Vector& center, int axis,
                                  const Tolerances& tol)
{
    if (k.dim() != 3) {
        throw DimensionMismatch("cross_section: only defined for d = 3");
    }
    CrossSection out;
    out.plane = plane;
    out.axis = axis;
    if (plane == SectionPlane::Center) {
        if (center.size() != 3) {
            throw DimensionMismatch("cross_section: center must be a 3-vector");
        }
        out.normal = center.normalized();
    } else {
        if (axis < 0 || axis > 2) {
            throw Error("cross_section: axis must be 0, 1 or 2");
        }
        out.normal = Vector::Zero(3);
        out.normal[axis] = 1.0;
    }

    // In-plane basis: the last two columns of the completion of the normal.
    const Matrix basis = orthonormal_completion(out.normal);
    for (int i = 0; i < k.size(); ++i) {
        const Vector g = k.generator(i);
        const double h = out.normal.dot(g);
        if (h <= tol.sign_eps) {
            ++out.dropped;
            continue;
        }
        out.points.push_back(g / h);
    }
    if (out.points.empty()) {
        return out;
    }

    std::vector<Eigen::Vector2d> local;
    std::vector<double> angle;
    for (const auto& p : out.points) {
        Eigen::Vector2d q;
        if (plane == SectionPlane::Axis) {
            int a = 0;
            for (int j = 0; j < 3; ++j) {
                if (j != axis) {
                    q[a++] = p[j];
                }
            }
        } else {
            q = Eigen::Vector2d(basis.col(1).dot(p), basis.col(2).dot(p));
        }
        local.push_back(q);
    }
    Eigen::Vector2d mid = Eigen::Vector2d::Zero();
    for (const auto& q : local) {
        mid += q;
    }
    mid /= static_cast<double>(local.size());
    for (const auto& q : local) {
        angle.push_back(std::atan2(q[1] - mid[1], q[0] - mid[0]));
    }

    std::vector<std::size_t> order(out.points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });
    std::vector<Vector> pts;
    std::vector<Eigen::Vector2d> cs;
    for (std::size_t i : order) {
        pts.push_back(out.points[i]);
        cs.push_back(local[i]);
    }
    out.points = std::move(pts);
    out.coords = std::move(cs);
    return out;
}

} // namespace kone

#endif
