#ifndef KONE_IRREDUCIBILITY_HPP
#define KONE_IRREDUCIBILITY_HPP

#include "kone/family.hpp"

#include <vector>

namespace kone {

struct IrreducibilityReport {
    enum class Status { Irreducible, Undetermined };
    Status status = Status::Undetermined;
    int algebra_dim = 0;

    bool irreducible() const { return status == Status::Irreducible; }
};

/// Dimension of the algebra generated by I and the family. A full matrix
/// algebra (dimension d^2) rules out common invariant subspaces; anything less
/// is reported as undetermined.
inline IrreducibilityReport irreducibility_check(const MatrixFamily& family, const Tolerances& /*tol*/)
{
    const int d = family.dim();
    const int full = d * d;
    double scale = 1.0;
    for (const auto& a : family.matrices()) {
        scale = std::max(scale, a.norm());
    }

    // Orthonormal basis of the span, kept as flattened columns.
    std::vector<Vector> basis;
    std::vector<Matrix> elements;
    auto try_add = [&](const Matrix& m) {
        Vector x = Eigen::Map<const Vector>(m.data(), full);
        const double n0 = x.norm();
        if (n0 == 0.0) {
            return false;
        }
        x /= n0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                x -= b.dot(x) * b;
            }
        }
        const double n = x.norm();
        if (n <= 1e-8) {
            return false;
        }
        basis.push_back(x / n);
        elements.push_back(m / n0);
        return true;
    };

    try_add(Matrix::Identity(d, d));
    std::size_t next = 0;
    while (next < elements.size() && static_cast<int>(basis.size()) < full) {
        const Matrix e = elements[next++];
        for (const auto& a : family.matrices()) {
            try_add(a / scale * e);
            if (static_cast<int>(basis.size()) == full) {
                break;
            }
        }
    }
    IrreducibilityReport r;
    r.algebra_dim = static_cast<int>(basis.size());
    r.status = r.algebra_dim == full ? IrreducibilityReport::Status::Irreducible
                                     : IrreducibilityReport::Status::Undetermined;
    return r;
}

} // namespace kone

#endif
