#ifndef KONE_FAMILY_HPP
#define KONE_FAMILY_HPP

#include "kone/linalg.hpp"

#include <string>
#include <vector>

namespace kone {

/// A finite family {A_1, ..., A_m} of d x d real matrices and its mean.
class MatrixFamily {
public:
    MatrixFamily() = default;

    explicit MatrixFamily(std::vector<Matrix> matrices) : matrices_(std::move(matrices))
    {
        if (matrices_.empty()) {
            throw Error("MatrixFamily: at least one matrix is required");
        }
        const Eigen::Index d = matrices_.front().rows();
        if (d == 0) {
            throw DimensionMismatch("MatrixFamily: matrices must be nonempty");
        }
        for (std::size_t i = 0; i < matrices_.size(); ++i) {
            const Matrix& a = matrices_[i];
            if (a.rows() != d || a.cols() != d) {
                throw DimensionMismatch("MatrixFamily: matrix " + std::to_string(i + 1) + " is not "
                                        + std::to_string(d) + "x" + std::to_string(d));
            }
            if (!a.allFinite()) {
                throw Error("MatrixFamily: matrix " + std::to_string(i + 1) + " has non-finite entries");
            }
        }
        mean_ = mean_matrix(matrices_);
    }

    int size() const { return static_cast<int>(matrices_.size()); }
    int dim() const { return matrices_.empty() ? 0 : static_cast<int>(matrices_.front().rows()); }

    /// Zero-based access.
    const Matrix& operator[](int i) const { return matrices_.at(static_cast<std::size_t>(i)); }
    const std::vector<Matrix>& matrices() const { return matrices_; }
    const Matrix& mean() const { return mean_; }

    MatrixFamily transposed() const
    {
        std::vector<Matrix> t;
        t.reserve(matrices_.size());
        for (const auto& a : matrices_) {
            t.emplace_back(a.transpose());
        }
        return MatrixFamily(std::move(t));
    }

    /// {A_i - lambda I}.
    MatrixFamily shifted(double lambda) const
    {
        std::vector<Matrix> s;
        s.reserve(matrices_.size());
        for (const auto& a : matrices_) {
            s.emplace_back(a - lambda * Matrix::Identity(a.rows(), a.cols()));
        }
        return MatrixFamily(std::move(s));
    }

private:
    std::vector<Matrix> matrices_;
    Matrix mean_;
};

} // namespace kone

#endif
