#ifndef CCORR_MATRIX_HPP
#define CCORR_MATRIX_HPP

#include "ccorr/correntropy.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ccorr {

/// Dense row-major complex matrix. Used both for data matrices (N x M, one
/// input vector per row) and for the small M x M correlation accumulators.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n, double scale = 1.0);
    /// Builds from rows; throws ShapeError on ragged input.
    static ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Complex operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<Complex> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const Complex> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    /// this += scale * x x^H (square matrices only).
    void add_outer(std::span<const Complex> x, double scale);
    /// Replaces the matrix by (A + A^H)/2; diagonal becomes exactly real.
    void symmetrize();

    /// max |a_ij - conj(a_ji)|
    double hermitian_defect() const noexcept;
    /// max |a_ij|
    double max_abs() const noexcept;
    /// Frobenius norm
    double frobenius_norm() const noexcept;

    std::span<const Complex> data() const noexcept { return data_; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

/// Euclidean norm of a complex vector.
double norm2(std::span<const Complex> v) noexcept;

/// Solves (A + shift*I) x = b for Hermitian positive definite A by Cholesky.
/// Only the lower triangle of A is read. Throws SingularityError carrying the
/// smallest pivot when the factorization breaks down.
std::vector<Complex> hermitian_solve(const ComplexMatrix& a, std::span<const Complex> b, double shift = 0.0);

} // namespace ccorr

#endif // CCORR_MATRIX_HPP
