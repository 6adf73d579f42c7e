#include "ccorr/matrix.hpp"

#include "ccorr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ccorr {

ComplexMatrix ComplexMatrix::identity(std::size_t n, double scale)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = scale;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    ComplexMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw ShapeError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                             " columns, expected " + std::to_string(cols));
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

void ComplexMatrix::add_outer(std::span<const Complex> x, double scale)
{
    if (rows_ != cols_ || x.size() != rows_)
        throw ShapeError("outer-product update: vector length " + std::to_string(x.size()) +
                         " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) += scale * x[i] * std::conj(x[j]);
}

void ComplexMatrix::symmetrize()
{
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, i) = (*this)(i, i).real();
        for (std::size_t j = i + 1; j < cols_; ++j) {
            const Complex avg = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            (*this)(i, j) = avg;
            (*this)(j, i) = std::conj(avg);
        }
    }
}

double ComplexMatrix::hermitian_defect() const noexcept
{
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

double ComplexMatrix::max_abs() const noexcept
{
    double worst = 0.0;
    for (const Complex& v : data_)
        worst = std::max(worst, std::abs(v));
    return worst;
}

double ComplexMatrix::frobenius_norm() const noexcept
{
    double acc = 0.0;
    for (const Complex& v : data_)
        acc += std::norm(v);
    return std::sqrt(acc);
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("matrix difference of mismatched shapes");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(r, c) = a(r, c) - b(r, c);
    return out;
}

double norm2(std::span<const Complex> v) noexcept
{
    double acc = 0.0;
    for (const Complex& c : v)
        acc += std::norm(c);
    return std::sqrt(acc);
}

std::vector<Complex> hermitian_solve(const ComplexMatrix& a, std::span<const Complex> b, double shift)
{
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw ShapeError("hermitian_solve: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " system with right-hand side of length " + std::to_string(b.size()));
    if (n == 0)
        throw ShapeError("hermitian_solve: empty system");

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        scale = std::max(scale, std::abs(a(i, i).real() + shift));
    // Pivots below this are indistinguishable from roundoff in the diagonal.
    const double floor = 8.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;

    // Lower-triangular L with A + shift*I = L L^H; diagonal of L is real.
    ComplexMatrix chol(n, n);
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = a(j, j).real() + shift;
        for (std::size_t k = 0; k < j; ++k)
            pivot -= std::norm(chol(j, k));
        smallest = std::min(smallest, pivot);
        if (!(pivot > floor) || !std::isfinite(pivot)) {
            std::ostringstream msg;
            msg << "Hermitian system is not numerically positive definite: pivot " << j << " = " << pivot
                << " (smallest pivot " << smallest << ")";
            throw SingularityError(msg.str(), smallest);
        }
        const double ljj = std::sqrt(pivot);
        chol(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = a(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= chol(i, k) * std::conj(chol(j, k));
            chol(i, j) = s / ljj;
        }
    }

    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = b[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= chol(i, k) * y[k];
        y[i] = s / chol(i, i).real();
    }
    std::vector<Complex> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex s = y[i];
        for (std::size_t k = i + 1; k < n; ++k)
            s -= std::conj(chol(k, i)) * x[k];
        x[i] = s / chol(i, i).real();
    }
    return x;
}

} // namespace ccorr
