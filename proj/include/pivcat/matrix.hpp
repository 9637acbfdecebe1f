#ifndef PIVCAT_MATRIX_HPP
#define PIVCAT_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pivcat/cyclotomic.hpp"
#include "pivcat/rational.hpp"

namespace pivcat {

/// Dense non-negative integer matrix, used for NIM-rep actions.
struct IMat {
    std::size_t rows = 0, cols = 0;
    std::vector<long long> data;

    IMat() = default;
    IMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

    static IMat identity(std::size_t n) {
        IMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    long long& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    long long operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    IMat transposed() const {
        IMat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend IMat operator*(const IMat& a, const IMat& b) {
        if (a.cols != b.rows) throw std::invalid_argument("IMat shape mismatch");
        IMat out(a.rows, b.cols);
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t k = 0; k < a.cols; ++k) {
                long long v = a(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += v * b(k, j);
            }
        return out;
    }

    friend IMat operator+(const IMat& a, const IMat& b) {
        if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("IMat shape mismatch");
        IMat out = a;
        for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
        return out;
    }

    IMat& scale_add(long long c, const IMat& b) {
        for (std::size_t i = 0; i < data.size(); ++i) data[i] += c * b.data[i];
        return *this;
    }

    friend bool operator==(const IMat& a, const IMat& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

/// Dense matrix over an exact field scalar (Rat or Cyclotomic).
template <typename F>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<F> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, F()) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    F& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    Mat transposed() const {
        Mat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols != b.rows) throw std::invalid_argument("Mat shape mismatch");
        Mat out(a.rows, b.cols);
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t k = 0; k < a.cols; ++k) {
                const F& v = a(i, k);
                if (v == F()) continue;
                for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += v * b(k, j);
            }
        return out;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("Mat shape mismatch");
        Mat out = a;
        for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
        return out;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("Mat shape mismatch");
        Mat out = a;
        for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
        return out;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

namespace linalg {

template <typename F>
bool nonzero(const F& x) {
    return !(x == F());
}
inline bool nonzero(const Rat& x) { return x != 0; }

/// Row echelon form in place; returns pivot column per used row.
template <typename F>
std::vector<std::size_t> echelonize(Mat<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && !nonzero(m(sel, col))) ++sel;
        if (sel == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(row, j), m(sel, j));
        F inv = F(1) / m(row, col);
        for (std::size_t j = col; j < m.cols; ++j) m(row, j) = m(row, j) * inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || !nonzero(m(i, col))) continue;
            F factor = m(i, col);
            for (std::size_t j = col; j < m.cols; ++j) m(i, j) = m(i, j) - factor * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <typename F>
std::size_t rank(Mat<F> m) {
    return echelonize(m).size();
}

/// Basis of the null space of m, one column vector per free variable.
template <typename F>
std::vector<std::vector<F>> kernel_basis(Mat<F> m) {
    auto pivots = echelonize(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<F> v(m.cols, F());
        v[free_col] = F(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of A x = b, or nullopt when the system is inconsistent.
template <typename F>
std::optional<std::vector<F>> solve(const Mat<F>& a, const std::vector<F>& b) {
    if (b.size() != a.rows) throw std::invalid_argument("solve: shape mismatch");
    Mat<F> aug(a.rows, a.cols + 1);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
        aug(i, a.cols) = b[i];
    }
    auto pivots = echelonize(aug);
    if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
    std::vector<F> x(a.cols, F());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols);
    return x;
}

/// Column indices of m forming a basis of its column space.
template <typename F>
std::vector<std::size_t> column_space_basis(const Mat<F>& m) {
    Mat<F> copy = m;
    return echelonize(copy);
}

}  // namespace linalg

}  // namespace pivcat

#endif
