// Copyright 2026 The geig Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file dense.hpp
 * Small row-major complex matrix used by the dense reference path.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace geig {

using cplx = std::complex<double>;

/// Square or rectangular complex matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t dim) {
        Matrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static Matrix diagonal(std::span<const double> diag) {
        Matrix m(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m(i, i) = diag[i];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool square() const { return rows_ == cols_; }

    cplx &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] std::span<const cplx> data() const { return data_; }
    [[nodiscard]] std::span<cplx> data() { return data_; }

    [[nodiscard]] Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<cplx> column(std::size_t c) const {
        std::vector<cplx> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            out[r] = (*this)(r, c);
        }
        return out;
    }

    Matrix &operator+=(const Matrix &o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    Matrix &operator*=(cplx s) {
        for (auto &x : data_) {
            x *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("Matrix product: inner dimensions differ");
        }
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    friend std::vector<cplx> operator*(const Matrix &a,
                                       std::span<const cplx> v) {
        if (a.cols_ != v.size()) {
            throw std::invalid_argument("Matrix-vector product: size mismatch");
        }
        std::vector<cplx> out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            cplx acc{};
            for (std::size_t j = 0; j < a.cols_; ++j) {
                acc += a(i, j) * v[j];
            }
            out[i] = acc;
        }
        return out;
    }

    /// Largest entrywise modulus.
    [[nodiscard]] double max_abs() const {
        double m = 0.0;
        for (const auto &x : data_) {
            m = std::max(m, std::abs(x));
        }
        return m;
    }

    [[nodiscard]] double frobenius_norm() const {
        double s = 0.0;
        for (const auto &x : data_) {
            s += std::norm(x);
        }
        return std::sqrt(s);
    }

    [[nodiscard]] cplx trace() const {
        cplx t{};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    /// Largest |M(i,j) - conj(M(j,i))|.
    [[nodiscard]] double hermiticity_error() const {
        if (!square()) {
            return std::numeric_limits<double>::infinity();
        }
        double e = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = i; j < cols_; ++j) {
                e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
            }
        }
        return e;
    }

  private:
    void check_same_shape(const Matrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument("Matrix: shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Largest |a(i,j) - b(i,j)|.
inline double max_abs_diff(const Matrix &a, const Matrix &b) {
    return (a - b).max_abs();
}

inline bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline std::size_t log2_exact(std::size_t x) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < x) {
        ++n;
    }
    return n;
}

} // namespace geig
