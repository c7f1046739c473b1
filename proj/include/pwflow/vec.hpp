#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "pwflow/errors.hpp"

namespace pwflow {

/// Dense real vector of small, run-time dimension n >= 1.
/// All vectors participating in one flow share the same n; mixing
/// dimensions throws structural_error.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n) : c_(n, 0.0) {}
    Vec(std::initializer_list<double> init) : c_(init) {}
    explicit Vec(std::vector<double> c) : c_(std::move(c)) {}

    std::size_t size() const { return c_.size(); }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }
    const std::vector<double>& data() const { return c_; }

    Vec& operator+=(const Vec& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (double& v : c_) v *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator-(Vec a) { return a *= -1.0; }

    double dot(const Vec& o) const {
        check_same(o);
        double s = 0.0;
        for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * o.c_[i];
        return s;
    }
    double norm_sq() const { return dot(*this); }
    double norm() const { return std::sqrt(norm_sq()); }
    double max_abs() const {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    void check_same(const Vec& o) const {
        if (c_.size() != o.c_.size())
            throw structural_error("vector dimension mismatch: " + std::to_string(c_.size()) +
                                   " vs " + std::to_string(o.c_.size()));
    }
    std::vector<double> c_;
};

inline double dot(const Vec& a, const Vec& b) { return a.dot(b); }

/// Dense row-major matrix, used for velocity gradients (rows = components,
/// columns = space directions).
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }

    Mat& operator+=(const Mat& o) {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw structural_error("matrix shape mismatch");
        for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
        return *this;
    }

    double trace() const {
        double s = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    /// Matrix-vector product; for a gradient G this gives (x·∇)v = G x.
    Vec apply(const Vec& x) const {
        if (x.size() != cols_) throw structural_error("matrix-vector dimension mismatch");
        Vec r(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
            r[i] = s;
        }
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : d_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> d_;
};

/// Rank-one update a b^T, the gradient of a plane wave a ψ(k·x).
inline Mat outer(const Vec& a, const Vec& b) {
    Mat m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
    return m;
}

/// e3 × v in R^3.
inline Vec cross_e3(const Vec& v) {
    if (v.size() != 3) throw structural_error("cross_e3 requires a 3-vector");
    return Vec{-v[1], v[0], 0.0};
}

/// 90-degree rotation in the plane: (x, y) -> (-y, x).
inline Vec perp2(double x, double y) { return Vec{-y, x}; }

/// Orthonormal basis of the orthogonal complement of span(vectors) in R^n.
///
/// Inputs must be linearly independent with count < n; otherwise throws a
/// rank error (structural_error). Each returned vector is orthogonal to
/// every input within 1e-12 and the set is orthonormal.
inline std::vector<Vec> orthonormal_complement_basis(const std::vector<Vec>& vectors) {
    if (vectors.empty()) throw structural_error("orthonormal_complement_basis: empty input");
    const std::size_t n = vectors.front().size();
    if (vectors.size() >= n)
        throw structural_error("orthonormal_complement_basis: need fewer input vectors than the dimension");

    // Orthonormalize the inputs (modified Gram-Schmidt); detect rank loss.
    std::vector<Vec> basis;
    for (const Vec& v : vectors) {
        if (v.size() != n) throw structural_error("orthonormal_complement_basis: mixed dimensions");
        Vec u = v;
        for (const Vec& b : basis) u -= b * dot(b, u);
        const double r = u.norm();
        if (r <= 1e-10 * std::max(1.0, v.norm()))
            throw structural_error("orthonormal_complement_basis: input vectors are linearly dependent");
        basis.push_back(u * (1.0 / r));
    }

    // Extend with coordinate axes, keeping only the complement part.
    std::vector<Vec> complement;
    for (std::size_t axis = 0; axis < n && complement.size() < n - vectors.size(); ++axis) {
        Vec u(n);
        u[axis] = 1.0;
        for (const Vec& b : basis) u -= b * dot(b, u);
        for (const Vec& b : complement) u -= b * dot(b, u);
        const double r = u.norm();
        if (r > 1e-10) complement.push_back(u * (1.0 / r));
    }
    return complement;
}

} // namespace pwflow
