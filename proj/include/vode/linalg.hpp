#pragma once

#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "vode/errors.hpp"
#include "vode/interval.hpp"

namespace vode {

template <class T>
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n, const T& value = T{}) : d_(n, value) {}
    Vector(std::initializer_list<T> init) : d_(init) {}

    std::size_t size() const noexcept { return d_.size(); }
    T& operator[](std::size_t i) { return d_[i]; }
    const T& operator[](std::size_t i) const { return d_[i]; }

    auto begin() noexcept { return d_.begin(); }
    auto end() noexcept { return d_.end(); }
    auto begin() const noexcept { return d_.begin(); }
    auto end() const noexcept { return d_.end(); }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<T> d_;
};

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& value = T{}) : r_(rows), c_(cols), d_(rows * cols, value) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto& row : rows) {
            if (row.size() != c_) throw DimensionMismatch("ragged matrix literal");
            d_.insert(d_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0.0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
        return m;
    }

    std::size_t rows() const noexcept { return r_; }
    std::size_t cols() const noexcept { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

    Vector<T> column(std::size_t j) const {
        Vector<T> v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_column(std::size_t j, const Vector<T>& v) {
        for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> d_;
};

using IVec = Vector<Interval>;
using DVec = Vector<double>;
using IMat = Matrix<Interval>;
using DMat = Matrix<double>;

namespace detail {
template <class S>
concept Scalar = std::same_as<S, double> || std::same_as<S, Interval> || std::same_as<S, int>;

inline void require(bool ok, const char* what) {
    if (!ok) throw DimensionMismatch(what);
}
}  // namespace detail

template <class T>
Vector<T> operator+(const Vector<T>& a, const Vector<T>& b) {
    detail::require(a.size() == b.size(), "vector sum");
    Vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <class T>
Vector<T> operator-(const Vector<T>& a, const Vector<T>& b) {
    detail::require(a.size() == b.size(), "vector difference");
    Vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <class T>
Vector<T> operator-(const Vector<T>& a) {
    Vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

template <class T, detail::Scalar S>
Vector<T> operator*(const S& s, const Vector<T>& a) {
    Vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = T(s) * a[i];
    return r;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum");
    Matrix<T> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference");
    Matrix<T> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

template <class T, detail::Scalar S>
Matrix<T> operator*(const S& s, const Matrix<T>& a) {
    Matrix<T> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = T(s) * a(i, j);
    return r;
}

template <class T>
Vector<T> operator*(const Matrix<T>& a, const Vector<T>& v) {
    detail::require(a.cols() == v.size(), "matrix-vector product");
    Vector<T> r(a.rows(), T(0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T acc(0.0);
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    detail::require(a.cols() == b.rows(), "matrix product");
    Matrix<T> r(a.rows(), b.cols(), T(0.0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            T acc(0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            r(i, j) = acc;
        }
    return r;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
    Matrix<T> r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

// ---- conversions between point and interval objects ----------------------

IVec to_interval(const DVec& v);
IMat to_interval(const DMat& m);
DVec mid(const IVec& v);
DMat mid(const IMat& m);

IVec operator*(const IMat& a, const DVec& v);
IMat operator*(const IMat& a, const DMat& b);
IMat operator*(const DMat& a, const IMat& b);
IVec operator*(const DMat& a, const IVec& v);

// ---- set operations on boxes ------------------------------------------------

IVec hull(const IVec& a, const IVec& b);
std::optional<IVec> intersect(const IVec& a, const IVec& b);
/// a ⊆ b.
bool subset(const IVec& a, const IVec& b);
/// a lies in the interior of b.
bool interior_subset(const IVec& a, const IVec& b);
bool contains(const IVec& box, const DVec& point);
double max_diam(const IVec& v);
IVec widen(const IVec& v, double r);
/// Box of half-width r around zero.
IVec ball(std::size_t n, double r);

double norm_inf(const DVec& v);
/// Upper bound on the max-norm over the box.
double norm_inf(const IVec& v);
/// Upper bound on the induced max-norm (max absolute row sum).
double norm_inf(const IMat& m);
double norm_inf(const DMat& m);

/// Entrywise hull of two matrices.
IMat hull(const IMat& a, const IMat& b);

// ---- solvers ----------------------------------------------------------------

/// Floating-point inverse by Gauss-Jordan with partial pivoting. Not rigorous.
/// Throws RankDeficient on a vanishing pivot.
DMat approximate_inverse(const DMat& a);

/// Encloses every solution of A0 x = b0 over point selections A0 ∈ A, b0 ∈ b.
/// Throws SingularPivot when elimination meets a pivot containing zero.
IVec solve_gauss(const IMat& a, const IVec& b);

/// Multi right-hand-side variant; columns of the result enclose the solutions.
IMat solve_gauss(const IMat& a, const IMat& b);

/// Enclosure of the inverse of every point matrix in A.
IMat inverse(const IMat& a);

struct OrthoFrame {
    DMat q;         ///< near-orthogonal, column-normalized
    IMat inverse;   ///< rigorous enclosure of q⁻¹
};

/// Modified Gram-Schmidt on the columns of a point matrix.
/// Columns keep their sign orientation, so diagonal matrices with a positive
/// diagonal map to the identity. Throws RankDeficient.
OrthoFrame near_orthogonalize(const DMat& a);

// ---- 2x2 spectral tools -----------------------------------------------------

struct SpectralVerdict {
    enum class Kind { real_pair, complex_pair, indeterminate };
    Kind kind = Kind::indeterminate;
    Interval lambda1;  ///< real pair: the root of larger modulus when t is sign-definite
    Interval lambda2;
    Interval re;       ///< complex pair
    Interval im;       ///< complex pair, nonnegative imaginary part
};

SpectralVerdict eig_bounds_2x2(const IMat& a);

/// True only if every symmetric point selection of M is positive definite.
/// The off-diagonal entries are hulled into one shared interval.
bool posdef_sym_2x2(const IMat& m);

std::string to_string(const IVec& v);
std::string to_string(const IMat& m);

}  // namespace vode
