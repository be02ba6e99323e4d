#pragma once

#include <cmath>
#include <vector>

#include "rdn/errors.hpp"
#include "rdn/field.hpp"

namespace rdn {

/// Small dense square matrix over a field (or plain doubles for the
/// numerical code). Row-major storage.
template <class T>
class Matrix {
public:
    explicit Matrix(int n) : n_(n), e_(size_t(n) * size_t(n), T{}) {
        if (n < 0) fail("BadDimension", "negative matrix size");
    }

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    int size() const { return n_; }

    T& operator()(int i, int j) { return e_[size_t(i) * size_t(n_) + size_t(j)]; }
    const T& operator()(int i, int j) const {
        return e_[size_t(i) * size_t(n_) + size_t(j)];
    }

    Matrix transpose() const {
        Matrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

private:
    int n_;
    std::vector<T> e_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    int n = a.size();
    if (n != b.size()) fail("DimensionMismatch", "matrix product size mismatch");
    Matrix<T> r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const T& aik = a(i, k);
            for (int j = 0; j < n; ++j) r(i, j) = T(r(i, j) + aik * b(k, j));
        }
    return r;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
    int n = a.size();
    std::vector<T> r(size_t(n), T{});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[size_t(i)] = T(r[size_t(i)] + a(i, j) * v[size_t(j)]);
    return r;
}

template <class K>
bool matrix_eq(const Matrix<K>& a, const Matrix<K>& b, double tol = kDefaultTol) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            if (!field_ops<K>::eq(a(i, j), b(i, j), tol)) return false;
    return true;
}

inline double max_abs_diff(const Matrix<double>& a, const Matrix<double>& b) {
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

inline double max_abs(const Matrix<double>& a) {
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) m = std::max(m, std::fabs(a(i, j)));
    return m;
}

} // namespace rdn
