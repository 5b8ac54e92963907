#pragma once

#include <vector>

#include "error.hpp"
#include "poly.hpp"

namespace jl {

template <class K>
class Matrix {
public:
    Matrix() : n_(0) {}
    Matrix(size_t rows, size_t cols, const K& fill = K(0))
        : n_(rows), m_(cols), a_(rows * cols, fill) {}

    static Matrix identity(size_t n) {
        Matrix I(n, n);
        for (size_t i = 0; i < n; ++i) I(i, i) = K(1);
        return I;
    }

    size_t rows() const { return n_; }
    size_t cols() const { return m_; }
    K& operator()(size_t i, size_t j) { return a_[i * m_ + j]; }
    const K& operator()(size_t i, size_t j) const { return a_[i * m_ + j]; }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.n_ != y.n_ || x.m_ != y.m_) throw ShapeMismatch("matrix addition shape");
        Matrix r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + y.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.n_ != y.n_ || x.m_ != y.m_) throw ShapeMismatch("matrix subtraction shape");
        Matrix r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - y.a_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.m_ != y.n_) throw ShapeMismatch("matrix product shape");
        Matrix r(x.n_, y.m_);
        for (size_t i = 0; i < x.n_; ++i)
            for (size_t k = 0; k < x.m_; ++k) {
                const K& v = x(i, k);
                if (v == K(0)) continue;
                for (size_t j = 0; j < y.m_; ++j) r(i, j) = r(i, j) + v * y(k, j);
            }
        return r;
    }
    friend Matrix operator*(const K& s, const Matrix& x) {
        Matrix r = x;
        for (auto& v : r.a_) v = s * v;
        return r;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.n_ == y.n_ && x.m_ == y.m_ && x.a_ == y.a_;
    }

    K trace() const {
        if (n_ != m_) throw ShapeMismatch("trace of non-square matrix");
        K t(0);
        for (size_t i = 0; i < n_; ++i) t = t + (*this)(i, i);
        return t;
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!(v == K(0))) return false;
        return true;
    }

private:
    size_t n_ = 0, m_ = 0;
    std::vector<K> a_;
};

// Characteristic polynomial det(X*I - A), monic, by the Faddeev-LeVerrier
// recurrence. Divides only by integers, so it is exact over any Q-algebra.
template <class K>
Poly<K> char_poly(const Matrix<K>& A) {
    if (A.rows() != A.cols()) throw ShapeMismatch("characteristic polynomial of non-square matrix");
    size_t n = A.rows();
    std::vector<K> c(n + 1, K(0));
    c[n] = K(1);
    Matrix<K> M = Matrix<K>::identity(n);
    for (size_t k = 1; k <= n; ++k) {
        Matrix<K> AM = A * M;
        K ck = -(AM.trace() / K(static_cast<int>(k)));
        c[n - k] = ck;
        if (k < n) {
            M = AM;
            for (size_t i = 0; i < n; ++i) M(i, i) = M(i, i) + ck;
        }
    }
    return Poly<K>(std::move(c));
}

template <class K>
K det(const Matrix<K>& A) {
    Poly<K> p = char_poly(A);
    K d = p.coeff(0);
    return A.rows() % 2 == 0 ? d : -d;
}

// Evaluate a polynomial at a square matrix.
template <class K>
Matrix<K> eval_at_matrix(const Poly<K>& p, const Matrix<K>& A) {
    size_t n = A.rows();
    Matrix<K> acc(n, n);
    for (long i = p.degree(); i >= 0; --i) {
        acc = acc * A;
        K c = p.coeff(i);
        for (size_t d = 0; d < n; ++d) acc(d, d) = acc(d, d) + c;
    }
    return acc;
}

} // namespace jl
