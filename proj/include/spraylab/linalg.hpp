#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "spraylab/dual.hpp"
#include "spraylab/errors.hpp"

namespace spraylab {

// Charts stay small (scenario dimensions are 2 and 3); a fixed cap keeps
// scratch buffers on the stack throughout the dual-number code paths.
inline constexpr int kMaxDim = 8;

using Vec = std::vector<double>;

template <class T>
struct MatT {
    int rows = 0, cols = 0;
    std::vector<T> a;

    MatT() = default;
    MatT(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

using Mat = MatT<double>;

inline Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    Mat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            double aik = a(i, k);
            for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline double frobenius(const Mat& m) {
    double s = 0.0;
    for (double v : m.a) s += v * v;
    return std::sqrt(s);
}

inline double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// LU factorization with partial pivoting, generic over the scalar so the
// geodesic coefficients stay differentiable through the solve. Pivoting
// compares value parts only.
template <class T>
struct LuFactor {
    int n = 0;
    std::vector<T> lu;   // row-major, L below diagonal (unit), U on/above
    int piv[kMaxDim]{};  // row permutation
    int parity = 1;

    T& at(int i, int j) { return lu[static_cast<std::size_t>(i) * n + j]; }
    const T& at(int i, int j) const { return lu[static_cast<std::size_t>(i) * n + j]; }

    // determinant of the value parts
    double det_value() const {
        double d = parity;
        for (int i = 0; i < n; ++i) d *= value_of(at(i, i));
        return d;
    }
};

template <class T>
LuFactor<T> lu_factor(const MatT<T>& m) {
    LuFactor<T> f;
    f.n = m.rows;
    f.lu = m.a;
    for (int i = 0; i < f.n; ++i) f.piv[i] = i;
    for (int k = 0; k < f.n; ++k) {
        int p = k;
        double best = std::abs(value_of(f.at(k, k)));
        for (int i = k + 1; i < f.n; ++i) {
            double cand = std::abs(value_of(f.at(i, k)));
            if (cand > best) {
                best = cand;
                p = i;
            }
        }
        if (p != k) {
            for (int j = 0; j < f.n; ++j) std::swap(f.at(p, j), f.at(k, j));
            std::swap(f.piv[p], f.piv[k]);
            f.parity = -f.parity;
        }
        if (value_of(f.at(k, k)) == 0.0) continue;  // singular; caller inspects det
        for (int i = k + 1; i < f.n; ++i) {
            T lik = f.at(i, k) / f.at(k, k);
            f.at(i, k) = lik;
            for (int j = k + 1; j < f.n; ++j) f.at(i, j) = f.at(i, j) - lik * f.at(k, j);
        }
    }
    return f;
}

template <class T>
void lu_solve(const LuFactor<T>& f, const T* b, T* x) {
    int n = f.n;
    T y[kMaxDim];
    for (int i = 0; i < n; ++i) {
        T s = b[f.piv[i]];
        for (int j = 0; j < i; ++j) s = s - f.at(i, j) * y[j];
        y[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        T s = y[i];
        for (int j = i + 1; j < n; ++j) s = s - f.at(i, j) * x[j];
        x[i] = s / f.at(i, i);
    }
}

inline Mat lu_inverse(const LuFactor<double>& f) {
    int n = f.n;
    Mat inv(n, n);
    double e[kMaxDim], col[kMaxDim];
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) e[i] = (i == j) ? 1.0 : 0.0;
        lu_solve(f, e, col);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

}  // namespace spraylab
