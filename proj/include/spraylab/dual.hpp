#pragma once

#include <cmath>
#include <utility>

#include "spraylab/errors.hpp"

namespace spraylab {

// Forward-mode dual number over an arbitrary scalar T. Nesting
// (Dual<Dual<...>>) yields exact higher-order partials: each layer carries
// one seeded direction.
template <class T>
struct Dual {
    T v{};  // value
    T d{};  // derivative along this layer's seeded direction

    Dual() = default;
    Dual(double c) : v(c), d() {}  // NOLINT: constants lift with zero derivative
    Dual(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}
};

using D0 = double;
using D1 = Dual<D0>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) {
    return value_of(x.v);
}

// ---- arithmetic ----

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
    return {a.v + b.v, a.d + b.d};
}
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
    return {a.v - b.v, a.d - b.d};
}
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}

template <class T>
Dual<T> operator-(const Dual<T>& a) {
    return {-a.v, -a.d};
}
template <class T>
Dual<T> operator+(const Dual<T>& a) {
    return a;
}

template <class T>
Dual<T> operator+(const Dual<T>& a, double c) {
    return {a.v + c, a.d};
}
template <class T>
Dual<T> operator+(double c, const Dual<T>& a) {
    return {a.v + c, a.d};
}
template <class T>
Dual<T> operator-(const Dual<T>& a, double c) {
    return {a.v - c, a.d};
}
template <class T>
Dual<T> operator-(double c, const Dual<T>& a) {
    return {c - a.v, -a.d};
}
template <class T>
Dual<T> operator*(const Dual<T>& a, double c) {
    return {a.v * c, a.d * c};
}
template <class T>
Dual<T> operator*(double c, const Dual<T>& a) {
    return {a.v * c, a.d * c};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, double c) {
    return {a.v / c, a.d / c};
}
template <class T>
Dual<T> operator/(double c, const Dual<T>& a) {
    return Dual<T>(c) / a;
}

template <class T>
Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) {
    a.v = a.v + b.v;
    a.d = a.d + b.d;
    return a;
}
template <class T>
Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) {
    a.v = a.v - b.v;
    a.d = a.d - b.d;
    return a;
}
template <class T>
Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) {
    a = a * b;
    return a;
}

// ---- elementary functions (caller is responsible for domain checks; the
//      checked_* wrappers below raise DomainError) ----

using std::exp;
using std::log;
using std::pow;
using std::sqrt;

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
    using std::sqrt;
    T s = sqrt(a.v);
    return {s, a.d / (2.0 * s)};
}

template <class T>
Dual<T> exp(const Dual<T>& a) {
    using std::exp;
    T e = exp(a.v);
    return {e, a.d * e};
}

template <class T>
Dual<T> log(const Dual<T>& a) {
    using std::log;
    return {log(a.v), a.d / a.v};
}

// pow with a constant exponent only; keeps the derivative rule elementary.
template <class T>
Dual<T> pow(const Dual<T>& a, double c) {
    using std::pow;
    if (c == 0.0) return Dual<T>(1.0);
    if (c == 1.0) return a;
    T p1 = pow(a.v, c - 1.0);
    return {p1 * a.v, a.d * (c * p1)};
}

// ---- domain-checked wrappers used by expression evaluation and the
//      built-in fields ----

template <class T>
T checked_sqrt(const T& a) {
    double av = value_of(a);
    if (av < 0.0) throw DomainError("sqrt of negative value");
    if constexpr (is_dual_v<T>) {
        if (av == 0.0) throw DomainError("sqrt not differentiable at zero");
    }
    using std::sqrt;
    return sqrt(a);
}

template <class T>
T checked_log(const T& a) {
    if (value_of(a) <= 0.0) throw DomainError("log of non-positive value");
    using std::log;
    return log(a);
}

template <class T>
T checked_div(const T& a, const T& b) {
    if (value_of(b) == 0.0) throw DomainError("division by zero");
    return a / b;
}

template <class T>
T checked_pow(const T& a, double c) {
    double av = value_of(a);
    if (av < 0.0 && std::floor(c) != c)
        throw DomainError("pow of negative base with non-integer exponent");
    if (av == 0.0) {
        if (c < 0.0) throw DomainError("pow of zero base with negative exponent");
        if constexpr (is_dual_v<T>) {
            if (c > 0.0 && c < 1.0) throw DomainError("pow not differentiable at zero base");
        }
    }
    using std::pow;
    return pow(a, c);
}

template <class T>
T checked_abs(const T& a) {
    double av = value_of(a);
    if constexpr (is_dual_v<T>) {
        if (av == 0.0) throw DomainError("abs not differentiable at zero");
        return av > 0.0 ? a : -a;
    } else {
        return std::abs(a);
    }
}

}  // namespace spraylab
