#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include "spraylab/chart.hpp"
#include "spraylab/dual.hpp"
#include "spraylab/errors.hpp"
#include "spraylab/linalg.hpp"

namespace spraylab {

// An evaluable real function on the slit tangent bundle. The virtual
// surface accepts dual-valued coordinates so that any composition of
// fields (including ones defined through linear solves) stays
// differentiable to the order the nesting provides.
class ScalarField {
public:
    virtual ~ScalarField() = default;

    const std::shared_ptr<const Chart>& chart() const { return chart_; }
    int dim() const { return chart_->dim(); }
    virtual int max_order() const { return 3; }

    virtual double eval(const double* x, const double* y) const = 0;
    virtual D1 eval(const D1* x, const D1* y) const = 0;
    virtual D2 eval(const D2* x, const D2* y) const = 0;
    virtual D3 eval(const D3* x, const D3* y) const = 0;
    virtual D4 eval(const D4* x, const D4* y) const = 0;

    double eval_at(const TangentSample& p) const { return eval(p.x.data(), p.y.data()); }

protected:
    explicit ScalarField(std::shared_ptr<const Chart> chart) : chart_(std::move(chart)) {}
    std::shared_ptr<const Chart> chart_;
};

using ScalarFieldPtr = std::shared_ptr<const ScalarField>;

// Stamps the five dual-depth overrides out of one templated evaluator.
template <class Derived>
class ScalarFieldBase : public ScalarField {
public:
    double eval(const double* x, const double* y) const final {
        return self().template evalT<double>(x, y);
    }
    D1 eval(const D1* x, const D1* y) const final { return self().template evalT<D1>(x, y); }
    D2 eval(const D2* x, const D2* y) const final { return self().template evalT<D2>(x, y); }
    D3 eval(const D3* x, const D3* y) const final { return self().template evalT<D3>(x, y); }
    D4 eval(const D4* x, const D4* y) const final { return self().template evalT<D4>(x, y); }

protected:
    using ScalarField::ScalarField;

private:
    const Derived& self() const { return static_cast<const Derived&>(*this); }
};

// ---- pointwise derivative helpers, generic over the scalar type ----

// Partial derivative along one coordinate direction (dir < n: base x^dir,
// dir >= n: fiber y^{dir-n}), evaluated with one extra dual layer.
template <class T>
T field_partial(const ScalarField& f, int dir, const T* x, const T* y) {
    const int n = f.dim();
    std::array<Dual<T>, kMaxDim> dx, dy;
    for (int i = 0; i < n; ++i) {
        dx[i] = Dual<T>(x[i], T(dir == i ? 1.0 : 0.0));
        dy[i] = Dual<T>(y[i], T(dir == i + n ? 1.0 : 0.0));
    }
    return f.eval(dx.data(), dy.data()).d;
}

// value + gradient in one pass; grad has length 2n
template <class T>
T field_gradient(const ScalarField& f, const T* x, const T* y, T* grad) {
    const int n = f.dim();
    T value{};
    std::array<Dual<T>, kMaxDim> dx, dy;
    for (int dir = 0; dir < 2 * n; ++dir) {
        for (int i = 0; i < n; ++i) {
            dx[i] = Dual<T>(x[i], T(dir == i ? 1.0 : 0.0));
            dy[i] = Dual<T>(y[i], T(dir == i + n ? 1.0 : 0.0));
        }
        Dual<T> r = f.eval(dx.data(), dy.data());
        grad[dir] = r.d;
        if (dir == 0) value = r.v;
    }
    return value;
}

// ---- derivative towers ----

// Jet of a scalar field at one point: value, first partials in all 2n
// coordinates, symmetric second (and optionally third) arrays. Symmetry of
// the populated arrays is exact: each distinct index set is computed once
// and mirrored.
struct DerivativeTower {
    int n = 0;      // chart dimension
    int order = 0;  // highest populated order
    double value = 0.0;
    std::vector<double> first;   // 2n
    std::vector<double> second;  // (2n)^2 row-major
    std::vector<double> third;   // (2n)^3, only when order == 3

    double d1(int u) const { return first[static_cast<std::size_t>(u)]; }
    double d2(int u, int v) const { return second[static_cast<std::size_t>(u) * 2 * n + v]; }
    double d3(int u, int v, int w) const {
        std::size_t m = static_cast<std::size_t>(2 * n);
        return third[(static_cast<std::size_t>(u) * m + v) * m + w];
    }
};

namespace detail {

inline void seed_point1(const TangentSample& p, int n, int u, D1* x, D1* y) {
    for (int i = 0; i < n; ++i) {
        x[i] = D1(p.x[i], u == i ? 1.0 : 0.0);
        y[i] = D1(p.y[i], u == i + n ? 1.0 : 0.0);
    }
}

inline void seed_point2(const TangentSample& p, int n, int u, int v, D2* x, D2* y) {
    for (int i = 0; i < n; ++i) {
        x[i] = D2(D1(p.x[i], u == i ? 1.0 : 0.0), D1(v == i ? 1.0 : 0.0, 0.0));
        y[i] = D2(D1(p.y[i], u == i + n ? 1.0 : 0.0), D1(v == i + n ? 1.0 : 0.0, 0.0));
    }
}

inline void seed_point3(const TangentSample& p, int n, int u, int v, int w, D3* x, D3* y) {
    for (int i = 0; i < n; ++i) {
        x[i] = D3(D2(D1(p.x[i], u == i ? 1.0 : 0.0), D1(v == i ? 1.0 : 0.0, 0.0)),
                  D2(D1(w == i ? 1.0 : 0.0, 0.0), D1(0.0, 0.0)));
        y[i] = D3(D2(D1(p.y[i], u == i + n ? 1.0 : 0.0), D1(v == i + n ? 1.0 : 0.0, 0.0)),
                  D2(D1(w == i + n ? 1.0 : 0.0, 0.0), D1(0.0, 0.0)));
    }
}

}  // namespace detail

inline DerivativeTower evaluate_tower(const ScalarField& f, const TangentSample& p, int order) {
    const int n = f.dim();
    if (order < 0 || order > 3) throw SmoothnessError("tower order must be in [0,3]");
    if (order > f.max_order())
        throw SmoothnessError("field provides derivatives only to order " +
                              std::to_string(f.max_order()));
    if (!f.chart()->admissible(p)) throw DomainError("tower requested at inadmissible point");

    const int m = 2 * n;
    DerivativeTower t;
    t.n = n;
    t.order = order;
    if (order >= 1) t.first.assign(static_cast<std::size_t>(m), 0.0);
    if (order >= 2) t.second.assign(static_cast<std::size_t>(m) * m, 0.0);
    if (order == 3) t.third.assign(static_cast<std::size_t>(m) * m * m, 0.0);

    auto set2 = [&](int a, int b, double val) {
        t.second[static_cast<std::size_t>(a) * m + b] = val;
        t.second[static_cast<std::size_t>(b) * m + a] = val;
    };
    auto set3 = [&](int a, int b, int c, double val) {
        int idx[3] = {a, b, c};
        std::sort(idx, idx + 3);
        int perms[6][3] = {{idx[0], idx[1], idx[2]}, {idx[0], idx[2], idx[1]},
                           {idx[1], idx[0], idx[2]}, {idx[1], idx[2], idx[0]},
                           {idx[2], idx[0], idx[1]}, {idx[2], idx[1], idx[0]}};
        for (auto& pm : perms)
            t.third[(static_cast<std::size_t>(pm[0]) * m + pm[1]) * m + pm[2]] = val;
    };

    if (order == 0) {
        t.value = f.eval(p.x.data(), p.y.data());
        return t;
    }
    if (order == 1) {
        std::array<D1, kMaxDim> x, y;
        for (int u = 0; u < m; ++u) {
            detail::seed_point1(p, n, u, x.data(), y.data());
            D1 r = f.eval(x.data(), y.data());
            if (u == 0) t.value = r.v;
            t.first[static_cast<std::size_t>(u)] = r.d;
        }
        return t;
    }
    if (order == 2) {
        std::array<D2, kMaxDim> x, y;
        bool have_value = false;
        for (int u = 0; u < m; ++u)
            for (int v = u; v < m; ++v) {
                detail::seed_point2(p, n, u, v, x.data(), y.data());
                D2 r = f.eval(x.data(), y.data());
                if (!have_value) {
                    t.value = r.v.v;
                    have_value = true;
                }
                t.first[static_cast<std::size_t>(u)] = r.v.d;
                t.first[static_cast<std::size_t>(v)] = r.d.v;
                set2(u, v, r.d.d);
            }
        return t;
    }
    // order == 3
    std::array<D3, kMaxDim> x, y;
    bool have_value = false;
    for (int u = 0; u < m; ++u)
        for (int v = u; v < m; ++v)
            for (int w = v; w < m; ++w) {
                detail::seed_point3(p, n, u, v, w, x.data(), y.data());
                D3 r = f.eval(x.data(), y.data());
                if (!have_value) {
                    t.value = r.v.v.v;
                    have_value = true;
                }
                t.first[static_cast<std::size_t>(u)] = r.v.v.d;
                t.first[static_cast<std::size_t>(v)] = r.v.d.v;
                t.first[static_cast<std::size_t>(w)] = r.d.v.v;
                set2(u, v, r.v.d.d);
                set2(u, w, r.d.v.d);
                set2(v, w, r.d.d.v);
                set3(u, v, w, r.d.d.d);
            }
    return t;
}

// ---- homogeneity probe ----

struct HomogeneityFit {
    double degree = 0.0;  // average of the per-scale estimates
    double spread = 0.0;  // max - min over the tested scales
};

// Estimates d with f(x, s*y) = s^d f(x,y) from scales {1/2, 2, 4}. Exact
// positive homogeneity makes the three estimates coincide.
inline HomogeneityFit homogeneity_fit(const ScalarField& f, const TangentSample& p) {
    const int n = f.dim();
    double f0 = f.eval(p.x.data(), p.y.data());
    if (!(f0 > 0.0)) throw NonPositiveValue("homogeneity probe needs f > 0 at the sample");
    const double scales[3] = {0.5, 2.0, 4.0};
    double est[3];
    Vec ys(p.y);
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < n; ++i) ys[i] = p.y[i] * scales[k];
        double fs = f.eval(p.x.data(), ys.data());
        if (!(fs > 0.0)) throw NonPositiveValue("homogeneity probe needs f > 0 at scaled sample");
        est[k] = std::log(fs / f0) / std::log(scales[k]);
    }
    HomogeneityFit fit;
    fit.degree = (est[0] + est[1] + est[2]) / 3.0;
    double lo = std::min({est[0], est[1], est[2]});
    double hi = std::max({est[0], est[1], est[2]});
    fit.spread = hi - lo;
    return fit;
}

inline double homogeneity_degree(const ScalarField& f, const TangentSample& p) {
    return homogeneity_fit(f, p).degree;
}

}  // namespace spraylab
