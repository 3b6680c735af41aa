#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spraylab/errors.hpp"
#include "spraylab/linalg.hpp"

namespace spraylab {

// A point of the slit tangent bundle in one coordinate chart.
struct TangentSample {
    Vec x;  // base coordinates
    Vec y;  // fiber coordinates, never the zero vector
};

// One coordinate patch: base-domain membership plus a positive cone of
// admissible fiber vectors over each base point.
class Chart {
public:
    using DomainPred = std::function<bool(const double* x, int n)>;
    using ConePred = std::function<bool(const double* x, const double* y, int n)>;

    Chart(int dim, std::string name, DomainPred domain, ConePred cone)
        : dim_(dim), name_(std::move(name)), domain_(std::move(domain)), cone_(std::move(cone)) {
        if (dim_ < 2 || dim_ > kMaxDim)
            throw ConfigError("chart dimension must be in [2, " + std::to_string(kMaxDim) + "]");
    }

    int dim() const { return dim_; }
    const std::string& name() const { return name_; }

    bool base_admissible(const double* x) const { return domain_(x, dim_); }

    bool fiber_admissible(const double* x, const double* y) const {
        bool nonzero = false;
        for (int i = 0; i < dim_; ++i)
            if (y[i] != 0.0) nonzero = true;
        return nonzero && cone_(x, y, dim_);
    }

    bool admissible(const TangentSample& p) const {
        if (static_cast<int>(p.x.size()) != dim_ || static_cast<int>(p.y.size()) != dim_)
            return false;
        return base_admissible(p.x.data()) && fiber_admissible(p.x.data(), p.y.data());
    }

    // open ball |x| < radius, all y != 0
    static std::shared_ptr<const Chart> ball(int n, double radius = 1.0) {
        return std::make_shared<Chart>(
            n, "ball:" + std::to_string(radius),
            [radius](const double* x, int m) {
                double s = 0.0;
                for (int i = 0; i < m; ++i) s += x[i] * x[i];
                return s < radius * radius;
            },
            [](const double*, const double*, int) { return true; });
    }

    static std::shared_ptr<const Chart> all_space(int n) {
        return std::make_shared<Chart>(
            n, "all", [](const double*, int) { return true; },
            [](const double*, const double*, int) { return true; });
    }

    // conic fiber domain y[axis] > 0 over the whole base
    static std::shared_ptr<const Chart> half_cone(int n, int axis) {
        return std::make_shared<Chart>(
            n, "halfcone:y" + std::to_string(axis + 1),
            [](const double*, int) { return true; },
            [axis](const double*, const double* y, int) { return y[axis] > 0.0; });
    }

private:
    int dim_;
    std::string name_;
    DomainPred domain_;
    ConePred cone_;
};

}  // namespace spraylab
