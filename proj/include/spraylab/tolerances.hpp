#pragma once

namespace spraylab {

// Central tolerance record; every identity check in the library scales its
// discrepancy by the magnitudes involved and floors the denominator.
struct Tolerances {
    double rel = 1e-7;        // relative tolerance for identity checks
    double abs_floor = 1e-10; // absolute floor added to relative scales
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

// |a - b| measured against |a| + |b| with an absolute floor.
inline double rel_gap(double a, double b, double floor_ = 1e-10) {
    double d = a - b;
    if (d < 0) d = -d;
    double s = (a < 0 ? -a : a) + (b < 0 ? -b : b) + floor_;
    return d / s;
}

}  // namespace spraylab
