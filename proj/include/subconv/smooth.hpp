#pragma once

// Compactly supported C-infinity building blocks shared by the delta symbol,
// the oscillatory integrals, and the pipeline windows.  Everything is built
// from exp(-1/t): exact zeros outside supports, smooth everywhere.

#include <cmath>

namespace subconv::smooth {

// exp(-1/t) for t > 0, 0 otherwise; C-infinity on R.
inline double exp_reciprocal(double t) {
    return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
}

// Monotone C-infinity step: 0 for t <= 0, 1 for t >= 1.
inline double step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = exp_reciprocal(t);
    double b = exp_reciprocal(1.0 - t);
    return a / (a + b);
}

// The standard bump exp(-1/(1-t^2)) on (-1,1), exactly 0 outside.
inline double standard_bump(double t) {
    double s = 1.0 - t * t;
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

// Plateau: exactly 1 on [a, b], exactly 0 outside [a - pad, b + pad].
class Plateau {
public:
    Plateau(double a, double b, double pad) : a_(a), b_(b), pad_(pad) {}

    double operator()(double x) const {
        if (x >= a_ && x <= b_) return 1.0;
        if (x < a_) return step((x - (a_ - pad_)) / pad_);
        return step(((b_ + pad_) - x) / pad_);
    }

    double support_lo() const { return a_ - pad_; }
    double support_hi() const { return b_ + pad_; }

private:
    double a_, b_, pad_;
};

} // namespace subconv::smooth
