#pragma once

// The delta-symbol expansion
//
//   delta(n = 0) = (1/C) sum_{c,d >= 1} (cd)^{-1} S(0,n;c) F(cd/C, n/(cdC)),
//
//   F(x,y) = C (sum_c W(c/C))^{-1} (W(x) U(x) U(y) - W(y) U(x) U(y)),
//
// with U even, C-infinity, = 1 on [-2,2], supported in [-S,S]; W even,
// non-negative, C-infinity, supported in [-2,-1] u [1,2].  The identity is
// exact for every integer n (divisor-pairing telescope), so delta_eval is a
// numerical certificate of the expansion: float error only.

#include <functional>

#include "subconv/arith.hpp"

namespace subconv::deltasym {

using arith::i64;

struct BumpPair {
    // U-type: even plateau, 1 on [-2,2], 0 outside [-support, support]
    std::function<double(double)> U;
    double u_support;  // S > 2
    // W-type: even, >= 0, supported in [-2,-1] u [1,2]
    std::function<double(double)> W;
    std::string name;
};

// The default pair (U supported in [-4,4]; W the standard bump rescaled
// to [1,2]) and an alternative admissible pair for cross-checks.
BumpPair default_bumps();
BumpPair alternative_bumps();

class DeltaExpansion {
public:
    // C > 2 so that [C, 2C] contains integers and the normalizer is positive.
    explicit DeltaExpansion(double C, BumpPair bumps = default_bumps());

    double C() const { return C_; }
    double normalizer() const { return normalizer_; }
    const BumpPair& bumps() const { return bumps_; }

    // F(x, y); exactly antisymmetric under (x,y) swap wherever U(x)U(y)=1.
    double f_eval(double x, double y) const;

    // The full double sum; 1 for n = 0 and 0 otherwise up to float error.
    // term_budget guards the loop; TruncationIncomplete if exhausted.
    double delta_eval(i64 n, i64 term_budget = 10000000) const;

private:
    double C_;
    BumpPair bumps_;
    double normalizer_;  // sum_{c >= 1} W(c/C)
};

} // namespace subconv::deltasym
