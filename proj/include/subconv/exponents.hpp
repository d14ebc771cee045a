#pragma once

// Exact-rational exponent bookkeeping.  Bounds are linear forms in
// x_N = log_p N and x_L = log_p L (the constant term is the coefficient of
// log p); the amplified estimate contributes two competing forms whose
// balance in x_L, maximized over x_N against the trivial regime, yields the
// final saving delta: 1/524 for j = 2 and 1/302 for j = 1 at sigma = 1/20.

#include <string>
#include <vector>

#include "subconv/arith.hpp"

namespace subconv::exponents {

using arith::i64;

// Exact rational with 64-bit numerator/denominator and checked arithmetic.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(i64 n) : num_(n), den_(1) {}
    Rational(i64 n, i64 d);

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return double(num_) / double(den_); }
    std::string str() const;

    static Rational parse(const std::string& s);  // "a/b" or "a"

private:
    i64 num_;
    i64 den_;  // > 0, gcd(|num|,den) = 1
};

// c_N * x_N + c_L * x_L + c_0   (c_0 multiplies log p)
struct ExponentForm {
    Rational cN, cL, c0;
    std::string label;

    Rational value(const Rational& xN, const Rational& xL) const {
        return cN * xN + cL * xL + c0;
    }
};

// aN * xN + aL * xL <= b
struct LinearConstraint {
    Rational aN, aL, b;
    std::string label;

    bool satisfied(const Rational& xN, const Rational& xL) const {
        return aN * xN + aL * xL <= b;
    }
};

struct ExponentLedger {
    std::vector<ExponentForm> forms;
    std::vector<LinearConstraint> constraints;
    int j = 2;
    Rational sigma;
};

// The two competing forms of the key estimate, divided by L and sqrt(N):
// the amplifier-diagonal term L^{-1/2} p^{1/2} and the Kloosterman-fraction
// term N^{1/2-7sigma/4} p^{3sigma/2} L^{3j/2-9jsigma/4}, with the domain
// constraints x_N <= 1, 0 <= x_L <= x_N/10.
// sigma must lie in [0, 1/9); j in {1, 2}.
ExponentLedger proposition_ledger(int j, const Rational& sigma);

struct Balance {
    // x_L* = slope * x_N + intercept
    Rational slope, intercept;
    // the common form value at the balance, as a function of x_N
    Rational value_slope, value_intercept;
};

// Equates the ledger's two forms in x_L; DegenerateBalance if their x_L
// coefficients coincide.
Balance balance_L(const ExponentLedger& ledger);

// The saving delta with L(1/2) << p^{1/2 - delta}: exact maximization over
// x_N in [0,1] of the regime minimum (trivial x_N/2 for x_N <= 2/3, the
// balanced amplified bound for x_N >= 2/3).
Rational final_delta(int j, const Rational& sigma);

struct MinimaxResult {
    Rational xN, xL, value;
};

// Exact min over the feasible region of max_i forms_i, by enumerating
// pairwise intersections of constraint boundaries and form equalities.
// Preconditions: <= 20 forms, bounded nonempty region (Infeasible thrown
// when empty).
MinimaxResult minimize_max(const std::vector<ExponentForm>& forms,
                           const std::vector<LinearConstraint>& constraints);

} // namespace subconv::exponents
