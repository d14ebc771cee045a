#include "subconv/deltasym.hpp"

#include <cmath>

#include "subconv/charsums.hpp"
#include "subconv/smooth.hpp"

namespace subconv::deltasym {

BumpPair default_bumps() {
    BumpPair b;
    b.u_support = 4.0;
    // 1 on [-2,2], smooth fall to 0 on [2,4]
    b.U = [](double x) {
        double a = std::abs(x);
        if (a <= 2.0) return 1.0;
        return smooth::step((4.0 - a) / 2.0);
    };
    // standard bump carried onto [1,2]
    b.W = [](double x) {
        double a = std::abs(x);
        return smooth::standard_bump(2.0 * a - 3.0);
    };
    b.name = "standard";
    return b;
}

BumpPair alternative_bumps() {
    BumpPair b;
    b.u_support = 3.0;
    b.U = [](double x) {
        double a = std::abs(x);
        if (a <= 2.0) return 1.0;
        return smooth::step(3.0 - a);
    };
    // product-of-steps bump on [1,2]; different profile from standard_bump
    b.W = [](double x) {
        double a = std::abs(x);
        return smooth::step(4.0 * (a - 1.0)) * smooth::step(4.0 * (2.0 - a));
    };
    b.name = "steps";
    return b;
}

DeltaExpansion::DeltaExpansion(double C, BumpPair bumps)
    : C_(C), bumps_(std::move(bumps)) {
    if (!(C > 2.0))
        throw PreconditionViolated("DeltaExpansion: C > 2 required");
    arith::KahanSum norm;
    // W(c/C) is nonzero only for C <= c <= 2C
    for (i64 c = i64(std::floor(C_)); c <= i64(std::ceil(2.0 * C_)); ++c) {
        if (c < 1) continue;
        norm.add(bumps_.W(double(c) / C_));
    }
    normalizer_ = norm.value();
    if (!(normalizer_ > 0.0))
        throw NormalizerVanishes("DeltaExpansion: no integer c has W(c/C) > 0");
}

double DeltaExpansion::f_eval(double x, double y) const {
    double u = bumps_.U(x) * bumps_.U(y);
    if (u == 0.0) return 0.0;
    return (C_ / normalizer_) * (bumps_.W(x) - bumps_.W(y)) * u;
}

double DeltaExpansion::delta_eval(i64 n, i64 term_budget) const {
    const double S = bumps_.u_support;
    const i64 cd_max = i64(std::floor(S * C_));  // U(cd/C) = 0 beyond
    arith::KahanSum acc;
    i64 used = 0;
    for (i64 c = 1; c <= cd_max; ++c) {
        i64 r = charsums::ramanujan_sum(n, c);
        if (r == 0) continue;
        for (i64 d = 1; c * d <= cd_max; ++d) {
            if (++used > term_budget)
                throw TruncationIncomplete("delta_eval: term budget exhausted");
            double q = double(c) * double(d);
            double fx = q / C_;
            double fy = double(n) / (q * C_);
            double F = f_eval(fx, fy);
            if (F == 0.0) continue;
            acc.add(double(r) / q * F);
        }
    }
    return acc.value() / C_;
}

} // namespace subconv::deltasym
