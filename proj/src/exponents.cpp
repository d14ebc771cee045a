#include "subconv/exponents.hpp"

#include <algorithm>
#include <numeric>

namespace subconv::exponents {

using arith::i128;

namespace {

i64 narrow(i128 v, const char* what) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw Overflow(std::string("Rational: overflow in ") + what);
    return i64(v);
}

} // namespace

Rational::Rational(i64 n, i64 d) {
    if (d == 0) throw PreconditionViolated("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i64 g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num_ = n / g;
    den_ = d / g;
}

Rational Rational::operator+(const Rational& o) const {
    i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    i128 d = i128(den_) * o.den_;
    // reduce through 128-bit gcd before narrowing
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    return Rational(narrow(n / a, "+"), narrow(d / a, "+"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    i64 g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
    i64 g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
    i128 n = i128(num_ / g1) * (o.num_ / g2);
    i128 d = i128(den_ / g2) * (o.den_ / g1);
    return Rational(narrow(n, "*"), narrow(d, "*"));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw PreconditionViolated("Rational: division by zero");
    return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return i128(num_) * o.den_ < i128(o.num_) * den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s), 1);
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

ExponentLedger proposition_ledger(int j, const Rational& sigma) {
    if (j != 1 && j != 2)
        throw PreconditionViolated("proposition_ledger: j must be 1 or 2");
    if (sigma < Rational(0) || !(sigma < Rational(1, 9)))
        throw InvalidSigma("proposition_ledger: sigma must lie in [0, 1/9)");
    ExponentLedger led;
    led.j = j;
    led.sigma = sigma;
    // sqrt(N L p) / (L sqrt(N)) = L^{-1/2} p^{1/2}
    led.forms.push_back({Rational(0), Rational(-1, 2), Rational(1, 2),
                         "amplifier_diagonal"});
    // N^{1-7s/4} p^{3s/2} L^{3j/2+1-9js/4} / (L sqrt(N))
    Rational cN = Rational(1, 2) - Rational(7, 4) * sigma;
    Rational cL = Rational(3 * j, 2) - Rational(9 * j, 4) * sigma;
    Rational c0 = Rational(3, 2) * sigma;
    led.forms.push_back({cN, cL, c0, "kloosterman_fraction"});
    // domain: 0 <= x_L <= x_N / 10, x_N <= 1, x_N >= 0
    led.constraints.push_back({Rational(0), Rational(-1), Rational(0), "xL >= 0"});
    led.constraints.push_back({Rational(-1, 10), Rational(1), Rational(0), "xL <= xN/10"});
    led.constraints.push_back({Rational(1), Rational(0), Rational(1), "xN <= 1"});
    led.constraints.push_back({Rational(-1), Rational(0), Rational(0), "xN >= 0"});
    return led;
}

Balance balance_L(const ExponentLedger& ledger) {
    if (ledger.forms.size() != 2)
        throw PreconditionViolated("balance_L: exactly two forms required");
    const ExponentForm& f = ledger.forms[0];
    const ExponentForm& g = ledger.forms[1];
    Rational dL = g.cL - f.cL;
    if (dL == Rational(0))
        throw DegenerateBalance("balance_L: x_L coefficients coincide");
    Balance b;
    b.slope = (f.cN - g.cN) / dL;
    b.intercept = (f.c0 - g.c0) / dL;
    b.value_slope = f.cN + f.cL * b.slope;
    b.value_intercept = f.c0 + f.cL * b.intercept;
    return b;
}

namespace {

// min over x_L in [lo, hi] of max(form values) at fixed x_N; all exact.
Rational min_over_xl(const std::vector<ExponentForm>& forms, const Rational& xN,
                     const Rational& lo, const Rational& hi) {
    std::vector<Rational> candidates{lo, hi};
    for (size_t i = 0; i < forms.size(); ++i) {
        for (size_t k = i + 1; k < forms.size(); ++k) {
            Rational dL = forms[k].cL - forms[i].cL;
            if (dL == Rational(0)) continue;
            Rational xl = ((forms[i].cN - forms[k].cN) * xN +
                           (forms[i].c0 - forms[k].c0)) /
                          dL;
            if (lo <= xl && xl <= hi) candidates.push_back(xl);
        }
    }
    bool first = true;
    Rational best;
    for (const Rational& xl : candidates) {
        Rational mx = forms[0].value(xN, xl);
        for (const ExponentForm& f : forms) {
            Rational v = f.value(xN, xl);
            if (mx < v) mx = v;
        }
        if (first || mx < best) { best = mx; first = false; }
    }
    return best;
}

} // namespace

Rational final_delta(int j, const Rational& sigma) {
    ExponentLedger led = proposition_ledger(j, sigma);
    // trivial regime S(N) << N, so S(N)/sqrt(N) << N^{1/2}: maximal at the
    // regime boundary x_N = 2/3
    Rational best = Rational(1, 3);
    // amplified regime on x_N in [2/3, 1]; the partial minimum over x_L is
    // convex in x_N, so its maximum is at an endpoint
    for (const Rational& xN : {Rational(2, 3), Rational(1)}) {
        Rational g = min_over_xl(led.forms, xN, Rational(0), xN * Rational(1, 10));
        if (best < g) best = g;
    }
    return Rational(1, 2) - best;
}

MinimaxResult minimize_max(const std::vector<ExponentForm>& forms,
                           const std::vector<LinearConstraint>& constraints) {
    if (forms.empty() || forms.size() > 20)
        throw PreconditionViolated("minimize_max: need 1..20 forms");
    // candidate lines: constraint boundaries and pairwise form equalities
    struct Line {
        Rational a, b, c;  // a x + b y = c
    };
    std::vector<Line> lines;
    for (const LinearConstraint& con : constraints)
        lines.push_back({con.aN, con.aL, con.b});
    for (size_t i = 0; i < forms.size(); ++i)
        for (size_t k = i + 1; k < forms.size(); ++k)
            lines.push_back({forms[i].cN - forms[k].cN, forms[i].cL - forms[k].cL,
                             forms[k].c0 - forms[i].c0});

    auto feasible = [&constraints](const Rational& x, const Rational& y) {
        for (const LinearConstraint& con : constraints)
            if (!con.satisfied(x, y)) return false;
        return true;
    };
    auto max_at = [&forms](const Rational& x, const Rational& y) {
        Rational mx = forms[0].value(x, y);
        for (const ExponentForm& f : forms) {
            Rational v = f.value(x, y);
            if (mx < v) mx = v;
        }
        return mx;
    };

    MinimaxResult best;
    bool found = false;
    for (size_t i = 0; i < lines.size(); ++i) {
        for (size_t k = i + 1; k < lines.size(); ++k) {
            Rational det = lines[i].a * lines[k].b - lines[k].a * lines[i].b;
            if (det == Rational(0)) continue;
            Rational x = (lines[i].c * lines[k].b - lines[k].c * lines[i].b) / det;
            Rational y = (lines[i].a * lines[k].c - lines[k].a * lines[i].c) / det;
            if (!feasible(x, y)) continue;
            Rational v = max_at(x, y);
            if (!found || v < best.value) {
                best = {x, y, v};
                found = true;
            }
        }
    }
    if (!found) throw Infeasible("minimize_max: no feasible vertex");
    return best;
}

} // namespace subconv::exponents
