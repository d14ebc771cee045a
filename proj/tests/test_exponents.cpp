#include <doctest.h>

#include "subconv/exponents.hpp"

using namespace subconv;
using exponents::Rational;

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(1, 2) / Rational(3, 2) == Rational(1, 3));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(33, 524) + Rational(228, 524) == Rational(261, 524));
    CHECK(Rational::parse("1/20") == Rational(1, 20));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational(5, 10).str() == "1/2");
    CHECK_THROWS_AS(Rational(1, 0), PreconditionViolated);
}

TEST_CASE("proposition ledger forms") {
    auto led = exponents::proposition_ledger(2, Rational(1, 20));
    REQUIRE(led.forms.size() == 2);
    // sigma = 0 degenerates to the sigma-free exponents
    auto led0 = exponents::proposition_ledger(2, Rational(0));
    CHECK(led0.forms[1].cN == Rational(1, 2));
    CHECK(led0.forms[1].cL == Rational(3));
    CHECK(led0.forms[1].c0 == Rational(0));
    // sigma = 1/20, j = 2: hand-expanded coefficients
    CHECK(led.forms[1].cN == Rational(1, 2) - Rational(7, 80));  // 33/80
    CHECK(led.forms[1].cN == Rational(33, 80));
    CHECK(led.forms[1].cL == Rational(3) - Rational(9, 40));     // 111/40... check below
    CHECK(led.forms[1].cL == Rational(111, 40));
    CHECK(led.forms[1].c0 == Rational(3, 40));
    // j = 1 conditional ledger
    auto led1 = exponents::proposition_ledger(1, Rational(1, 20));
    CHECK(led1.forms[1].cL == Rational(3, 2) - Rational(9, 80));
    CHECK_THROWS_AS(exponents::proposition_ledger(3, Rational(1, 20)), PreconditionViolated);
    CHECK_THROWS_AS(exponents::proposition_ledger(2, Rational(1, 2)), InvalidSigma);
}

TEST_CASE("balance reproduces the optimal L exponents") {
    auto b2 = exponents::balance_L(exponents::proposition_ledger(2, Rational(1, 20)));
    CHECK(b2.slope == Rational(-33, 262));   // -(2-7s)/(14-18s) at s = 1/20
    CHECK(b2.intercept == Rational(17, 131)); // (1-3s)/(7-9s)
    auto b1 = exponents::balance_L(exponents::proposition_ledger(1, Rational(1, 20)));
    CHECK(b1.slope == Rational(-33, 151));   // -(2-7s)/(8-9s)
    CHECK(b1.intercept == Rational(34, 151)); // (2-6s)/(8-9s)

    // symmetric toy ledger: two forms mirrored in x_L balance at the midpoint
    exponents::ExponentLedger toy;
    toy.forms.push_back({Rational(0), Rational(1), Rational(0), "up"});
    toy.forms.push_back({Rational(0), Rational(-1), Rational(1), "down"});
    auto bt = exponents::balance_L(toy);
    CHECK(bt.slope == Rational(0));
    CHECK(bt.intercept == Rational(1, 2));

    exponents::ExponentLedger degen;
    degen.forms.push_back({Rational(1), Rational(2), Rational(0), "a"});
    degen.forms.push_back({Rational(0), Rational(2), Rational(1), "b"});
    CHECK_THROWS_AS(exponents::balance_L(degen), DegenerateBalance);
}

TEST_CASE("final delta reproduces 1/524 and 1/302") {
    CHECK(exponents::final_delta(2, Rational(1, 20)) == Rational(1, 524));
    CHECK(exponents::final_delta(1, Rational(1, 20)) == Rational(1, 302));
    // sigma = 0 gives a strictly smaller saving
    CHECK(exponents::final_delta(2, Rational(0)) < Rational(1, 524));
    // monotone in sigma on the implemented ledger
    Rational prev(-1);
    for (int k = 0; k * 19 <= 100; ++k) {
        Rational d = exponents::final_delta(2, Rational(k, 100));
        CHECK(prev <= d);
        prev = d;
    }
}

TEST_CASE("intermediate bound at N = p") {
    auto b = exponents::balance_L(exponents::proposition_ledger(2, Rational(1, 20)));
    CHECK(b.value_slope == Rational(33, 524));
    CHECK(b.value_intercept == Rational(228, 524));
    CHECK(b.value_slope + b.value_intercept == Rational(1, 2) - Rational(1, 524));
}

TEST_CASE("minimize_max") {
    using exponents::ExponentForm;
    using exponents::LinearConstraint;
    // single form on a box: maximum... minimized over vertices
    std::vector<ExponentForm> one = {{Rational(1), Rational(1), Rational(0), "f"}};
    std::vector<LinearConstraint> box = {
        {Rational(1), Rational(0), Rational(1), "x<=1"},
        {Rational(-1), Rational(0), Rational(0), "x>=0"},
        {Rational(0), Rational(1), Rational(1), "y<=1"},
        {Rational(0), Rational(-1), Rational(0), "y>=0"},
    };
    auto r = exponents::minimize_max(one, box);
    CHECK(r.value == Rational(0));  // minimized at the origin vertex

    // two crossing forms in one variable: balance point
    std::vector<ExponentForm> two = {
        {Rational(0), Rational(1), Rational(0), "up"},
        {Rational(0), Rational(-1), Rational(1), "down"},
    };
    auto r2 = exponents::minimize_max(two, box);
    CHECK(r2.value == Rational(1, 2));
    CHECK(r2.xL == Rational(1, 2));

    // the full two-form ledger at x_N = 1 reproduces the final bound exponent
    auto led = exponents::proposition_ledger(2, Rational(1, 20));
    auto cons = led.constraints;
    cons.push_back({Rational(1), Rational(0), Rational(1), "xN <= 1"});
    cons.push_back({Rational(-1), Rational(0), Rational(-1), "xN >= 1"});
    auto r3 = exponents::minimize_max(led.forms, cons);
    CHECK(r3.value == Rational(261, 524));
    CHECK(r3.value == Rational(1, 2) - Rational(1, 524));

    // infeasible region
    std::vector<LinearConstraint> bad = {
        {Rational(1), Rational(0), Rational(0), "x<=0"},
        {Rational(-1), Rational(0), Rational(-1), "x>=1"},
        {Rational(0), Rational(1), Rational(1), "y<=1"},
        {Rational(0), Rational(-1), Rational(0), "y>=0"},
    };
    CHECK_THROWS_AS(exponents::minimize_max(one, bad), Infeasible);
}
