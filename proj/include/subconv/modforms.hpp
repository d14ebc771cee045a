#pragma once

// Hecke-multiplicative coefficient sequences lambda(n) and the amplifier.
//
// Three providers:
//   * divisor sequence lambda(n) = d(n)            (level 1 Eisenstein data)
//   * weight-12 cusp form lambda(n) = tau(n)/n^{11/2}, tau computed exactly
//     from the eta-product power series
//   * synthetic level-p sequences built from Satake angles so that every
//     Hecke relation the arguments use holds by construction
//
// The amplifier A(L) = A1 + A2 telescopes to the prime count pi(L)-pi(L/2)
// for any sequence satisfying the relations with its nebentypus.

#include <complex>
#include <iosfwd>
#include <vector>

#include "subconv/arith.hpp"
#include "subconv/charsums.hpp"

namespace subconv::modforms {

using arith::complexd;
using arith::i64;
using charsums::DirichletCharacter;

enum class SequenceKind { DivisorEisenstein, DeltaForm, SyntheticHecke, Imported };

class CoefficientSequence {
public:
    SequenceKind kind() const { return kind_; }
    i64 level() const { return level_; }
    int weight() const { return weight_; }
    const DirichletCharacter& nebentypus() const { return chi_; }
    complexd fricke_eigenvalue() const { return fricke_; }
    i64 n_max() const { return i64(values_.size()) - 1; }

    complexd operator()(i64 n) const {
        if (n < 1 || n > n_max())
            throw PreconditionViolated("CoefficientSequence: n out of range");
        return values_[size_t(n)];
    }

    void to_csv(std::ostream& os) const;

    static CoefficientSequence from_values(std::vector<complexd> values_from_1,
                                           i64 level, int weight,
                                           DirichletCharacter chi,
                                           complexd fricke,
                                           SequenceKind kind = SequenceKind::Imported);
    static CoefficientSequence from_csv(std::istream& is, i64 level, int weight,
                                        DirichletCharacter chi, complexd fricke);

private:
    CoefficientSequence(SequenceKind kind, i64 level, int weight,
                        DirichletCharacter chi, complexd fricke,
                        std::vector<complexd> values)
        : kind_(kind), level_(level), weight_(weight), chi_(std::move(chi)),
          fricke_(fricke), values_(std::move(values)) {}

    friend CoefficientSequence coeffs_divisor(i64 n_max);
    friend CoefficientSequence coeffs_delta_form(i64 n_max);
    friend CoefficientSequence coeffs_synthetic(i64 n_max, const DirichletCharacter& chi,
                                                complexd lambda_p, arith::u64 seed);

    SequenceKind kind_;
    i64 level_;
    int weight_;
    DirichletCharacter chi_;
    complexd fricke_;
    std::vector<complexd> values_;  // index 0 unused
};

// lambda(n) = number of divisors of n.  n_max <= 1e7.
CoefficientSequence coeffs_divisor(i64 n_max);

// lambda(n) = tau(n) / n^{11/2}.  n_max <= 1e5.
CoefficientSequence coeffs_delta_form(i64 n_max);

// Exact Ramanujan tau(1..n_max) from q * prod (1-q^m)^24.
std::vector<__int128> ramanujan_tau(i64 n_max);

// Synthetic level-p Hecke sequence.  chi must have prime modulus p;
// |lambda_p| <= 1 (InvalidLambdaP otherwise).  Deterministic under seed.
CoefficientSequence coeffs_synthetic(i64 n_max, const DirichletCharacter& chi,
                                     complexd lambda_p, arith::u64 seed);

struct HeckeReport {
    i64 checked_to = 0;
    double max_dev_multiplication = 0.0;  // lambda(m)lambda(n) vs sum chi(d)lambda(mn/d^2)
    double max_dev_inversion = 0.0;       // lambda(mn) vs Moebius-inverted form
    bool pass = false;                    // both <= 1e-9
};

// Verifies both Hecke identities for all m, n <= M (requires M^2 <= n_max).
HeckeReport hecke_check(const CoefficientSequence& seq, i64 M);

struct AmplifierReport {
    i64 L = 0;
    complexd A1{}, A2{}, A{};
    i64 prime_count = 0;  // pi(L) - pi(L/2)
    double deviation = 0.0;  // |A - prime_count|
};

// A1 = sum_{L/2 < nu <= L prime} |lambda(nu)|^2, A2 = -sum conj(chi(nu)) lambda(nu^2).
// Requires L^2 <= n_max and prime level > L.
AmplifierReport amplifier_eval(const CoefficientSequence& seq, i64 L);

// (1/N) * sum_{n <= N} |lambda(n)|^2.
double l2_ratio(const CoefficientSequence& seq, i64 N);

} // namespace subconv::modforms
