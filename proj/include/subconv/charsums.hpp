#pragma once

// Ramanujan sums S(0,n;c), Kloosterman sums S(a,b;c), Dirichlet characters
// mod q with Gauss sums and conductors.
//
// Ramanujan sums use the classical closed form sum_{d | (n,c)} d*mu(c/d),
// which is exact in integers; the brute-force root-of-unity sum is kept as
// an independent oracle.  Characters are stored by generator images per
// prime-power component, with discrete-log tables for O(1) evaluation; all
// character values are exact RationalPhase fractions until the final
// complex accumulation.

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "subconv/arith.hpp"

namespace subconv::charsums {

using arith::complexd;
using arith::i64;
using arith::RationalPhase;

// S(0,n;c) = sum over h mod c, (h,c)=1, of e(hn/c).  Exact integer.
i64 ramanujan_sum(i64 n, i64 c);

// The same sum done numerically over roots of unity and rounded.  Throws
// RoundingResidualTooLarge if the residual exceeds 1e-6 * phi(c).
// Precondition: c <= 10^6.
i64 ramanujan_sum_bruteforce(i64 n, i64 c);

// S(a,b;c) = sum over x mod c, (x,c)=1, of e((a x + b xbar)/c).
// Brute force; c <= 10^6.
complexd kloosterman_sum(i64 a, i64 b, i64 c);

// table[r] = S(0,r;c) for r in [0,c); O(c log log c) via divisor scatter.
std::vector<i64> ramanujan_table(i64 c);

// ---------------------------------------------------------------------------
// Dirichlet characters
// ---------------------------------------------------------------------------

namespace detail {

// Immutable per-prime-power unit-group data shared by the phi(q) characters
// of a given modulus: generators and a discrete-log table.
struct ComponentGroup {
    i64 prime = 0;
    int exponent = 0;
    i64 pk = 1;                    // prime^exponent
    // generator orders; one entry for odd p and for 2,4, two entries
    // (<-1>, <5>) for 2^k with k >= 3
    std::vector<i64> orders;
    std::vector<i64> generators;
    // dlog[x] for x in [0,pk): packed exponents (a + orders[0]*b for the
    // two-generator case), or -1 for non-units
    std::vector<i64> dlog;
};

struct CharacterTable {
    i64 modulus = 1;
    std::vector<ComponentGroup> components;
};

std::shared_ptr<const CharacterTable> character_table(i64 q);

} // namespace detail

class DirichletCharacter {
public:
    // Principal character mod q.
    static DirichletCharacter principal(i64 q);

    i64 modulus() const { return table_->modulus; }

    // chi(a) as an exact phase; nullopt when gcd(a, q) > 1 (i.e. chi(a)=0).
    std::optional<RationalPhase> phase(i64 a) const;

    // chi(a) as a complex value (0 when gcd(a,q) > 1).
    complexd operator()(i64 a) const {
        auto ph = phase(a);
        return ph ? ph->eval() : complexd{0.0, 0.0};
    }

    bool is_principal() const;
    // order of chi in the character group
    i64 order() const;
    // smallest modulus q* | q from which chi is induced
    i64 conductor() const;
    bool is_primitive() const { return conductor() == modulus(); }
    // true when all values are real (chi^2 principal)
    bool is_real() const;

    DirichletCharacter conjugate() const;
    // the primitive character mod conductor() inducing this one
    DirichletCharacter primitive_inducing() const;

    bool operator==(const DirichletCharacter& o) const {
        return table_->modulus == o.table_->modulus && images_ == o.images_;
    }

    // image exponents (one per generator, components in order); exposed for
    // deterministic ordering of character lists
    const std::vector<i64>& images() const { return images_; }

private:
    DirichletCharacter(std::shared_ptr<const detail::CharacterTable> t,
                       std::vector<i64> images)
        : table_(std::move(t)), images_(std::move(images)) {}

    friend std::vector<DirichletCharacter> characters_mod(i64 q);
    friend DirichletCharacter character_from_images(i64 q, const std::vector<i64>& images);

    std::shared_ptr<const detail::CharacterTable> table_;
    std::vector<i64> images_;  // exponent of e(1/orders[i]) per generator
};

// All phi(q) characters mod q, principal first, deterministic order.
// Precondition: q <= 10^5.
std::vector<DirichletCharacter> characters_mod(i64 q);

// Character with the given generator image exponents (used by tests).
DirichletCharacter character_from_images(i64 q, const std::vector<i64>& images);

// tau(chi) = sum_x chi(x) e(x/q).
complexd gauss_sum(const DirichletCharacter& chi);

inline i64 conductor(const DirichletCharacter& chi) { return chi.conductor(); }

} // namespace subconv::charsums
