#pragma once

// Poisson character sums over the double modulus (c1, c2):
//
//   Shat(m) = (1/c1c2) sum_{x mod c1c2}
//               S(0, p n1 - x l1; c1) S(0, p n2 - x l2; c2) e_{c1c2}(x m),
//
// with the closed CRT evaluation, the reciprocity variants, and the
// alpha_0 / alphahat(psi) Fourier machinery that separates c1' from c2'.
// The brute-force definition is the oracle everything else is tested
// against.

#include <vector>

#include "subconv/arith.hpp"
#include "subconv/charsums.hpp"

namespace subconv::sheval {

using arith::complexd;
using arith::i64;
using charsums::DirichletCharacter;

// c1 = c10*c1', c2 = c20*c2' with rad(c10) = rad(c20),
// (c1'c2', c10c20) = (c1',c2') = 1; c0 = (c10,c20) = (c1,c2).
struct CSplit {
    i64 c10 = 1, c1p = 1, c20 = 1, c2p = 1, c0 = 1;
};
CSplit c_split(i64 c1, i64 c2);

struct ShevalInstance {
    i64 p = 2;
    i64 l1 = 1, l2 = 1;
    i64 n1 = 1, n2 = 1;
    i64 c1 = 1, c2 = 1;
    CSplit split;
    i64 D = 0;  // l2*n1 - l1*n2

    static ShevalInstance make(i64 p, i64 l1, i64 l2, i64 n1, i64 n2, i64 c1, i64 c2);
    // the closed forms additionally need (c1,l1) = (c2,l2) = 1
    bool closed_form_admissible() const;
};

// Exact definition, one frequency.  Budget: c1*c2 <= 1e6.
complexd shat_bruteforce(const ShevalInstance& inst, i64 m);

// All frequencies m = 0..c1c2-1 at once (shares the x-table).
std::vector<complexd> shat_bruteforce_all(const ShevalInstance& inst);

// CRT closed form; 0 unless (c10,c20) | m and (m, c1'c2') = 1.
complexd shat_closed(const ShevalInstance& inst, i64 m);

// Shat(0) for c1 = c2: the Ramanujan sum S(0, n1 l2 - n2 l1; c1).
complexd shat_zero(const ShevalInstance& inst);

// Reciprocity evaluation alpha_inf * alpha_0(m) * (branch phase); equals
// shat_closed wherever both are defined.  Branch on (l1,l2)=1 vs >1; the
// second branch needs (l2, c1') = 1.
complexd shat_reciprocity(const ShevalInstance& inst, i64 m);

// alpha_inf = e_{c1 c2 l2}(p n2 m), the factor that cancels against the
// phase of Ihat(m).
complexd alpha_infinity(const ShevalInstance& inst, i64 m);

// Constrained double sum over (t1, t2) with its modulus-c10c20 prefactor;
// 0 when (c10,c20) does not divide m.
complexd alpha0(const ShevalInstance& inst, i64 m);

// Fourier coefficient over psi (mod c10 c20):
// alpha0(c1'c2', m) = sum_psi alphahat(psi, m) psi(c1'c2').
complexd alphahat(const ShevalInstance& inst, const DirichletCharacter& psi, i64 m);

// alphahat for every psi mod c10c20 at once (ordered as characters_mod);
// shares the psi-independent inner sums across the group.
std::vector<complexd> alphahat_all(const ShevalInstance& inst, i64 m);

struct AlphahatL1Report {
    i64 m0 = 0;          // c0 * m0'
    double l1_norm = 0.0;
    double bound = 0.0;  // d(c10c20)^2 * (D,c10,c20) * prod_{v_q equal} sqrt(q)
    bool pass = false;
};

// L1 bound over the character group at the smooth frequency m0 = c0*m0'.
// m0' must be supported on primes of c10c20.
AlphahatL1Report alphahat_l1_check(const ShevalInstance& inst, i64 m0_prime);

struct EtaSeparationReport {
    complexd lhs{}, rhs{};
    double deviation = 0.0;
    bool pass = false;
};

// e_{l2}(-inv(c1c2) p n2 m) = (1/phi(l2)) sum_eta tau(etabar) eta(...),
// for (l2, p n2 m) = (l2, c1 c2) = 1.
EtaSeparationReport eta_separation_check(i64 l2, i64 c1, i64 c2, i64 p, i64 n2, i64 m);

} // namespace subconv::sheval
