#include "subconv/sheval.hpp"

#include <cmath>
#include <numeric>

namespace subconv::sheval {

using arith::i128;
using arith::inv_mod;
using arith::mod_floor;
using arith::mulmod;
using arith::RationalPhase;

CSplit c_split(i64 c1, i64 c2) {
    if (c1 < 1 || c2 < 1)
        throw PreconditionViolated("c_split: c1, c2 >= 1 required");
    CSplit s;
    for (const auto& pp : arith::factorize(c1)) {
        i64 q = 1;
        for (int i = 0; i < pp.exponent; ++i) q *= pp.prime;
        if (c2 % pp.prime == 0) s.c10 = arith::checked_mul(s.c10, q);
        else s.c1p = arith::checked_mul(s.c1p, q);
    }
    for (const auto& pp : arith::factorize(c2)) {
        i64 q = 1;
        for (int i = 0; i < pp.exponent; ++i) q *= pp.prime;
        if (c1 % pp.prime == 0) s.c20 = arith::checked_mul(s.c20, q);
        else s.c2p = arith::checked_mul(s.c2p, q);
    }
    s.c0 = std::gcd(s.c10, s.c20);
    return s;
}

ShevalInstance ShevalInstance::make(i64 p, i64 l1, i64 l2, i64 n1, i64 n2,
                                    i64 c1, i64 c2) {
    if (p < 2 || !arith::is_prime(p))
        throw PreconditionViolated("ShevalInstance: p must be prime");
    if (l1 < 1 || l2 < 1 || n1 < 1 || n2 < 1 || c1 < 1 || c2 < 1)
        throw PreconditionViolated("ShevalInstance: all parameters must be >= 1");
    ShevalInstance inst;
    inst.p = p;
    inst.l1 = l1;
    inst.l2 = l2;
    inst.n1 = n1;
    inst.n2 = n2;
    inst.c1 = c1;
    inst.c2 = c2;
    inst.split = c_split(c1, c2);
    inst.D = arith::checked_add(arith::checked_mul(l2, n1), -arith::checked_mul(l1, n2));
    return inst;
}

bool ShevalInstance::closed_form_admissible() const {
    return std::gcd(c1, l1) == 1 && std::gcd(c2, l2) == 1;
}

complexd shat_bruteforce(const ShevalInstance& inst, i64 m) {
    i64 Q = arith::checked_mul(inst.c1, inst.c2);
    if (Q > 1000000)
        throw BudgetExceeded("shat_bruteforce: c1*c2 > 1e6");
    std::vector<i64> R1 = charsums::ramanujan_table(inst.c1);
    std::vector<i64> R2 = charsums::ramanujan_table(inst.c2);
    i64 mr = mod_floor(m, Q);
    arith::KahanComplex acc;
    i64 a1 = mulmod(inst.p, inst.n1, inst.c1);
    i64 a2 = mulmod(inst.p, inst.n2, inst.c2);
    i64 idx_phase = 0;
    for (i64 x = 0; x < Q; ++x) {
        double g = double(R1[size_t(mod_floor(a1 - x * (inst.l1 % inst.c1), inst.c1))]) *
                   double(R2[size_t(mod_floor(a2 - x * (inst.l2 % inst.c2), inst.c2))]);
        if (g != 0.0) acc.add(g * arith::phase_unit(idx_phase, Q));
        idx_phase += mr;
        if (idx_phase >= Q) idx_phase -= Q;
    }
    return acc.value() / double(Q);
}

std::vector<complexd> shat_bruteforce_all(const ShevalInstance& inst) {
    i64 Q = arith::checked_mul(inst.c1, inst.c2);
    if (Q > 100000)
        throw BudgetExceeded("shat_bruteforce_all: c1*c2 > 1e5");
    std::vector<i64> R1 = charsums::ramanujan_table(inst.c1);
    std::vector<i64> R2 = charsums::ramanujan_table(inst.c2);
    std::vector<double> g(static_cast<size_t>(Q));
    i64 i1 = mulmod(inst.p, inst.n1, inst.c1);
    i64 i2 = mulmod(inst.p, inst.n2, inst.c2);
    i64 s1 = inst.l1 % inst.c1, s2 = inst.l2 % inst.c2;
    for (i64 x = 0; x < Q; ++x) {
        g[size_t(x)] = double(R1[size_t(i1)]) * double(R2[size_t(i2)]);
        i1 -= s1; if (i1 < 0) i1 += inst.c1;
        i2 -= s2; if (i2 < 0) i2 += inst.c2;
    }
    // unit-circle table
    std::vector<double> cre(static_cast<size_t>(Q)), cim(static_cast<size_t>(Q));
    for (i64 j = 0; j < Q; ++j) {
        complexd u = arith::phase_unit(j, Q);
        cre[size_t(j)] = u.real();
        cim[size_t(j)] = u.imag();
    }
    std::vector<complexd> out(static_cast<size_t>(Q));
    for (i64 m = 0; m < Q; ++m) {
        double sre = 0.0, sim = 0.0;
        i64 idx = 0;
        for (i64 x = 0; x < Q; ++x) {
            double gx = g[size_t(x)];
            sre += gx * cre[size_t(idx)];
            sim += gx * cim[size_t(idx)];
            idx += m;
            if (idx >= Q) idx -= Q;
        }
        out[size_t(m)] = complexd{sre, sim} / double(Q);
    }
    return out;
}

namespace {

// the constrained double sum over t1 (mod c10), t2 (mod c20) with
// c20 t1 + c10 t2 == m (mod c10 c20), both units; A and B are the
// multipliers inside e_{c10}(A t1) e_{c20}(B t2).
complexd constrained_t_sum(const CSplit& s, i64 m, i64 A, i64 B) {
    i64 Q0 = s.c10 * s.c20;
    arith::KahanComplex acc;
    for (i64 t1 = 0; t1 < s.c10; ++t1) {
        if (std::gcd(t1, s.c10) != 1) continue;
        i64 r = mod_floor(mod_floor(m, Q0) - mulmod(s.c20, t1, Q0), Q0);
        if (r % s.c10 != 0) continue;
        i64 t2 = (r / s.c10) % s.c20;
        if (std::gcd(t2, s.c20) != 1) continue;
        RationalPhase ph = RationalPhase(mulmod(A, t1, s.c10), s.c10) +
                           RationalPhase(mulmod(B, t2, s.c20), s.c20);
        acc.add(ph.eval());
    }
    return acc.value();
}

} // namespace

complexd alpha0(const ShevalInstance& inst, i64 m) {
    const CSplit& s = inst.split;
    i64 Q0 = s.c10 * s.c20;
    if (mod_floor(m, s.c0) != 0) return {0.0, 0.0};
    i64 A = mulmod(inv_mod(mulmod(mulmod(s.c1p, s.c2p, s.c10), inst.l1, s.c10), s.c10),
                   mulmod(inst.p, inst.n1, s.c10), s.c10);
    i64 B = mulmod(inv_mod(mulmod(mulmod(s.c1p, s.c2p, s.c20), inst.l2, s.c20), s.c20),
                   mulmod(inst.p, inst.n2, s.c20), s.c20);
    complexd tsum = constrained_t_sum(s, m, A, B);
    // e_{c10 c20}(-inv(c1' c2' l2) p n2 m)
    i64 inv = inv_mod(mulmod(mulmod(s.c1p, s.c2p, Q0), inst.l2, Q0), Q0);
    i64 num = mod_floor(-i64(mulmod(mulmod(inv, mulmod(inst.p, inst.n2, Q0), Q0),
                                    mod_floor(m, Q0), Q0)),
                        Q0);
    return RationalPhase(num, Q0).eval() * tsum;
}

complexd shat_closed(const ShevalInstance& inst, i64 m) {
    if (!inst.closed_form_admissible())
        throw PreconditionViolated("shat_closed: (c1,l1) = (c2,l2) = 1 required");
    const CSplit& s = inst.split;
    i64 cp = arith::checked_mul(s.c1p, s.c2p);
    if (cp > 1 && std::gcd(mod_floor(m, cp), cp) != 1) return {0.0, 0.0};
    if (mod_floor(m, s.c0) != 0) return {0.0, 0.0};

    // e_{c1'}(inv(c10 c2 l1) p n1 m)
    RationalPhase ph1(0, 1), ph2(0, 1);
    if (s.c1p > 1) {
        i64 inv = inv_mod(mulmod(mulmod(s.c10, inst.c2, s.c1p), inst.l1, s.c1p), s.c1p);
        ph1 = RationalPhase(
            mulmod(mulmod(inv, mulmod(inst.p, inst.n1, s.c1p), s.c1p),
                   mod_floor(m, s.c1p), s.c1p),
            s.c1p);
    }
    if (s.c2p > 1) {
        i64 inv = inv_mod(mulmod(mulmod(s.c20, inst.c1, s.c2p), inst.l2, s.c2p), s.c2p);
        ph2 = RationalPhase(
            mulmod(mulmod(inv, mulmod(inst.p, inst.n2, s.c2p), s.c2p),
                   mod_floor(m, s.c2p), s.c2p),
            s.c2p);
    }
    i64 A = mulmod(inv_mod(mulmod(mulmod(s.c1p, s.c2p, s.c10), inst.l1, s.c10), s.c10),
                   mulmod(inst.p, inst.n1, s.c10), s.c10);
    i64 B = mulmod(inv_mod(mulmod(mulmod(s.c1p, s.c2p, s.c20), inst.l2, s.c20), s.c20),
                   mulmod(inst.p, inst.n2, s.c20), s.c20);
    complexd tsum = constrained_t_sum(s, m, A, B);
    return (ph1 + ph2).eval() * tsum;
}

complexd shat_zero(const ShevalInstance& inst) {
    if (!inst.closed_form_admissible())
        throw PreconditionViolated("shat_zero: (c1,l1) = (c2,l2) = 1 required");
    if (inst.c1 != inst.c2)
        throw PreconditionViolated("shat_zero: c1 = c2 required (otherwise Shat(0) = 0)");
    // exact value S(0, p l2bar D; c1); for (p, c1) = 1 (the regime c < p of
    // the argument) this is the Ramanujan sum at D itself
    i64 c = inst.c1;
    i64 arg = mulmod(mulmod(mod_floor(inst.p, c), inv_mod(inst.l2, c), c),
                     mod_floor(inst.D, c), c);
    return {double(charsums::ramanujan_sum(arg, c)), 0.0};
}

complexd alpha_infinity(const ShevalInstance& inst, i64 m) {
    i64 M = arith::checked_mul(arith::checked_mul(inst.c1, inst.c2), inst.l2);
    i64 num = mulmod(mulmod(inst.p, inst.n2, M), mod_floor(m, M), M);
    return RationalPhase(num, M).eval();
}

complexd shat_reciprocity(const ShevalInstance& inst, i64 m) {
    if (!inst.closed_form_admissible())
        throw PreconditionViolated("shat_reciprocity: (c1,l1) = (c2,l2) = 1 required");
    const CSplit& s = inst.split;
    i64 cp = arith::checked_mul(s.c1p, s.c2p);
    if (cp > 1 && std::gcd(mod_floor(m, cp), cp) != 1)
        throw PreconditionViolated("shat_reciprocity: (m, c1'c2') = 1 required");

    complexd base = alpha_infinity(inst, m) * alpha0(inst, m);
    i64 Dm = inst.D;
    if (std::gcd(inst.l1, inst.l2) == 1) {
        i64 M = arith::checked_mul(s.c1p, inst.l2);
        i64 inv = inv_mod(mulmod(mulmod(s.c10, inst.c2, M), inst.l1, M), M);
        i64 num = mulmod(mulmod(inv, mulmod(inst.p, mod_floor(m, M), M), M),
                         mod_floor(Dm, M), M);
        return base * RationalPhase(num, M).eval();
    }
    // (l1, l2) > 1 branch: needs (l2, c1') = 1
    if (std::gcd(inst.l2, s.c1p) != 1)
        throw PreconditionViolated("shat_reciprocity: (l2, c1') = 1 required in this branch");
    // e_{l2}(-inv(c1 c2) p n2 m)
    i64 invl = inv_mod(mulmod(inst.c1, inst.c2, inst.l2), inst.l2);
    i64 numl = mod_floor(
        -i64(mulmod(mulmod(invl, mulmod(inst.p, inst.n2, inst.l2), inst.l2),
                    mod_floor(m, inst.l2), inst.l2)),
        inst.l2);
    complexd phl = RationalPhase(numl, inst.l2).eval();
    // e_{c1'}(inv(c10 c2 l1 l2) p m D)
    complexd phc{1.0, 0.0};
    if (s.c1p > 1) {
        i64 inv = inv_mod(
            mulmod(mulmod(mulmod(s.c10, inst.c2, s.c1p), inst.l1, s.c1p), inst.l2, s.c1p),
            s.c1p);
        i64 num = mulmod(mulmod(inv, mulmod(inst.p, mod_floor(m, s.c1p), s.c1p), s.c1p),
                         mod_floor(Dm, s.c1p), s.c1p);
        phc = RationalPhase(num, s.c1p).eval();
    }
    return base * phl * phc;
}

namespace {

// the psi-independent integrand of the alphahat average:
// v(x) = e_{Q0}(-inv(x l2) p n2 m) * (constrained t-sum at multipliers
// inv(x l1) p n1, inv(x l2) p n2); zero slots for non-units
std::vector<complexd> alphahat_integrand(const ShevalInstance& inst, i64 m) {
    const CSplit& s = inst.split;
    i64 Q0 = s.c10 * s.c20;
    std::vector<complexd> v(size_t(Q0), {0.0, 0.0});
    i64 pn2 = mulmod(inst.p, inst.n2, Q0);
    for (i64 x = 0; x < Q0; ++x) {
        if (std::gcd(x, Q0) != 1) continue;
        i64 invq = inv_mod(mulmod(x, inst.l2, Q0), Q0);
        i64 numq = mod_floor(-mulmod(mulmod(invq, pn2, Q0), mod_floor(m, Q0), Q0), Q0);
        i64 A = mulmod(inv_mod(mulmod(x, inst.l1, s.c10), s.c10),
                       mulmod(inst.p, inst.n1, s.c10), s.c10);
        i64 B = mulmod(inv_mod(mulmod(x, inst.l2, s.c20), s.c20),
                       mulmod(inst.p, inst.n2, s.c20), s.c20);
        v[size_t(x)] = RationalPhase(numq, Q0).eval() * constrained_t_sum(s, m, A, B);
    }
    return v;
}

} // namespace

complexd alphahat(const ShevalInstance& inst, const DirichletCharacter& psi, i64 m) {
    const CSplit& s = inst.split;
    i64 Q0 = s.c10 * s.c20;
    if (psi.modulus() != Q0)
        throw PreconditionViolated("alphahat: psi modulus must equal c10*c20");
    if (mod_floor(m, s.c0) != 0) return {0.0, 0.0};
    arith::KahanComplex acc;
    i64 pn2 = mulmod(inst.p, inst.n2, Q0);
    for (i64 x = 1; x <= Q0; ++x) {
        i64 xr = mod_floor(x, Q0);
        auto psv = psi.phase(xr);
        if (!psv) continue;
        // exponential of modulus Q0: e_{Q0}(-inv(x l2) p n2 m)
        i64 invq = inv_mod(mulmod(xr, inst.l2, Q0), Q0);
        i64 numq = mod_floor(-mulmod(mulmod(invq, pn2, Q0), mod_floor(m, Q0), Q0), Q0);
        // t-sum multipliers: inv(x l1) p n1 mod c10, inv(x l2) p n2 mod c20
        i64 A = mulmod(inv_mod(mulmod(xr, inst.l1, s.c10), s.c10),
                       mulmod(inst.p, inst.n1, s.c10), s.c10);
        i64 B = mulmod(inv_mod(mulmod(xr, inst.l2, s.c20), s.c20),
                       mulmod(inst.p, inst.n2, s.c20), s.c20);
        complexd tsum = constrained_t_sum(s, m, A, B);
        complexd val = RationalPhase(numq, Q0).eval() * tsum;
        acc.add(std::conj(psv->eval()) * val);
    }
    return acc.value() / double(arith::euler_phi(Q0));
}

std::vector<complexd> alphahat_all(const ShevalInstance& inst, i64 m) {
    const CSplit& s = inst.split;
    i64 Q0 = s.c10 * s.c20;
    auto chars = charsums::characters_mod(Q0);
    std::vector<complexd> out(chars.size(), {0.0, 0.0});
    if (mod_floor(m, s.c0) != 0) return out;
    std::vector<complexd> v = alphahat_integrand(inst, m);
    double phi = double(arith::euler_phi(Q0));
    for (size_t k = 0; k < chars.size(); ++k) {
        arith::KahanComplex acc;
        for (i64 x = 0; x < Q0; ++x) {
            if (v[size_t(x)] == complexd{0.0, 0.0}) continue;
            acc.add(std::conj(chars[k](x)) * v[size_t(x)]);
        }
        out[k] = acc.value() / phi;
    }
    return out;
}

AlphahatL1Report alphahat_l1_check(const ShevalInstance& inst, i64 m0_prime) {
    const CSplit& s = inst.split;
    i64 Q0 = s.c10 * s.c20;
    if (m0_prime < 1)
        throw PreconditionViolated("alphahat_l1_check: m0' >= 1 required");
    // m0' must be supported on the primes of c10 c20
    i64 rest = m0_prime;
    for (const auto& pp : arith::factorize(Q0))
        while (rest % pp.prime == 0) rest /= pp.prime;
    if (rest != 1)
        throw PreconditionViolated("alphahat_l1_check: m0' must divide (c10 c20)^inf");

    AlphahatL1Report rep;
    rep.m0 = arith::checked_mul(s.c0, m0_prime);
    double l1 = 0.0;
    for (const complexd& v : alphahat_all(inst, rep.m0)) l1 += std::abs(v);
    rep.l1_norm = l1;

    double bound = double(arith::divisor_count(Q0));
    bound *= bound;
    i64 dgcd = std::gcd(std::gcd(inst.D < 0 ? -inst.D : inst.D, s.c10), s.c20);
    bound *= double(dgcd);
    arith::Factorization f10 = arith::factorize(s.c10);
    for (const auto& pp : f10) {
        int v20 = 0;
        i64 t = s.c20;
        while (t % pp.prime == 0) { t /= pp.prime; ++v20; }
        if (v20 == pp.exponent) bound *= std::sqrt(double(pp.prime));
    }
    rep.bound = bound;
    rep.pass = rep.l1_norm <= rep.bound + 1e-9;
    return rep;
}

EtaSeparationReport eta_separation_check(i64 l2, i64 c1, i64 c2, i64 p, i64 n2, i64 m) {
    if (l2 < 1) throw PreconditionViolated("eta_separation_check: l2 >= 1 required");
    if (l2 > 1) {
        i64 am = m < 0 ? -m : m;
        if (std::gcd(mod_floor(n2, l2), l2) != 1 || std::gcd(mod_floor(am, l2), l2) != 1)
            throw PreconditionViolated("eta_separation_check: (l2, n2 m) = 1 required");
        if (std::gcd(mulmod(c1, c2, l2), l2) != 1)
            throw PreconditionViolated("eta_separation_check: (l2, c1 c2) = 1 required");
        if (std::gcd(mod_floor(p, l2), l2) != 1)
            throw PreconditionViolated("eta_separation_check: (l2, p) = 1 required");
    }
    EtaSeparationReport rep;
    i64 inv = l2 == 1 ? 0 : inv_mod(mulmod(c1, c2, l2), l2);
    i64 arg = mod_floor(
        -mulmod(mulmod(inv, mulmod(p, n2, l2), l2), mod_floor(m, l2), l2), l2);
    rep.lhs = RationalPhase(arg, l2).eval();
    arith::KahanComplex rhs;
    for (const auto& eta : charsums::characters_mod(l2)) {
        complexd tau = charsums::gauss_sum(eta.conjugate());
        rhs.add(tau * eta(arg));
    }
    double phi = double(arith::euler_phi(l2));
    rep.rhs = rhs.value() / phi;
    rep.deviation = std::abs(rep.lhs - rep.rhs);
    rep.pass = rep.deviation <= 1e-9 * phi;
    return rep;
}

} // namespace subconv::sheval
