#include "subconv/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "subconv/deltasym.hpp"
#include "subconv/smooth.hpp"

namespace subconv::pipeline {

using charsums::DirichletCharacter;
using modforms::CoefficientSequence;
using oscint::ProductWindow;
using oscint::SmoothTestFunction;

std::vector<i64> amplifier_support(i64 L, int j) {
    std::vector<i64> out;
    for (i64 nu : arith::primes_up_to(L)) {
        if (nu <= L / 2) continue;
        i64 ell = nu;
        for (int i = 1; i < j; ++i) ell *= nu;
        out.push_back(ell);
    }
    return out;
}

PipelineConfig make_desk_config(i64 p, i64 N, i64 L, int j, u64 seed, i64 q_cap) {
    if (!(L >= 2 && L <= p - 1))
        throw PreconditionViolated("make_desk_config: need 2 <= L <= p-1");
    if (j != 1 && j != 2)
        throw PreconditionViolated("make_desk_config: j in {1,2}");
    PipelineConfig cfg;
    cfg.p = p;
    cfg.N = N;
    cfg.L = L;
    cfg.j = j;
    cfg.seed = seed;
    i64 lj = 1;
    for (int i = 0; i < j; ++i) lj *= L;
    // f needs lambda up to (19/8) N L^j for the delta insertion (capped at
    // the synthetic-sequence budget); g up to 2N * L
    i64 fmax = std::min<i64>((19 * N * lj) / 8 + 8, 1000000);
    i64 gmax = 2 * N * L + 4;
    auto chis = charsums::characters_mod(p);
    // a generator character (full order p-1) as nebentypus
    DirichletCharacter chi = chis.size() > 1 ? chis[1] : chis[0];
    cfg.seq_f = std::make_shared<CoefficientSequence>(
        modforms::coeffs_synthetic(fmax, chi, complexd{1.0 / std::sqrt(double(p)), 0.0},
                                   seed));
    cfg.seq_g = std::make_shared<CoefficientSequence>(modforms::coeffs_divisor(gmax));
    cfg.w_N = SmoothTestFunction{1.25 * double(N), 0.1875 * double(N)};
    i64 C = i64(std::floor(std::sqrt(double(N) * double(lj))));
    cfg.Q = std::min<i64>(q_cap, std::max<i64>(4, C / cfg.d));
    cfg.Nprime = lj;
    cfg.Mprime = p;
    cfg.Z = double(cfg.Q) * double(p) * std::pow(double(L), 0.5 * j) /
            (double(cfg.d) * std::sqrt(double(N)));
    return cfg;
}

complexd s_direct(const PipelineConfig& cfg) {
    const auto& f = *cfg.seq_f;
    const auto& g = *cfg.seq_g;
    arith::KahanComplex acc;
    i64 lo = std::max<i64>(1, i64(std::floor(cfg.w_N.support_lo())));
    i64 hi = i64(std::ceil(cfg.w_N.support_hi()));
    for (i64 n = lo; n <= hi; ++n) {
        double w = cfg.w_N(double(n));
        if (w == 0.0) continue;
        acc.add(f(n) * g(n) * w);
    }
    return acc.value();
}

namespace {

complexd a_weight(const PipelineConfig& cfg, i64 nu) {
    // a_j(nu): conj(lambda_f(nu)) for j = 1, -conj(chi(nu)) for j = 2
    if (cfg.j == 1) return std::conj((*cfg.seq_f)(nu));
    return -std::conj(cfg.seq_f->nebentypus()(nu));
}

complexd b_weight(const PipelineConfig& cfg, i64 ell) {
    // b_j(ell): conj(lambda_f(ell)) for j = 1, conj(chi(sqrt(ell))) for j = 2
    if (cfg.j == 1) return std::conj((*cfg.seq_f)(ell));
    i64 nu = i64(std::llround(std::sqrt(double(ell))));
    return std::conj(cfg.seq_f->nebentypus()(nu));
}

} // namespace

AmplifiedReport s_amplified(const PipelineConfig& cfg) {
    const auto& f = *cfg.seq_f;
    const auto& g = *cfg.seq_g;
    const DirichletCharacter& chi = f.nebentypus();
    AmplifiedReport rep;
    rep.j = cfg.j;
    rep.s_n = s_direct(cfg);

    i64 lo = std::max<i64>(1, i64(std::floor(cfg.w_N.support_lo())));
    i64 hi = i64(std::ceil(cfg.w_N.support_hi()));

    arith::KahanComplex amp, snaj, removal;
    for (i64 nu : arith::primes_up_to(cfg.L)) {
        if (nu <= cfg.L / 2) continue;
        i64 ellj = nu;
        for (int i = 1; i < cfg.j; ++i) ellj *= nu;
        complexd anu = a_weight(cfg, nu);
        amp.add(anu * f(ellj));
        // S(N, nu^j) directly
        arith::KahanComplex snl;
        for (i64 n = lo; n <= hi; ++n) {
            double w = cfg.w_N(double(n));
            if (w == 0.0) continue;
            snl.add(f(n * ellj) * g(n) * w);
        }
        snaj.add(anu * snl.value());
        // d = nu sub-sum: -a_j(nu) chi(nu) lambda_f(nu^{j-1})
        //                   sum_n lambda_f(n) lambda_g(n nu) w_N(n nu)
        complexd lam_prev = cfg.j == 1 ? complexd{1.0, 0.0} : f(nu);
        arith::KahanComplex inner;
        for (i64 n = (lo + nu - 1) / nu; n * nu <= hi; ++n) {
            double w = cfg.w_N(double(n * nu));
            if (w == 0.0) continue;
            inner.add(f(n) * g(n * nu) * w);
        }
        removal.add(-anu * chi(nu) * lam_prev * inner.value());
    }
    rep.amplifier = amp.value();
    rep.s_n_aj = snaj.value();
    rep.removal = removal.value();
    complexd lhs = rep.s_n * rep.amplifier;
    complexd rhs = rep.s_n_aj - rep.removal;
    rep.residual = std::abs(lhs - rhs);
    rep.scale = 1.0 + std::abs(lhs) + std::abs(rep.s_n_aj) + std::abs(rep.removal);
    rep.pass = rep.residual <= 1e-9 * rep.scale;
    return rep;
}

DeltaIdentityReport delta_identity_check(const PipelineConfig& cfg, i64 ell) {
    const auto& f = *cfg.seq_f;
    const auto& g = *cfg.seq_g;
    DeltaIdentityReport rep;
    rep.ell = ell;
    double C = std::sqrt(double(cfg.N) * double(ell));
    rep.C = C;

    i64 nlo = std::max<i64>(1, i64(std::floor(cfg.w_N.support_lo())));
    i64 nhi = i64(std::ceil(cfg.w_N.support_hi()));

    // lhs: S(N, ell)
    arith::KahanComplex lhs;
    for (i64 n = nlo; n <= nhi; ++n) {
        double w = cfg.w_N(double(n));
        if (w == 0.0) continue;
        lhs.add(f(n * ell) * g(n) * w);
    }
    rep.lhs = lhs.value();

    // w_{N ell}: plateau equal to 1 on ell * [supp lo, supp hi]
    double plo = double(ell) * cfg.w_N.support_lo();
    double phi = double(ell) * cfg.w_N.support_hi();
    double pad = 0.25 * (phi - plo);
    smooth::Plateau w_nell(plo, phi, pad);

    i64 mlo = std::max<i64>(1, i64(std::floor(w_nell.support_lo())));
    i64 mhi = i64(std::ceil(w_nell.support_hi()));
    if (mhi > f.n_max())
        throw PreconditionViolated(
            "delta_identity_check: seq_f too short for the dual plateau range");
    if ((mhi - mlo + 1) > cfg.term_budget / std::max<i64>(1, nhi - nlo + 1))
        throw BudgetExceeded("delta_identity_check: m*n grid over budget");

    deltasym::DeltaExpansion expansion(C);
    // cache delta_eval over k = m - n*ell
    i64 klo = mlo - nhi * ell, khi = mhi - nlo * ell;
    std::vector<double> delta_cache(size_t(khi - klo + 1));
    for (i64 k = klo; k <= khi; ++k)
        delta_cache[size_t(k - klo)] = expansion.delta_eval(k);

    arith::KahanComplex rhs;
    for (i64 n = nlo; n <= nhi; ++n) {
        double wn = cfg.w_N(double(n));
        if (wn == 0.0) continue;
        complexd gn = g(n) * wn;
        for (i64 m = mlo; m <= mhi; ++m) {
            double dm = delta_cache[size_t(m - n * ell - klo)];
            if (dm == 0.0) continue;
            rhs.add(f(m) * w_nell(double(m)) * gn * dm);
        }
    }
    rep.rhs = rhs.value();
    rep.rel_residual =
        std::abs(rep.lhs - rep.rhs) / std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1.0});
    rep.pass = rep.rel_residual <= 1e-5;
    return rep;
}

namespace {

ProductWindow make_v_window(const sheval::ShevalInstance& inst, double Z) {
    ProductWindow w;
    w.f1 = SmoothTestFunction{0.0, Z / 4.0};
    w.f2 = SmoothTestFunction{0.0, Z / 4.0};
    w.slope1 = double(inst.l1);
    w.shift1 = -double(inst.p) * double(inst.n1);
    w.slope2 = double(inst.l2);
    w.shift2 = -double(inst.p) * double(inst.n2);
    return w;
}

complexd shat_any(const sheval::ShevalInstance& inst, i64 m) {
    if (inst.closed_form_admissible()) return sheval::shat_closed(inst, m);
    return sheval::shat_bruteforce(inst, m);
}

} // namespace

VPoissonReport v_poisson_check(const sheval::ShevalInstance& inst, double Z) {
    VPoissonReport rep;
    rep.inst = inst;
    rep.Z = Z;
    ProductWindow w = make_v_window(inst, Z);

    // direct side
    std::vector<i64> R1 = charsums::ramanujan_table(inst.c1);
    std::vector<i64> R2 = charsums::ramanujan_table(inst.c2);
    arith::KahanComplex direct;
    if (!w.empty()) {
        i64 mlo = i64(std::floor(w.support_lo()));
        i64 mhi = i64(std::ceil(w.support_hi()));
        for (i64 m = mlo; m <= mhi; ++m) {
            double wv = w(double(m));
            if (wv == 0.0) continue;
            i64 r1 = R1[size_t(arith::mod_floor(
                arith::mulmod(inst.p, inst.n1, inst.c1) -
                    arith::mulmod(m, inst.l1, inst.c1),
                inst.c1))];
            i64 r2 = R2[size_t(arith::mod_floor(
                arith::mulmod(inst.p, inst.n2, inst.c2) -
                    arith::mulmod(m, inst.l2, inst.c2),
                inst.c2))];
            direct.add(double(r1) * double(r2) * wv);
        }
    }
    rep.v_direct = direct.value();

    // Poisson side, truncated at 4x the lemma radius L^j Q^2 / Z
    double lmax = double(std::max(inst.l1, inst.l2));
    double qmax = double(std::max(inst.c1, inst.c2));
    rep.m_cap = std::max<i64>(32, i64(std::ceil(4.0 * lmax * qmax * qmax / Z)));
    i64 QQ = inst.c1 * inst.c2;
    arith::KahanComplex poisson;
    for (i64 m = -rep.m_cap; m <= rep.m_cap; ++m) {
        complexd ihat = oscint::fourier_integral(w, double(m) / double(QQ));
        double aih = std::abs(ihat);
        rep.ihat_max = std::max(rep.ihat_max, aih);
        if (aih == 0.0) continue;
        poisson.add(shat_any(inst, m) * ihat);
    }
    rep.v_poisson = poisson.value();
    for (i64 m = rep.m_cap + 1; m <= 2 * rep.m_cap; ++m) {
        rep.ihat_tail_max =
            std::max(rep.ihat_tail_max,
                     std::abs(oscint::fourier_integral(w, double(m) / double(QQ))));
        rep.ihat_tail_max =
            std::max(rep.ihat_tail_max,
                     std::abs(oscint::fourier_integral(w, -double(m) / double(QQ))));
    }
    rep.residual = std::abs(rep.v_direct - rep.v_poisson);
    rep.tolerance = 1e-4 * std::max(std::abs(rep.v_direct), 1.0);
    rep.pass = rep.residual <= rep.tolerance;
    rep.decay_ok = rep.ihat_tail_max <= 1e-8 * std::max(rep.ihat_max, 1e-300);
    return rep;
}

PartitionReport partition_report(const PipelineConfig& cfg) {
    const auto& g = *cfg.seq_g;
    const DirichletCharacter& chi = cfg.seq_f->nebentypus();
    PartitionReport rep;
    std::vector<i64> ells = amplifier_support(cfg.L, cfg.j);
    if (ells.empty())
        throw PreconditionViolated("partition_report: empty amplifier range");

    std::map<i64, std::vector<i64>> rama;
    auto table = [&rama](i64 c) -> const std::vector<i64>& {
        auto it = rama.find(c);
        if (it == rama.end()) it = rama.emplace(c, charsums::ramanujan_table(c)).first;
        return it->second;
    };

    // admissible c-values and their character weights, per ell
    std::map<i64, std::vector<std::pair<i64, complexd>>> cs_for_ell;
    for (i64 ell : ells) {
        auto& v = cs_for_ell[ell];
        for (i64 c = cfg.Q + 1; c <= 2 * cfg.Q; ++c) {
            if (std::gcd(c, ell) != 1) continue;
            complexd x = chi(c);
            if (x == complexd{0.0, 0.0}) continue;
            v.emplace_back(c, x);
            table(c);
        }
    }

    arith::KahanComplex Tp, T0up, Tpp, Tall, T00, Tzero, Tneq, Tneqpp, Tneqdiag;
    arith::KahanSum mass;
    i64 budget = cfg.term_budget;

    for (i64 l1 : ells) {
        for (i64 l2 : ells) {
            complexd bb = b_weight(cfg, l1) * std::conj(b_weight(cfg, l2));
            if (bb == complexd{0.0, 0.0}) continue;
            for (i64 n1 = cfg.Nprime + 1; n1 <= 2 * cfg.Nprime; ++n1) {
                for (i64 n2 = cfg.Nprime + 1; n2 <= 2 * cfg.Nprime; ++n2) {
                    rep.tuples_total += 1;
                    // window depends only on (l1, n1, l2, n2)
                    ProductWindow w;
                    w.f1 = SmoothTestFunction{0.0, cfg.Z / 4.0};
                    w.f2 = SmoothTestFunction{0.0, cfg.Z / 4.0};
                    w.slope1 = double(l1);
                    w.shift1 = -double(cfg.p) * double(n1);
                    w.slope2 = double(l2);
                    w.shift2 = -double(cfg.p) * double(n2);
                    if (w.empty()) continue;
                    i64 mlo = i64(std::floor(w.support_lo()));
                    i64 mhi = i64(std::ceil(w.support_hi()));
                    if (mhi < mlo) continue;
                    // window samples and zero-frequency transform, shared
                    // across all (c1, c2)
                    std::vector<double> wv(size_t(mhi - mlo + 1));
                    bool any_w = false;
                    for (i64 m = mlo; m <= mhi; ++m) {
                        wv[size_t(m - mlo)] = w(double(m));
                        if (wv[size_t(m - mlo)] != 0.0) any_w = true;
                    }
                    if (!any_w) continue;
                    bool diag_ln = (l2 * n1 == l1 * n2);
                    i64 D = l2 * n1 - l1 * n2;
                    complexd ihat0 = diag_ln ? complexd{0.0, 0.0}
                                             : oscint::fourier_integral(w, 0.0);
                    complexd gw = g(n1) * g(n2);
                    for (const auto& [c1, x1] : cs_for_ell[l1]) {
                        const std::vector<i64>& R1 = table(c1);
                        i64 base1 = arith::mulmod(cfg.p, n1, c1);
                        i64 step1 = arith::mod_floor(l1, c1);
                        for (const auto& [c2, x2] : cs_for_ell[l2]) {
                            const std::vector<i64>& R2 = table(c2);
                            complexd wgt = bb * x1 * std::conj(x2) * gw;
                            i64 base2 = arith::mulmod(cfg.p, n2, c2);
                            i64 step2 = arith::mod_floor(l2, c2);
                            if ((budget -= (mhi - mlo + 1)) < 0)
                                throw BudgetExceeded("partition_report: term budget");
                            complexd v_all{}, v_pnd{}, v_pdiv{};
                            bool any = false;
                            i64 i1 = arith::mod_floor(base1 - arith::mulmod(mlo, step1, c1), c1);
                            i64 i2 = arith::mod_floor(base2 - arith::mulmod(mlo, step2, c2), c2);
                            for (i64 m = mlo; m <= mhi; ++m) {
                                double wm = wv[size_t(m - mlo)];
                                if (wm != 0.0) {
                                    double term = double(R1[size_t(i1)]) *
                                                  double(R2[size_t(i2)]) * wm;
                                    if (term != 0.0) {
                                        any = true;
                                        v_all += term;
                                        if (m % cfg.p == 0) v_pdiv += term;
                                        else v_pnd += term;
                                    }
                                }
                                i1 -= step1; if (i1 < 0) i1 += c1;
                                i2 -= step2; if (i2 < 0) i2 += c2;
                            }
                            if (any) rep.tuples_nonzero += 1;
                            mass.add(std::abs(wgt) *
                                     (std::abs(v_all) + std::abs(v_pnd) + std::abs(v_pdiv)));
                            Tp.add(wgt * v_pnd);
                            if (diag_ln) {
                                T0up.add(wgt * v_pnd);
                            } else {
                                Tpp.add(wgt * v_pnd);
                                Tall.add(wgt * v_all);
                                T00.add(wgt * v_pdiv);
                                // zero-frequency piece: Shat(0) = S(0,D;c1)
                                // when c1 = c2, else 0
                                complexd v0{};
                                if (c1 == c2)
                                    v0 = double(R1[size_t(arith::mod_floor(D, c1))]) * ihat0;
                                Tzero.add(wgt * v0);
                                Tneq.add(wgt * (v_all - v0));
                                if (l1 == l2) Tneqdiag.add(wgt * (v_all - v0));
                                else Tneqpp.add(wgt * (v_all - v0));
                                if (c1 != c2 && rep.offdiag_checked < 64 && any) {
                                    rep.offdiag_checked += 1;
                                    sheval::ShevalInstance inst = sheval::ShevalInstance::make(
                                        cfg.p, l1, l2, n1, n2, c1, c2);
                                    rep.max_shat0_offdiag =
                                        std::max(rep.max_shat0_offdiag,
                                                 std::abs(shat_any(inst, 0)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    rep.T_prime = Tp.value();
    rep.T_up0 = T0up.value();
    rep.T_dprime = Tpp.value();
    rep.T_all = Tall.value();
    rep.T_up00 = T00.value();
    rep.T_zero = Tzero.value();
    rep.T_neq0 = Tneq.value();
    rep.T_neq0_dprime = Tneqpp.value();
    rep.T_neq0_diag = Tneqdiag.value();
    rep.scale = std::max(mass.value(), 1.0);

    rep.dev_prime_split = std::abs(rep.T_prime - (rep.T_up0 + rep.T_dprime));
    rep.dev_incl_excl = std::abs(rep.T_dprime - (rep.T_all - rep.T_up00));
    rep.dev_zero_split = std::abs(rep.T_all - (rep.T_zero + rep.T_neq0));
    rep.dev_diag_split = std::abs(rep.T_neq0 - (rep.T_neq0_dprime + rep.T_neq0_diag));
    double tol = 1e-9 * rep.scale;
    rep.pass = rep.dev_prime_split <= tol && rep.dev_incl_excl <= tol &&
               rep.dev_zero_split <= tol && rep.dev_diag_split <= tol;

    // ratio columns with p^eps -> 1, sigma = 1/20
    double p = double(cfg.p), Q = double(cfg.Q), N = double(cfg.N);
    double L = double(cfg.L), d = double(cfg.d);
    double j = double(cfg.j);
    double sigma = 0.05;
    double rhs_up0 = Q * Q * std::pow(L, 1.0 + j) * p / std::pow(d, 4.0);
    double rhs_up00 = std::pow(L, 2.0 + 2.0 * j) * Q * Q * Q / std::pow(d, 4.0);
    double rhs_zero = Q * Q * std::pow(L, 1.0 + 2.5 * j) * p / (std::pow(d, 4.0) * std::sqrt(N));
    double rhs_neq0 = std::pow(p, 3.0 * sigma) *
                      std::pow(L, 2.5 * j + 2.0 - 2.5 * j * sigma) *
                      std::pow(N, -0.5 - 1.5 * sigma) * std::pow(Q, 5.0 - 4.0 * sigma) /
                      (d * d);
    rep.ratio_T_up0 = std::abs(rep.T_up0) / rhs_up0;
    rep.ratio_T_up00 = std::abs(rep.T_up00) / rhs_up00;
    rep.ratio_T_zero = std::abs(rep.T_zero) / rhs_zero;
    rep.ratio_T_neq0 = std::abs(rep.T_neq0_dprime) / rhs_neq0;
    return rep;
}

} // namespace subconv::pipeline
