#include "subconv/kfrac.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "subconv/charsums.hpp"
#include "subconv/simd.hpp"

namespace subconv::kfrac {

using arith::inv_mod;
using arith::mod_floor;
using arith::mulmod;

namespace {

double norm_of(const std::vector<complexd>& v) {
    double s = 0.0;
    for (const complexd& z : v) s += std::norm(z);
    return std::sqrt(s);
}

} // namespace

double KfracInstance::alpha_norm() const { return norm_of(alpha); }
double KfracInstance::beta_norm() const { return norm_of(beta); }
double KfracInstance::gamma_norm() const { return norm_of(gamma); }

void KfracInstance::validate() const {
    if (M < 1 || N < 1 || K < 1)
        throw PreconditionViolated("KfracInstance: ranges must be >= 1");
    if (i64(alpha.size()) != M || i64(beta.size()) != N || i64(gamma.size()) != K + 1)
        throw PreconditionViolated("KfracInstance: vectors must match their ranges");
}

complexd bilinear_sum(const KfracInstance& inst) {
    inst.validate();
    if (arith::i128(inst.M) * arith::i128(inst.N) > 1000000000)
        throw BudgetExceeded("bilinear_sum: M*N > 1e9");
    arith::KahanComplex acc;
    std::vector<double> theta;
    std::vector<double> wre, wim;
    theta.reserve(size_t(inst.M));
    wre.reserve(size_t(inst.M));
    wim.reserve(size_t(inst.M));
    for (i64 ni = 0; ni < inst.N; ++ni) {
        i64 n = inst.N + 1 + ni;
        complexd b = inst.beta[size_t(ni)];
        if (b == complexd{0.0, 0.0}) continue;
        i64 an = mod_floor(inst.a, n);
        theta.clear();
        wre.clear();
        wim.clear();
        for (i64 mi = 0; mi < inst.M; ++mi) {
            i64 m = inst.M + 1 + mi;
            if (std::gcd(m, n) != 1) continue;
            complexd w = inst.alpha[size_t(mi)] * b;
            if (w == complexd{0.0, 0.0}) continue;
            i64 mbar = inv_mod(m, n);
            theta.push_back(double(mulmod(an, mbar, n)) / double(n));
            wre.push_back(w.real());
            wim.push_back(w.imag());
        }
        // sum w * e(theta), done as two weighted phase sums (re and im
        // parts of w) through the kernel layer
        const auto& k = simd::active();
        size_t cnt = theta.size();
        complexd s_re = k.phase_sum(theta.data(), wre.data(), cnt);
        complexd s_im = k.phase_sum(theta.data(), wim.data(), cnt);
        // w * e(t) summed = (sum wre*e) + i (sum wim*e)
        acc.add(complexd{s_re.real() - s_im.imag(), s_re.imag() + s_im.real()});
    }
    return acc.value();
}

complexd trilinear_sum(const KfracInstance& inst) {
    inst.validate();
    if (arith::i128(inst.M) * arith::i128(inst.N) * arith::i128(inst.K) > 1000000000)
        throw BudgetExceeded("trilinear_sum: K*M*N > 1e9");
    arith::KahanComplex acc;
    for (i64 ni = 0; ni < inst.N; ++ni) {
        i64 n = inst.N + 1 + ni;
        complexd b = inst.beta[size_t(ni)];
        if (b == complexd{0.0, 0.0}) continue;
        i64 an = mod_floor(inst.a, n);
        for (i64 mi = 0; mi < inst.M; ++mi) {
            i64 m = inst.M + 1 + mi;
            if (std::gcd(m, n) != 1) continue;
            complexd w = inst.alpha[size_t(mi)] * b;
            if (w == complexd{0.0, 0.0}) continue;
            i64 mbar = inv_mod(m, n);
            i64 num = mulmod(an, mbar, n);  // e(a mbar / n) = e(num / n)
            // z^k for k = K..2K, one exact rotation per step
            complexd z = arith::phase_unit(num, n);
            complexd zk = arith::phase_unit(mulmod(num, inst.K, n), n);
            complexd inner{0.0, 0.0};
            for (i64 ki = 0; ki <= inst.K; ++ki) {
                inner += inst.gamma[size_t(ki)] * zk;
                zk *= z;
            }
            acc.add(w * inner);
        }
    }
    return acc.value();
}

double bilinear_rhs(i64 a, i64 M, i64 N, double norm_a, double norm_b, double eps) {
    if (M < 1 || N < 1 || norm_a < 0 || norm_b < 0)
        throw PreconditionViolated("bilinear_rhs: positive inputs required");
    double mn = double(M) * double(N);
    return norm_a * norm_b * std::pow(std::abs(double(a)) + mn, 0.375) *
           std::pow(double(M) + double(N), 11.0 / 48.0 + eps);
}

double trilinear_rhs(i64 a, i64 M, i64 N, i64 K, double norm_a, double norm_b,
              double norm_g, double eps) {
    if (M < 1 || N < 1 || K < 1)
        throw PreconditionViolated("trilinear_rhs: positive inputs required");
    double mn = double(M) * double(N);
    double kmn = double(K) * mn;
    double lead = std::sqrt(1.0 + std::abs(double(a)) * double(K) / mn);
    double t1 = std::pow(kmn, 0.35 + eps) * std::pow(double(M + N), 0.25);
    double t2 = std::pow(kmn, 0.375 + eps) * std::pow(double(K) * double(M + N), 0.125);
    return norm_a * norm_b * norm_g * lead * (t1 + t2);
}

std::string model_name(CoefficientModel m) {
    switch (m) {
        case CoefficientModel::PlusMinusOne: return "pm1";
        case CoefficientModel::UnitPhase: return "unit_phase";
        case CoefficientModel::Structured: return "structured";
    }
    return "unknown";
}

namespace {

// Precomputed unit phases e(a mbar / n) over the coprime grid, shared by
// every trial of an experiment.
struct PairTable {
    std::vector<double> ure, uim;
    std::vector<int32_t> mi, ni;
};

PairTable build_pair_table(i64 a, i64 M, i64 N) {
    PairTable t;
    for (i64 ni = 0; ni < N; ++ni) {
        i64 n = N + 1 + ni;
        i64 an = mod_floor(a, n);
        for (i64 mi = 0; mi < M; ++mi) {
            i64 m = M + 1 + mi;
            if (std::gcd(m, n) != 1) continue;
            complexd u = arith::phase_unit(mulmod(an, inv_mod(m, n), n), n);
            t.ure.push_back(u.real());
            t.uim.push_back(u.imag());
            t.mi.push_back(int32_t(mi));
            t.ni.push_back(int32_t(ni));
        }
    }
    return t;
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    double pos = q * double(v.size() - 1);
    size_t lo = size_t(pos);
    size_t hi = std::min(lo + 1, v.size() - 1);
    double frac = pos - double(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

} // namespace

CancellationReport cancellation_experiment(const CancellationConfig& cfg) {
    CancellationReport rep;
    if (cfg.trials <= 0) return rep;

    const bool structured = cfg.model == CoefficientModel::Structured;
    PairTable table;
    if (!structured) table = build_pair_table(cfg.a, cfg.M, cfg.N);

    arith::SplitMix64 master(cfg.seed);
    std::vector<double> ratios_trivial;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        arith::SplitMix64 rng = master.fork(u64(trial));
        TrialRow row;
        row.trial = trial;
        row.M = cfg.M;
        row.N = cfg.N;
        row.K = structured ? cfg.K : 1;
        row.model = model_name(cfg.model);

        if (!structured) {
            row.a = cfg.a;
            double na = 0.0, nb = 0.0;
            complexd sum;
            if (cfg.model == CoefficientModel::PlusMinusOne) {
                std::vector<std::int8_t> sa(size_t(cfg.M)), sb(size_t(cfg.N));
                for (auto& s : sa) s = rng.next() & 1 ? 1 : -1;
                for (auto& s : sb) s = rng.next() & 1 ? 1 : -1;
                std::vector<std::int8_t> signs(table.ure.size());
                for (size_t i = 0; i < signs.size(); ++i)
                    signs[i] = std::int8_t(sa[size_t(table.mi[i])] * sb[size_t(table.ni[i])]);
                sum = simd::active().sign_dot(table.ure.data(), table.uim.data(),
                                              signs.data(), signs.size());
                na = std::sqrt(double(cfg.M));
                nb = std::sqrt(double(cfg.N));
            } else {
                std::vector<complexd> ca(size_t(cfg.M)), cb(size_t(cfg.N));
                for (auto& z : ca) z = arith::RationalPhase(i64(rng.next_below(1 << 30)), 1 << 30).eval();
                for (auto& z : cb) z = arith::RationalPhase(i64(rng.next_below(1 << 30)), 1 << 30).eval();
                std::vector<double> wre(table.ure.size()), wim(table.ure.size());
                for (size_t i = 0; i < wre.size(); ++i) {
                    complexd w = ca[size_t(table.mi[i])] * cb[size_t(table.ni[i])];
                    wre[i] = w.real();
                    wim[i] = w.imag();
                }
                const auto& k = simd::active();
                sum = k.complex_dot(wre.data(), wim.data(), table.ure.data(),
                                    table.uim.data(), wre.size());
                na = std::sqrt(double(cfg.M));
                nb = std::sqrt(double(cfg.N));
            }
            row.abs_sum = std::abs(sum);
            row.rhs = bilinear_rhs(cfg.a, cfg.M, cfg.N, na, nb, cfg.eps);
            row.trivial = na * nb * std::sqrt(double(cfg.M) * double(cfg.N));
        } else {
            // structured arrangement: alpha supported on multiples of l2
            // with chi(A/l2), beta on multiples of l1 with conj(chi)(B/l1),
            // gamma = 1, a = p * D with a fresh admissible (n1, n2) draw
            auto chis = charsums::characters_mod(cfg.p);
            const charsums::DirichletCharacter& chi =
                chis.size() > 1 ? chis[1] : chis[0];
            i64 n1 = 1 + i64(rng.next_below(u64(cfg.n_range)));
            i64 n2 = 1 + i64(rng.next_below(u64(cfg.n_range)));
            i64 D = cfg.l2 * n1 - cfg.l1 * n2;
            if (D == 0) D = cfg.l2 * (n1 + 1) - cfg.l1 * n2;
            KfracInstance inst;
            inst.a = cfg.p * D;
            inst.M = cfg.M;
            inst.N = cfg.N;
            inst.K = cfg.K;
            inst.alpha.assign(size_t(cfg.M), {0.0, 0.0});
            inst.beta.assign(size_t(cfg.N), {0.0, 0.0});
            inst.gamma.assign(size_t(cfg.K) + 1, {1.0, 0.0});
            for (i64 mi = 0; mi < cfg.M; ++mi) {
                i64 A = cfg.M + 1 + mi;
                if (A % cfg.l2 == 0) inst.alpha[size_t(mi)] = chi(A / cfg.l2);
            }
            for (i64 ni = 0; ni < cfg.N; ++ni) {
                i64 B = cfg.N + 1 + ni;
                if (B % cfg.l1 == 0) inst.beta[size_t(ni)] = std::conj(chi(B / cfg.l1));
            }
            complexd sum = trilinear_sum(inst);
            row.a = inst.a;
            row.abs_sum = std::abs(sum);
            double na = inst.alpha_norm(), nb = inst.beta_norm(), ng = inst.gamma_norm();
            row.rhs = trilinear_rhs(inst.a, cfg.M, cfg.N, cfg.K, na, nb, ng, cfg.eps);
            double denom = na * nb * ng *
                           std::sqrt(double(cfg.M) * double(cfg.N) * double(cfg.K));
            row.trivial = denom > 0.0 ? denom : 1.0;
        }
        row.ratio_rhs = row.rhs > 0.0 ? row.abs_sum / row.rhs : 0.0;
        row.ratio_trivial = row.trivial > 0.0 ? row.abs_sum / row.trivial : 0.0;
        ratios_trivial.push_back(row.ratio_trivial);
        rep.max_ratio_rhs = std::max(rep.max_ratio_rhs, row.ratio_rhs);
        rep.rows.push_back(std::move(row));
    }
    rep.median_ratio_trivial = quantile(ratios_trivial, 0.5);
    rep.q25_ratio_trivial = quantile(ratios_trivial, 0.25);
    rep.q75_ratio_trivial = quantile(ratios_trivial, 0.75);
    return rep;
}

void write_csv(const CancellationReport& rep, std::ostream& os) {
    os << "trial,M,N,K,a,model,abs_sum,rhs,trivial,ratio_rhs,ratio_trivial\n";
    char buf[256];
    for (const TrialRow& r : rep.rows) {
        std::snprintf(buf, sizeof buf, "%d,%lld,%lld,%lld,%lld,%s,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.trial, static_cast<long long>(r.M), static_cast<long long>(r.N),
                      static_cast<long long>(r.K), static_cast<long long>(r.a),
                      r.model.c_str(), r.abs_sum, r.rhs, r.trivial, r.ratio_rhs,
                      r.ratio_trivial);
        os << buf;
    }
}

} // namespace subconv::kfrac
