#include "subconv/modforms.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace subconv::modforms {

using arith::KahanSum;
using arith::RationalPhase;
using arith::u64;
using i128 = __int128;

CoefficientSequence coeffs_divisor(i64 n_max) {
    if (n_max < 1 || n_max > 10000000)
        throw PreconditionViolated("coeffs_divisor: need 1 <= n_max <= 1e7");
    std::vector<i64> d(size_t(n_max) + 1, 0);
    for (i64 a = 1; a <= n_max; ++a)
        for (i64 n = a; n <= n_max; n += a) d[size_t(n)] += 1;
    std::vector<complexd> vals(size_t(n_max) + 1, {0.0, 0.0});
    for (i64 n = 1; n <= n_max; ++n) vals[size_t(n)] = {double(d[size_t(n)]), 0.0};
    return CoefficientSequence(SequenceKind::DivisorEisenstein, 1, 0,
                               DirichletCharacter::principal(1), {1.0, 0.0},
                               std::move(vals));
}

std::vector<i128> ramanujan_tau(i64 n_max) {
    if (n_max < 1 || n_max > 100000)
        throw PreconditionViolated("ramanujan_tau: need 1 <= n_max <= 1e5");
    // tau(n) = [q^{n-1}] prod (1-q^m)^24 = [q^{n-1}] J^8 where J is Jacobi's
    // cube: prod (1-q^m)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}.
    size_t len = size_t(n_max);
    std::vector<i128> J(len, 0);
    for (i64 k = 0;; ++k) {
        i64 e = k * (k + 1) / 2;
        if (e >= n_max) break;
        J[size_t(e)] = (k % 2 == 0 ? 1 : -1) * i128(2 * k + 1);
    }
    auto square = [len](const std::vector<i128>& a) {
        std::vector<i128> out(len, 0);
        for (size_t i = 0; i < len; ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; i + j < len; ++j) {
                if (a[j] == 0) continue;
                out[i + j] += a[i] * a[j];
            }
        }
        return out;
    };
    std::vector<i128> J2 = square(J);
    std::vector<i128> J4 = square(J2);
    std::vector<i128> J8 = square(J4);
    std::vector<i128> tau(size_t(n_max) + 1, 0);
    for (i64 n = 1; n <= n_max; ++n) tau[size_t(n)] = J8[size_t(n - 1)];
    return tau;
}

CoefficientSequence coeffs_delta_form(i64 n_max) {
    std::vector<i128> tau = ramanujan_tau(n_max);
    std::vector<complexd> vals(size_t(n_max) + 1, {0.0, 0.0});
    for (i64 n = 1; n <= n_max; ++n) {
        double t = double(tau[size_t(n)]);
        vals[size_t(n)] = {t / std::pow(double(n), 5.5), 0.0};
    }
    return CoefficientSequence(SequenceKind::DeltaForm, 1, 12,
                               DirichletCharacter::principal(1), {1.0, 0.0},
                               std::move(vals));
}

CoefficientSequence coeffs_synthetic(i64 n_max, const DirichletCharacter& chi,
                                     complexd lambda_p, u64 seed) {
    if (n_max < 1 || n_max > 1000000)
        throw PreconditionViolated("coeffs_synthetic: need 1 <= n_max <= 1e6");
    i64 p = chi.modulus();
    if (!arith::is_prime(p))
        throw PreconditionViolated("coeffs_synthetic: chi modulus must be prime");
    if (std::abs(lambda_p) > 1.0 + 1e-12)
        throw InvalidLambdaP("coeffs_synthetic: |lambda_p| <= 1 required");

    // smallest-prime-factor sieve for the multiplicative fill
    std::vector<int32_t> spf(size_t(n_max) + 1, 0);
    for (i64 i = 2; i <= n_max; ++i) {
        if (spf[size_t(i)] == 0)
            for (i64 j = i; j <= n_max; j += i)
                if (spf[size_t(j)] == 0) spf[size_t(j)] = int32_t(i);
    }

    std::vector<complexd> vals(size_t(n_max) + 1, {0.0, 0.0});
    vals[1] = {1.0, 0.0};
    arith::SplitMix64 rng(seed);
    const double pi = 3.14159265358979323846264338327950288;
    for (i64 q = 2; q <= n_max; ++q) {
        if (spf[size_t(q)] != int32_t(q)) continue;  // primes only
        if (q == p) {
            complexd power = {1.0, 0.0};
            for (i64 pe = p; pe <= n_max; pe = arith::checked_mul(pe, p)) {
                power *= lambda_p;
                vals[size_t(pe)] = power;
                if (pe > n_max / p) break;
            }
            continue;
        }
        // Satake: lambda(q) = 2 cos(t) * s, s^2 = chi(q), arg(s) in [0, pi)
        double t = pi * rng.next_double();
        RationalPhase cq = *chi.phase(q);
        complexd s = RationalPhase(cq.numerator(), 2 * cq.denominator()).eval();
        complexd lam = 2.0 * std::cos(t) * s;
        complexd prev = {1.0, 0.0};  // lambda(q^0)
        complexd cur = lam;          // lambda(q^1)
        complexd chi_q = chi(q);
        for (i64 pe = q; pe <= n_max; ) {
            vals[size_t(pe)] = cur;
            if (pe > n_max / q) break;
            pe *= q;
            complexd next = lam * cur - chi_q * prev;
            prev = cur;
            cur = next;
        }
    }
    // multiplicative extension
    for (i64 n = 2; n <= n_max; ++n) {
        i64 q = spf[size_t(n)];
        i64 pe = 1, m = n;
        while (m % q == 0) { m /= q; pe *= q; }
        if (m == 1) continue;  // prime power, already set
        vals[size_t(n)] = vals[size_t(pe)] * vals[size_t(m)];
    }
    return CoefficientSequence(SequenceKind::SyntheticHecke, p, 0, chi,
                               {1.0, 0.0}, std::move(vals));
}

void CoefficientSequence::to_csv(std::ostream& os) const {
    os << "n,re,im\n";
    char buf[96];
    for (i64 n = 1; n <= n_max(); ++n) {
        complexd v = values_[size_t(n)];
        std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n",
                      static_cast<long long>(n), v.real(), v.imag());
        os << buf;
    }
}

CoefficientSequence CoefficientSequence::from_values(std::vector<complexd> values_from_1,
                                                     i64 level, int weight,
                                                     DirichletCharacter chi,
                                                     complexd fricke,
                                                     SequenceKind kind) {
    std::vector<complexd> vals(values_from_1.size() + 1, {0.0, 0.0});
    for (size_t i = 0; i < values_from_1.size(); ++i) vals[i + 1] = values_from_1[i];
    return CoefficientSequence(kind, level, weight, std::move(chi), fricke, std::move(vals));
}

CoefficientSequence CoefficientSequence::from_csv(std::istream& is, i64 level, int weight,
                                                  DirichletCharacter chi, complexd fricke) {
    std::string line;
    std::getline(is, line);  // header
    std::vector<std::pair<i64, complexd>> rows;
    i64 max_n = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');
        i64 n = std::stoll(field);
        std::getline(ss, field, ',');
        double re = std::stod(field);
        std::getline(ss, field, ',');
        double im = std::stod(field);
        rows.emplace_back(n, complexd{re, im});
        max_n = std::max(max_n, n);
    }
    std::vector<complexd> vals(size_t(max_n) + 1, {0.0, 0.0});
    for (auto& [n, v] : rows) vals[size_t(n)] = v;
    return CoefficientSequence(SequenceKind::Imported, level, weight, std::move(chi),
                               fricke, std::move(vals));
}

HeckeReport hecke_check(const CoefficientSequence& seq, i64 M) {
    if (M * M > seq.n_max())
        throw PreconditionViolated("hecke_check: M^2 <= n_max required");
    const DirichletCharacter& chi = seq.nebentypus();
    HeckeReport rep;
    rep.checked_to = M;
    for (i64 m = 1; m <= M; ++m) {
        for (i64 n = 1; n <= M; ++n) {
            i64 g = std::gcd(m, n);
            complexd mult_rhs = 0, inv_rhs = 0;
            for (i64 d : arith::divisors(g)) {
                complexd cd = chi(d);
                if (cd == complexd{0.0, 0.0}) continue;
                mult_rhs += cd * seq(m * n / (d * d));
                inv_rhs += double(arith::mobius(d)) * cd * seq(m / d) * seq(n / d);
            }
            rep.max_dev_multiplication = std::max(
                rep.max_dev_multiplication, std::abs(seq(m) * seq(n) - mult_rhs));
            rep.max_dev_inversion = std::max(
                rep.max_dev_inversion, std::abs(seq(m * n) - inv_rhs));
        }
    }
    rep.pass = rep.max_dev_multiplication <= 1e-9 && rep.max_dev_inversion <= 1e-9;
    return rep;
}

AmplifierReport amplifier_eval(const CoefficientSequence& seq, i64 L) {
    if (L < 2) throw PreconditionViolated("amplifier_eval: L >= 2 required");
    if (L * L > seq.n_max())
        throw PreconditionViolated("amplifier_eval: L^2 <= n_max required");
    if (seq.level() <= L)
        throw LevelTooSmall("amplifier_eval: prime level > L required");
    AmplifierReport rep;
    rep.L = L;
    const DirichletCharacter& chi = seq.nebentypus();
    for (i64 nu : arith::primes_up_to(L)) {
        if (nu <= L / 2) continue;
        complexd lam = seq(nu);
        rep.A1 += std::conj(lam) * lam;
        rep.A2 -= std::conj(chi(nu)) * seq(nu * nu);
        rep.prime_count += 1;
    }
    rep.A = rep.A1 + rep.A2;
    rep.deviation = std::abs(rep.A - complexd{double(rep.prime_count), 0.0});
    return rep;
}

double l2_ratio(const CoefficientSequence& seq, i64 N) {
    if (N < 1 || N > seq.n_max())
        throw PreconditionViolated("l2_ratio: need 1 <= N <= n_max");
    KahanSum s;
    for (i64 n = 1; n <= N; ++n) s.add(std::norm(seq(n)));
    return s.value() / double(N);
}

} // namespace subconv::modforms
