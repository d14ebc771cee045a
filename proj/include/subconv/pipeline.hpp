#pragma once

// End-to-end desk-scale replay of the argument: S(N), the amplifier
// deposit/removal identity, the delta-symbol insertion, the Poisson
// V-identity, and the additive partition bookkeeping
//   T' = T^(0) + T'',  T'' = T - T^(00),  T = T_0 + T_{neq0},
//   T_{neq0} = T''_{neq0} + T^diag_{neq0}.
// Pieces are computed by their defining finite sums; lemma bounds (with
// ineffective p^eps set to 1) are reported as ratios only.

#include <memory>
#include <vector>

#include "subconv/arith.hpp"
#include "subconv/modforms.hpp"
#include "subconv/oscint.hpp"
#include "subconv/sheval.hpp"

namespace subconv::pipeline {

using arith::complexd;
using arith::i64;
using arith::u64;

struct PipelineConfig {
    i64 p = 11;
    i64 N = 500;
    i64 L = 3;
    int j = 1;
    std::shared_ptr<const modforms::CoefficientSequence> seq_f;  // level p
    std::shared_ptr<const modforms::CoefficientSequence> seq_g;  // level 1
    oscint::SmoothTestFunction w_N;  // supported on [N/2, 2N]
    double Z = 0.0;   // window width for the oscillatory weight
    i64 Q = 0;        // c-range is (Q, 2Q]
    i64 Mprime = 0;   // dyadic m-localization (ratio columns only)
    i64 Nprime = 0;   // n-range is (Nprime, 2Nprime]
    i64 d = 1;        // delta-method divisor parameter (ratio columns only)
    u64 seed = 20240516;
    i64 term_budget = 100000000;
};

// Builds a config with a synthetic level-p sequence for f (nebentypus of
// full order), the divisor sequence for g, w_N on [N/2, 2N], and the
// localization parameters Q = floor(sqrt(N L^j))/d (capped), Nprime = L^j,
// Mprime = p, Z per the unified bound Q p L^{j/2} / (d sqrt(N)).
PipelineConfig make_desk_config(i64 p, i64 N, i64 L, int j, u64 seed,
                                i64 q_cap = 32);

// prime powers nu^j for primes nu in (L/2, L]
std::vector<i64> amplifier_support(i64 L, int j);

// S(N) = sum_n lambda_f(n) lambda_g(n) w_N(n)
complexd s_direct(const PipelineConfig& cfg);

struct AmplifiedReport {
    int j = 0;
    complexd s_n{};          // S(N)
    complexd amplifier{};    // A_j(L)
    complexd s_n_aj{};       // S(N, A_j)
    complexd removal{};      // the d = nu sub-sum
    double residual = 0.0;   // |S(N) A_j - (S(N,A_j) - removal)|
    double scale = 1.0;
    bool pass = false;       // residual <= 1e-9 * scale
};

// Verifies S(N) * A_j(L) = S(N, A_j) - (d = nu sub-sum) exactly.
AmplifiedReport s_amplified(const PipelineConfig& cfg);

struct DeltaIdentityReport {
    i64 ell = 0;
    double C = 0.0;
    complexd lhs{}, rhs{};
    double rel_residual = 0.0;
    bool pass = false;  // <= 1e-5
};

// Full right side of the delta insertion for S(N, ell), against the direct
// sum.  w_{N ell} is a plateau equal to 1 on ell * supp(w_N).
DeltaIdentityReport delta_identity_check(const PipelineConfig& cfg, i64 ell);

struct VPoissonReport {
    sheval::ShevalInstance inst;
    double Z = 0.0;
    complexd v_direct{}, v_poisson{};
    double residual = 0.0;
    double tolerance = 0.0;   // 1e-4 * max(|v_direct|, 1)
    bool pass = false;
    i64 m_cap = 0;            // Poisson side truncated at |m| <= m_cap
    double ihat_max = 0.0;    // max |Ihat| over |m| <= m_cap
    double ihat_tail_max = 0.0;  // max |Ihat| over m_cap < |m| <= 2 m_cap
    bool decay_ok = false;    // tail < 1e-8 * ihat_max
};

// V = sum_m Shat(m) Ihat(m) against the direct m-sum, with the Ihat
// support/decay spot-check at radius multiplier 4.
VPoissonReport v_poisson_check(const sheval::ShevalInstance& inst, double Z);

struct PartitionReport {
    // partition values
    complexd T_prime{}, T_up0{}, T_dprime{}, T_all{}, T_up00{};
    complexd T_zero{}, T_neq0{}, T_neq0_dprime{}, T_neq0_diag{};
    double scale = 0.0;  // accumulated L1 mass of the tuple sums
    // additive identities (each should be < 1e-9 * scale)
    double dev_prime_split = 0.0;   // T' - (T^(0) + T'')
    double dev_incl_excl = 0.0;     // T'' - (T - T^(00))
    double dev_zero_split = 0.0;    // T - (T_0 + T_neq0)
    double dev_diag_split = 0.0;    // T_neq0 - (T''_neq0 + T^diag_neq0)
    bool pass = false;
    // zero-frequency vanishing for c1 != c2 (from the brute-force side)
    double max_shat0_offdiag = 0.0;
    i64 offdiag_checked = 0;
    // ratio-to-bound columns, p^eps -> 1, sigma = 1/20
    double ratio_T_up0 = 0.0;    // vs Q^2 L^{1+j} p / d^4
    double ratio_T_up00 = 0.0;   // vs L^{2+2j} Q^3 / d^4
    double ratio_T_zero = 0.0;   // vs Q^2 L^{1+5j/2} p / (d^4 sqrt(N))
    double ratio_T_neq0 = 0.0;   // vs d^{-2} p^{3s} L^{5j/2+2-5js/2} N^{-1/2-3s/2} Q^{5-4s}
    i64 tuples_total = 0, tuples_nonzero = 0;
};

PartitionReport partition_report(const PipelineConfig& cfg);

} // namespace subconv::pipeline
