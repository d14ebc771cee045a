#pragma once

// Bilinear and trilinear forms in Kloosterman fractions
//
//   sum_{(m,n)=1} alpha_m beta_n e(a mbar / n),
//   sum_k sum_{(m,n)=1} alpha_m beta_n gamma_k e(a k mbar / n),
//
// evaluated exactly over the coprime grid, together with the reference
// right-hand sides and the seeded cancellation experiment.  The theorem
// constants are ineffective, so the harness records |sum|/rhs ratios and
// asserts only the monotone cancellation itself.

#include <string>
#include <vector>

#include "subconv/arith.hpp"

namespace subconv::kfrac {

using arith::complexd;
using arith::i64;
using arith::u64;

struct KfracInstance {
    i64 a = 1;
    i64 M = 1, N = 1, K = 1;
    std::vector<complexd> alpha;  // alpha[i] <-> m = M+1+i, i in [0, M)
    std::vector<complexd> beta;   // beta[i]  <-> n = N+1+i, i in [0, N)
    std::vector<complexd> gamma;  // gamma[i] <-> k = K+i,  i in [0, K+1)

    double alpha_norm() const;
    double beta_norm() const;
    double gamma_norm() const;
    void validate() const;  // vectors dimensioned exactly to their ranges
};

// Exact sum over coprime pairs; budget M*N <= 1e9.
complexd bilinear_sum(const KfracInstance& inst);

// Exact triple sum, reusing one inverse per (m,n) pair; budget K*M*N <= 1e9.
complexd trilinear_sum(const KfracInstance& inst);

// norm_a * norm_b * (|a| + MN)^{3/8} * (M+N)^{11/48+eps}
double bilinear_rhs(i64 a, i64 M, i64 N, double norm_a, double norm_b, double eps);

// norms * (1 + |a|K/(MN))^{1/2} * ((KMN)^{7/20+eps}(M+N)^{1/4}
//                                  + (KMN)^{3/8+eps}(KM+KN)^{1/8})
double trilinear_rhs(i64 a, i64 M, i64 N, i64 K, double norm_a, double norm_b,
              double norm_g, double eps);

enum class CoefficientModel { PlusMinusOne, UnitPhase, Structured };

std::string model_name(CoefficientModel m);

struct CancellationConfig {
    i64 M = 64, N = 64, K = 1;
    i64 a = 1;
    int trials = 16;
    u64 seed = 20240516;
    CoefficientModel model = CoefficientModel::PlusMinusOne;
    double eps = 0.05;
    // structured-model data: amplifier prime powers, level, coefficient range
    i64 l1 = 3, l2 = 5, p = 11, n_range = 4;
};

struct TrialRow {
    int trial = 0;
    i64 M = 0, N = 0, K = 0, a = 0;
    std::string model;
    double abs_sum = 0.0;
    double rhs = 0.0;      // bilinear_rhs for K=1, trilinear_rhs otherwise
    double trivial = 0.0;  // norm product * sqrt(range product)
    double ratio_rhs = 0.0;
    double ratio_trivial = 0.0;
};

struct CancellationReport {
    std::vector<TrialRow> rows;
    double median_ratio_trivial = 0.0;
    double q25_ratio_trivial = 0.0;
    double q75_ratio_trivial = 0.0;
    double max_ratio_rhs = 0.0;
};

// Deterministic under config.seed; trials draw independent streams.
CancellationReport cancellation_experiment(const CancellationConfig& cfg);

void write_csv(const CancellationReport& rep, std::ostream& os);

} // namespace subconv::kfrac
