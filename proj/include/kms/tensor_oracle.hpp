#pragma once

// Brute-force trace evaluation of the finite-chain KMS state and of its
// zero-temperature limit. Nothing in here uses the cylinder recursion; the
// functions exist to be compared against it.

#include <cstddef>
#include <vector>

#include "kms/params.hpp"

namespace kms::oracle {

inline constexpr int kDenseMaxSites = 10;
inline constexpr int kSubsetMaxSites = 20;

/// Real square matrix of dimension 2^sites, stored row-major and scaled:
/// the represented operator is exp(log_scale) * entries.
struct DenseOperator {
    int sites = 0;
    double log_scale = 0.0;
    std::vector<double> entries;

    std::size_t dimension() const noexcept { return std::size_t{1} << sites; }
    double at(std::size_t row, std::size_t col) const { return entries[row * dimension() + col]; }
};

/// exp(-beta H_n) for H_n = sum_i sigma_x(i) sigma_x(i+1), assembled as the product of
/// the commuting bond factors cosh(beta) I - sinh(beta) sigma_x sigma_x. Site 0 is the
/// most significant bit of the basis index.
DenseOperator thermal_operator(double beta, int sites);

/// log Tr(op), including the stored scale.
double log_trace(const DenseOperator& op);

/// Caches the dense thermal operator so that many words of one length can be evaluated.
class DenseThermalState {
public:
    DenseThermalState(const ProjectorPair& basis, double beta, int sites);

    /// c_n Tr[exp(-beta H_n) (P_j1 x ... x P_jn)], with word.size() == sites.
    double probability(WordView word) const;
    double log_partition() const { return log_trace(op_); }
    const DenseOperator& op() const noexcept { return op_; }

private:
    ProjectorPair basis_;
    DenseOperator op_;
    double trace_entries_ = 0.0;
};

double finite_beta_prob_dense(const ProjectorPair& basis, double beta, WordView word);
double finite_beta_prob_dense(const ModelParams& params, double beta, WordView word);

/// Same quantity from the expansion of the bond product over bond subsets S:
/// 2^-n sum_S (-tanh beta)^|S| prod_i Tr(sigma_x^{e_i(S)} P_{j_i}).
double finite_beta_prob_subset(const ProjectorPair& basis, double beta, WordView word);
double finite_beta_prob_subset(const ModelParams& params, double beta, WordView word);

/// The tanh(beta) -> 1 limit of the subset expansion.
double zero_temp_prob_trace(const ProjectorPair& basis, WordView word);
double zero_temp_prob_trace(const ModelParams& params, WordView word);

struct PartitionTrace {
    double log_value = 0.0;
    double value() const;  // may overflow to +inf
};

/// Closed form 2^n cosh^{n-1}(beta), evaluated in log space.
PartitionTrace partition_trace(double beta, int sites);
/// Trace of the dense operator (sites <= kDenseMaxSites).
PartitionTrace dense_partition_trace(double beta, int sites);

/// log cosh(x) without overflow.
double log_cosh(double x) noexcept;

}  // namespace kms::oracle
