#include "kms/tensor_oracle.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "kms/summation.hpp"

namespace kms::oracle {

namespace {

void check_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("inverse temperature must be a finite positive number");
    }
}

void check_sites(std::size_t sites, int cap) {
    if (sites < 1) {
        throw SizeError("word must contain at least one symbol");
    }
    if (sites > static_cast<std::size_t>(cap)) {
        throw SizeError("chain length " + std::to_string(sites) + " exceeds the cap of " +
                        std::to_string(cap) + " sites");
    }
}

// Tensor factor index of `site` inside a basis index of a `sites`-long chain.
inline std::size_t site_bit(int site, int sites) noexcept {
    return std::size_t{1} << (sites - 1 - site);
}

double subset_expansion(const ProjectorPair& basis, double bond_weight, WordView word) {
    const int n = static_cast<int>(word.size());
    std::vector<double> plain(n);
    std::vector<double> flipped(n);
    for (int i = 0; i < n; ++i) {
        const Mat2& proj = basis.projector(word[i]);
        plain[i] = trace(proj);
        flipped[i] = trace(matmul(kSigmaX, proj));
    }

    const std::uint32_t bonds = static_cast<std::uint32_t>(n - 1);
    const std::uint32_t subsets = std::uint32_t{1} << bonds;
    CompensatedSum total;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        // Site i touches bonds i-1 and i; it carries sigma_x when exactly one is chosen.
        double term = std::pow(-bond_weight, std::popcount(mask));
        for (int i = 0; i < n; ++i) {
            const bool left = i > 0 && ((mask >> (i - 1)) & 1u);
            const bool right = i < n - 1 && ((mask >> i) & 1u);
            term *= (left != right) ? flipped[i] : plain[i];
        }
        total += term;
    }
    return std::ldexp(total.value(), -n);
}

}  // namespace

double log_cosh(double x) noexcept {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

DenseOperator thermal_operator(double beta, int sites) {
    check_beta(beta);
    check_sites(static_cast<std::size_t>(sites), kDenseMaxSites);

    DenseOperator op;
    op.sites = sites;
    const std::size_t dim = op.dimension();
    op.entries.assign(dim * dim, 0.0);
    for (std::size_t r = 0; r < dim; ++r) {
        op.entries[r * dim + r] = 1.0;
    }

    // exp(-beta X X) = cosh(beta) (I - tanh(beta) X X); the cosh factors go into log_scale.
    const double t = std::tanh(beta);
    std::vector<double> next(dim * dim);
    for (int bond = 0; bond + 1 < sites; ++bond) {
        const std::size_t flip = site_bit(bond, sites) | site_bit(bond + 1, sites);
        for (std::size_t r = 0; r < dim; ++r) {
            const double* row = &op.entries[r * dim];
            const double* partner = &op.entries[(r ^ flip) * dim];
            double* out = &next[r * dim];
            for (std::size_t c = 0; c < dim; ++c) {
                out[c] = row[c] - t * partner[c];
            }
        }
        op.entries.swap(next);
    }
    op.log_scale = (sites - 1) * log_cosh(beta);
    return op;
}

double log_trace(const DenseOperator& op) {
    const std::size_t dim = op.dimension();
    CompensatedSum tr;
    for (std::size_t r = 0; r < dim; ++r) {
        tr += op.entries[r * dim + r];
    }
    return std::log(tr.value()) + op.log_scale;
}

DenseThermalState::DenseThermalState(const ProjectorPair& basis, double beta, int sites)
    : basis_(basis), op_(thermal_operator(beta, sites)) {
    const std::size_t dim = op_.dimension();
    CompensatedSum tr;
    for (std::size_t r = 0; r < dim; ++r) {
        tr += op_.entries[r * dim + r];
    }
    trace_entries_ = tr.value();
}

double DenseThermalState::probability(WordView word) const {
    if (word.size() != static_cast<std::size_t>(op_.sites)) {
        throw SizeError("word length does not match the cached chain length");
    }
    // Each P_j is rank one, so Tr[E (x_i P_ji)] = V^T E V with V = x_i v_ji.
    const int n = op_.sites;
    const std::size_t dim = op_.dimension();
    std::vector<double> v(dim, 1.0);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        for (int i = 0; i < n; ++i) {
            const Vec2& u = basis_.vector(word[i]);
            v[idx] *= (idx & site_bit(i, n)) ? u[1] : u[0];
        }
    }
    CompensatedSum quad;
    for (std::size_t r = 0; r < dim; ++r) {
        if (v[r] == 0.0) continue;
        const double* row = &op_.entries[r * dim];
        double acc = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            acc += row[c] * v[c];
        }
        quad += v[r] * acc;
    }
    return quad.value() / trace_entries_;
}

double finite_beta_prob_dense(const ProjectorPair& basis, double beta, WordView word) {
    check_sites(word.size(), kDenseMaxSites);
    return DenseThermalState(basis, beta, static_cast<int>(word.size())).probability(word);
}

double finite_beta_prob_dense(const ModelParams& params, double beta, WordView word) {
    return finite_beta_prob_dense(projectors(params), beta, word);
}

double finite_beta_prob_subset(const ProjectorPair& basis, double beta, WordView word) {
    check_beta(beta);
    check_sites(word.size(), kSubsetMaxSites);
    return subset_expansion(basis, std::tanh(beta), word);
}

double finite_beta_prob_subset(const ModelParams& params, double beta, WordView word) {
    return finite_beta_prob_subset(projectors(params), beta, word);
}

double zero_temp_prob_trace(const ProjectorPair& basis, WordView word) {
    check_sites(word.size(), kSubsetMaxSites);
    return subset_expansion(basis, 1.0, word);
}

double zero_temp_prob_trace(const ModelParams& params, WordView word) {
    return zero_temp_prob_trace(projectors(params), word);
}

double PartitionTrace::value() const {
    return std::exp(log_value);
}

PartitionTrace partition_trace(double beta, int sites) {
    check_beta(beta);
    if (sites < 1) {
        throw SizeError("chain must have at least one site");
    }
    return {sites * std::numbers::ln2 + (sites - 1) * log_cosh(beta)};
}

PartitionTrace dense_partition_trace(double beta, int sites) {
    return {log_trace(thermal_operator(beta, sites))};
}

}  // namespace kms::oracle
