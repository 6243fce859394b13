#pragma once

#include <cstdint>
#include <vector>

#include "kms/ldp.hpp"
#include "kms/params.hpp"

namespace kms::stats {

struct MixingDefectReport {
    Symbol a{}, b{}, c{}, d{};
    int gap = 0;
    double exact_sum = 0.0;  // sum over j2..jn of mu(a, b, j2, ..., jn, c, d)
    double product = 0.0;    // mu(a,b) mu(c,d)
    double defect = 0.0;     // exact_sum - product
    double predicted = 0.0;  // (-1)^n (beta_b - beta_a)(beta_c - beta_d) / 16
};

inline constexpr int kMixingMaxGap = 12;

MixingDefectReport mixing_defect(const ModelParams& params, Symbol a, Symbol b, Symbol c, Symbol d,
                                 int gap);

/// Conditionals mu(1|1), mu(1|11), mu(1|111).
struct MarkovWitness {
    double given_1 = 0.0;
    double given_11 = 0.0;
    double given_111 = 0.0;

    bool not_markov() const noexcept { return given_1 != given_11; }
    bool not_two_step() const noexcept { return given_11 != given_111; }
};

MarkovWitness markov_witness(const ModelParams& params);

/// -p log p - (1-p) log(1-p), natural log.
double bernoulli_entropy(double p) noexcept;

struct EntropyEstimate {
    double mean = 0.0;
    double half_width = 0.0;  // 3 standard errors
    double target = 0.0;      // bernoulli_entropy(params.p)
    int n = 0;
    int samples = 0;
};

/// Shannon-McMillan-Breiman estimate: average of -(1/n) log mu(w) over sampled words.
EntropyEstimate entropy_estimate(const ModelParams& params, std::uint64_t seed, int n, int num_samples);

struct BirkhoffRow {
    int n = 0;
    double empirical = 0.0;
    double exact = 0.0;  // enumeration for n <= 22, the count automaton beyond
    double band = 0.0;   // 3 sigma binomial half-width around `exact`
};

/// Fraction of sampled words with |S_n/n - integral A| >= epsilon, for every n in n_list.
std::vector<BirkhoffRow> birkhoff_table(const ModelParams& params, const ldp::Observable& obs,
                                        std::uint64_t seed, const std::vector<int>& n_list,
                                        double epsilon, int num_samples = 10000);

/// Exact mu{ |S_n/n - integral A| >= epsilon }.
double two_sided_deviation(const ModelParams& params, const ldp::Observable& obs, int n, double epsilon);

/// 3 sigma half-width of an empirical frequency of an event with probability q.
double binomial_band(double q, int samples) noexcept;

}  // namespace kms::stats
