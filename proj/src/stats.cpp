#include "kms/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kms/measure.hpp"
#include "kms/summation.hpp"

namespace kms::stats {

MixingDefectReport mixing_defect(const ModelParams& params, Symbol a, Symbol b, Symbol c, Symbol d,
                                 int gap) {
    if (gap < 2 || gap > kMixingMaxGap) {
        throw SizeError("mixing_defect gap must be in [2, " + std::to_string(kMixingMaxGap) + "]");
    }
    MixingDefectReport report;
    report.a = a;
    report.b = b;
    report.c = c;
    report.d = d;
    report.gap = gap;

    const int middle = gap - 1;  // symbols j2..jn
    Word word(static_cast<std::size_t>(gap) + 3);
    word[0] = a;
    word[1] = b;
    word[word.size() - 2] = c;
    word[word.size() - 1] = d;
    CompensatedSum sum;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << middle); ++mask) {
        for (int i = 0; i < middle; ++i) {
            word[static_cast<std::size_t>(2 + i)] = ((mask >> (middle - 1 - i)) & 1u) ? Symbol::two : Symbol::one;
        }
        sum += mu(params, word);
    }
    const Word ab{a, b};
    const Word cd{c, d};
    report.exact_sum = sum.value();
    report.product = mu(params, ab) * mu(params, cd);
    report.defect = report.exact_sum - report.product;
    const double sign = gap % 2 == 0 ? 1.0 : -1.0;
    report.predicted = sign * (params.beta(b) - params.beta(a)) * (params.beta(c) - params.beta(d)) / 16.0;
    return report;
}

MarkovWitness markov_witness(const ModelParams& params) {
    if (!(params.gamma > 0.0)) {
        throw DegenerateError("markov_witness needs gamma > 0 (theta != pi/4)");
    }
    const Word w1{Symbol::one};
    const Word w11{Symbol::one, Symbol::one};
    const Word w111{Symbol::one, Symbol::one, Symbol::one};
    const Word w1111{Symbol::one, Symbol::one, Symbol::one, Symbol::one};
    const double m1 = mu(params, w1);
    const double m11 = mu(params, w11);
    const double m111 = mu(params, w111);
    const double m1111 = mu(params, w1111);
    return {m11 / m1, m111 / m11, m1111 / m111};
}

double bernoulli_entropy(double p) noexcept {
    auto term = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
    return term(p) + term(1.0 - p);
}

EntropyEstimate entropy_estimate(const ModelParams& params, std::uint64_t seed, int n, int num_samples) {
    if (n < 1 || num_samples < 2) {
        throw DomainError("entropy_estimate needs n >= 1 and at least two samples");
    }
    Sampler sampler(params, seed);
    CompensatedSum sum;
    CompensatedSum sum_sq;
    for (int i = 0; i < num_samples; ++i) {
        const double x = -sampler.sample_with_log_prob(static_cast<std::size_t>(n)).log_mu / n;
        sum += x;
        sum_sq += x * x;
    }
    EntropyEstimate est;
    est.n = n;
    est.samples = num_samples;
    est.mean = sum.value() / num_samples;
    const double var = std::max(0.0, (sum_sq.value() - num_samples * est.mean * est.mean) / (num_samples - 1));
    est.half_width = 3.0 * std::sqrt(var / num_samples);
    est.target = bernoulli_entropy(params.p);
    return est;
}

double binomial_band(double q, int samples) noexcept {
    return 3.0 * std::sqrt(q * (1.0 - q) / samples);
}

double two_sided_deviation(const ModelParams& params, const ldp::Observable& obs, int n, double epsilon) {
    const double m = obs.mean();
    const ldp::Interval below = ldp::Interval::at_most(m - epsilon);
    const ldp::Interval above = ldp::Interval::at_least(m + epsilon);
    if (n <= ldp::kDeviationEnumerateMaxN) {
        return ldp::deviation_probability(params, obs, n, below) +
               ldp::deviation_probability(params, obs, n, above);
    }
    return ldp::deviation_probability_dp(params, obs, n, below) +
           ldp::deviation_probability_dp(params, obs, n, above);
}

std::vector<BirkhoffRow> birkhoff_table(const ModelParams& params, const ldp::Observable& obs,
                                        std::uint64_t seed, const std::vector<int>& n_list,
                                        double epsilon, int num_samples) {
    if (num_samples < 1) {
        throw DomainError("birkhoff_table needs at least one sample");
    }
    std::vector<BirkhoffRow> rows;
    rows.reserve(n_list.size());
    for (std::size_t task = 0; task < n_list.size(); ++task) {
        const int n = n_list[task];
        if (n < 1) throw SizeError("birkhoff_table: n must be positive");
        Sampler sampler(params, seed + task);
        const double slack = 1e-12 * (1.0 + std::abs(epsilon));
        int hits = 0;
        for (int i = 0; i < num_samples; ++i) {
            const Word w = sampler.sample(static_cast<std::size_t>(n));
            double total = 0.0;
            for (Symbol s : w) total += obs.value(s);
            if (std::abs(total / n - obs.mean()) >= epsilon - slack) ++hits;
        }
        BirkhoffRow row;
        row.n = n;
        row.empirical = static_cast<double>(hits) / num_samples;
        row.exact = two_sided_deviation(params, obs, n, epsilon);
        row.band = binomial_band(row.exact, num_samples);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace kms::stats
