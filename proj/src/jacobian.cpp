#include "kms/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kms/measure.hpp"

namespace kms::jacobian {

namespace {

void require_nondegenerate(const ModelParams& params, const char* what) {
    if (!(params.gamma > 0.0)) {
        throw DegenerateError(std::string(what) + " needs gamma > 0 (theta != pi/4)");
    }
}

}  // namespace

double jacobian_ratio(const ModelParams& params, WordView word) {
    if (word.size() < 2) {
        throw SizeError("jacobian_ratio needs a word of length >= 2");
    }
    const MeasureState state = state_of(params, word);
    if (!(state.mu_tail > 0.0)) {
        throw DomainError("jacobian ratio undefined: mu(" + format_word(word.subspan(1)) + ") = 0");
    }
    return state.mu_w / state.mu_tail;
}

JacobianTrace jacobian_trace(const ModelParams& params, WordView word) {
    if (word.size() < 2) {
        throw SizeError("jacobian_trace needs a word of length >= 2");
    }
    // mu(x0..xn) = mu(xn..x0), so growing at the back is front-extension of the reverse.
    JacobianTrace trace;
    trace.prefix.assign(word.begin(), word.end());
    MeasureState full = initial_state(word[0]);
    MeasureState tail = initial_state(word[1]);
    full = extend_front(params, full, word[1]);
    for (std::size_t n = 1;; ++n) {
        if (!(tail.mu_w > 0.0)) {
            throw DomainError("jacobian ratio undefined at depth " + std::to_string(n));
        }
        trace.ratios.push_back(full.mu_w / tail.mu_w);
        if (n + 1 >= word.size()) break;
        full = extend_front(params, full, word[n + 1]);
        tail = extend_front(params, tail, word[n + 1]);
    }
    return trace;
}

std::vector<double> one_infinity_ratios(const ModelParams& params, int count) {
    require_nondegenerate(params, "one_infinity_ratios");
    if (count < 2) {
        throw SizeError("one_infinity_ratios needs N >= 2");
    }
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(count));
    MeasureState state = initial_state(Symbol::one);
    for (int n = 1; n <= count; ++n) {
        const double shorter = state.mu_w;
        state = extend_front(params, state, Symbol::one);
        ratios.push_back(state.mu_w / shorter);
    }
    return ratios;
}

double continued_fraction(const ModelParams& params, WordView word, double seed) {
    if (word.size() < 2) {
        throw SizeError("continued_fraction needs at least one adjacent pair");
    }
    const double lo = params.gamma;
    const double hi = 1.0 - params.gamma;
    constexpr double kSlack = 1e-12;
    double value = seed;
    for (std::size_t i = word.size() - 1; i-- > 0;) {
        if (!(value >= lo - kSlack && value <= hi + kSlack)) {
            throw NumericalError("continued fraction left [gamma, 1 - gamma]");
        }
        value = coeff_a(word[i], word[i + 1], params) + coeff_b(word[i], word[i + 1], params) / value;
    }
    return value;
}

std::string_view label_name(ClassLabel label) noexcept {
    switch (label) {
        case ClassLabel::A: return "A";
        case ClassLabel::B: return "B";
        case ClassLabel::Unresolved: return "unresolved";
    }
    return "unresolved";
}

Classification classify(const ModelParams& params, WordView word, double epsilon, int max_depth) {
    require_nondegenerate(params, "classify");
    const double p = params.p;
    const int depth_cap = std::min<int>(max_depth, static_cast<int>(word.size()) - 1);

    Classification result;
    int streak_a = 0;
    int streak_b = 0;
    for (int depth = 1; depth <= depth_cap; ++depth) {
        const double value = continued_fraction(params, word.first(static_cast<std::size_t>(depth) + 1));
        streak_a = std::abs(value - p) <= epsilon ? streak_a + 1 : 0;
        streak_b = std::abs(value - (1.0 - p)) <= epsilon ? streak_b + 1 : 0;
        result.depth_used = depth;
        result.value = value;
        if (streak_a >= kConsecutiveHits) {
            result.label = ClassLabel::A;
            return result;
        }
        if (streak_b >= kConsecutiveHits) {
            result.label = ClassLabel::B;
            return result;
        }
    }
    result.label = ClassLabel::Unresolved;
    return result;
}

std::pair<double, double> fixed_points(const ModelParams& params) {
    const double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * params.gamma));
    return {0.5 * (1.0 - root), 0.5 * (1.0 + root)};
}

double g_a(const ModelParams& params, double x) {
    return params.gamma / x;
}

double g_b(const ModelParams& params, double x) {
    return 1.0 - params.gamma / x;
}

double f1(const ModelParams& params, double x) {
    return 1.0 - 1.0 / (1.0 / params.gamma - 1.0 / x);
}

double f2(const ModelParams& params, double x) {
    return 1.0 / (1.0 / params.gamma - 1.0 / (1.0 - x));
}

}  // namespace kms::jacobian
