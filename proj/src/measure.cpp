#include "kms/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kms/summation.hpp"

namespace kms {

MeasureState initial_state(Symbol s) noexcept {
    return {0.5, 1.0, s, 1};
}

MeasureState extend_front(const ModelParams& params, const MeasureState& state, Symbol x) noexcept {
    MeasureState next;
    next.mu_w = coeff_a(x, state.first, params) * state.mu_w +
                coeff_b(x, state.first, params) * state.mu_tail;
    next.mu_tail = state.mu_w;
    next.first = x;
    next.length = state.length + 1;
    return next;
}

MeasureState state_of(const ModelParams& params, WordView word) {
    if (word.empty()) {
        throw SizeError("cylinder word must contain at least one symbol");
    }
    MeasureState state = initial_state(word.back());
    for (auto it = word.rbegin() + 1; it != word.rend(); ++it) {
        state = extend_front(params, state, *it);
    }
    return state;
}

double mu(const ModelParams& params, WordView word) {
    return state_of(params, word).mu_w;
}

CylinderTable::CylinderTable(int length, std::vector<double> probabilities)
    : length_(length), probs_(std::move(probabilities)) {
    if (length < 1 || probs_.size() != (std::size_t{1} << length)) {
        throw SizeError("cylinder table size must be 2^length");
    }
}

Word CylinderTable::word_at(std::size_t index) const {
    Word word(static_cast<std::size_t>(length_));
    for (int i = 0; i < length_; ++i) {
        const bool bit = (index >> (length_ - 1 - i)) & 1u;
        word[static_cast<std::size_t>(i)] = bit ? Symbol::two : Symbol::one;
    }
    return word;
}

std::size_t CylinderTable::index_of(WordView word) {
    std::size_t index = 0;
    for (Symbol s : word) {
        index = (index << 1) | (s == Symbol::two ? 1u : 0u);
    }
    return index;
}

double CylinderTable::total() const {
    CompensatedSum sum;
    for (double p : probs_) sum += p;
    return sum.value();
}

namespace {

// Depth-first over suffixes: every node is a suffix whose state is shared by both
// of its front extensions, so the whole table costs O(2^n).
void fill_from_suffix(const ModelParams& params, const MeasureState& state, std::size_t suffix_bits,
                      int length, std::vector<double>& out) {
    if (static_cast<int>(state.length) == length) {
        out[suffix_bits] = state.mu_w;
        return;
    }
    const std::size_t shift = state.length;
    for (Symbol x : {Symbol::one, Symbol::two}) {
        const std::size_t bits = suffix_bits | ((x == Symbol::two ? std::size_t{1} : 0) << shift);
        fill_from_suffix(params, extend_front(params, state, x), bits, length, out);
    }
}

}  // namespace

CylinderTable enumerate(const ModelParams& params, int length) {
    if (length < 1 || length > kEnumerateMaxLength) {
        throw SizeError("enumeration length must be in [1, " +
                        std::to_string(kEnumerateMaxLength) + "], got " + std::to_string(length));
    }
    std::vector<double> probs(std::size_t{1} << length, 0.0);
    for (Symbol last : {Symbol::one, Symbol::two}) {
        fill_from_suffix(params, initial_state(last), last == Symbol::two ? 1u : 0u, length, probs);
    }
    return CylinderTable(length, std::move(probs));
}

Sampler::Sampler(const ModelParams& params, std::uint64_t seed) : params_(params), rng_(seed) {}

double Sampler::uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

Word Sampler::sample(std::size_t length) {
    return sample_with_log_prob(length).word;
}

Sampler::Draw Sampler::sample_with_log_prob(std::size_t length) {
    if (length < 1) {
        throw SizeError("sample length must be at least 1");
    }
    Draw draw;
    draw.word.reserve(length);

    const Symbol start = uniform() < 0.5 ? Symbol::one : Symbol::two;
    draw.word.push_back(start);
    draw.log_mu = -std::numbers::ln2;

    // Kept normalised to mu_w == 1; extend_front is linear so ratios are unaffected.
    MeasureState state{1.0, 1.0 / 0.5, start, 1};
    while (draw.word.size() < length) {
        const MeasureState with_one = extend_front(params_, state, Symbol::one);
        const MeasureState with_two = extend_front(params_, state, Symbol::two);
        const double q1 = std::max(with_one.mu_w, 0.0);
        const double q2 = std::max(with_two.mu_w, 0.0);
        const double norm = q1 + q2;
        if (!(norm > 0.0)) {
            throw NumericalError("sampler reached a zero-measure cylinder");
        }
        const bool pick_one = uniform() * norm < q1;
        const MeasureState& chosen = pick_one ? with_one : with_two;
        const double conditional = (pick_one ? q1 : q2) / norm;
        draw.log_mu += std::log(conditional);
        draw.word.push_back(chosen.first);
        state = chosen;
        state.mu_tail /= state.mu_w;
        state.mu_w = 1.0;
    }
    std::reverse(draw.word.begin(), draw.word.end());
    return draw;
}

}  // namespace kms
