#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kms/params.hpp"

namespace kms {

/// Incremental evaluation state for a word w: mu(w) and mu of w without its first symbol.
/// The empty word has measure one, so a single symbol starts from (1/2, 1).
struct MeasureState {
    double mu_w = 0.0;
    double mu_tail = 0.0;
    Symbol first = Symbol::one;
    std::size_t length = 0;
};

MeasureState initial_state(Symbol s) noexcept;

/// Prepends x: mu(x w) = a(x, w0) mu(w) + b(x, w0) mu(w without w0). O(1).
MeasureState extend_front(const ModelParams& params, const MeasureState& state, Symbol x) noexcept;

/// State of a whole word, built back to front in O(n).
MeasureState state_of(const ModelParams& params, WordView word);

/// Zero-temperature cylinder probability mu(word).
double mu(const ModelParams& params, WordView word);

inline constexpr int kEnumerateMaxLength = 24;

/// All 2^n cylinder probabilities of one length, in lexicographic word order
/// (symbol 1 before 2, first symbol most significant).
class CylinderTable {
public:
    CylinderTable(int length, std::vector<double> probabilities);

    int length() const noexcept { return length_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t index) const { return probs_[index]; }
    const std::vector<double>& probabilities() const noexcept { return probs_; }

    /// Word stored at `index`.
    Word word_at(std::size_t index) const;
    static std::size_t index_of(WordView word);
    /// Compensated sum of all entries.
    double total() const;

private:
    int length_;
    std::vector<double> probs_;
};

CylinderTable enumerate(const ModelParams& params, int length);

/// Exact sampler for mu restricted to cylinders of a given length. Words are grown at the
/// front with the conditional kernel mu(x w)/mu(w) and reversed at the end, which is valid
/// because mu is invariant under word reversal.
class Sampler {
public:
    Sampler(const ModelParams& params, std::uint64_t seed);

    struct Draw {
        Word word;
        double log_mu = 0.0;  // natural log of mu(word)
    };

    Word sample(std::size_t length);
    Draw sample_with_log_prob(std::size_t length);

private:
    double uniform();

    ModelParams params_;
    std::mt19937_64 rng_;
};

}  // namespace kms
