#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "kms/params.hpp"

namespace kms::jacobian {

/// mu(x0..xn) / mu(x1..xn) for a word of length n+1 >= 2.
double jacobian_ratio(const ModelParams& params, WordView word);

/// Finite-depth ratios J^1, ..., J^N of a single point, where N = word.size() - 1.
struct JacobianTrace {
    Word prefix;
    std::vector<double> ratios;  // ratios[n-1] == J^n
};

JacobianTrace jacobian_trace(const ModelParams& params, WordView word);

/// mu(1^{n+1}) / mu(1^n) for n = 1..count; alternates 2 gamma, 1/2.
std::vector<double> one_infinity_ratios(const ModelParams& params, int count);

inline constexpr double kTruncationSeed = 0.5;

/// Finite continued fraction a(k0,k1) + b(k0,k1)/(a(k1,k2) + b(k1,k2)/(... + b/seed)) over
/// the r = word.size() - 1 adjacent pairs, evaluated innermost first.
double continued_fraction(const ModelParams& params, WordView word, double seed = kTruncationSeed);

enum class ClassLabel { A, B, Unresolved };

std::string_view label_name(ClassLabel label) noexcept;

struct Classification {
    ClassLabel label = ClassLabel::Unresolved;
    int depth_used = 0;
    double value = 0.0;  // truncation at depth_used
};

inline constexpr int kConsecutiveHits = 3;

/// Labels a point A (J = p) or B (J = 1 - p) once the truncations at kConsecutiveHits
/// successive depths all sit within epsilon of the same fixed point. Depth is capped by
/// max_depth and by word.size() - 1.
Classification classify(const ModelParams& params, WordView word, double epsilon, int max_depth);

/// (1 - sqrt(1 - 4 gamma))/2 and (1 + sqrt(1 - 4 gamma))/2, i.e. 1 - p and p.
std::pair<double, double> fixed_points(const ModelParams& params);

// One-step maps of the truncation: equal neighbours act by g_a, unequal by g_b.
double g_a(const ModelParams& params, double x);
double g_b(const ModelParams& params, double x);
// Two-step maps for the m-blocks "baab" and "abba".
double f1(const ModelParams& params, double x);
double f2(const ModelParams& params, double x);

}  // namespace kms::jacobian
