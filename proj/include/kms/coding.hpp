#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kms/jacobian.hpp"
#include "kms/params.hpp"

namespace kms::coding {

/// Change code of adjacent pairs: a for equal neighbours, b for a change.
enum class AB : char { a = 'a', b = 'b' };
using ABWord = std::vector<AB>;

/// Second-level letters: alpha = ab, beta = ba.
enum class Greek : char { alpha, beta };
using AlphaBetaWord = std::vector<Greek>;

ABWord to_ab(WordView k);
/// Inverse of to_ab once the first symbol is known.
Word from_ab(const ABWord& m, Symbol k0);

struct AlphaBetaCode {
    AlphaBetaWord w;
    std::optional<AB> held_back;  // last m letter when m has odd length
};

/// Blockwise substitution on consecutive pairs of m:
/// aa -> (nothing), ab -> alpha, ba -> beta, bb -> beta alpha.
AlphaBetaCode to_alphabeta(const ABWord& m);

/// Cancels adjacent equal letters (alpha alpha and beta beta act as the identity) until the
/// word alternates.
AlphaBetaWord reduce(const AlphaBetaWord& w);

std::string format_ab(const ABWord& m);
ABWord parse_ab(std::string_view text);
std::string format_greek(const AlphaBetaWord& w);

enum class CoordinateStatus { resolved, unresolved, inconsistent };

std::string_view status_name(CoordinateStatus status) noexcept;

struct Coordinate {
    int value = -1;  // 0 for class A, 1 for class B, -1 when not resolved
    CoordinateStatus status = CoordinateStatus::unresolved;
    int depth_used = 0;
};

struct ConjugacyOutput {
    std::vector<Coordinate> coords;

    std::size_t resolved_count() const;
};

/// c_j = 0 if sigma^j(x) is in A, 1 if in B, classified from the window
/// word[j .. j + max_depth]. Needs coordinates <= word.size() - max_depth.
/// Adjacent resolved labels that break the propagation rules are downgraded to inconsistent.
ConjugacyOutput conjugacy_h(const ModelParams& params, WordView word, double epsilon, int max_depth,
                            int coordinates);

/// The label the propagation rules force on x0 given the label of the shifted point and
/// the first two symbols: same class across a change, swapped class across a repeat.
int propagate_label(int shifted_label, Symbol x0, Symbol x1) noexcept;

}  // namespace kms::coding
