#include "kms/params.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

namespace kms {

Word parse_word(std::string_view text) {
    if (text.empty()) {
        throw DomainError("empty word");
    }
    Word word;
    word.reserve(text.size());
    for (char c : text) {
        if (c == '1') {
            word.push_back(Symbol::one);
        } else if (c == '2') {
            word.push_back(Symbol::two);
        } else {
            throw DomainError("word must be over {1,2}: '" + std::string(text) + "'");
        }
    }
    return word;
}

std::string format_word(WordView word) {
    std::string out;
    out.reserve(word.size());
    for (Symbol s : word) {
        out.push_back(s == Symbol::one ? '1' : '2');
    }
    return out;
}

Word reversed(WordView word) {
    return Word(word.rbegin(), word.rend());
}

ModelParams new_params(double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
        throw DomainError("theta must lie in the open interval (0, pi/2), got " +
                          std::to_string(theta));
    }
    ModelParams params;
    params.theta = theta;
    params.beta1 = std::sin(2.0 * theta);
    params.p = 0.5 * (1.0 + params.beta1);
    params.gamma = 0.25 * (1.0 - params.beta1) * (1.0 + params.beta1);
    params.degenerate = params.gamma == 0.0;
    return params;
}

double parse_theta(std::string_view text) {
    if (text == "pi/6") return std::numbers::pi / 6;
    if (text == "pi/4") return std::numbers::pi / 4;
    if (text == "pi/3") return std::numbers::pi / 3;

    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw DomainError("cannot parse theta '" + std::string(text) +
                          "' (expected radians or pi/6, pi/4, pi/3)");
    }
    return value;
}

double coeff_a(Symbol k0, Symbol k1, const ModelParams&) noexcept {
    return k0 == k1 ? 0.0 : 1.0;
}

double coeff_b(Symbol k0, Symbol k1, const ModelParams& params) noexcept {
    return k0 == k1 ? params.gamma : -params.gamma;
}

Mat2 matmul(const Mat2& lhs, const Mat2& rhs) noexcept {
    return {lhs[0] * rhs[0] + lhs[1] * rhs[2], lhs[0] * rhs[1] + lhs[1] * rhs[3],
            lhs[2] * rhs[0] + lhs[3] * rhs[2], lhs[2] * rhs[1] + lhs[3] * rhs[3]};
}

namespace {

Mat2 outer(const Vec2& v) noexcept {
    return {v[0] * v[0], v[0] * v[1], v[1] * v[0], v[1] * v[1]};
}

}  // namespace

ProjectorPair projectors(const ModelParams& params) {
    const double c = std::cos(params.theta);
    const double s = std::sin(params.theta);
    ProjectorPair pair;
    pair.v1 = {c, s};
    pair.v2 = {-s, c};
    pair.p1 = outer(pair.v1);
    pair.p2 = outer(pair.v2);
    return pair;
}

ProjectorPair diagonal_projectors() {
    ProjectorPair pair;
    pair.v1 = {1.0, 0.0};
    pair.v2 = {0.0, 1.0};
    pair.p1 = outer(pair.v1);
    pair.p2 = outer(pair.v2);
    return pair;
}

}  // namespace kms
