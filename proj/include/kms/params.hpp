#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kms {

// Error taxonomy shared by every module.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct SizeError : std::length_error {
    using std::length_error::length_error;
};
// Raised when an operation needs gamma > 0 and theta = pi/4 was supplied.
struct DegenerateError : std::domain_error {
    using std::domain_error::domain_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Spin value at one site. `one` is the +1 eigenvector of L, `two` the -1 one.
enum class Symbol : std::uint8_t { one = 1, two = 2 };

using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

inline constexpr Symbol other(Symbol s) noexcept {
    return s == Symbol::one ? Symbol::two : Symbol::one;
}

/// Parses a string over {'1','2'}; throws DomainError on anything else or on empty input.
Word parse_word(std::string_view text);
std::string format_word(WordView word);
Word reversed(WordView word);

struct ModelParams {
    double theta = 0.0;
    double beta1 = 0.0;  // sin(2 theta); beta2 = -beta1 is implied
    double gamma = 0.0;  // (1 - beta1^2) / 4 = mu(1,1)
    double p = 0.0;      // (1 + beta1) / 2
    bool degenerate = false;  // gamma == 0, i.e. theta = pi/4

    double beta(Symbol s) const noexcept { return s == Symbol::one ? beta1 : -beta1; }
};

/// Builds the parameter set for an angle in the open interval (0, pi/2).
ModelParams new_params(double theta);

/// Accepts decimal radians or one of the literals "pi/6", "pi/4", "pi/3".
double parse_theta(std::string_view text);

/// a(k0,k1) = (1 - beta_k0/beta_k1)/2: 0 on equal symbols, 1 otherwise.
double coeff_a(Symbol k0, Symbol k1, const ModelParams& params) noexcept;
/// b(k0,k1) = beta_k0 (1/beta_k1 - beta_k1)/4: +gamma on equal symbols, -gamma otherwise.
double coeff_b(Symbol k0, Symbol k1, const ModelParams& params) noexcept;

using Mat2 = std::array<double, 4>;  // row-major
using Vec2 = std::array<double, 2>;

inline constexpr Mat2 kSigmaX{0.0, 1.0, 1.0, 0.0};
inline constexpr Mat2 kIdentity2{1.0, 0.0, 0.0, 1.0};

Mat2 matmul(const Mat2& lhs, const Mat2& rhs) noexcept;
inline double trace(const Mat2& m) noexcept { return m[0] + m[3]; }

/// Rank-one spectral projectors of the site observable together with their unit vectors.
struct ProjectorPair {
    Mat2 p1{};
    Mat2 p2{};
    Vec2 v1{};
    Vec2 v2{};

    const Mat2& projector(Symbol s) const noexcept { return s == Symbol::one ? p1 : p2; }
    const Vec2& vector(Symbol s) const noexcept { return s == Symbol::one ? v1 : v2; }
};

ProjectorPair projectors(const ModelParams& params);
/// The sigma_z boundary case (theta -> 0), excluded from ModelParams but useful as an oracle.
ProjectorPair diagonal_projectors();

}  // namespace kms
