#include "kms/ldp.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "kms/measure.hpp"
#include "kms/summation.hpp"

namespace kms::ldp {

namespace {

constexpr double kOverflowExponent = 700.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(std::span<const double> xs) {
    double top = -kInf;
    for (double x : xs) top = std::max(top, x);
    if (top == -kInf) return -kInf;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - top);
    return top + std::log(acc);
}

// The three exponents whose log-sum-exp is log(delta^2 - alpha^2):
// (1-b^2) e^{2tA1}, (1-b^2) e^{2tA2} and 2(1+b^2) e^{t(A1+A2)}.
std::array<double, 3> gap_exponents(const ModelParams& params, const Observable& obs, double t) {
    const double log_edge = params.gamma > 0.0 ? std::log(4.0 * params.gamma) : -kInf;
    const double log_mid = std::log(2.0 * (1.0 + params.beta1 * params.beta1));
    return {log_edge + 2.0 * t * obs.a1, log_edge + 2.0 * t * obs.a2,
            log_mid + t * (obs.a1 + obs.a2)};
}

// log 2 - 1/2 log(sum_i e^{L_i - 2 t s}) = t s - c(t), without cancellation.
double legendre_objective(const ModelParams& params, const Observable& obs, double t, double s) {
    auto exps = gap_exponents(params, obs, t);
    for (double& e : exps) e -= 2.0 * t * s;
    return std::numbers::ln2 - 0.5 * log_sum_exp(exps);
}

void check_n(int n, int cap, const char* what) {
    if (n < 0 || n > cap) {
        throw SizeError(std::string(what) + ": n = " + std::to_string(n) + " outside [0, " +
                        std::to_string(cap) + "]");
    }
}

}  // namespace

Observable make_observable(double a1, double a2) {
    if (!std::isfinite(a1) || !std::isfinite(a2)) {
        throw DomainError("observable values must be finite");
    }
    return {a1, a2};
}

DeltaAlpha delta_alpha(const ModelParams& params, const Observable& obs, double t) {
    const double e1 = t * obs.a1;
    const double e2 = t * obs.a2;
    DeltaAlpha out;
    if (std::max(std::abs(e1), std::abs(e2)) > kOverflowExponent) {
        out.log_scale = std::max(e1, e2);
    }
    const double x1 = std::exp(e1 - out.log_scale);
    const double x2 = std::exp(e2 - out.log_scale);
    out.delta = x1 + x2;
    out.alpha = params.beta1 * (x1 - x2);
    return out;
}

double log_delta2_minus_alpha2(const ModelParams& params, const Observable& obs, double t) {
    const auto exps = gap_exponents(params, obs, t);
    return log_sum_exp(exps);
}

double q_direct(const ModelParams& params, const Observable& obs, int n, double t) {
    check_n(n, kDirectMaxN, "q_direct");
    const int sites = n + 1;
    const CylinderTable table = enumerate(params, sites);
    CompensatedSum total;
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        const int twos = std::popcount(idx);
        const double sum = (sites - twos) * obs.a1 + twos * obs.a2;
        total += std::exp(t * sum) * table[idx];
    }
    return total.value();
}

double log_q_recursive(const ModelParams& params, const Observable& obs, int n, double t) {
    if (n < 0) {
        throw SizeError("Q_n needs n >= 0");
    }
    const double log_step = log_delta2_minus_alpha2(params, obs, t) - std::log(4.0);
    const std::array<double, 2> e{t * obs.a1, t * obs.a2};
    const double log_half_delta = log_sum_exp(e) - std::numbers::ln2;
    const int m = n / 2;
    if (n % 2 == 0) {
        return (m == 0 ? 0.0 : m * log_step) + log_half_delta;
    }
    return (m + 1) * log_step;
}

double q_recursive(const ModelParams& params, const Observable& obs, int n, double t) {
    return std::exp(log_q_recursive(params, obs, n, t));
}

double q_long_recursion(const ModelParams& params, const Observable& obs, int n, double t) {
    if (n < 0) {
        throw SizeError("Q_n needs n >= 0");
    }
    // Homogeneous of degree n+1 in (delta, alpha), so it runs on the scaled pair.
    const DeltaAlpha da = delta_alpha(params, obs, t);
    const double d = da.delta;
    const double a2 = da.alpha * da.alpha;
    std::vector<double> q(static_cast<std::size_t>(std::max(n, 1)) + 1);
    q[0] = 0.5 * d;
    q[1] = 0.25 * (d * d - a2);
    for (int k = 2; k <= n; ++k) {
        CompensatedSum acc;
        acc += 0.5 * d * q[k - 1];
        double coeff = a2;  // 2^-j delta^{j-2} alpha^2 up to sign
        for (int j = 2; j <= k - 1; ++j) {
            coeff = (j == 2) ? 0.25 * a2 : 0.5 * d * coeff;
            const double sign = (j % 2 == 0) ? -1.0 : 1.0;
            acc += sign * coeff * q[k - j];
        }
        q[k] = acc.value();
    }
    return std::exp((n + 1) * da.log_scale) * q[n];
}

double free_energy(const ModelParams& params, const Observable& obs, double t) {
    const double e1 = t * obs.a1;
    const double e2 = t * obs.a2;
    if (std::max(std::abs(e1), std::abs(e2)) > kOverflowExponent) {
        return 0.5 * log_delta2_minus_alpha2(params, obs, t) - std::numbers::ln2;
    }
    // (delta^2 - alpha^2) / 4 = u v with u, v the two one-site moment generating functions;
    // log1p keeps c(0) = 0 exactly and c accurate near 0.
    const double p = params.p;
    const double log_u = std::log1p(p * std::expm1(e1) + (1.0 - p) * std::expm1(e2));
    const double log_v = std::log1p((1.0 - p) * std::expm1(e1) + p * std::expm1(e2));
    return 0.5 * (log_u + log_v);
}

double free_energy_derivative(const ModelParams& params, const Observable& obs, double t) {
    const auto exps = gap_exponents(params, obs, t);
    const double total = log_sum_exp(exps);
    const std::array<double, 3> slopes{2.0 * obs.a1, 2.0 * obs.a2, obs.a1 + obs.a2};
    double acc = 0.0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        acc += std::exp(exps[i] - total) * slopes[i];
    }
    return 0.5 * acc;
}

FreeEnergyCurve free_energy_curve(const ModelParams& params, const Observable& obs,
                                  const std::vector<double>& grid) {
    FreeEnergyCurve curve;
    curve.t = grid;
    curve.c.reserve(grid.size());
    curve.dc.reserve(grid.size());
    for (double t : grid) {
        curve.c.push_back(free_energy(params, obs, t));
        curve.dc.push_back(free_energy_derivative(params, obs, t));
    }
    return curve;
}

RateFunction::RateFunction(const ModelParams& params, const Observable& obs)
    : params_(params), obs_(obs) {
    if (obs.degenerate()) {
        throw DegenerateError("rate function needs A(1) != A(2)");
    }
}

double RateFunction::argmax_t(double s) const {
    if (!(s > domain_lo() && s < domain_hi())) {
        throw DomainError("argmax_t needs s strictly inside (min A, max A)");
    }
    if (params_.degenerate) {
        throw DegenerateError("c is linear at theta = pi/4; there is no unique maximiser");
    }
    auto dc = [&](double t) { return free_energy_derivative(params_, obs_, t); };

    double lo = -1.0;
    double hi = 1.0;
    constexpr double kBracketLimit = 1e8;
    while (dc(hi) < s) {
        hi *= 2.0;
        if (hi > kBracketLimit) throw NumericalError("rate function root not bracketed from above");
    }
    while (dc(lo) > s) {
        lo *= 2.0;
        if (lo < -kBracketLimit) throw NumericalError("rate function root not bracketed from below");
    }

    // Bisect until the bracket cannot shrink further; c' is strictly increasing.
    double best = 0.5 * (lo + hi);
    double best_residual = kInf;
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double r = dc(mid) - s;
        if (std::abs(r) < best_residual) {
            best_residual = std::abs(r);
            best = mid;
        }
        if (r == 0.0) break;
        (r < 0.0 ? lo : hi) = mid;
    }
    return best;
}

double RateFunction::endpoint_value(double s, double direction) const {
    // Limit of t s - c(t) along t = direction * 10^k.
    double previous = legendre_objective(params_, obs_, direction, s);
    for (int k = 1; k <= 300; ++k) {
        const double t = direction * std::pow(10.0, k);
        const double current = legendre_objective(params_, obs_, t, s);
        if (!std::isfinite(current)) return kInf;
        if (std::abs(current - previous) < 1e-10) return current;
        previous = current;
    }
    return kInf;
}

double RateFunction::operator()(double s) const {
    if (std::isnan(s)) throw DomainError("rate function argument is NaN");
    if (s < domain_lo() || s > domain_hi()) return kInf;
    if (params_.degenerate) {
        return s == obs_.mean() ? 0.0 : kInf;
    }
    if (s == domain_hi()) return endpoint_value(s, +1.0);
    if (s == domain_lo()) return endpoint_value(s, -1.0);
    const double t = argmax_t(s);
    return std::max(0.0, legendre_objective(params_, obs_, t, s));
}

double rate_function(const ModelParams& params, const Observable& obs, double s) {
    return RateFunction(params, obs)(s);
}

double legendre_of_rate(const RateFunction& rate, double t, int grid_points) {
    if (grid_points < 3) {
        throw DomainError("legendre_of_rate needs at least 3 grid points");
    }
    const double lo = rate.domain_lo();
    const double hi = rate.domain_hi();
    const double step = (hi - lo) / (grid_points - 1);
    auto objective = [&](double s) { return t * s - rate(s); };

    int best_k = 0;
    double best = -kInf;
    for (int k = 0; k < grid_points; ++k) {
        const double s = (k == grid_points - 1) ? hi : lo + k * step;
        const double v = objective(s);
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    const double a = lo + std::max(0, best_k - 1) * step;
    const double b = std::min(hi, lo + (best_k + 1) * step);
    auto negated = [&](double s) { return -objective(s); };
    const auto [s_star, neg_value] =
        boost::math::tools::brent_find_minima(negated, a, b, std::numeric_limits<double>::digits);
    (void)s_star;
    return std::max(best, -neg_value);
}

bool Interval::contains(double x) const noexcept {
    auto slack = [](double edge) { return 1e-12 * (1.0 + std::abs(edge)); };
    const bool above = std::isinf(lo) ? true
                       : lo_closed    ? x >= lo - slack(lo)
                                      : x > lo + slack(lo);
    const bool below = std::isinf(hi) ? true
                       : hi_closed    ? x <= hi + slack(hi)
                                      : x < hi - slack(hi);
    return above && below;
}

double deviation_probability(const ModelParams& params, const Observable& obs, int n,
                             const Interval& set) {
    if (n < 1 || n > kDeviationEnumerateMaxN) {
        throw SizeError("deviation_probability enumerates n in [1, " +
                        std::to_string(kDeviationEnumerateMaxN) + "], got " + std::to_string(n));
    }
    const CylinderTable table = enumerate(params, n);
    std::vector<CompensatedSum> by_count(static_cast<std::size_t>(n) + 1);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        const int ones = n - std::popcount(idx);
        by_count[static_cast<std::size_t>(ones)] += table[idx];
    }
    CompensatedSum total;
    for (int ones = 0; ones <= n; ++ones) {
        const double mean = (ones * obs.a1 + (n - ones) * obs.a2) / n;
        if (set.contains(mean)) total += by_count[static_cast<std::size_t>(ones)].value();
    }
    return total.value();
}

std::vector<double> ones_count_distribution(const ModelParams& params, int n) {
    if (n < 1) {
        throw SizeError("ones_count_distribution needs n >= 1");
    }
    // mass[f][k]: total mu over words with first symbol f and k ones;
    // tail[f][k]: total mu of the same words with the first symbol removed.
    const std::size_t width = static_cast<std::size_t>(n) + 1;
    std::array<std::vector<double>, 2> mass{std::vector<double>(width), std::vector<double>(width)};
    std::array<std::vector<double>, 2> tail = mass;
    mass[0][1] = 0.5;
    tail[0][1] = 1.0;
    mass[1][0] = 0.5;
    tail[1][0] = 1.0;

    const std::array<Symbol, 2> symbols{Symbol::one, Symbol::two};
    for (int length = 1; length < n; ++length) {
        std::array<std::vector<double>, 2> next_mass{std::vector<double>(width),
                                                     std::vector<double>(width)};
        std::array<std::vector<double>, 2> next_tail = next_mass;
        for (std::size_t x = 0; x < 2; ++x) {
            const std::size_t bump = symbols[x] == Symbol::one ? 1 : 0;
            for (std::size_t f = 0; f < 2; ++f) {
                const double a = coeff_a(symbols[x], symbols[f], params);
                const double b = coeff_b(symbols[x], symbols[f], params);
                for (std::size_t k = 0; k + bump < width; ++k) {
                    next_mass[x][k + bump] += a * mass[f][k] + b * tail[f][k];
                    next_tail[x][k + bump] += mass[f][k];
                }
            }
        }
        mass.swap(next_mass);
        tail.swap(next_tail);
    }
    std::vector<double> dist(width);
    for (std::size_t k = 0; k < width; ++k) dist[k] = mass[0][k] + mass[1][k];
    return dist;
}

double deviation_probability_dp(const ModelParams& params, const Observable& obs, int n,
                                const Interval& set) {
    const std::vector<double> dist = ones_count_distribution(params, n);
    CompensatedSum total;
    for (int ones = 0; ones <= n; ++ones) {
        const double mean = (ones * obs.a1 + (n - ones) * obs.a2) / n;
        if (set.contains(mean)) total += dist[static_cast<std::size_t>(ones)];
    }
    return total.value();
}

}  // namespace kms::ldp
