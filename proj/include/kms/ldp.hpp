#pragma once

#include <limits>
#include <vector>

#include "kms/params.hpp"

namespace kms::ldp {

/// Observable depending only on the first coordinate: A(1) = a1, A(2) = a2.
struct Observable {
    double a1 = 0.0;
    double a2 = 0.0;

    bool degenerate() const noexcept { return a1 == a2; }
    double value(Symbol s) const noexcept { return s == Symbol::one ? a1 : a2; }
    double mean() const noexcept { return 0.5 * (a1 + a2); }  // integral of A against mu
    double lo() const noexcept { return a1 < a2 ? a1 : a2; }
    double hi() const noexcept { return a1 < a2 ? a2 : a1; }
};

Observable make_observable(double a1, double a2);

/// delta(t) = sum_j e^{t A(j)}, alpha(t) = sum_j beta_j e^{t A(j)}. The pair is returned
/// scaled: the true values are exp(log_scale) * (delta, alpha). log_scale is zero unless
/// |t A| would overflow.
struct DeltaAlpha {
    double delta = 0.0;
    double alpha = 0.0;
    double log_scale = 0.0;
};

DeltaAlpha delta_alpha(const ModelParams& params, const Observable& obs, double t);

/// log(delta^2 - alpha^2), stable for any finite t.
double log_delta2_minus_alpha2(const ModelParams& params, const Observable& obs, double t);

inline constexpr int kDirectMaxN = 14;

/// Q_n(t) = sum over the 2^{n+1} cylinders (j0..jn) of e^{t(A(j0)+...+A(jn))} mu(j0..jn).
double q_direct(const ModelParams& params, const Observable& obs, int n, double t);

/// Closed form anchored on Q_{n+2} = (delta^2 - alpha^2)/4 Q_n with Q_0 = delta/2 and
/// Q_1 = (delta^2 - alpha^2)/4.
double q_recursive(const ModelParams& params, const Observable& obs, int n, double t);
double log_q_recursive(const ModelParams& params, const Observable& obs, int n, double t);

/// The long alternating-sign recursion over all earlier Q_k, evaluated term by term.
/// O(n^2); kept as an independent route to q_recursive.
double q_long_recursion(const ModelParams& params, const Observable& obs, int n, double t);

/// c(t) = 1/2 log(delta^2 - alpha^2) - log 2.
double free_energy(const ModelParams& params, const Observable& obs, double t);
/// Analytic c'(t).
double free_energy_derivative(const ModelParams& params, const Observable& obs, double t);

struct FreeEnergyCurve {
    std::vector<double> t;
    std::vector<double> c;
    std::vector<double> dc;
};

FreeEnergyCurve free_energy_curve(const ModelParams& params, const Observable& obs,
                                  const std::vector<double>& grid);

/// Legendre transform of c, I(s) = sup_t (t s - c(t)).
class RateFunction {
public:
    RateFunction(const ModelParams& params, const Observable& obs);

    /// +inf outside [min A, max A]; endpoint values are limits along t -> +-inf.
    double operator()(double s) const;
    /// Maximiser t* with c'(t*) = s, for s strictly inside the domain.
    double argmax_t(double s) const;

    double domain_lo() const noexcept { return obs_.lo(); }
    double domain_hi() const noexcept { return obs_.hi(); }
    const ModelParams& params() const noexcept { return params_; }
    const Observable& observable() const noexcept { return obs_; }

private:
    double endpoint_value(double s, double direction) const;

    ModelParams params_;
    Observable obs_;
};

double rate_function(const ModelParams& params, const Observable& obs, double s);

/// sup over s in [min A, max A] of (t s - I(s)): a coarse grid scan followed by a
/// Brent refinement. Used to check that the transform is an involution.
double legendre_of_rate(const RateFunction& rate, double t, int grid_points = 201);

/// Set of admissible values for the empirical mean S_n / n.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(double x) const noexcept;
    static Interval at_least(double a) { return {a, std::numeric_limits<double>::infinity(), true, true}; }
    static Interval at_most(double a) { return {-std::numeric_limits<double>::infinity(), a, true, true}; }
    static Interval whole_line() { return {}; }
};

inline constexpr int kDeviationEnumerateMaxN = 22;

/// mu{ (1/n) sum_{j<n} A(x_j) in B } by exhaustive enumeration of length-n cylinders.
double deviation_probability(const ModelParams& params, const Observable& obs, int n,
                             const Interval& set);

/// Distribution of the number of 1s among the first n coordinates, computed by treating
/// the cylinder recursion as a weighted automaton over (first symbol, count). O(n^2).
std::vector<double> ones_count_distribution(const ModelParams& params, int n);

/// Same probability as deviation_probability but through ones_count_distribution;
/// usable far beyond the enumeration cap.
double deviation_probability_dp(const ModelParams& params, const Observable& obs, int n,
                                const Interval& set);

}  // namespace kms::ldp
