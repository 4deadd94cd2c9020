#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace stnet {

struct CorrelationResult {
    double r = 0;
    std::size_t n = 0;
    double t_stat = 0;
    double p_two_tailed = 1;

    friend bool operator==(const CorrelationResult&, const CorrelationResult&) = default;
};

enum class UTestMethod { Exact, NormalApproximation };

struct UTestResult {
    double u = 0;    // min(u_a, u_b)
    double u_a = 0;  // statistic of the first sample
    double u_b = 0;
    double p_two_tailed = 1;
    UTestMethod method = UTestMethod::Exact;

    friend bool operator==(const UTestResult&, const UTestResult&) = default;
};

struct TrendLine {
    double slope = 0;
    double intercept = 0;
    std::size_t n_points = 0;

    friend bool operator==(const TrendLine&, const TrendLine&) = default;
};

/// Largest combined sample size for which mann_whitney_u enumerates labelings.
inline constexpr std::size_t kExactUTestLimit = 12;

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// P(T > t) for Student's t with df degrees of freedom.
double t_sf(double t, double df);

/// Two-tailed p of a Pearson r over n points (t-test with n - 2 df).
double correlation_p_value(double r, std::size_t n);

/// Product-moment correlation. Throws std::invalid_argument on a length mismatch and
/// std::domain_error when n < 3 or either variable is constant.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

/// Two-sided Mann-Whitney U with mid-ranks. Exact enumeration when the combined size is
/// at most kExactUTestLimit, otherwise a normal approximation with tie and continuity
/// corrections. Throws std::invalid_argument on an empty sample.
UTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);
UTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, UTestMethod method);

/// Least-squares line. Throws std::domain_error when n < 2 or x is constant.
TrendLine ols(std::span<const double> x, std::span<const double> y);

/// "**" for p < .01, "*" for p < .05, otherwise empty.
std::string significance_stars(double p);

}  // namespace stnet
