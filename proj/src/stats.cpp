#include "stnet/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace stnet {
namespace {

constexpr double kCfTolerance = 1e-12;
constexpr int kCfMaxIterations = 500;
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x)
{
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kCfMaxIterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kCfTolerance) return h;
    }
    return h;
}

std::vector<double> mid_ranks(const std::vector<double>& values)
{
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
        i = j;
    }
    return ranks;
}

double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

}  // namespace

double incomplete_beta(double a, double b, double x)
{
    if (!(a > 0) || !(b > 0)) throw std::domain_error("incomplete_beta: a and b must be positive");
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    const double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double t_sf(double t, double df)
{
    if (!(df > 0)) throw std::domain_error("t_sf: df must be positive");
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t >= 0 ? tail : 1.0 - tail;
}

double correlation_p_value(double r, std::size_t n)
{
    if (n < 3) throw std::domain_error("correlation p-value needs n >= 3");
    if (std::fabs(r) >= 1.0) return 0.0;
    const double df = static_cast<double>(n - 2);
    const double t = r * std::sqrt(df / (1.0 - r * r));
    return std::clamp(2.0 * t_sf(std::fabs(t), df), 0.0, 1.0);
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw std::invalid_argument("pearson: samples differ in length");
    const std::size_t n = x.size();
    if (n < 3) throw std::domain_error("pearson: undefined for fewer than 3 points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0 || syy == 0) throw std::domain_error("pearson: undefined for a constant variable");

    CorrelationResult res;
    res.n = n;
    res.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double df = static_cast<double>(n - 2);
    if (std::fabs(res.r) >= 1.0) {
        res.t_stat = std::copysign(std::numeric_limits<double>::infinity(), res.r);
        res.p_two_tailed = 0.0;
    } else {
        res.t_stat = res.r * std::sqrt(df / (1.0 - res.r * res.r));
        res.p_two_tailed = std::clamp(2.0 * t_sf(std::fabs(res.t_stat), df), 0.0, 1.0);
    }
    return res;
}

UTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b)
{
    return mann_whitney_u(a, b,
                          a.size() + b.size() <= kExactUTestLimit ? UTestMethod::Exact : UTestMethod::NormalApproximation);
}

UTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, UTestMethod method)
{
    if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: both samples must be non-empty");
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t n = na + nb;

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = mid_ranks(pooled);

    // Mid-ranks are half-integers, so twice any rank sum is an exact integer.
    auto twice_u = [&](auto in_a) {
        std::int64_t twice_rank_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (in_a(i)) twice_rank_sum += std::llround(2.0 * ranks[i]);
        }
        return twice_rank_sum - static_cast<std::int64_t>(na * (na + 1));
    };

    const std::int64_t twice_ua = twice_u([&](std::size_t i) { return i < na; });
    const std::int64_t twice_mean = static_cast<std::int64_t>(na * nb);  // 2 * (na nb / 2)

    UTestResult res;
    res.method = method;
    res.u_a = static_cast<double>(twice_ua) / 2.0;
    res.u_b = static_cast<double>(na * nb) - res.u_a;
    res.u = std::min(res.u_a, res.u_b);

    if (method == UTestMethod::Exact) {
        if (n > 20) throw std::invalid_argument("mann_whitney_u: exact enumeration limited to 20 observations");
        const std::int64_t observed = std::llabs(twice_ua - twice_mean);
        std::uint64_t total = 0;
        std::uint64_t extreme = 0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != na) continue;
            ++total;
            const std::int64_t t = twice_u([&](std::size_t i) { return (mask >> i) & 1u; });
            if (std::llabs(t - twice_mean) >= observed) ++extreme;
        }
        res.p_two_tailed = static_cast<double>(extreme) / static_cast<double>(total);
        return res;
    }

    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double nn = static_cast<double>(n);
    const double variance = static_cast<double>(na * nb) / 12.0 * ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    if (variance <= 0) {
        res.p_two_tailed = 1.0;
        return res;
    }
    const double mu = static_cast<double>(na * nb) / 2.0;
    const double z = std::max(std::fabs(res.u_a - mu) - 0.5, 0.0) / std::sqrt(variance);
    res.p_two_tailed = std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
    return res;
}

TrendLine ols(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw std::invalid_argument("ols: samples differ in length");
    if (x.size() < 2) throw std::domain_error("ols: needs at least two points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::domain_error("ols: x is constant");
    TrendLine line;
    line.slope = sxy / sxx;
    line.intercept = my - line.slope * mx;
    line.n_points = x.size();
    return line;
}

std::string significance_stars(double p)
{
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

}  // namespace stnet
