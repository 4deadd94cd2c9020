#include <cmath>
#include <random>

#include <doctest.h>

#include "stnet/stats.hpp"
#include "support.hpp"

using namespace stnet;

namespace {

const nlohmann::json& oracle()
{
    static const nlohmann::json doc = testing::load_json("stats.json");
    return doc;
}

std::vector<double> doubles(const nlohmann::json& j) { return j.get<std::vector<double>>(); }

}  // namespace

TEST_SUITE("stats")
{
    TEST_CASE("t survival function: closed forms")
    {
        for (double df : {1.0, 2.0, 7.0, 58.0}) CHECK(t_sf(0.0, df) == 0.5);
        CHECK(t_sf(1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-14));
        // df = 2 has P(T > t) = (1 - t / sqrt(t^2 + 2)) / 2.
        for (double t : {0.5, 1.0, 3.0}) {
            CHECK(t_sf(t, 2.0) == doctest::Approx(0.5 * (1 - t / std::sqrt(t * t + 2))).epsilon(1e-13));
        }
    }

    TEST_CASE("t survival function against quadrature")
    {
        for (const auto& row : oracle()["t_sf"]) {
            const double got = t_sf(row["t"].get<double>(), row["df"].get<double>());
            CHECK(std::abs(got - row["p"].get<double>()) < 1e-10);
        }
    }

    TEST_CASE("t survival function symmetry and monotonicity")
    {
        for (double df : {1.0, 5.0, 30.0, 58.0}) {
            double prev = 1.0;
            for (double t = -6.0; t <= 6.0; t += 0.25) {
                CHECK(std::abs(t_sf(t, df) + t_sf(-t, df) - 1.0) < 1e-12);
                const double v = t_sf(t, df);
                CHECK(v < prev);
                prev = v;
            }
        }
    }

    TEST_CASE("incomplete beta edges")
    {
        CHECK(incomplete_beta(2, 3, 0) == 0);
        CHECK(incomplete_beta(2, 3, 1) == 1);
        CHECK(incomplete_beta(1, 1, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
        CHECK(incomplete_beta(2, 3, 0.4) + incomplete_beta(3, 2, 0.6) == doctest::Approx(1.0).epsilon(1e-13));
    }

    TEST_CASE("pearson trivial cases")
    {
        const std::vector<double> x{1, 2, 3}, up{2, 4, 6}, down{3, 2, 1};
        CHECK(pearson(x, up).r == 1.0);
        CHECK(pearson(x, down).r == -1.0);
        CHECK(pearson(x, up).p_two_tailed == 0.0);
        CHECK(std::isinf(pearson(x, up).t_stat));
        const std::vector<double> flat{5, 5, 5};
        CHECK_THROWS_AS(pearson(x, flat), std::domain_error);
        CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}), std::domain_error);
        CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), std::invalid_argument);
    }

    TEST_CASE("pearson against scipy")
    {
        for (const auto& row : oracle()["pearson"]) {
            const auto res = pearson(doubles(row["x"]), doubles(row["y"]));
            CHECK(res.r == doctest::Approx(row["r"].get<double>()).epsilon(1e-12));
            CHECK(std::abs(res.p_two_tailed - row["p"].get<double>()) < 1e-9);
        }
    }

    TEST_CASE("reported correlation r = 0.377 over 60 points")
    {
        const auto& ref = oracle()["reported_correlation"];
        const double p = correlation_p_value(0.377, 60);
        CHECK(p >= 0.0025);
        CHECK(p <= 0.0035);
        CHECK(std::abs(p - ref["p"].get<double>()) < 1e-10);
        CHECK(significance_stars(p) == "**");
    }

    TEST_CASE("pearson symmetry and affine invariance")
    {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> z;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> x(12), y(12), ax(12), ay(12);
            const double a = std::exp(z(rng)), b = 10 * z(rng), c = std::exp(z(rng)), d = z(rng);
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] = z(rng);
                y[i] = 0.3 * x[i] + z(rng);
                ax[i] = a * x[i] + b;
                ay[i] = c * y[i] + d;
            }
            const double r = pearson(x, y).r;
            CHECK(pearson(y, x).r == doctest::Approx(r).epsilon(1e-12));
            CHECK(std::abs(pearson(ax, ay).r - r) < 1e-12);
            CHECK(pearson(x, y).p_two_tailed == pearson(y, x).p_two_tailed);
        }
    }

    TEST_CASE("significance stars")
    {
        CHECK(significance_stars(0.0099) == "**");
        CHECK(significance_stars(0.01) == "*");
        CHECK(significance_stars(0.0499) == "*");
        CHECK(significance_stars(0.05) == "");
        CHECK(significance_stars(0.5) == "");
    }

    TEST_CASE("mann-whitney small examples")
    {
        const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
        const UTestResult r = mann_whitney_u(a, b);
        CHECK(r.u == 0);
        CHECK(r.method == UTestMethod::Exact);
        CHECK(r.p_two_tailed == doctest::Approx(0.1).epsilon(1e-14));
        const std::vector<double> c{1, 4}, d{2, 3};
        const UTestResult overlap = mann_whitney_u(c, d);
        CHECK(overlap.u == 2);
        CHECK(overlap.u_a + overlap.u_b == 4);
        CHECK(overlap.p_two_tailed == 1.0);
        CHECK_THROWS_AS(mann_whitney_u(std::vector<double>{}, b), std::invalid_argument);
    }

    TEST_CASE("mann-whitney exact equals enumeration")
    {
        for (const char* key : {"u_exact", "u_exact_ties"}) {
            for (const auto& row : oracle()[key]) {
                const UTestResult r = mann_whitney_u(doubles(row["a"]), doubles(row["b"]));
                CHECK(r.method == UTestMethod::Exact);
                CHECK(r.u_a == row["u_a"].get<double>());
                const double want = static_cast<double>(row["num"].get<long>()) / static_cast<double>(row["den"].get<long>());
                CHECK(r.p_two_tailed == want);
            }
        }
    }

    TEST_CASE("five against five with U = 15")
    {
        const auto& row = oracle()["u_five_five"];
        const UTestResult r = mann_whitney_u(doubles(row["a"]), doubles(row["b"]));
        CHECK(r.u_a == 15);
        CHECK(r.u == 10);
        CHECK(std::abs(r.p_two_tailed - 0.68) <= 0.02);
        CHECK(r.p_two_tailed == doctest::Approx(row["p"].get<double>()).epsilon(1e-14));
    }

    TEST_CASE("normal approximation")
    {
        for (const auto& row : oracle()["u_six"]) {
            const auto a = doubles(row["a"]), b = doubles(row["b"]);
            const UTestResult exact = mann_whitney_u(a, b, UTestMethod::Exact);
            const UTestResult approx = mann_whitney_u(a, b, UTestMethod::NormalApproximation);
            CHECK(exact.p_two_tailed == doctest::Approx(row["exact"].get<double>()).epsilon(1e-14));
            CHECK(std::abs(approx.p_two_tailed - exact.p_two_tailed) < 0.03);
        }
        for (const auto& row : oracle()["u_normal"]) {
            const UTestResult r = mann_whitney_u(doubles(row["a"]), doubles(row["b"]));
            CHECK(r.method == UTestMethod::NormalApproximation);
            CHECK(r.u_a == row["u_a"].get<double>());
            CHECK(std::abs(r.p_two_tailed - row["p"].get<double>()) < 1e-12);
        }
    }

    TEST_CASE("ols")
    {
        const TrendLine unit = ols(std::vector<double>{0, 1}, std::vector<double>{0, 1});
        CHECK(unit.slope == 1.0);
        CHECK(unit.intercept == 0.0);
        const TrendLine flat = ols(std::vector<double>{1, 2, 3}, std::vector<double>{4, 4, 4});
        CHECK(flat.slope == 0.0);
        CHECK_THROWS_AS(ols(std::vector<double>{2, 2}, std::vector<double>{1, 3}), std::domain_error);
        CHECK_THROWS_AS(ols(std::vector<double>{2}, std::vector<double>{1}), std::domain_error);
        for (const auto& row : oracle()["ols"]) {
            const TrendLine t = ols(doubles(row["x"]), doubles(row["y"]));
            CHECK(std::abs(t.slope - row["slope"].get<double>()) < 1e-10);
            CHECK(std::abs(t.intercept - row["intercept"].get<double>()) < 1e-10);
        }
    }
}
