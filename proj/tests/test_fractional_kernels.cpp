#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracctl/fractional_kernels.hpp"
#include "oracles/ml_oracle_values.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace fracctl;
using std::numbers::pi;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("fractional order bounds") {
    CHECK_NOTHROW(FractionalOrder(1.0));
    CHECK_NOTHROW(FractionalOrder(1e-3));
    CHECK_THROWS_AS(FractionalOrder(0.0), std::invalid_argument);
    CHECK_THROWS_AS(FractionalOrder(1.0001), std::invalid_argument);
    CHECK_THROWS_AS(FractionalOrder(-0.5), std::invalid_argument);
}

TEST_CASE("ml trivial values") {
    CHECK(ml(1, 1, -2.0) == doctest::Approx(0.1353352832366127).epsilon(1e-15));
    CHECK(ml(0.5, 1.0, 0.0) == 1.0);
    CHECK(ml(0.5, 2.5, 0.0) == doctest::Approx(1.0 / std::tgamma(2.5)).epsilon(1e-15));
    CHECK(rel_err(ml(0.5, 1.0, -3.0), oracle::kMlHalf_m3) < 1e-12);
}

TEST_CASE("ml against extended-precision oracle table") {
    double worst = 0.0;
    for (const auto& c : oracle::kMLCases) {
        const double got = ml(c.alpha, c.beta, c.z);
        const double err = rel_err(got, c.value);
        worst = std::max(worst, err);
        INFO("alpha=" << c.alpha << " beta=" << c.beta << " z=" << c.z << " got=" << got << " want=" << c.value);
        CHECK(err < 1e-10);
    }
    MESSAGE("worst relative error over oracle table: " << worst);
}

TEST_CASE("contour branch alone matches the oracle where the value is not tiny") {
    for (const auto& c : oracle::kMLCases) {
        if (std::abs(c.z) > 400 || c.alpha == 1.0) continue;
        const double got = detail::ml_contour(c.alpha, c.beta, c.z);
        INFO("alpha=" << c.alpha << " beta=" << c.beta << " z=" << c.z);
        CHECK(std::abs(got - c.value) < 1e-12 * std::max(1.0, std::abs(c.value)) + 1e-10 * std::abs(c.value));
    }
}

TEST_CASE("ml(0.3, 0.3, -1) against series at 45 digits") {
    CHECK(rel_err(ml(0.3, 0.3, -1.0), oracle::kMl_03_03_m1) < 1e-12);
}

TEST_CASE("ml positive argument and error path") {
    CHECK(rel_err(ml(1.0, 1.0, 3.0), std::exp(3.0)) < 1e-14);
    CHECK(rel_err(ml(0.5, 1.0, 0.5), std::exp(0.25) * std::erfc(-0.5)) < 1e-13);
    CHECK_THROWS_AS(ml(0.5, -1.0, 1.0), EvaluationError);
    CHECK_THROWS_AS(ml(0.5, 1.0, std::nan("")), EvaluationError);
    try {
        ml(0.0, 1.0, -1.0);
        FAIL("expected throw");
    } catch (const EvaluationError& e) {
        CHECK(e.alpha == 0.0);
        CHECK(e.z == -1.0);
    }
}

TEST_CASE("ml(a,b,0) Gamma(b) = 1 sweep") {
    for (int i = 1; i <= 10; ++i) {
        for (int j = 1; j <= 10; ++j) {
            const double a = 0.1 * i, b = 0.35 * j;
            CHECK(std::abs(ml(a, b, 0.0) * std::tgamma(b) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("h_symbol") {
    CHECK(h_symbol(0.0, 2.5, FractionalOrder(0.4)) == 1.0);
    CHECK(h_symbol(7.0, 0.0, FractionalOrder(0.4)) == 1.0);
    CHECK(rel_err(h_symbol(3.0, 0.7, FractionalOrder(1.0)), std::exp(-2.1)) < 1e-14);
    CHECK(rel_err(h_symbol(2 * pi * pi, 3.0, FractionalOrder(0.3)), oracle::kHSymbol_2pi2_3_03) < 1e-10);
    CHECK_THROWS_AS(h_symbol(-1.0, 1.0, FractionalOrder(0.5)), std::invalid_argument);
}

TEST_CASE("k_symbol") {
    CHECK(k_symbol(0.0, 1.3, FractionalOrder(1.0)) == 1.0);
    CHECK(rel_err(k_symbol(4.0, 0.5, FractionalOrder(1.0)), std::exp(-2.0)) < 1e-14);
    CHECK(rel_err(k_symbol(5 * pi * pi, 1.5, FractionalOrder(0.6)), oracle::kKSymbol_5pi2_15_06) < 1e-10);
    CHECK_THROWS_AS(k_symbol(1.0, 0.0, FractionalOrder(0.5)), std::invalid_argument);
}

TEST_CASE("h_symbol is in (0,1] and non-increasing in lambda and t") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(0.05, 1.0), ul(0.0, 2000.0), ut(0.0, 5.0);
    for (int n = 0; n < 300; ++n) {
        const FractionalOrder a(ua(rng));
        const double l = ul(rng), t = ut(rng);
        const double h = h_symbol(l, t, a);
        CHECK(h > 0.0);
        CHECK(h <= 1.0);
        CHECK(h_symbol(l * 1.1 + 0.01, t, a) <= h * (1 + 1e-12));
        CHECK(h_symbol(l, t * 1.1 + 0.01, a) <= h * (1 + 1e-12));
    }
}

TEST_CASE("e_kernel_step_weight closed forms") {
    const FractionalOrder a(0.45);
    CHECK(rel_err(e_kernel_step_weight(0.0, 0.0, 1.7, a), std::pow(1.7, 0.45) / std::tgamma(1.45)) < 1e-14);
    CHECK(rel_err(e_kernel_step_weight(3.0, 0.0, 0.8, FractionalOrder(1.0)), (1 - std::exp(-2.4)) / 3.0) < 1e-13);
    CHECK(rel_err(e_kernel_step_weight(pi * pi, 0.5, 1.0, FractionalOrder(0.3)), oracle::kEWeight_pi2_05_1_03) <
          1e-10);
    CHECK_THROWS_AS(e_kernel_step_weight(1.0, 0.5, 0.5, a), std::invalid_argument);
}

TEST_CASE("e_kernel_step_weight is additive over adjacent intervals") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(0.1, 1.0), ul(0.0, 8000.0), ux(0.0, 3.0);
    for (int n = 0; n < 200; ++n) {
        const FractionalOrder al(ua(rng));
        const double lam = n % 5 == 0 ? 0.0 : ul(rng);
        double p[3] = {ux(rng), ux(rng), ux(rng)};
        std::sort(p, p + 3);
        if (p[1] - p[0] < 1e-6 || p[2] - p[1] < 1e-6) continue;
        const double lhs = e_kernel_step_weight(lam, p[0], p[1], al) + e_kernel_step_weight(lam, p[1], p[2], al);
        const double rhs = e_kernel_step_weight(lam, p[0], p[2], al);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("l1_caputo_apply") {
    SUBCASE("constant") {
        std::vector<double> g(30, 4.2);
        for (double v : l1_caputo_apply(g, 0.1, FractionalOrder(0.6))) CHECK(v == 0.0);
    }
    SUBCASE("linear, alpha = 1") {
        std::vector<double> g(20);
        for (int i = 0; i < 20; ++i) g[i] = 0.05 * i;
        auto d = l1_caputo_apply(g, 0.05, FractionalOrder(1.0));
        for (int i = 1; i < 20; ++i) CHECK(d[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("linear, alpha = 0.5 is exact for piecewise-linear data") {
        const int n = 41;
        const double dt = 0.025;
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = dt * i;
        auto d = l1_caputo_apply(g, dt, FractionalOrder(0.5));
        for (int i = 1; i < n; ++i) {
            const double t = dt * i;
            CHECK(d[i] == doctest::Approx(2.0 * std::sqrt(t / pi)).epsilon(1e-12));
        }
    }
    SUBCASE("smooth data converges at order 2 - alpha") {
        const FractionalOrder a(0.4);
        auto err_at = [&](int n) {
            const double dt = 1.0 / n;
            std::vector<double> g(n + 1);
            for (int i = 0; i <= n; ++i) g[i] = std::pow(dt * i, 2);
            auto d = l1_caputo_apply(g, dt, a);
            // D^a t^2 = 2 t^{2-a} / Gamma(3-a)
            return std::abs(d[n] - 2.0 / std::tgamma(3.0 - 0.4));
        };
        const double rate = std::log2(err_at(64) / err_at(128));
        CHECK(rate > 1.6 - 0.1);
    }
    CHECK_THROWS_AS(l1_caputo_apply(std::vector<double>{1, 2}, 0.0, FractionalOrder(0.5)), std::invalid_argument);
    CHECK_THROWS_AS(l1_caputo_apply(std::vector<double>{1}, 0.1, FractionalOrder(0.5)), std::invalid_argument);
}

TEST_CASE("RL integral inverts the L1 derivative on smooth data with g'(0) = 0") {
    const FractionalOrder a(0.5);
    auto err_at = [&](int n) {
        const double dt = 1.0 / n;
        std::vector<double> g(n + 1);
        for (int i = 0; i <= n; ++i) g[i] = std::cos(2.0 * dt * i) + 0.3 * std::pow(dt * i, 3);
        auto back = rl_integral_apply(l1_caputo_apply(g, dt, a), dt, a);
        double e = 0.0;
        for (int i = 0; i <= n; ++i) e = std::max(e, std::abs(back[i] - (g[i] - g[0])));
        return e;
    };
    const double e1 = err_at(50), e2 = err_at(100);
    CHECK(e2 < 5e-3);
    CHECK(std::log2(e1 / e2) > 1.5 - 0.2);
    MESSAGE("inversion error " << e1 << " -> " << e2 << ", rate " << std::log2(e1 / e2));
}
