#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracctl/solver.hpp"

#include <cmath>
#include <numbers>

using namespace fracctl;
using std::numbers::pi;

namespace {

const RectDomain kUnit{};

Field mode_field(const SpectralBasis& b, int i, int j, double amp = 1.0) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(b.size());
    c(b.index(i, j)) = amp;
    return Field(b.domain(), b.from_spectral(c));
}

double rel_l2(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("time grid and nonlinearity validation") {
    CHECK_THROWS(TimeGrid(1.0, 1));
    CHECK_THROWS(TimeGrid(0.0, 10));
    const TimeGrid g(3.0, 60);
    CHECK(g.t(60) == 3.0);
    CHECK(g.t(0) == 0.0);
    CHECK_THROWS(NonlinearTerm::power(1.0, 4));
    CHECK(NonlinearTerm::square()(0.0) == 0.0);
    CHECK(NonlinearTerm::power(-2.0, 3)(0.0) == 0.0);
    CHECK(NonlinearTerm::power(-2.0, 3)(2.0) == -16.0);
    CHECK(NonlinearTerm::none().is_none());
    CHECK_THROWS(ControlSignal(g, std::vector<double>(59, 0.0)));
    const ControlSignal u(g, 2.0);
    CHECK(u.cost() == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("free decay of an eigenmode") {
    const SpectralBasis b = build_basis(kUnit, 6, 6);
    const TimeGrid g(3.0, 30);
    for (double a : {0.3, 0.6, 1.0}) {
        const FractionalOrder alpha(a);
        const Trajectory tr =
            solve_linear(mode_field(b, 2, 1), ControlSignal(g), Actuator::zonal(0, 0.2, 0.2, 0.4), b, g, alpha);
        const double lam = 5 * pi * pi;
        const Eigen::VectorXd& cT = tr.coeffs.back();
        CHECK(cT(b.index(2, 1)) == doctest::Approx(h_symbol(lam, 3.0, alpha)).epsilon(1e-10));
        CHECK(cT(b.index(0, 0)) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(tr.snapshots.size() == 31u);
        CHECK(tr.snapshots[0].values() == mode_field(b, 2, 1).values());
    }
}

TEST_CASE("zero data gives the zero trajectory") {
    const SpectralBasis b = build_basis(kUnit, 8, 8);
    const TimeGrid g(2.0, 20);
    const FractionalOrder alpha(0.6);
    const Actuator act = Actuator::pointwise(0.48, 0.70);
    for (const NonlinearTerm& F : {NonlinearTerm::none(), NonlinearTerm::square()}) {
        const Trajectory tr = SpectralSolver(b, act, g, alpha).solve(Field::zeros(kUnit), ControlSignal(g), F);
        for (const Field& f : tr.snapshots) CHECK(f.values().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("classical limit: a uniform source integrates linearly") {
    const SpectralBasis b = build_basis(kUnit, 4, 4);
    const TimeGrid g(1.5, 15);
    const Trajectory tr =
        solve_linear(Field::zeros(kUnit), ControlSignal(g, 1.0), Actuator::zonal(0, 1, 0, 1), b, g, FractionalOrder(1.0));
    for (int n = 0; n <= g.K; ++n) {
        CHECK(tr.coeffs[n](0) == doctest::Approx(g.t(n)).epsilon(1e-12));
        CHECK(tr.snapshots[n](17, 33) == doctest::Approx(g.t(n)).epsilon(1e-12));
    }
    // fractional version: t^alpha / Gamma(alpha + 1)
    const Trajectory fr =
        solve_linear(Field::zeros(kUnit), ControlSignal(g, 1.0), Actuator::zonal(0, 1, 0, 1), b, g, FractionalOrder(0.4));
    CHECK(fr.coeffs.back()(0) == doctest::Approx(std::pow(1.5, 0.4) / std::tgamma(1.4)).epsilon(1e-12));
}

TEST_CASE("linearity in the initial state and the control") {
    const SpectralBasis b = build_basis(kUnit, 10, 10);
    const TimeGrid g(3.0, 24);
    const FractionalOrder alpha(0.3);
    const Actuator act = Actuator::zonal(0, 0.2, 0.2, 0.4);
    const SpectralSolver s(b, act, g, alpha);
    const Field y1 = Field::sample(kUnit, [](double x, double y) { return std::cos(pi * x) + y * y * (1 - y); });
    const Field y2 = mode_field(b, 3, 2);
    ControlSignal u1(g), u2(g);
    for (int k = 0; k < g.K; ++k) {
        u1.values[k] = std::sin(0.3 * k);
        u2.values[k] = 1.0 - 0.05 * k;
    }
    const double a = 2.5, c = -0.75;
    ControlSignal uc(g);
    for (int k = 0; k < g.K; ++k) uc.values[k] = a * u1.values[k] + c * u2.values[k];
    const Field yc(kUnit, a * y1.values() + c * y2.values());
    const Eigen::MatrixXd lhs = s.solve(yc, uc, NonlinearTerm::none()).final_state().values();
    const Eigen::MatrixXd rhs = a * s.solve(y1, u1, NonlinearTerm::none()).final_state().values() +
                                c * s.solve(y2, u2, NonlinearTerm::none()).final_state().values();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("mass conservation and monotone free decay") {
    const SpectralBasis b = build_basis(kUnit, 8, 8);
    const TimeGrid g(3.0, 30);
    const Field y0 = Field::sample(kUnit, [](double x, double y) { return 1.0 + x * x - 0.4 * std::cos(2 * pi * y); });
    const Trajectory tr =
        solve_linear(y0, ControlSignal(g), Actuator::zonal(0, 0.2, 0.2, 0.4), b, g, FractionalOrder(0.3));
    const double mass0 = tr.coeffs[0](0);
    for (std::size_t n = 1; n < tr.coeffs.size(); ++n) {
        CHECK(std::abs(tr.coeffs[n](0) - mass0) < 1e-12);
        for (int m = 1; m < b.size(); ++m) CHECK(std::abs(tr.coeffs[n](m)) <= std::abs(tr.coeffs[n - 1](m)) + 1e-15);
    }
}

TEST_CASE("semilinear scheme without a nonlinearity is the linear scheme") {
    const SpectralBasis b = build_basis(kUnit, 12, 12);
    const TimeGrid g(2.0, 40);
    const FractionalOrder alpha(0.6);
    const Actuator act = Actuator::pointwise(0.48, 0.70);
    ControlSignal u(g);
    for (int k = 0; k < g.K; ++k) u.values[k] = std::cos(0.2 * k);
    const Field y0 = mode_field(b, 1, 0, 0.3);
    const Trajectory lin = solve_linear(y0, u, act, b, g, alpha);
    const Trajectory sem = solve_semilinear(y0, u, NonlinearTerm::none(), act, b, g, alpha);
    CHECK((lin.final_state().values() - sem.final_state().values()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(sem.total_sweeps() == 0);
}

TEST_CASE("serial and parallel solves agree bitwise") {
    const SpectralBasis b = build_basis(kUnit, 12, 12);
    const TimeGrid g(3.0, 30);
    const FractionalOrder alpha(0.3);
    const Actuator act = Actuator::zonal(0, 0.2, 0.2, 0.4);
    const ControlSignal u(g, 0.8);
    const Trajectory a = SpectralSolver(b, act, g, alpha, Exec::serial).solve(Field::zeros(kUnit), u,
                                                                              NonlinearTerm::square());
    const Trajectory p = SpectralSolver(b, act, g, alpha, Exec::parallel).solve(Field::zeros(kUnit), u,
                                                                                NonlinearTerm::square());
    CHECK(a.final_state().values() == p.final_state().values());
    CHECK(a.forcing == p.forcing);
}

TEST_CASE("Picard sweeps converge for small data and flag divergence for large data") {
    const SpectralBasis b = build_basis(kUnit, 10, 10);
    const TimeGrid g(3.0, 30);
    const FractionalOrder alpha(0.3);
    const SpectralSolver s(b, Actuator::zonal(0, 0.2, 0.2, 0.4), g, alpha);
    const Trajectory small = s.solve(Field::zeros(kUnit), ControlSignal(g, 0.5), NonlinearTerm::square());
    CHECK(small.final_state().values().allFinite());
    for (int n = 1; n <= g.K; ++n) CHECK(small.picard_sweeps[n] <= 50);
    // the semilinear state exceeds the linear one: F = y^2 is a nonnegative source
    const Trajectory lin = s.solve(Field::zeros(kUnit), ControlSignal(g, 0.5), NonlinearTerm::none());
    CHECK(small.final_state().values().sum() > lin.final_state().values().sum());

    const Field big = Field::sample(kUnit, [](double, double) { return 5.0; });
    CHECK_THROWS_AS(s.solve(big, ControlSignal(g), NonlinearTerm::square()), DivergenceError);
}

TEST_CASE("L1 oracle: constants are preserved") {
    const TimeGrid g(1.0, 20);
    const Field c = Field::sample(RectDomain{1, 1, 21, 21}, [](double, double) { return 0.7; });
    const Trajectory tr = l1_oracle_solve(c, ControlSignal(g), NonlinearTerm::none(), Actuator::zonal(0, 0.2, 0, 0.2),
                                          RectDomain{1, 1, 21, 21}, g, FractionalOrder(0.5));
    CHECK((tr.final_state().values().array() - 0.7).abs().maxCoeff() < 1e-12);
}

TEST_CASE("L1 oracle converges at rate 2 - alpha on a graded mesh") {
    // cos(pi x) on the nodes is an exact eigenvector of the ghost-node Neumann Laplacian,
    // so the semi-discrete solution is known in closed form and only the time error remains
    const RectDomain d{1, 1, 51, 51};
    const SpectralBasis b = build_basis(d, 3, 3);
    const FractionalOrder alpha(0.3);
    const double dx = d.dx(), lam_h = 4 / (dx * dx) * std::pow(std::sin(pi * dx / 2), 2);
    const Field y0 = mode_field(b, 1, 0);
    const Eigen::MatrixXd exact = h_symbol(lam_h, 3.0, alpha) * y0.values();
    OracleOptions opt;
    opt.mesh_grading = (2.0 - alpha.value()) / alpha.value();
    std::vector<double> err;
    for (int K : {30, 60, 120, 240}) {
        const TimeGrid g(3.0, K);
        const Trajectory tr = l1_oracle_solve(y0, ControlSignal(g), NonlinearTerm::none(),
                                              Actuator::zonal(0, 0.2, 0.2, 0.4), d, g, alpha, opt);
        err.push_back(rel_l2(tr.final_state().values(), exact));
    }
    for (std::size_t i = 1; i < err.size(); ++i) {
        const double rate = std::log2(err[i - 1] / err[i]);
        CHECK(rate > 1.6);
        CHECK(rate < 1.8);
    }
    CHECK(err.back() < 1e-5);

    // uniform steps lose accuracy to the initial weak singularity
    OracleOptions uni;
    const TimeGrid g(3.0, 60);
    const Trajectory tr = l1_oracle_solve(y0, ControlSignal(g), NonlinearTerm::none(),
                                          Actuator::zonal(0, 0.2, 0.2, 0.4), d, g, alpha, uni);
    CHECK(rel_l2(tr.final_state().values(), exact) > 10 * err[1]);
}

TEST_CASE("semilinear spectral solve agrees with the L1 oracle at coarse resolution") {
    const RectDomain d{1, 1, 21, 21};
    const SpectralBasis b = build_basis(d, 20, 20);
    const TimeGrid g(3.0, 60);
    const FractionalOrder alpha(0.3);
    const Actuator act = Actuator::zonal(0, 0.2, 0.2, 0.4);
    const ControlSignal u(g, 1.0);
    const Trajectory sp = SpectralSolver(b, act, g, alpha).solve(Field::zeros(d), u, NonlinearTerm::square());
    OracleOptions opt;
    opt.mesh_grading = (2.0 - alpha) / alpha;
    const Trajectory fd = l1_oracle_solve(Field::zeros(d), u, NonlinearTerm::square(), act, d, g, alpha, opt);
    const double rel = rel_l2(sp.final_state().values(), fd.final_state().values());
    MESSAGE("relative L2 difference at T: " << rel);
    CHECK(rel < 1e-2);
}
