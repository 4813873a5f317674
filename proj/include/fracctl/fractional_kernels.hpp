#pragma once

// Scalar fractional-calculus primitives: two-parameter Mittag-Leffler
// functions on the real axis, the mode-wise symbols of the solution
// operators of a Caputo sub-diffusion, exact step weights for the weakly
// singular forcing kernel, and the L1 finite-difference Caputo derivative.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracctl {

/// Caputo order in (0, 1].
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);
    double value() const noexcept { return alpha_; }
    operator double() const noexcept { return alpha_; }

private:
    double alpha_;
};

class EvaluationError : public std::runtime_error {
public:
    EvaluationError(double alpha, double beta, double z, const std::string& what);
    double alpha, beta, z;
};

/// E_{alpha,beta}(z) for real z. The negative axis down to |z| ~ 1e4 and
/// beyond is the supported range (relative accuracy ~1e-10 or better);
/// positive z is summed by the power series.
double ml(double alpha, double beta, double z);

/// 1/Gamma(x), zero at the poles.
double rgamma(double x);

/// E_{a,1}(-lambda t^a): action of the initial-data propagator on a mode.
double h_symbol(double lambda, double t, FractionalOrder alpha);

/// E_{a,a}(-lambda t^a): action of the forcing propagator on a mode.
double k_symbol(double lambda, double t, FractionalOrder alpha);

/// \int_a^b s^{alpha-1} E_{alpha,alpha}(-lambda s^alpha) ds, exact.
double e_kernel_step_weight(double lambda, double a, double b, FractionalOrder alpha);

/// L1 approximation of the Caputo derivative at every node of a uniform
/// grid. Node 0 is reported as 0.
std::vector<double> l1_caputo_apply(std::span<const double> samples, double dt, FractionalOrder alpha);

/// Riemann-Liouville integral of order alpha of nodal samples, by product
/// integration of the piecewise-linear interpolant.
std::vector<double> rl_integral_apply(std::span<const double> samples, double dt, FractionalOrder alpha);

namespace detail {
// Individual evaluation branches, exposed for cross-checking in tests.
double ml_series(double alpha, double beta, double z);
double ml_contour(double alpha, double beta, double z);
// Returns false if the expansion does not reach the requested accuracy.
bool ml_asymptotic(double alpha, double beta, double z, double& out);
// beta = 1 or beta = alpha with alpha < 1 and z < 0 only.
bool ml_positive_integral(double alpha, double beta, double z, double& out);
}  // namespace detail

}  // namespace fracctl
