#pragma once

// Numerical estimates of the constants behind the fixed-point argument:
// A1 = ||E_alpha||_{L1(0,T; L(X, X^q))}, mu, ||g_alpha||, the nonlinear
// modulus F_N, and the derived kappa, m_kappa, rho_kappa, A_s; plus the
// singular spectrum of the control-to-target map as a proxy for approximate
// regional controllability.
// Fractional powers use the shifted operator A + I.

#include "fracctl/controllability.hpp"
#include "fracctl/solver.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fracctl {

enum class Verdict { satisfied, violated, inconclusive };
std::string to_string(Verdict v);

/// ||v||_{X^q} for spectral coefficients v.
double xq_norm(const SpectralBasis& basis, const Eigen::VectorXd& coeffs, double q);

/// \int_0^T sup_m (lambda_m + 1)^q t^{alpha-1} E_{alpha,alpha}(-lambda_m t^alpha) dt
/// by graded composite Gauss-Legendre in s = t^alpha; panels <= 0 means K.
double estimate_A1(const SpectralBasis& basis, const TimeGrid& grid, FractionalOrder alpha, double q,
                   int panels = 0);

struct FNRow {
    double sigma = 0;
    double fn_zero = 0;  // sampled sup of ||F z|| / ||z||_{X^q}, ||z||_{X^q} <= sigma
    double fn_pair = 0;  // sampled sup of the Lipschitz ratio over pairs in the sigma-ball
    double bound = 0;    // closed-form c * C_emb * 2 sigma for quadratic F (0 otherwise)
};

/// Randomized lower bounds on F_N; rows are cumulative (sup over all smaller radii).
struct FNTable {
    std::vector<FNRow> rows;
    double c_emb = 0;  // sampled X^q -> L4 embedding constant, squared
    int samples = 0;
    double q = 0.5;
};

FNTable estimate_FN(const NonlinearTerm& F, const SpectralBasis& basis, std::span<const double> radii, double q,
                    std::uint64_t seed, int samples = 1000);

/// Operator norm of u -> (E_alpha * B u) in L2(0,T; X^q).
double estimate_mu(const SpectralSolver& solver, double q);

/// Discrete L2(0,T) norm of g_alpha(t) = ||chi E_alpha(T - t)||_{L(X, Im H)},
/// with E_alpha averaged over each control step.
double estimate_g_alpha(const SpectralSolver& solver, const ControllabilityOperator& H);

struct Constants {
    bool admissible = false;
    double kappa = 0, m_kappa = 0, rho_kappa = 0, A_s = 0;
    double A2 = 0;
    double sup_fn = 0;       // sup_{sigma_i <= kappa} F_N(sigma_1, sigma_2)
    double sup_fn_zero = 0;  // sup_{theta <= kappa} F_N(theta, 0)
};

/// Largest tabulated kappa with (A1 + A2) sup F_N < 1, A2 = mu ||g_alpha||.
Constants compute_constants(double A1, double mu, double g_alpha_norm, const FNTable& table);
/// The same formulas at a prescribed kappa (sup taken from the first row >= kappa).
Constants constants_at(double kappa, double A1, double mu, double g_alpha_norm, const FNTable& table);

struct GramSpectrum {
    double sigma_min = 0, sigma_max = 0;  // of the weighted operator, min(rows, cols) values
    int effective_rank = 0;
    int rows = 0, cols = 0;
};

GramSpectrum gram_spectrum(const ControllabilityOperator& H, double tol = 1e-8);

struct DiagnosticsOptions {
    double q = 0.5;
    std::vector<double> radii;  // empty: 1e-10 .. 10, geometric
    int fn_samples = 1000;
    std::uint64_t seed = 1;
    int a1_panels = 0;
};

struct HypothesisReport {
    double q = 0.5;
    double A1 = 0, A1_q0 = 0, A1_q0_closed_form = 0;
    double mu = 0, g_alpha_norm = 0;
    Constants constants;
    std::optional<double> kappa_run;
    std::optional<Constants> constants_run;
    GramSpectrum spectrum;
    double gram_sigma_min = 0, gram_sigma_max = 0;
    int gamma_dofs = 0;
    FNTable fn;
    Verdict h1 = Verdict::inconclusive, h2 = Verdict::inconclusive, contraction = Verdict::inconclusive;

    bool any_violated() const;
};

HypothesisReport run_diagnostics(const ControlProblem& p, const SpectralSolver& solver,
                                 const ControllabilityOperator& H, const DiagnosticsOptions& opts = {});
/// Adds kappa and A_s measured on a trajectory: kappa = ||y||_{L2(0,T; X^q)}.
void attach_run(HypothesisReport& rep, const Trajectory& traj, const SpectralBasis& basis, const TimeGrid& grid);

std::string format_report(const HypothesisReport& rep);

}  // namespace fracctl
