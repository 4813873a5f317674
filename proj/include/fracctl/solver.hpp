#pragma once

// Forward solvers for the controlled Caputo sub-diffusion
//   D^alpha y - Laplace y = F(y) + B u,  Neumann boundary, y(0) = y0.
// The spectral route is exact in time for the linear part with piecewise
// constant control; the L1 finite-difference route is an independent check.

#include "fracctl/fractional_kernels.hpp"
#include "fracctl/parallel_kernels.hpp"
#include "fracctl/spectral_domain.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace fracctl {

struct TimeGrid {
    double T = 1.0;
    int K = 2;

    TimeGrid() = default;
    TimeGrid(double horizon, int steps);
    double dt() const { return T / K; }
    double t(int k) const { return k == K ? T : k * dt(); }
};

/// Piecewise-constant control: values[k] acts on [t_k, t_{k+1}).
struct ControlSignal {
    TimeGrid grid;
    std::vector<double> values;

    ControlSignal() = default;
    explicit ControlSignal(const TimeGrid& g, double fill = 0.0) : grid(g), values(g.K, fill) {}
    ControlSignal(const TimeGrid& g, std::vector<double> v);
    /// ||u||^2 in L2(0, T).
    double cost() const;
    double l2_norm() const;
};

struct NonlinearTerm {
    enum class Kind { none, square, power };
    Kind kind = Kind::none;
    double c = 1.0;
    int m = 2;

    static NonlinearTerm none() { return {}; }
    static NonlinearTerm square() { return {Kind::square, 1.0, 2}; }
    static NonlinearTerm power(double c, int m);
    bool is_none() const { return kind == Kind::none || c == 0.0; }
    double operator()(double y) const;
    Eigen::MatrixXd apply(const Eigen::MatrixXd& y) const;
};

class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, int node) : std::runtime_error(what), node(node) {}
    int node;
};

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Trajectory {
    std::vector<double> times;
    ControlSignal control;
    std::vector<Field> snapshots;
    /// Spectral coefficients per node (spectral route only).
    std::vector<Eigen::VectorXd> coeffs;
    /// Coefficients of F(y) per step, modes x K (spectral route only).
    Eigen::MatrixXd forcing;
    /// Picard sweeps spent at each node (0 at node 0).
    std::vector<int> picard_sweeps;

    const Field& final_state() const { return snapshots.back(); }
    int total_sweeps() const;
};

/// Per-mode tables for one (basis, grid, order) triple.
class ModeKernels {
public:
    ModeKernels(const SpectralBasis& basis, const TimeGrid& grid, FractionalOrder alpha, Exec exec = Exec::parallel);
    /// W(m, d - 1): step weight of lag d = 1..K.
    const Eigen::MatrixXd& lag_weights() const { return W_; }
    /// D(m, n) = E_{alpha,1}(-lambda_m t_n^alpha).
    const Eigen::MatrixXd& decay() const { return D_; }

private:
    Eigen::MatrixXd W_, D_;
};

struct SemilinearOptions {
    double picard_tol = 1e-10;
    int max_sweeps = 50;
};

class SpectralSolver {
public:
    SpectralSolver(const SpectralBasis& basis, const Actuator& act, const TimeGrid& grid, FractionalOrder alpha,
                   Exec exec = Exec::parallel);

    Trajectory solve(const Field& y0, const ControlSignal& u, const NonlinearTerm& F,
                     const SemilinearOptions& opts = {}) const;

    /// Coefficients at T of (E_alpha * g)(T) for per-step coefficients g (modes x K).
    Eigen::VectorXd convolve_to_T(const Eigen::MatrixXd& g) const;

    const SpectralBasis& basis() const { return basis_; }
    const TimeGrid& grid() const { return grid_; }
    FractionalOrder alpha() const { return alpha_; }
    const Eigen::VectorXd& actuator() const { return b_; }
    const ModeKernels& kernels() const { return kernels_; }
    Exec exec() const { return exec_; }

private:
    SpectralBasis basis_;
    TimeGrid grid_;
    FractionalOrder alpha_;
    Exec exec_;
    Eigen::VectorXd b_;
    ModeKernels kernels_;
};

Trajectory solve_linear(const Field& y0, const ControlSignal& u, const Actuator& act, const SpectralBasis& basis,
                        const TimeGrid& grid, FractionalOrder alpha);

Trajectory solve_semilinear(const Field& y0, const ControlSignal& u, const NonlinearTerm& F, const Actuator& act,
                            const SpectralBasis& basis, const TimeGrid& grid, FractionalOrder alpha,
                            const SemilinearOptions& opts = {});

struct OracleOptions {
    /// Nodes t_k = T (k/K)^grading; 1 is the uniform grid.
    double mesh_grading = 1.0;
};

/// Implicit L1 / five-point finite differences with ghost-node Neumann
/// closure; nonlinearity lagged by one step.
Trajectory l1_oracle_solve(const Field& y0, const ControlSignal& u, const NonlinearTerm& F, const Actuator& act,
                           const RectDomain& domain, const TimeGrid& grid, FractionalOrder alpha,
                           const OracleOptions& opts = {});

/// Nodal source profile of the actuator used by the finite-difference oracle.
Eigen::MatrixXd actuator_nodal_profile(const Actuator& act, const RectDomain& domain);

}  // namespace fracctl
