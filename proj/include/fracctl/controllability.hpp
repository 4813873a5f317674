#pragma once

// Discretized control-to-target operators, their regularized pseudo-inverse,
// and the two fixed-point loops that build a control for the semilinear
// system from it.

#include "fracctl/solver.hpp"
#include "fracctl/spectral_domain.hpp"

#include <Eigen/Dense>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracctl {

class IllConditionedGram : public std::runtime_error {
public:
    IllConditionedGram(const std::string& what, double sigma_min)
        : std::runtime_error(what), sigma_min(sigma_min) {}
    double sigma_min;
};

/// Degrees of freedom of a target: grid nodes of an interior rectangle or of a
/// boundary segment, with their trapezoid weights and the synthesis matrix
/// from spectral coefficients to nodal values there.
struct TargetSpace {
    Region region;
    std::vector<std::pair<int, int>> nodes;
    Eigen::VectorXd weights;
    Eigen::MatrixXd synthesis;  // dofs x modes

    int size() const { return int(nodes.size()); }
    double l2_norm(const Eigen::VectorXd& v) const { return std::sqrt(weights.dot(v.cwiseAbs2())); }
    Eigen::VectorXd sample(const Field& f) const;
};

TargetSpace make_target(const SpectralBasis& basis, const Region& region);
/// Dof vector of a subgrid field or a boundary profile, in target order.
Eigen::VectorXd to_dofs(const TargetSpace& t, const SubgridField& s);
Eigen::VectorXd to_dofs(const TargetSpace& t, const BoundaryProfile& p);

/// Matrix M of u -> chi (E_alpha * B u)(T) on piecewise-constant controls.
/// Inner products: trapezoid weights on the target, dt on the controls;
/// the weighted Gram G = W^1/2 M M^T W^1/2 / dt is what gets regularized.
class ControllabilityOperator {
public:
    ControllabilityOperator(Eigen::MatrixXd M, TargetSpace target, TimeGrid grid, std::optional<double> lambda_reg);

    const Eigen::MatrixXd& matrix() const { return M_; }
    /// W^1/2 M dt^-1/2: isometric coordinates on both sides.
    const Eigen::MatrixXd& weighted() const { return Mw_; }
    const Eigen::MatrixXd& gram() const { return G_; }
    double lambda_reg() const { return lambda_; }
    const TargetSpace& target() const { return target_; }
    const TimeGrid& grid() const { return grid_; }

    /// u = H^*(H H^* + lambda I)^-1 r.
    ControlSignal pinv_apply(const Eigen::VectorXd& r) const;
    /// H u on the target dofs.
    Eigen::VectorXd apply(const ControlSignal& u) const;
    /// ||H^+ r||_U, the image-space norm.
    double image_norm(const Eigen::VectorXd& r) const { return pinv_apply(r).l2_norm(); }

private:
    Eigen::MatrixXd M_, Mw_, G_;
    TargetSpace target_;
    TimeGrid grid_;
    double lambda_;
    Eigen::VectorXd wsqrt_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

/// Default Tikhonov weight: 1e-8 * trace(G) / rows(G).
double default_lambda_reg(const Eigen::MatrixXd& gram);

ControllabilityOperator assemble_H(const SpectralSolver& solver, const Region& target,
                                   std::optional<double> lambda_reg = std::nullopt);
ControllabilityOperator assemble_H(const SpectralBasis& basis, const Actuator& act, const TimeGrid& grid,
                                   const Region& target, FractionalOrder alpha,
                                   std::optional<double> lambda_reg = std::nullopt);

ControlSignal pinv_apply(const ControllabilityOperator& H, const Eigen::VectorXd& r);
ControlSignal linear_control(const ControllabilityOperator& H, const Eigen::VectorXd& d_s);

/// Discrete L2(Gamma) norm of trace(y(T)) - zd.
double boundary_error(const Trajectory& traj, const BoundaryProfile& zd, const Region& gamma);

enum class StopMetric { l2, image };
enum class RunStatus { converged, max_iterations, diverged };
std::string to_string(RunStatus s);

struct IterationRecord {
    int n = 0;
    double residual = 0;        // ||d_s - chi y_{u_n}(T)||_{L2(omega_c)}
    double image_residual = std::numeric_limits<double>::quiet_NaN();
    double boundary_error = 0;  // on Gamma
    double cost = 0;            // ||u_n||^2
    double update_norm = std::numeric_limits<double>::quiet_NaN();  // ||u_n - u_{n-1}||_U
    int picard_sweeps = 0;
};

struct IterationReport {
    std::vector<IterationRecord> records;
    RunStatus status = RunStatus::max_iterations;
    std::string message;

    /// ||u_{n+1} - u_n|| / ||u_n - u_{n-1}|| for every n where both exist.
    std::vector<double> contraction_ratios() const;
};

/// Everything one control synthesis needs.
struct ControlProblem {
    SpectralBasis basis;
    Actuator actuator;
    TimeGrid grid;
    FractionalOrder alpha{1.0};
    NonlinearTerm F;
    Region omega_c, gamma;
    SubgridField d_s;        // target on omega_c
    BoundaryProfile z_d;     // target on gamma
    std::optional<Field> y0; // zero when absent
    double epsilon = 1e-3;
    double epsilon_u = 1e-3;
    int n_max = 50;
    std::optional<double> lambda_reg;
    StopMetric stop_metric = StopMetric::l2;
    SemilinearOptions picard;
    /// picard_sequence declares divergence once ||u_n||_U exceeds this.
    double divergence_bound = 1e6;
    Exec exec = Exec::parallel;
};

struct ControlResult {
    ControlSignal control;
    IterationReport report;
    Trajectory trajectory;  // state driven by the final control
};

/// Residual-update loop r_{n+1} = r_n + (d_s - chi y_{u_n}(T)), u_n = H^+ r_n.
ControlResult algorithm1(const ControlProblem& p);
/// Fixed-point sequence u_{n+1} = H^+(d_s - chi (E_alpha * F y_{u_n})(T)), u_0 = 0.
ControlResult picard_sequence(const ControlProblem& p);

/// Same loops on prebuilt solver and operator (shared across runs).
ControlResult algorithm1(const ControlProblem& p, const SpectralSolver& solver, const ControllabilityOperator& H);
ControlResult picard_sequence(const ControlProblem& p, const SpectralSolver& solver,
                              const ControllabilityOperator& H);
/// One pseudo-inverse application to the target, simulated with the configured F.
ControlResult linear_run(const ControlProblem& p, const SpectralSolver& solver, const ControllabilityOperator& H);

}  // namespace fracctl
