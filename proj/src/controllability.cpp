#include "fracctl/controllability.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace fracctl {

Eigen::VectorXd TargetSpace::sample(const Field& f) const {
    Eigen::VectorXd v(size());
    for (int r = 0; r < size(); ++r) v(r) = f(nodes[r].first, nodes[r].second);
    return v;
}

TargetSpace make_target(const SpectralBasis& basis, const Region& region) {
    const RectDomain& d = basis.domain();
    TargetSpace t;
    t.region = region;
    if (region.kind == Region::Kind::interior) {
        const SubgridField s = subgrid_nodes(d, region);
        for (std::size_t b = 0; b < s.iy.size(); ++b)
            for (std::size_t a = 0; a < s.ix.size(); ++a) t.nodes.emplace_back(s.ix[a], s.iy[b]);
        t.weights = s.quadrature_weights();
    } else {
        const BoundaryProfile p = boundary_nodes(d, region);
        t.nodes = p.nodes;
        t.weights = p.quadrature_weights();
    }
    if (t.nodes.empty()) throw GeometryError("target region has no degrees of freedom");
    t.synthesis.resize(t.size(), basis.size());
    for (int r = 0; r < t.size(); ++r) {
        for (int m = 0; m < basis.size(); ++m) {
            const Mode md = basis.mode(m);
            t.synthesis(r, m) = basis.phi_x()(t.nodes[r].first, md.i) * basis.phi_y()(t.nodes[r].second, md.j);
        }
    }
    return t;
}

Eigen::VectorXd to_dofs(const TargetSpace& t, const SubgridField& s) {
    if (t.region.kind != Region::Kind::interior || s.size() != t.size()) {
        throw std::invalid_argument("subgrid field does not match the target space");
    }
    return s.flat();
}

Eigen::VectorXd to_dofs(const TargetSpace& t, const BoundaryProfile& p) {
    if (t.region.kind != Region::Kind::boundary || p.size() != t.size()) {
        throw std::invalid_argument("boundary profile does not match the target space");
    }
    return Eigen::Map<const Eigen::VectorXd>(p.values.data(), p.size());
}

double default_lambda_reg(const Eigen::MatrixXd& gram) {
    if (gram.rows() == 0) return 0.0;
    return 1e-8 * gram.trace() / double(gram.rows());
}

ControllabilityOperator::ControllabilityOperator(Eigen::MatrixXd M, TargetSpace target, TimeGrid grid,
                                                 std::optional<double> lambda_reg)
    : M_(std::move(M)), target_(std::move(target)), grid_(grid) {
    if (M_.rows() != target_.size() || M_.cols() != grid_.K) {
        throw std::invalid_argument("operator shape does not match target dofs x time steps");
    }
    if (!M_.allFinite()) throw std::runtime_error("controllability operator has non-finite entries");
    wsqrt_ = target_.weights.cwiseSqrt();
    Mw_ = wsqrt_.asDiagonal() * M_ / std::sqrt(grid_.dt());
    G_ = Mw_ * Mw_.transpose();
    lambda_ = lambda_reg ? *lambda_reg : default_lambda_reg(G_);
    if (!(lambda_ >= 0.0)) throw std::invalid_argument("regularization weight must be non-negative");
    llt_.compute(G_ + lambda_ * Eigen::MatrixXd::Identity(G_.rows(), G_.cols()));
}

ControlSignal ControllabilityOperator::pinv_apply(const Eigen::VectorXd& r) const {
    if (r.size() != M_.rows()) throw std::invalid_argument("residual length does not match the target dofs");
    if (llt_.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G_, Eigen::EigenvaluesOnly);
        const double smin = std::max(0.0, es.eigenvalues().minCoeff()) + lambda_;
        std::ostringstream os;
        os << "Gram matrix is not positive definite (sigma_min(G + lambda I) = " << smin
           << "); increase lambda_reg";
        throw IllConditionedGram(os.str(), smin);
    }
    const Eigen::VectorXd z = llt_.solve(wsqrt_.cwiseProduct(r));
    const Eigen::VectorXd u = Mw_.transpose() * z / std::sqrt(grid_.dt());
    return ControlSignal(grid_, std::vector<double>(u.data(), u.data() + u.size()));
}

Eigen::VectorXd ControllabilityOperator::apply(const ControlSignal& u) const {
    return M_ * Eigen::Map<const Eigen::VectorXd>(u.values.data(), Eigen::Index(u.values.size()));
}

ControllabilityOperator assemble_H(const SpectralSolver& solver, const Region& target,
                                   std::optional<double> lambda_reg) {
    TargetSpace t = make_target(solver.basis(), target);
    const int K = solver.grid().K;
    const Eigen::MatrixXd& W = solver.kernels().lag_weights();
    const Eigen::VectorXd& b = solver.actuator();
    Eigen::MatrixXd M(t.size(), K);
    // column k: response at T to a unit control on [t_k, t_{k+1}), lag K - k
    auto column = [&](int k) { M.col(k) = t.synthesis * b.cwiseProduct(W.col(K - 1 - k)); };
    if (solver.exec() == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < K; ++k) column(k);
    } else {
        for (int k = 0; k < K; ++k) column(k);
    }
    return ControllabilityOperator(std::move(M), std::move(t), solver.grid(), lambda_reg);
}

ControllabilityOperator assemble_H(const SpectralBasis& basis, const Actuator& act, const TimeGrid& grid,
                                   const Region& target, FractionalOrder alpha, std::optional<double> lambda_reg) {
    return assemble_H(SpectralSolver(basis, act, grid, alpha), target, lambda_reg);
}

ControlSignal pinv_apply(const ControllabilityOperator& H, const Eigen::VectorXd& r) { return H.pinv_apply(r); }

ControlSignal linear_control(const ControllabilityOperator& H, const Eigen::VectorXd& d_s) {
    return H.pinv_apply(d_s);
}

double boundary_error(const Trajectory& traj, const BoundaryProfile& zd, const Region& gamma) {
    const BoundaryProfile reached = trace(traj.final_state(), gamma);
    if (reached.size() != zd.size()) throw std::invalid_argument("boundary profile does not match the segment");
    BoundaryProfile diff = reached;
    for (int k = 0; k < diff.size(); ++k) diff.values[k] = reached.values[k] - zd.values[k];
    return diff.l2_norm();
}

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::converged: return "converged";
        case RunStatus::max_iterations: return "max-iterations";
        case RunStatus::diverged: return "diverged";
    }
    return "?";
}

std::vector<double> IterationReport::contraction_ratios() const {
    std::vector<double> out;
    for (std::size_t n = 1; n < records.size(); ++n) {
        const double a = records[n - 1].update_norm, b = records[n].update_norm;
        if (std::isfinite(a) && std::isfinite(b) && a > 0.0) out.push_back(b / a);
    }
    return out;
}

namespace {

double control_distance(const ControlSignal& a, const ControlSignal& b) {
    ControlSignal d = a;
    for (std::size_t k = 0; k < d.values.size(); ++k) d.values[k] -= b.values[k];
    return d.l2_norm();
}

struct LoopSetup {
    Field y0;
    Eigen::VectorXd ds;      // target dofs on omega_c
    Eigen::VectorXd offset;  // chi H_alpha(T) y0
};

LoopSetup setup(const ControlProblem& p, const SpectralSolver& solver, const ControllabilityOperator& H) {
    if (H.target().region.kind != Region::Kind::interior) {
        throw std::invalid_argument("the iteration loops control the interior region omega_c");
    }
    LoopSetup s;
    s.y0 = p.y0 ? *p.y0 : Field::zeros(p.basis.domain());
    s.ds = to_dofs(H.target(), p.d_s);
    s.offset = Eigen::VectorXd::Zero(s.ds.size());
    if (p.y0) {
        const Trajectory free = solver.solve(s.y0, ControlSignal(p.grid), NonlinearTerm::none());
        s.offset = H.target().sample(free.final_state());
    }
    return s;
}

IterationRecord measure(const ControlProblem& p, const ControllabilityOperator& H, const LoopSetup& s, int n,
                        const ControlSignal& u, const Trajectory& tr) {
    IterationRecord rec;
    rec.n = n;
    const Eigen::VectorXd e = s.ds - H.target().sample(tr.final_state());
    rec.residual = H.target().l2_norm(e);
    if (p.stop_metric == StopMetric::image) rec.image_residual = H.image_norm(e);
    rec.boundary_error = boundary_error(tr, p.z_d, p.gamma);
    rec.cost = u.cost();
    rec.picard_sweeps = tr.total_sweeps();
    return rec;
}

}  // namespace

ControlResult algorithm1(const ControlProblem& p, const SpectralSolver& solver, const ControllabilityOperator& H) {
    const LoopSetup s = setup(p, solver, H);
    ControlResult res;
    Eigen::VectorXd r = s.ds - s.offset;
    std::optional<ControlSignal> u_prev;
    double prev_residual = std::numeric_limits<double>::infinity();
    int increases = 0;
    res.report.status = RunStatus::max_iterations;
    for (int n = 1; n <= p.n_max; ++n) {
        ControlSignal u = H.pinv_apply(r);
        Trajectory tr;
        try {
            tr = solver.solve(s.y0, u, p.F, p.picard);
        } catch (const DivergenceError& e) {
            res.report.status = RunStatus::diverged;
            res.report.message = e.what();
            res.control = u;
            break;
        }
        IterationRecord rec = measure(p, H, s, n, u, tr);
        if (u_prev) rec.update_norm = control_distance(u, *u_prev);
        res.report.records.push_back(rec);
        const Eigen::VectorXd e = s.ds - H.target().sample(tr.final_state());
        res.control = u;
        res.trajectory = std::move(tr);
        u_prev = std::move(u);

        const double stop = p.stop_metric == StopMetric::l2 ? rec.residual : rec.image_residual;
        if (stop <= p.epsilon) {
            res.report.status = RunStatus::converged;
            break;
        }
        increases = rec.residual > prev_residual ? increases + 1 : 0;
        prev_residual = rec.residual;
        if (increases >= 5) {
            res.report.status = RunStatus::diverged;
            res.report.message = "residual grew over 5 consecutive iterations";
            break;
        }
        r += e;
    }
    if (res.report.status == RunStatus::max_iterations) {
        std::ostringstream os;
        os << "stopping tolerance not reached within " << p.n_max << " iterations";
        res.report.message = os.str();
    }
    return res;
}

ControlResult picard_sequence(const ControlProblem& p, const SpectralSolver& solver,
                              const ControllabilityOperator& H) {
    const LoopSetup s = setup(p, solver, H);
    ControlResult res;
    ControlSignal u(p.grid);
    res.control = u;
    Trajectory tr;
    try {
        tr = solver.solve(s.y0, u, p.F, p.picard);
    } catch (const DivergenceError& e) {
        res.report.status = RunStatus::diverged;
        res.report.message = e.what();
        return res;
    }
    res.report.status = RunStatus::max_iterations;
    for (int n = 1; n <= p.n_max; ++n) {
        Eigen::VectorXd rhs = s.ds - s.offset;
        if (!p.F.is_none()) rhs -= H.target().synthesis * solver.convolve_to_T(tr.forcing);
        ControlSignal next = H.pinv_apply(rhs);
        const double update = control_distance(next, u);
        try {
            tr = solver.solve(s.y0, next, p.F, p.picard);
        } catch (const DivergenceError& e) {
            res.report.status = RunStatus::diverged;
            res.report.message = e.what();
            res.control = next;
            break;
        }
        IterationRecord rec = measure(p, H, s, n, next, tr);
        rec.update_norm = update;
        res.report.records.push_back(rec);
        u = std::move(next);
        res.control = u;
        res.trajectory = tr;
        // without a nonlinearity the map is constant, so one step is the fixed point
        if (update <= p.epsilon_u || p.F.is_none()) {
            res.report.status = RunStatus::converged;
            break;
        }
        if (!(u.l2_norm() <= p.divergence_bound)) {
            res.report.status = RunStatus::diverged;
            res.report.message = "control norm left the admissible ball";
            break;
        }
    }
    if (res.report.status == RunStatus::max_iterations) {
        std::ostringstream os;
        os << "control update did not fall below " << p.epsilon_u << " within " << p.n_max << " iterations";
        res.report.message = os.str();
    }
    return res;
}

ControlResult linear_run(const ControlProblem& p, const SpectralSolver& solver, const ControllabilityOperator& H) {
    const LoopSetup s = setup(p, solver, H);
    ControlResult res;
    res.control = H.pinv_apply(s.ds - s.offset);
    try {
        res.trajectory = solver.solve(s.y0, res.control, p.F, p.picard);
    } catch (const DivergenceError& e) {
        res.report.status = RunStatus::diverged;
        res.report.message = e.what();
        return res;
    }
    res.report.records.push_back(measure(p, H, s, 1, res.control, res.trajectory));
    const IterationRecord& rec = res.report.records.back();
    const double stop = p.stop_metric == StopMetric::l2 ? rec.residual : rec.image_residual;
    res.report.status = stop <= p.epsilon ? RunStatus::converged : RunStatus::max_iterations;
    if (res.report.status != RunStatus::converged) res.report.message = "one-shot control misses the tolerance";
    return res;
}

ControlResult algorithm1(const ControlProblem& p) {
    const SpectralSolver solver(p.basis, p.actuator, p.grid, p.alpha, p.exec);
    const ControllabilityOperator H = assemble_H(solver, p.omega_c, p.lambda_reg);
    return algorithm1(p, solver, H);
}

ControlResult picard_sequence(const ControlProblem& p) {
    const SpectralSolver solver(p.basis, p.actuator, p.grid, p.alpha, p.exec);
    const ControllabilityOperator H = assemble_H(solver, p.omega_c, p.lambda_reg);
    return picard_sequence(p, solver, H);
}

}  // namespace fracctl
