#include "fracctl/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>

namespace fracctl {

TimeGrid::TimeGrid(double horizon, int steps) : T(horizon), K(steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("time horizon must be positive");
    if (steps < 2) throw std::invalid_argument("time grid needs at least 2 steps");
}

ControlSignal::ControlSignal(const TimeGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (int(values.size()) != g.K) throw std::invalid_argument("control length does not match the time grid");
}

double ControlSignal::cost() const {
    std::vector<double> sq(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) sq[k] = values[k] * values[k];
    return pairwise_sum(sq) * grid.dt();
}

double ControlSignal::l2_norm() const { return std::sqrt(cost()); }

NonlinearTerm NonlinearTerm::power(double c, int m) {
    if (m != 2 && m != 3) throw std::invalid_argument("scaled-power nonlinearity supports exponents 2 and 3");
    return {Kind::power, c, m};
}

double NonlinearTerm::operator()(double y) const {
    switch (kind) {
        case Kind::none: return 0.0;
        case Kind::square: return c * y * y;
        case Kind::power: return m == 2 ? c * y * y : c * y * y * y;
    }
    return 0.0;
}

Eigen::MatrixXd NonlinearTerm::apply(const Eigen::MatrixXd& y) const {
    return y.unaryExpr([this](double v) { return (*this)(v); });
}

int Trajectory::total_sweeps() const {
    int s = 0;
    for (int v : picard_sweeps) s += v;
    return s;
}

ModeKernels::ModeKernels(const SpectralBasis& basis, const TimeGrid& grid, FractionalOrder alpha, Exec exec)
    : W_(step_weight_table(basis.eigenvalues(), grid.K, grid.dt(), alpha, exec)),
      D_(decay_table(basis.eigenvalues(), grid.K, grid.dt(), alpha, exec)) {}

SpectralSolver::SpectralSolver(const SpectralBasis& basis, const Actuator& act, const TimeGrid& grid,
                               FractionalOrder alpha, Exec exec)
    : basis_(basis), grid_(grid), alpha_(alpha), exec_(exec), b_(actuator_coefficients(act, basis)),
      kernels_(basis, grid, alpha, exec) {}

namespace {

bool same_grid(const RectDomain& a, const RectDomain& b) {
    return a.nx == b.nx && a.ny == b.ny && a.lx == b.lx && a.ly == b.ly;
}

bool same_time(const TimeGrid& a, const TimeGrid& b) { return a.K == b.K && a.T == b.T; }

}  // namespace

Trajectory SpectralSolver::solve(const Field& y0, const ControlSignal& u, const NonlinearTerm& F,
                                 const SemilinearOptions& opts) const {
    if (!same_grid(y0.domain(), basis_.domain())) throw std::invalid_argument("initial state grid != basis grid");
    if (!same_time(u.grid, grid_) || int(u.values.size()) != grid_.K) {
        throw std::invalid_argument("control time grid != solver time grid");
    }
    const int M = basis_.size(), K = grid_.K;
    const Eigen::MatrixXd& W = kernels_.lag_weights();
    const Eigen::MatrixXd& D = kernels_.decay();
    const Eigen::VectorXd w0 = W.col(0);
    const Eigen::VectorXd c0 = y0.coefficients(basis_);
    const bool nonlinear = !F.is_none();

    Trajectory tr;
    tr.control = u;
    tr.times.resize(K + 1);
    for (int k = 0; k <= K; ++k) tr.times[k] = grid_.t(k);
    tr.coeffs.reserve(K + 1);
    tr.snapshots.reserve(K + 1);
    tr.coeffs.push_back(c0);
    tr.snapshots.push_back(y0);
    tr.picard_sweeps.assign(K + 1, 0);
    tr.forcing = Eigen::MatrixXd::Zero(M, K);

    // total per-step forcing b u_k + P F(y), modes x steps
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(M, K);
    for (int n = 1; n <= K; ++n) {
        G.col(n - 1) = b_ * u.values[n - 1];
        const Eigen::VectorXd base = D.col(n).cwiseProduct(c0) + history_sum(W, G, n, exec_);
        Eigen::VectorXd c = base;
        if (nonlinear) {
            const Eigen::VectorXd f_prev = basis_.to_spectral(F.apply(tr.snapshots[n - 1].values()));
            Eigen::VectorXd f = f_prev;
            c = base + w0.cwiseProduct(f);
            int sweeps = 0;
            bool done = false;
            while (!done) {
                if (sweeps == opts.max_sweeps) {
                    std::ostringstream os;
                    os << "Picard sweeps did not converge within " << opts.max_sweeps << " iterations at t = "
                       << grid_.t(n);
                    throw DivergenceError(os.str(), n);
                }
                ++sweeps;
                const Eigen::MatrixXd y = basis_.from_spectral(c);
                f = 0.5 * (f_prev + basis_.to_spectral(F.apply(y)));
                const Eigen::VectorXd next = base + w0.cwiseProduct(f);
                const double diff = (next - c).norm();
                c = next;
                if (!std::isfinite(diff)) throw DivergenceError("state became non-finite during Picard sweeps", n);
                done = diff <= opts.picard_tol * std::max(1.0, c.norm());
            }
            tr.picard_sweeps[n] = sweeps;
            tr.forcing.col(n - 1) = f;
            G.col(n - 1) += f;
        }
        tr.coeffs.push_back(c);
        tr.snapshots.emplace_back(basis_.domain(), basis_.from_spectral(c));
    }
    return tr;
}

Eigen::VectorXd SpectralSolver::convolve_to_T(const Eigen::MatrixXd& g) const {
    return history_sum(kernels_.lag_weights(), g, grid_.K, exec_);
}

Trajectory solve_linear(const Field& y0, const ControlSignal& u, const Actuator& act, const SpectralBasis& basis,
                        const TimeGrid& grid, FractionalOrder alpha) {
    return SpectralSolver(basis, act, grid, alpha).solve(y0, u, NonlinearTerm::none());
}

Trajectory solve_semilinear(const Field& y0, const ControlSignal& u, const NonlinearTerm& F, const Actuator& act,
                            const SpectralBasis& basis, const TimeGrid& grid, FractionalOrder alpha,
                            const SemilinearOptions& opts) {
    return SpectralSolver(basis, act, grid, alpha).solve(y0, u, F, opts);
}

Eigen::MatrixXd actuator_nodal_profile(const Actuator& act, const RectDomain& d) {
    act.validate(d);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d.nx, d.ny);
    if (act.kind == Actuator::Kind::zonal) {
        // cell-volume fraction of D around each node: half on interior edges of D, full where an
        // edge of D lies on the boundary of the domain (the node's control volume is a half cell)
        auto share = [](double s, double a, double b, double h, double len) {
            const double tol = 1e-9 * h;
            if (s < a - tol || s > b + tol) return 0.0;
            const bool on_edge = std::abs(s - a) <= tol || std::abs(s - b) <= tol;
            const bool on_wall = std::abs(s) <= tol || std::abs(s - len) <= tol;
            return on_edge && !on_wall ? 0.5 : 1.0;
        };
        for (int i = 0; i < d.nx; ++i) {
            const double sx = share(d.x(i), act.x0, act.x1, d.dx(), d.lx);
            if (sx == 0.0) continue;
            for (int j = 0; j < d.ny; ++j) p(i, j) = act.gain * sx * share(d.y(j), act.y0, act.y1, d.dy(), d.ly);
        }
    } else {
        // bilinear spreading of the unit mass over the enclosing cell
        const double fx = act.b1 / d.dx(), fy = act.b2 / d.dy();
        const int i = std::min(int(fx), d.nx - 2), j = std::min(int(fy), d.ny - 2);
        const double rx = fx - i, ry = fy - j;
        const double s = act.gain / (d.dx() * d.dy());
        p(i, j) += s * (1 - rx) * (1 - ry);
        p(i + 1, j) += s * rx * (1 - ry);
        p(i, j + 1) += s * (1 - rx) * ry;
        p(i + 1, j + 1) += s * rx * ry;
    }
    return p;
}

namespace {

// -Laplace with ghost-node Neumann closure, node (i, j) -> i + j nx.
Eigen::SparseMatrix<double> neumann_laplacian(const RectDomain& d) {
    const int nx = d.nx, ny = d.ny;
    const double ax = 1.0 / (d.dx() * d.dx()), ay = 1.0 / (d.dy() * d.dy());
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(std::size_t(5) * nx * ny);
    auto id = [nx](int i, int j) { return i + j * nx; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int r = id(i, j);
            t.emplace_back(r, r, 2.0 * ax + 2.0 * ay);
            if (i == 0) t.emplace_back(r, id(1, j), -2.0 * ax);
            else if (i == nx - 1) t.emplace_back(r, id(nx - 2, j), -2.0 * ax);
            else {
                t.emplace_back(r, id(i - 1, j), -ax);
                t.emplace_back(r, id(i + 1, j), -ax);
            }
            if (j == 0) t.emplace_back(r, id(i, 1), -2.0 * ay);
            else if (j == ny - 1) t.emplace_back(r, id(i, ny - 2), -2.0 * ay);
            else {
                t.emplace_back(r, id(i, j - 1), -ay);
                t.emplace_back(r, id(i, j + 1), -ay);
            }
        }
    }
    Eigen::SparseMatrix<double> A(nx * ny, nx * ny);
    A.setFromTriplets(t.begin(), t.end());
    return A;
}

}  // namespace

Trajectory l1_oracle_solve(const Field& y0, const ControlSignal& u, const NonlinearTerm& F, const Actuator& act,
                           const RectDomain& domain, const TimeGrid& grid, FractionalOrder alpha,
                           const OracleOptions& opts) {
    if (!same_grid(y0.domain(), domain)) throw std::invalid_argument("initial state grid != oracle grid");
    if (!same_time(u.grid, grid)) throw std::invalid_argument("control time grid != oracle time grid");
    if (!(opts.mesh_grading >= 1.0)) throw std::invalid_argument("mesh grading must be >= 1");
    const int K = grid.K, N = domain.nx * domain.ny;
    const double a = alpha.value();
    const double g2 = std::tgamma(2.0 - a);

    std::vector<double> t(K + 1);
    for (int k = 0; k <= K; ++k) t[k] = grid.T * std::pow(double(k) / K, opts.mesh_grading);
    t[K] = grid.T;

    const Eigen::SparseMatrix<double> A = neumann_laplacian(domain);
    Eigen::SparseMatrix<double> I(N, N);
    I.setIdentity();
    const Eigen::MatrixXd src = actuator_nodal_profile(act, domain);
    const Eigen::Map<const Eigen::VectorXd> bvec(src.data(), N);

    Trajectory tr;
    tr.times = t;
    tr.control = u;
    tr.snapshots.push_back(y0);
    tr.picard_sweeps.assign(K + 1, 0);

    std::vector<Eigen::VectorXd> y;  // nodal vectors, column-major (i fastest)
    y.reserve(K + 1);
    y.push_back(Eigen::Map<const Eigen::VectorXd>(y0.values().data(), N));

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    double factored_for = -1.0;
    for (int n = 1; n <= K; ++n) {
        // coefficient of (y^k - y^{k-1}) in the L1 sum at t_n
        auto c = [&](int k) {
            const double tau = t[k] - t[k - 1];
            // x^b - (x - tau)^b without cancellation when tau << x
            const double x = t[n] - t[k - 1];
            return -std::pow(x, 1.0 - a) * std::expm1((1.0 - a) * std::log1p(-tau / x)) / (tau * g2);
        };
        const double ann = c(n);
        if (ann != factored_for) {
            const Eigen::SparseMatrix<double> S = ann * I + A;
            lu.compute(S);
            if (lu.info() != Eigen::Success) throw OracleError("sparse LU factorization failed in the L1 oracle");
            factored_for = ann;
        }
        Eigen::VectorXd rhs = ann * y[n - 1];
        for (int k = 1; k < n; ++k) rhs -= c(k) * (y[k] - y[k - 1]);
        const double tm = 0.5 * (t[n] + t[n - 1]);
        const int step = std::min(int(tm / grid.dt()), K - 1);
        rhs += u.values[step] * bvec;
        if (!F.is_none()) rhs += y[n - 1].unaryExpr([&F](double v) { return F(v); });
        Eigen::VectorXd next = lu.solve(rhs);
        if (lu.info() != Eigen::Success || !next.allFinite()) throw OracleError("L1 oracle step failed");
        tr.snapshots.emplace_back(domain, Eigen::Map<const Eigen::MatrixXd>(next.data(), domain.nx, domain.ny));
        y.push_back(std::move(next));
    }
    return tr;
}

}  // namespace fracctl
