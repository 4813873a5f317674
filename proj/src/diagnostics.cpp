#include "fracctl/diagnostics.hpp"

#include "fracctl/parallel_kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace fracctl {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::satisfied: return "satisfied";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

double xq_norm(const SpectralBasis& basis, const Eigen::VectorXd& coeffs, double q) {
    const auto& lam = basis.eigenvalues();
    double s = 0.0;
    for (int m = 0; m < basis.size(); ++m) s += std::pow(lam[m] + 1.0, 2.0 * q) * coeffs(m) * coeffs(m);
    return std::sqrt(s);
}

double estimate_A1(const SpectralBasis& basis, const TimeGrid& grid, FractionalOrder alpha, double q, int panels) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("estimate_A1: q must lie in [0, 1]");
    const double a = alpha.value();
    const int P = panels > 0 ? panels : grid.K;
    std::vector<double> lam = basis.eigenvalues();
    std::sort(lam.begin(), lam.end());
    lam.erase(std::unique(lam.begin(), lam.end()), lam.end());
    // t^{a-1} E_{a,a}(-lambda t^a) dt = E_{a,a}(-lambda s) ds / a with s = t^a
    auto sup_symbol = [&](double s) {
        double best = 0.0;
        for (double l : lam) best = std::max(best, std::pow(l + 1.0, q) * ml(a, a, -l * s));
        return best;
    };
    const double S = std::pow(grid.T, a);
    std::vector<double> part(P);
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < P; ++j) {
        // cubic grading toward s = 0, where the supremum moves to the top of the spectrum
        const double s0 = S * std::pow(double(j) / P, 3), s1 = S * std::pow(double(j + 1) / P, 3);
        part[j] = boost::math::quadrature::gauss<double, 10>::integrate(sup_symbol, s0, s1);
    }
    return pairwise_sum(part) / a;
}

namespace {

Eigen::VectorXd random_coeffs(const SpectralBasis& basis, double q, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    const auto& lam = basis.eigenvalues();
    Eigen::VectorXd c(basis.size());
    // spectrum decaying one half power faster than the X^q weight
    for (int m = 0; m < basis.size(); ++m) c(m) = nd(rng) * std::pow(lam[m] + 1.0, -(q + 0.5));
    return c;
}

double grid_norm(const Eigen::MatrixXd& v, const Eigen::VectorXd& wx, const Eigen::VectorXd& wy, int p) {
    const Eigen::MatrixXd a = p == 2 ? v.cwiseAbs2().eval() : v.cwiseAbs2().cwiseAbs2().eval();
    const double s = (wx.transpose() * a * wy).value();
    return p == 2 ? std::sqrt(s) : std::pow(s, 0.25);
}

int degree(const NonlinearTerm& F) { return F.kind == NonlinearTerm::Kind::square ? 2 : F.m; }

}  // namespace

FNTable estimate_FN(const NonlinearTerm& F, const SpectralBasis& basis, std::span<const double> radii, double q,
                    std::uint64_t seed, int samples) {
    FNTable t;
    t.q = q;
    t.samples = samples;
    std::vector<double> r(radii.begin(), radii.end());
    std::sort(r.begin(), r.end());
    if (F.is_none()) {
        for (double s : r) t.rows.push_back({s, 0.0, 0.0, 0.0});
        return t;
    }
    if (samples < 1) throw std::invalid_argument("estimate_FN needs at least one sample");
    const RectDomain& d = basis.domain();
    const Eigen::VectorXd wx = trapezoid_weights(d.nx, d.dx()), wy = trapezoid_weights(d.ny, d.dy());
    // F is homogeneous of degree m, so ratios on the unit ball scale by sigma^{m-1}.
    double best_zero = 0.0, best_pair = 0.0, best_emb = 0.0;
#pragma omp parallel
    {
        double lz = 0.0, lp = 0.0, le = 0.0;
#pragma omp for schedule(static)
        for (int i = 0; i < samples; ++i) {
            std::seed_seq ss{seed, std::uint64_t(i)};
            std::mt19937_64 rng(ss);
            std::uniform_real_distribution<double> ur(0.0, 1.0);
            Eigen::VectorXd cz = random_coeffs(basis, q, rng), cy = random_coeffs(basis, q, rng);
            // half of the samples on the sphere, where the supremum of a power law sits
            const double rz = i % 2 == 0 ? 1.0 : ur(rng), ry = ur(rng);
            cz *= rz / xq_norm(basis, cz, q);
            cy *= ry / xq_norm(basis, cy, q);
            const Eigen::MatrixXd z = basis.from_spectral(cz), y = basis.from_spectral(cy);
            const Eigen::MatrixXd fz = F.apply(z), fy = F.apply(y);
            lz = std::max(lz, grid_norm(fz, wx, wy, 2) / rz);
            lp = std::max(lp, grid_norm(fz - fy, wx, wy, 2) / xq_norm(basis, cz - cy, q));
            le = std::max(le, grid_norm(z, wx, wy, 4) / rz);
        }
#pragma omp critical
        {
            best_zero = std::max(best_zero, lz);
            best_pair = std::max(best_pair, lp);
            best_emb = std::max(best_emb, le);
        }
    }
    t.c_emb = best_emb * best_emb;
    const int m = degree(F);
    for (double s : r) {
        const double scale = std::abs(F.c) * std::pow(s, m - 1);
        FNRow row;
        row.sigma = s;
        row.fn_zero = best_zero / std::abs(F.c) * scale;
        row.fn_pair = std::max(best_pair / std::abs(F.c) * scale, row.fn_zero);
        row.bound = m == 2 ? std::abs(F.c) * t.c_emb * 2.0 * s : 0.0;
        t.rows.push_back(row);
    }
    return t;
}

double estimate_mu(const SpectralSolver& solver, double q) {
    const SpectralBasis& basis = solver.basis();
    const int M = basis.size(), K = solver.grid().K;
    const Eigen::MatrixXd& W = solver.kernels().lag_weights();
    Eigen::VectorXd s(M);
    for (int m = 0; m < M; ++m) s(m) = std::pow(basis.eigenvalues()[m] + 1.0, q) * solver.actuator()(m);
    // A = sum_n R_n^T R_n, R_n(m, k) = s_m W(m, n - k - 1) for k < n
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(K, K);
    for (int n = 1; n <= K; ++n) {
        Eigen::MatrixXd R(M, n);
        for (int k = 0; k < n; ++k) R.col(k) = s.cwiseProduct(W.col(n - k - 1));
        A.topLeftCorner(n, n).noalias() += R.transpose() * R;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double estimate_g_alpha(const SpectralSolver& solver, const ControllabilityOperator& H) {
    const int K = solver.grid().K, dofs = H.target().size();
    const double dt = solver.grid().dt();
    Eigen::MatrixXd P(K, dofs);
    for (int r = 0; r < dofs; ++r) {
        const ControlSignal u = H.pinv_apply(Eigen::VectorXd::Unit(dofs, r));
        P.col(r) = Eigen::Map<const Eigen::VectorXd>(u.values.data(), K);
    }
    const Eigen::MatrixXd PS = P * H.target().synthesis;
    const Eigen::MatrixXd& W = solver.kernels().lag_weights();
    std::vector<double> g2(K);
    for (int k = 0; k < K; ++k) {
        const Eigen::MatrixXd Z = PS * W.col(K - 1 - k).asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Z * Z.transpose(), Eigen::EigenvaluesOnly);
        const double smax = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
        const double gk = std::sqrt(dt) * smax / dt;  // ||.||_U = sqrt(dt) |.|, averaged over the step
        g2[k] = gk * gk * dt;
    }
    return std::sqrt(pairwise_sum(g2));
}

namespace {

Constants evaluate(double kappa, double sup_pair, double sup_zero, double A1, double mu, double g) {
    Constants c;
    c.kappa = kappa;
    c.A2 = mu * g;
    c.sup_fn = sup_pair;
    c.sup_fn_zero = sup_zero;
    c.admissible = mu > 0.0 && std::isfinite(c.A2) && (A1 + c.A2) * sup_pair < 1.0;
    c.m_kappa = kappa / mu * (1.0 - A1 * sup_zero);
    c.rho_kappa = kappa / mu * (1.0 - (A1 + c.A2) * sup_zero);
    c.A_s = sup_pair == 0.0 ? 0.0 : c.A2 * sup_pair / (1.0 - A1 * sup_pair);
    return c;
}

}  // namespace

Constants compute_constants(double A1, double mu, double g_alpha_norm, const FNTable& table) {
    Constants best;
    double sup_pair = 0.0, sup_zero = 0.0;
    for (const FNRow& r : table.rows) {
        sup_pair = std::max(sup_pair, r.fn_pair);
        sup_zero = std::max(sup_zero, r.fn_zero);
        if (!(r.sigma > 0.0)) continue;
        const Constants c = evaluate(r.sigma, sup_pair, sup_zero, A1, mu, g_alpha_norm);
        if (!c.admissible) break;
        best = c;
    }
    if (!best.admissible) {
        best = evaluate(0.0, 0.0, 0.0, A1, mu, g_alpha_norm);
        best.admissible = false;
    }
    return best;
}

Constants constants_at(double kappa, double A1, double mu, double g_alpha_norm, const FNTable& table) {
    double sup_pair = 0.0, sup_zero = 0.0;
    for (const FNRow& r : table.rows) {
        sup_pair = std::max(sup_pair, r.fn_pair);
        sup_zero = std::max(sup_zero, r.fn_zero);
        if (r.sigma >= kappa) return evaluate(kappa, sup_pair, sup_zero, A1, mu, g_alpha_norm);
    }
    Constants c = evaluate(kappa, sup_pair, sup_zero, A1, mu, g_alpha_norm);
    // beyond the tabulated radii nothing is known, unless F_N vanishes identically
    if (sup_pair > 0.0 || sup_zero > 0.0) c.admissible = false;
    return c;
}

GramSpectrum gram_spectrum(const ControllabilityOperator& H, double tol) {
    GramSpectrum g;
    const Eigen::MatrixXd& Mw = H.weighted();
    g.rows = int(Mw.rows());
    g.cols = int(Mw.cols());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Mw);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv.size() == 0) return g;
    g.sigma_max = sv(0);
    g.sigma_min = sv(sv.size() - 1);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * g.sigma_max) ++g.effective_rank;
    return g;
}

bool HypothesisReport::any_violated() const {
    return h1 == Verdict::violated || h2 == Verdict::violated || contraction == Verdict::violated;
}

HypothesisReport run_diagnostics(const ControlProblem& p, const SpectralSolver& solver,
                                 const ControllabilityOperator& H, const DiagnosticsOptions& opts) {
    HypothesisReport rep;
    rep.q = opts.q;
    rep.A1 = estimate_A1(p.basis, p.grid, p.alpha, opts.q, opts.a1_panels);
    rep.A1_q0 = estimate_A1(p.basis, p.grid, p.alpha, 0.0, opts.a1_panels);
    rep.A1_q0_closed_form = std::pow(p.grid.T, p.alpha.value()) / std::tgamma(p.alpha.value() + 1.0);
    rep.mu = estimate_mu(solver, opts.q);
    try {
        rep.g_alpha_norm = estimate_g_alpha(solver, H);
    } catch (const IllConditionedGram&) {
        rep.g_alpha_norm = std::numeric_limits<double>::infinity();
    }
    std::vector<double> radii = opts.radii;
    if (radii.empty()) {
        for (int k = 0; k <= 44; ++k) radii.push_back(std::pow(10.0, -10.0 + k * 11.0 / 44.0));
    }
    rep.fn = estimate_FN(p.F, p.basis, radii, opts.q, opts.seed, opts.fn_samples);
    rep.constants = compute_constants(rep.A1, rep.mu, rep.g_alpha_norm, rep.fn);
    rep.spectrum = gram_spectrum(H);
    rep.gram_sigma_min = rep.spectrum.sigma_min * rep.spectrum.sigma_min;
    rep.gram_sigma_max = rep.spectrum.sigma_max * rep.spectrum.sigma_max;
    rep.gamma_dofs = p.z_d.size();

    // a numerically rank-deficient map is neither a proof nor a refutation of approximate controllability
    const int full = std::min(rep.spectrum.rows, rep.spectrum.cols);
    if (!(rep.spectrum.sigma_max > 0.0) || !(rep.spectrum.sigma_min > 0.0)) rep.h1 = Verdict::violated;
    else if (rep.spectrum.effective_rank < full) rep.h1 = Verdict::inconclusive;
    else rep.h1 = Verdict::satisfied;
    if (p.F.is_none()) {
        rep.h2 = Verdict::satisfied;
    } else {
        rep.h2 = rep.constants.admissible ? Verdict::satisfied : Verdict::violated;
    }
    rep.contraction = rep.constants.admissible && rep.constants.A_s < 1.0 ? Verdict::satisfied : Verdict::violated;
    return rep;
}

void attach_run(HypothesisReport& rep, const Trajectory& traj, const SpectralBasis& basis, const TimeGrid& grid) {
    if (traj.coeffs.empty()) return;
    std::vector<double> parts;
    for (std::size_t n = 1; n < traj.coeffs.size(); ++n) {
        const double v = xq_norm(basis, traj.coeffs[n], rep.q);
        parts.push_back(v * v * grid.dt());
    }
    rep.kappa_run = std::sqrt(pairwise_sum(parts));
    rep.constants_run = constants_at(*rep.kappa_run, rep.A1, rep.mu, rep.g_alpha_norm, rep.fn);
    // at the table kappa A_s < 1 follows from admissibility; the run's own kappa is the real test
    rep.contraction = rep.constants_run->admissible && rep.constants_run->A_s < 1.0 ? Verdict::satisfied
                                                                                    : Verdict::violated;
}

std::string format_report(const HypothesisReport& r) {
    std::ostringstream os;
    os.precision(10);
    auto constants = [&os](const char* tag, const Constants& c) {
        os << tag << ".admissible = " << (c.admissible ? "true" : "false") << "\n"
           << tag << ".kappa = " << c.kappa << "\n"
           << tag << ".m_kappa = " << c.m_kappa << "\n"
           << tag << ".rho_kappa = " << c.rho_kappa << "\n"
           << tag << ".sup_F_N = " << c.sup_fn << "\n"
           << tag << ".A_s = " << c.A_s << "\n";
    };
    os << "[hypotheses]\n"
       << "q = " << r.q << "\n"
       << "A1 = " << r.A1 << "\n"
       << "A1_q0 = " << r.A1_q0 << "\n"
       << "A1_q0_closed_form = " << r.A1_q0_closed_form << "\n"
       << "mu = " << r.mu << "\n"
       << "g_alpha_norm = " << r.g_alpha_norm << "\n"
       << "A2 = " << r.constants.A2 << "\n";
    constants("table", r.constants);
    if (r.constants_run) {
        os << "kappa_run = " << *r.kappa_run << "\n";
        constants("run", *r.constants_run);
    }
    os << "sigma_min = " << r.spectrum.sigma_min << "\n"
       << "sigma_max = " << r.spectrum.sigma_max << "\n"
       << "gram_sigma_min = " << r.gram_sigma_min << "\n"
       << "gram_sigma_max = " << r.gram_sigma_max << "\n"
       << "effective_rank = " << r.spectrum.effective_rank << " of " << std::min(r.spectrum.rows, r.spectrum.cols)
       << "\n"
       << "gamma_dofs = " << r.gamma_dofs << "\n"
       << "rank_below_gamma_dofs = " << (r.spectrum.effective_rank < r.gamma_dofs ? "true" : "false") << "\n"
       << "F_N.samples = " << r.fn.samples << " (sampled suprema are lower bounds)\n"
       << "F_N.c_emb = " << r.fn.c_emb << "\n"
       << "verdict.H1 = " << to_string(r.h1) << "\n"
       << "verdict.H2 = " << to_string(r.h2) << "\n"
       << "verdict.contraction = " << to_string(r.contraction) << "\n";
    return os.str();
}

}  // namespace fracctl
