// Serial reference vs OpenMP kernels: wall time and bitwise agreement.
//   bench_kernels [threads] [mx] [K]

#include "fracctl/controllability.hpp"
#include "fracctl/parallel_kernels.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

using namespace fracctl;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double ts, double tp, bool same) {
    std::printf("%-22s serial %9.4f s  parallel %9.4f s  speedup %5.2f  bitwise %s\n", name, ts, tp, ts / tp,
                same ? "equal" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    const int threads = argc > 1 ? std::atoi(argv[1]) : 4;
    const int mx = argc > 2 ? std::atoi(argv[2]) : 20;
    const int K = argc > 3 ? std::atoi(argv[3]) : 60;
    set_worker_threads(threads);
    std::printf("threads %d, modes %d, steps %d\n", worker_threads(), mx * mx, K);

    const RectDomain d;
    const SpectralBasis basis = build_basis(d, mx, mx);
    const TimeGrid grid(3.0, K);
    const FractionalOrder alpha(0.3);
    const auto& lam = basis.eigenvalues();

    Eigen::MatrixXd ws, wp;
    const double t1 = seconds([&] { ws = step_weight_table(lam, K, grid.dt(), alpha, Exec::serial); }, 3);
    const double t2 = seconds([&] { wp = step_weight_table(lam, K, grid.dt(), alpha, Exec::parallel); }, 3);
    report("step_weight_table", t1, t2, ws == wp);

    Eigen::MatrixXd f = Eigen::MatrixXd::Random(basis.size(), K);
    Eigen::VectorXd hs, hp;
    const double t3 = seconds([&] { for (int n = 1; n <= K; ++n) hs = history_sum(ws, f, n, Exec::serial); }, 20);
    const double t4 = seconds([&] { for (int n = 1; n <= K; ++n) hp = history_sum(ws, f, n, Exec::parallel); }, 20);
    report("history_sum (all n)", t3, t4, hs == hp);

    const Actuator act = Actuator::zonal(0, 0.2, 0.2, 0.4);
    const Region omega = Region::rect(0, 0.3, 0, 0.1);
    const SpectralSolver ss(basis, act, grid, alpha, Exec::serial), sp(basis, act, grid, alpha, Exec::parallel);
    Eigen::MatrixXd ms, mp;
    const double t5 = seconds([&] { ms = assemble_H(ss, omega).matrix(); }, 3);
    const double t6 = seconds([&] { mp = assemble_H(sp, omega).matrix(); }, 3);
    report("assemble_H", t5, t6, ms == mp);

    ControlSignal u(grid, 0.1);
    Trajectory a, b;
    const double t7 = seconds([&] { a = ss.solve(Field::zeros(d), u, NonlinearTerm::square()); }, 2);
    const double t8 = seconds([&] { b = sp.solve(Field::zeros(d), u, NonlinearTerm::square()); }, 2);
    report("semilinear solve", t7, t8, a.final_state().values() == b.final_state().values());
    return 0;
}
