#include "fracctl/parallel_kernels.hpp"

#include <map>
#include <stdexcept>
#include <vector>

#include <omp.h>

namespace fracctl {

namespace {

double pairwise_rec(const double* p, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_rec(p, h) + pairwise_rec(p + h, n - h);
}

// Distinct eigenvalues and, for each mode, the row of its representative.
struct Dedup {
    std::vector<double> values;
    std::vector<int> slot;
};

Dedup dedup(std::span<const double> lambdas) {
    Dedup d;
    std::map<double, int> seen;
    d.slot.reserve(lambdas.size());
    for (double l : lambdas) {
        auto [it, fresh] = seen.emplace(l, int(d.values.size()));
        if (fresh) d.values.push_back(l);
        d.slot.push_back(it->second);
    }
    return d;
}

template <class Fn>
Eigen::MatrixXd tabulate(std::span<const double> lambdas, int cols, Exec exec, Fn&& fn) {
    const Dedup d = dedup(lambdas);
    const int nu = int(d.values.size());
    Eigen::MatrixXd uniq(nu, cols);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < nu; ++r) {
            for (int c = 0; c < cols; ++c) uniq(r, c) = fn(d.values[r], c);
        }
    } else {
        for (int r = 0; r < nu; ++r) {
            for (int c = 0; c < cols; ++c) uniq(r, c) = fn(d.values[r], c);
        }
    }
    Eigen::MatrixXd out(lambdas.size(), cols);
    for (std::size_t m = 0; m < lambdas.size(); ++m) out.row(m) = uniq.row(d.slot[m]);
    return out;
}

void history_row(const Eigen::MatrixXd& W, const Eigen::MatrixXd& f, int n, int m, std::vector<double>& buf,
                 double& out) {
    buf.resize(n);
    for (int k = 0; k < n; ++k) buf[k] = W(m, n - k - 1) * f(m, k);
    out = pairwise_sum(buf);
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_rec(v.data(), v.size()); }

Eigen::MatrixXd step_weight_table(std::span<const double> lambdas, int K, double dt, FractionalOrder alpha,
                                  Exec exec) {
    if (K < 1 || !(dt > 0.0)) throw std::invalid_argument("step_weight_table: need K >= 1 and dt > 0");
    return tabulate(lambdas, K, exec, [&](double lam, int c) {
        return e_kernel_step_weight(lam, c * dt, (c + 1) * dt, alpha);
    });
}

Eigen::MatrixXd decay_table(std::span<const double> lambdas, int K, double dt, FractionalOrder alpha, Exec exec) {
    if (K < 0 || !(dt > 0.0)) throw std::invalid_argument("decay_table: need K >= 0 and dt > 0");
    return tabulate(lambdas, K + 1, exec, [&](double lam, int c) { return h_symbol(lam, c * dt, alpha); });
}

Eigen::VectorXd history_sum(const Eigen::MatrixXd& W, const Eigen::MatrixXd& f, int n, Exec exec) {
    if (W.rows() != f.rows() || n > W.cols() || n > f.cols()) {
        throw std::invalid_argument("history_sum: shape mismatch");
    }
    const int modes = int(W.rows());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(modes);
    if (n <= 0) return out;
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<double> buf;
#pragma omp for schedule(static)
            for (int m = 0; m < modes; ++m) history_row(W, f, n, m, buf, out(m));
        }
    } else {
        std::vector<double> buf;
        for (int m = 0; m < modes; ++m) history_row(W, f, n, m, buf, out(m));
    }
    return out;
}

int worker_threads() { return omp_get_max_threads(); }

void set_worker_threads(int n) {
    if (n < 1) throw std::invalid_argument("thread count must be positive");
    omp_set_num_threads(n);
}

}  // namespace fracctl
