#pragma once

// Hot loops of the spectral solver. Every kernel has a serial reference and
// an OpenMP variant; each output element is produced by exactly one thread
// with a fixed summation order, so both variants agree bitwise for any
// thread count.

#include "fracctl/fractional_kernels.hpp"

#include <Eigen/Dense>

#include <span>

namespace fracctl {

enum class Exec { serial, parallel };

/// Pairwise (cascade) summation; the grouping depends only on the length.
double pairwise_sum(std::span<const double> v);

/// W(m, d - 1) = e_kernel_step_weight(lambda_m, (d - 1) dt, d dt) for d = 1..K.
/// Identical eigenvalues are evaluated once.
Eigen::MatrixXd step_weight_table(std::span<const double> lambdas, int K, double dt, FractionalOrder alpha,
                                  Exec exec = Exec::parallel);

/// D(m, n) = h_symbol(lambda_m, n dt) for n = 0..K.
Eigen::MatrixXd decay_table(std::span<const double> lambdas, int K, double dt, FractionalOrder alpha,
                            Exec exec = Exec::parallel);

/// out(m) = sum_{k < n} W(m, n - k - 1) f(m, k): the memory term at node n of
/// per-step forcing coefficients f (modes x steps).
Eigen::VectorXd history_sum(const Eigen::MatrixXd& W, const Eigen::MatrixXd& f, int n, Exec exec = Exec::parallel);

/// Number of OpenMP threads that parallel kernels will use.
int worker_threads();
void set_worker_threads(int n);

}  // namespace fracctl
