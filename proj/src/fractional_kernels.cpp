#include "fracctl/fractional_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace fracctl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSeriesTerms = 20000;

// |z| below this goes through the power series; the cancellation factor
// there is bounded by E_a(|z|)/E_a(-|z|), a few tens for a >= 0.1.
constexpr double kSeriesRadius = 1.0;
// The asymptotic expansion is attempted beyond this radius.
constexpr double kAsymptoticRadius = 25.0;
// Nodes per half of the parabolic contour.
constexpr int kContourNodes = 36;

std::string describe(double alpha, double beta, double z) {
    std::ostringstream os;
    os.precision(17);
    os << "(alpha=" << alpha << ", beta=" << beta << ", z=" << z << ")";
    return os.str();
}

}  // namespace

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        std::ostringstream os;
        os << "fractional order must lie in (0, 1], got " << alpha;
        throw std::invalid_argument(os.str());
    }
}

EvaluationError::EvaluationError(double a, double b, double zz, const std::string& what)
    : std::runtime_error("Mittag-Leffler evaluation failed " + describe(a, b, zz) + ": " + what),
      alpha(a), beta(b), z(zz) {}

double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    if (x > 171.0) return 0.0;
    return 1.0 / std::tgamma(x);
}

namespace detail {

double ml_series(double alpha, double beta, double z) {
    if (z == 0.0) return rgamma(beta);
    const double logabs = std::log(std::abs(z));
    double sum = 0.0;
    int small_run = 0;
    for (int k = 0; k < kMaxSeriesTerms; ++k) {
        const double arg = alpha * k + beta;
        double mag;
        if (arg < 160.0) {
            mag = std::pow(std::abs(z), k) * rgamma(arg);
        } else {
            mag = std::exp(k * logabs - std::lgamma(arg));
        }
        const double term = (z < 0.0 && (k & 1)) ? -mag : mag;
        sum += term;
        // past the peak of |z|^k / Gamma(ak+b) once Gamma outgrows the power
        const bool decreasing = arg > 1.0 && alpha * std::log(arg) > logabs;
        if (decreasing && std::abs(term) <= kEps * 0.25 * std::abs(sum)) {
            if (++small_run >= 2) return sum;
        } else {
            small_run = 0;
        }
    }
    throw EvaluationError(alpha, beta, z, "power series did not converge");
}

bool ml_asymptotic(double alpha, double beta, double z, double& out) {
    if (alpha >= 1.0 || z >= 0.0) return false;
    // E_{a,b}(z) ~ -sum_{k>=1} z^{-k} / Gamma(b - a k) on |arg z| > a*pi.
    // 1/Gamma(b - a k) passes through zeros, so truncation is judged on the
    // envelope |z|^{-k} max(1.2, Gamma(1 - b + a k) / pi) rather than on the
    // terms themselves.
    const double x = -z;
    const double logx = std::log(x);
    double sum = 0.0;
    double prev_env = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 400; ++k) {
        const double y = beta - alpha * k;
        const double log_env = -k * logx + std::max(std::log(1.2), std::lgamma(1.0 - y) - std::log(std::numbers::pi));
        const double env = std::exp(log_env);
        if (env > prev_env) return false;  // optimal truncation reached first
        prev_env = env;
        const double term = -std::pow(z, -k) * rgamma(y);
        sum += term;
        if (sum != 0.0 && env <= kEps * 0.25 * std::abs(sum)) {
            out = sum;
            return true;
        }
    }
    return false;
}

bool ml_positive_integral(double alpha, double beta, double z, double& out) {
    if (!(alpha < 1.0) || z >= 0.0) return false;
    const bool unit = beta == 1.0;
    if (!unit && beta != alpha) return false;
    // Real inversion on the branch cut of s^{a-b}/(s^a + x), substituted to
    // w = (x r^a): with c = cos(a pi), s = sin(a pi),
    //   E_{a,1}(-x) = s/(a pi) \int e^{-w^{1/a}} x / (w^2 + 2 c x w + x^2) dw
    //   E_{a,a}(-x) = s/(a pi) \int w^{1/a} e^{-w^{1/a}} / (w^2 + 2 c x w + x^2) dw
    // Both integrands are positive, so the result is accurate to a few ulp
    // relative even when it is tiny.
    const double x = -z;
    const double c = std::cos(alpha * std::numbers::pi);
    const double sn = std::sin(alpha * std::numbers::pi);
    const double inv_a = 1.0 / alpha;
    // The denominator is (w - w0)^2 + width^2; w = w0 + width tan(theta)
    // turns it into a constant and leaves only the smooth numerator.
    const double w0 = -c * x, width = sn * x;
    auto f = [&](double theta, double) {
        const double w = w0 + width * std::tan(theta);
        if (w <= 0.0) return 0.0;
        const double wa = std::pow(w, inv_a);
        return (unit ? x : wa) * std::exp(-wa);
    };
    auto theta_of = [&](double w) { return std::atan((w - w0) / width); };
    const double upper = std::pow(60.0, alpha);  // e^{-60} cut-off
    std::vector<double> cuts{theta_of(0.0)};
    for (double w : {std::min(0.5, 0.5 * upper), std::min(1.0, upper), upper}) {
        if (theta_of(w) > cuts.back()) cuts.push_back(theta_of(w));
    }
    if (cuts.front() < 0.0 && cuts.back() > 0.0) {
        cuts.push_back(0.0);
        std::sort(cuts.begin(), cuts.end());
    }
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator(10);
    double total = 0.0, err_total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double err = 0.0;
        total += integrator.integrate(f, cuts[i], cuts[i + 1], 1e-14, &err);
        err_total += err;
    }
    total /= width;
    err_total /= width;
    const double value = sn / (alpha * std::numbers::pi) * total;
    if (!std::isfinite(value) || !(err_total <= 1e-10 * std::abs(total))) return false;
    out = value;
    return true;
}

double ml_contour(double alpha, double beta, double z) {
    // Bromwich inversion of L{t^{b-1} E_{a,b}(z t^a)}(s) = s^{a-b} / (s^a - z)
    // at t = 1, on the parabola s(u) = mu (1 + i u)^2 with the trapezoidal
    // rule (h = 3/N, mu = pi N / 12). All singularities of the transform lie
    // on the closed negative real axis when z <= 0.
    using cplx = std::complex<double>;
    const int n = kContourNodes;
    const double h = 3.0 / n;
    const double mu = std::numbers::pi * n / 12.0;
    auto integrand = [&](double u) {
        const cplx w(1.0, u);
        const cplx s = mu * w * w;
        const cplx ds = 2.0 * mu * cplx(0.0, 1.0) * w;
        const cplx sa = std::pow(s, alpha);
        const cplx f = std::pow(s, alpha - beta) / (sa - z);
        return std::exp(s) * f * ds;
    };
    double acc = integrand(0.0).imag() * 0.5;
    for (int k = 1; k <= n; ++k) acc += integrand(k * h).imag();
    // (h / 2 pi i) sum over the symmetric nodes; conjugate pairs double Im.
    const double value = acc * h / std::numbers::pi;
    if (!std::isfinite(value)) throw EvaluationError(alpha, beta, z, "contour quadrature not finite");
    return value;
}

}  // namespace detail

double ml(double alpha, double beta, double z) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(z)) {
        throw EvaluationError(alpha, beta, z, "requires alpha > 0, beta > 0 and finite z");
    }
    if (z == 0.0) return rgamma(beta);
    if (alpha == 1.0) {
        if (beta == 1.0) return std::exp(z);
        if (beta == 2.0) return std::expm1(z) / z;
    }
    if (z > 0.0 || -z <= kSeriesRadius) return detail::ml_series(alpha, beta, z);
    if (alpha > 1.0) {
        throw EvaluationError(alpha, beta, z, "negative arguments beyond the series radius need alpha <= 1");
    }
    double v;
    if (-z >= kAsymptoticRadius && detail::ml_asymptotic(alpha, beta, z, v)) return v;
    if (detail::ml_positive_integral(alpha, beta, z, v)) return v;
    if (alpha < 1.0 && beta == alpha + 1.0) {
        // E_{a,a+1}(z) = (E_a(z) - 1) / z, no cancellation once |z| > 1
        return (ml(alpha, 1.0, z) - 1.0) / z;
    }
    return detail::ml_contour(alpha, beta, z);
}

double h_symbol(double lambda, double t, FractionalOrder alpha) {
    if (lambda < 0.0 || t < 0.0) throw std::invalid_argument("h_symbol: lambda and t must be non-negative");
    if (lambda == 0.0 || t == 0.0) return 1.0;
    return ml(alpha, 1.0, -lambda * std::pow(t, alpha.value()));
}

double k_symbol(double lambda, double t, FractionalOrder alpha) {
    if (lambda < 0.0 || !(t > 0.0)) throw std::invalid_argument("k_symbol: requires lambda >= 0 and t > 0");
    return ml(alpha, alpha, -lambda * std::pow(t, alpha.value()));
}

namespace {

// \int_0^b s^{a-1} E_{a,a}(-lambda s^a) ds = b^a E_{a,a+1}(-lambda b^a)
double e_kernel_primitive(double lambda, double b, double a) {
    if (b == 0.0) return 0.0;
    const double ba = std::pow(b, a);
    return ba * ml(a, a + 1.0, -lambda * ba);
}

}  // namespace

double e_kernel_step_weight(double lambda, double a, double b, FractionalOrder alpha) {
    if (lambda < 0.0 || a < 0.0 || !(b > a)) {
        throw std::invalid_argument("e_kernel_step_weight: requires lambda >= 0 and 0 <= a < b");
    }
    const double al = alpha.value();
    if (lambda * std::pow(b, al) <= 1.0) {
        return e_kernel_primitive(lambda, b, al) - e_kernel_primitive(lambda, a, al);
    }
    // Same closed form through x^a E_{a,a+1}(-lambda x^a) = (1 - E_a(-lambda x^a)) / lambda,
    // which avoids subtracting two values close to 1/lambda.
    return (h_symbol(lambda, a, alpha) - h_symbol(lambda, b, alpha)) / lambda;
}

std::vector<double> l1_caputo_apply(std::span<const double> samples, double dt, FractionalOrder alpha) {
    if (!(dt > 0.0)) throw std::invalid_argument("l1_caputo_apply: dt must be positive");
    if (samples.size() < 2) throw std::invalid_argument("l1_caputo_apply: need at least two samples");
    const double a = alpha.value();
    const std::size_t n = samples.size();
    std::vector<double> b(n);
    b[0] = 1.0;
    for (std::size_t j = 1; j < n; ++j) b[j] = std::pow(j + 1.0, 1.0 - a) - std::pow(double(j), 1.0 - a);
    const double scale = std::pow(dt, -a) / std::tgamma(2.0 - a);
    std::vector<double> out(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += b[j] * (samples[m - j] - samples[m - j - 1]);
        out[m] = scale * acc;
    }
    return out;
}

std::vector<double> rl_integral_apply(std::span<const double> samples, double dt, FractionalOrder alpha) {
    if (!(dt > 0.0)) throw std::invalid_argument("rl_integral_apply: dt must be positive");
    if (samples.size() < 2) throw std::invalid_argument("rl_integral_apply: need at least two samples");
    const double a = alpha.value();
    const std::size_t n = samples.size();
    // Product trapezoid: weights of f_j in I^a f(t_m) for a hat-function basis.
    const double c = std::pow(dt, a) / std::tgamma(a + 2.0);
    auto p = [a](double k) { return k <= 0.0 ? 0.0 : std::pow(k, a + 1.0); };
    std::vector<double> out(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
        const double md = double(m);
        double acc = samples[0] * (p(md - 1.0) - (md - 1.0 - a) * std::pow(md, a));
        for (std::size_t j = 1; j < m; ++j) {
            const double k = double(m - j);
            acc += samples[j] * (p(k + 1.0) - 2.0 * p(k) + p(k - 1.0));
        }
        acc += samples[m];
        out[m] = c * acc;
    }
    return out;
}

}  // namespace fracctl
