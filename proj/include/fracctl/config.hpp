#pragma once

// Run configuration: a flat key = value file with [section] headers.
// Polynomials are monomial lists [(a,b,c), ...] for sum c x^a y^b, optionally
// multiplied together and by scalars with '*'.

#include "fracctl/controllability.hpp"
#include "fracctl/spectral_domain.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fracctl {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line) : std::runtime_error(what), line(line) {}
    int line;  // 0 when not tied to a line
};

enum class Method { algorithm1, picard, linear };
Method parse_method(const std::string& s);
std::string to_string(Method m);

struct ExperimentConfig {
    std::string name = "run";
    double alpha = 0.5;
    double T = 1.0;
    RectDomain domain;
    int mx = 20, my = 20, K = 60;
    Actuator actuator;
    Region gamma, omega_c;
    Polynomial z_d;
    std::optional<Polynomial> d_s;  // empty: smoothstep extension of z_d
    double target_scale = 1.0;
    NonlinearTerm F;
    double epsilon = 1e-3;
    double epsilon_u = 1e-3;
    int n_max = 50;
    std::optional<double> lambda_reg;  // empty: 1e-8 trace(G) / rows
    StopMetric stop_metric = StopMetric::l2;
    double picard_tol = 1e-10;
    int max_sweeps = 50;
    double divergence_bound = 1e6;
    Method method = Method::algorithm1;
    double q = 0.5;
    int fn_samples = 1000;
    std::uint64_t seed = 1;
    std::string output_dir;

    /// Cross-field checks (Gamma on the boundary of omega_c, finite formulas).
    void validate() const;
};

Polynomial parse_polynomial(const std::string& text);
std::string format_polynomial(const Polynomial& p);

/// The configuration embedded in a run manifest, or the text itself when it is a plain config.
std::string extract_config_text(const std::string& text);

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
/// Every field written out with defaults materialized; parses back to the same config.
std::string format_config(const ExperimentConfig& c);

/// Applies name = value as if it appeared in the file (used by sweeps and CLI flags).
void set_parameter(ExperimentConfig& c, const std::string& name, const std::string& value);

/// The problem the controllability loops consume.
ControlProblem build_problem(const ExperimentConfig& c, Exec exec = Exec::parallel);

}  // namespace fracctl
