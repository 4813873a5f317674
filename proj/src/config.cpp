#include "fracctl/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace fracctl {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double parse_plain(const std::string& tok) {
    const std::string t = trim(tok);
    double v = 0.0;
    const char* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (t.empty() || ec != std::errc() || ptr != end) throw std::invalid_argument("not a number: '" + t + "'");
    return v;
}

// "3", "-1e-3", "1/46", "-1/1.3"
double parse_number(const std::string& tok) {
    const std::string t = trim(tok);
    const auto slash = t.find('/');
    if (slash == std::string::npos) return parse_plain(t);
    const double den = parse_plain(t.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("division by zero in '" + t + "'");
    return parse_plain(t.substr(0, slash)) / den;
}

int parse_int(const std::string& tok) {
    const std::string t = trim(tok);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw std::invalid_argument("not an integer: '" + t + "'");
    }
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// One '*'-separated factor: either a scalar or a bracketed monomial list.
Polynomial parse_factor(const std::string& text) {
    const std::string t = trim(text);
    Polynomial p;
    if (t.empty()) throw std::invalid_argument("empty factor in polynomial");
    if (t.front() != '[') {
        p.terms.push_back({0, 0, parse_number(t)});
        return p;
    }
    if (t.back() != ']') throw std::invalid_argument("unterminated monomial list");
    const std::string body = t.substr(1, t.size() - 2);
    std::size_t pos = 0;
    while (true) {
        const auto open = body.find('(', pos);
        if (open == std::string::npos) {
            if (trim(body.substr(pos)).find_first_not_of(", ") != std::string::npos) {
                throw std::invalid_argument("stray text in monomial list");
            }
            break;
        }
        const auto close = body.find(')', open);
        if (close == std::string::npos) throw std::invalid_argument("unterminated monomial");
        std::stringstream parts(body.substr(open + 1, close - open - 1));
        std::string a, b, c, extra;
        if (!std::getline(parts, a, ',') || !std::getline(parts, b, ',') || !std::getline(parts, c, ',') ||
            std::getline(parts, extra, ',')) {
            throw std::invalid_argument("a monomial is (a, b, c) for c x^a y^b");
        }
        Monomial m{parse_int(a), parse_int(b), parse_number(c)};
        if (m.a < 0 || m.b < 0) throw std::invalid_argument("monomial exponents must be non-negative");
        p.terms.push_back(m);
        pos = close + 1;
    }
    if (p.terms.empty()) throw std::invalid_argument("empty monomial list");
    return p;
}

struct Parser {
    ExperimentConfig cfg;
    std::set<std::string> seen;

    using Setter = std::function<void(const std::string&)>;
    std::map<std::string, Setter> setters;

    Parser() {
        auto num = [](double& dst) { return [&dst](const std::string& v) { dst = parse_number(v); }; };
        auto integer = [](int& dst) { return [&dst](const std::string& v) { dst = parse_int(v); }; };
        ExperimentConfig& c = cfg;
        setters = {
            {"problem.name", [&c](const std::string& v) { c.name = v; }},
            {"problem.alpha",
             [&c](const std::string& v) {
                 c.alpha = parse_number(v);
                 FractionalOrder{c.alpha};
             }},
            {"problem.T", num(c.T)},
            {"problem.method", [&c](const std::string& v) { c.method = parse_method(v); }},
            {"problem.seed",
             [&c](const std::string& v) {
                 std::uint64_t s = 0;
                 auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
                 if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
                     throw std::invalid_argument("seed must be a non-negative integer");
                 }
                 c.seed = s;
             }},
            {"domain.lx", num(c.domain.lx)},
            {"domain.ly", num(c.domain.ly)},
            {"domain.nx", integer(c.domain.nx)},
            {"domain.ny", integer(c.domain.ny)},
            {"domain.mx", integer(c.mx)},
            {"domain.my", integer(c.my)},
            {"domain.K", integer(c.K)},
            {"actuator.kind",
             [this](const std::string& v) {
                 const std::string k = lower(v);
                 if (k == "zonal") cfg.actuator.kind = Actuator::Kind::zonal;
                 else if (k == "pointwise") cfg.actuator.kind = Actuator::Kind::pointwise;
                 else throw std::invalid_argument("actuator kind is zonal or pointwise");
             }},
            {"actuator.x0", num(c.actuator.x0)},
            {"actuator.x1", num(c.actuator.x1)},
            {"actuator.y0", num(c.actuator.y0)},
            {"actuator.y1", num(c.actuator.y1)},
            {"actuator.b1", num(c.actuator.b1)},
            {"actuator.b2", num(c.actuator.b2)},
            {"actuator.gain", num(c.actuator.gain)},
            {"gamma.side", [&c](const std::string& v) { c.gamma.side = parse_side(lower(v)); }},
            {"gamma.s0", num(c.gamma.s0)},
            {"gamma.s1", num(c.gamma.s1)},
            {"omega_c.x0", num(c.omega_c.x0)},
            {"omega_c.x1", num(c.omega_c.x1)},
            {"omega_c.y0", num(c.omega_c.y0)},
            {"omega_c.y1", num(c.omega_c.y1)},
            {"target.z_d", [&c](const std::string& v) { c.z_d = parse_polynomial(v); }},
            {"target.d_s",
             [&c](const std::string& v) {
                 if (lower(v) == "smoothstep") c.d_s.reset();
                 else c.d_s = parse_polynomial(v);
             }},
            {"target.scale", num(c.target_scale)},
            {"nonlinearity.kind",
             [&c](const std::string& v) {
                 const std::string k = lower(v);
                 if (k == "none") c.F.kind = NonlinearTerm::Kind::none;
                 else if (k == "square") c.F.kind = NonlinearTerm::Kind::square;
                 else if (k == "power") c.F.kind = NonlinearTerm::Kind::power;
                 else throw std::invalid_argument("nonlinearity kind is none, square or power");
             }},
            {"nonlinearity.c", num(c.F.c)},
            {"nonlinearity.m", integer(c.F.m)},
            {"solver.epsilon", num(c.epsilon)},
            {"solver.epsilon_u", num(c.epsilon_u)},
            {"solver.n_max", integer(c.n_max)},
            {"solver.lambda_reg",
             [&c](const std::string& v) {
                 if (lower(v) == "auto") c.lambda_reg.reset();
                 else c.lambda_reg = parse_number(v);
             }},
            {"solver.stop_metric",
             [&c](const std::string& v) {
                 const std::string k = lower(v);
                 if (k == "l2") c.stop_metric = StopMetric::l2;
                 else if (k == "image") c.stop_metric = StopMetric::image;
                 else throw std::invalid_argument("stop_metric is l2 or image");
             }},
            {"solver.picard_tol", num(c.picard_tol)},
            {"solver.max_sweeps", integer(c.max_sweeps)},
            {"solver.divergence_bound", num(c.divergence_bound)},
            {"diagnostics.q", num(c.q)},
            {"diagnostics.fn_samples", integer(c.fn_samples)},
            {"output.dir", [&c](const std::string& v) { c.output_dir = v; }},
        };
    }

    void set(const std::string& key, const std::string& value, int line) {
        auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown key '" + key + "'", line);
        try {
            it->second(trim(value));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(key + ": " + e.what(), line);
        }
        seen.insert(key);
    }
};

void require(const std::set<std::string>& seen, std::initializer_list<const char*> keys) {
    for (const char* k : keys)
        if (!seen.count(k)) throw ConfigError(std::string("missing required key '") + k + "'", 0);
}

}  // namespace

Method parse_method(const std::string& s) {
    const std::string k = lower(trim(s));
    if (k == "algorithm1") return Method::algorithm1;
    if (k == "picard") return Method::picard;
    if (k == "linear") return Method::linear;
    throw std::invalid_argument("method is algorithm1, picard or linear");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::algorithm1: return "algorithm1";
        case Method::picard: return "picard";
        case Method::linear: return "linear";
    }
    return "?";
}

Polynomial parse_polynomial(const std::string& text) {
    Polynomial acc;
    acc.terms.push_back({0, 0, 1.0});
    int depth = 0;
    std::string cur;
    bool any = false;
    auto flush = [&] {
        acc = acc * parse_factor(cur);
        cur.clear();
        any = true;
    };
    for (char ch : text) {
        if (ch == '[' || ch == '(') ++depth;
        if (ch == ']' || ch == ')') --depth;
        if (depth < 0) throw std::invalid_argument("unbalanced brackets");
        if (ch == '*' && depth == 0) {
            flush();
        } else {
            cur += ch;
        }
    }
    if (depth != 0) throw std::invalid_argument("unbalanced brackets");
    flush();
    if (!any) throw std::invalid_argument("empty polynomial");
    return acc;
}

std::string format_polynomial(const Polynomial& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
        if (i) s += ", ";
        s += "(" + std::to_string(p.terms[i].a) + "," + std::to_string(p.terms[i].b) + "," + fmt(p.terms[i].c) + ")";
    }
    return s + "]";
}

ExperimentConfig parse_config(const std::string& text) {
    Parser ps;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[' && s.find('=') == std::string::npos) {
            if (s.back() != ']') throw ConfigError("malformed section header", line);
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line);
        if (section.empty()) throw ConfigError("key outside of any [section]", line);
        const std::string key = section + "." + trim(s.substr(0, eq));
        if (ps.seen.count(key)) throw ConfigError("duplicate key '" + key + "'", line);
        ps.set(key, s.substr(eq + 1), line);
    }
    require(ps.seen, {"problem.alpha", "problem.T", "actuator.kind", "gamma.side", "gamma.s0", "gamma.s1",
                      "omega_c.x0", "omega_c.x1", "omega_c.y0", "omega_c.y1", "target.z_d"});
    if (ps.cfg.F.kind == NonlinearTerm::Kind::square) ps.cfg.F = NonlinearTerm::square();
    ps.cfg.gamma.kind = Region::Kind::boundary;
    ps.cfg.omega_c.kind = Region::Kind::interior;
    ps.cfg.validate();
    return ps.cfg;
}

std::string extract_config_text(const std::string& text) {
    const std::string open = ">>> config\n", close = "<<< config";
    const auto a = text.find(open);
    if (a == std::string::npos) return text;
    const auto b = text.find(close, a);
    if (b == std::string::npos) throw ConfigError("manifest config block is not terminated", 0);
    return text.substr(a + open.size(), b - a - open.size());
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'", 0);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(extract_config_text(ss.str()));
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& m) { throw ConfigError(m, 0); };
    try {
        FractionalOrder a(alpha);
        (void)a;
    } catch (const std::exception& e) {
        fail(e.what());
    }
    if (!(T > 0.0) || !std::isfinite(T)) fail("T must be positive");
    if (K < 2) fail("K must be at least 2");
    if (mx < 1 || my < 1) fail("mx and my must be at least 1");
    if (!(epsilon > 0.0) || !(epsilon_u > 0.0) || !(picard_tol > 0.0)) fail("tolerances must be positive");
    if (n_max < 1 || max_sweeps < 1) fail("iteration limits must be positive");
    if (lambda_reg && !(*lambda_reg >= 0.0)) fail("lambda_reg must be non-negative");
    if (!(q >= 0.0 && q <= 1.0)) fail("q must lie in [0, 1]");
    if (fn_samples < 1) fail("fn_samples must be positive");
    if (!std::isfinite(target_scale)) fail("target scale must be finite");
    if (F.kind == NonlinearTerm::Kind::power && F.m != 2 && F.m != 3) fail("power nonlinearity needs m = 2 or 3");
    try {
        domain.validate();
        actuator.validate(domain);
        gamma.validate(domain);
        omega_c.validate(domain);
        check_gamma_in_omega(gamma, omega_c, domain);
    } catch (const std::exception& e) {
        fail(e.what());
    }
    for (int i = 0; i < domain.nx; ++i)
        for (int j = 0; j < domain.ny; ++j) {
            const double x = domain.x(i), y = domain.y(j);
            if (!std::isfinite(z_d(x, y)) || (d_s && !std::isfinite((*d_s)(x, y)))) {
                fail("target formula is not finite on the grid");
            }
        }
}

std::string format_config(const ExperimentConfig& c) {
    std::ostringstream os;
    const bool zonal = c.actuator.kind == Actuator::Kind::zonal;
    const char* fk = c.F.kind == NonlinearTerm::Kind::none     ? "none"
                     : c.F.kind == NonlinearTerm::Kind::square ? "square"
                                                               : "power";
    os << "[problem]\nname = " << c.name << "\nalpha = " << fmt(c.alpha) << "\nT = " << fmt(c.T)
       << "\nmethod = " << to_string(c.method) << "\nseed = " << c.seed << "\n\n";
    os << "[domain]\nlx = " << fmt(c.domain.lx) << "\nly = " << fmt(c.domain.ly) << "\nnx = " << c.domain.nx
       << "\nny = " << c.domain.ny << "\nmx = " << c.mx << "\nmy = " << c.my << "\nK = " << c.K << "\n\n";
    os << "[actuator]\nkind = " << (zonal ? "zonal" : "pointwise") << "\n";
    if (zonal) {
        os << "x0 = " << fmt(c.actuator.x0) << "\nx1 = " << fmt(c.actuator.x1) << "\ny0 = " << fmt(c.actuator.y0)
           << "\ny1 = " << fmt(c.actuator.y1) << "\n";
    } else {
        os << "b1 = " << fmt(c.actuator.b1) << "\nb2 = " << fmt(c.actuator.b2) << "\n";
    }
    os << "gain = " << fmt(c.actuator.gain) << "\n\n";
    os << "[gamma]\nside = " << to_string(c.gamma.side) << "\ns0 = " << fmt(c.gamma.s0) << "\ns1 = " << fmt(c.gamma.s1)
       << "\n\n";
    os << "[omega_c]\nx0 = " << fmt(c.omega_c.x0) << "\nx1 = " << fmt(c.omega_c.x1) << "\ny0 = " << fmt(c.omega_c.y0)
       << "\ny1 = " << fmt(c.omega_c.y1) << "\n\n";
    os << "[target]\nz_d = " << format_polynomial(c.z_d)
       << "\nd_s = " << (c.d_s ? format_polynomial(*c.d_s) : std::string("smoothstep"))
       << "\nscale = " << fmt(c.target_scale) << "\n\n";
    os << "[nonlinearity]\nkind = " << fk << "\nc = " << fmt(c.F.c) << "\nm = " << c.F.m << "\n\n";
    os << "[solver]\nepsilon = " << fmt(c.epsilon) << "\nepsilon_u = " << fmt(c.epsilon_u) << "\nn_max = " << c.n_max
       << "\nlambda_reg = " << (c.lambda_reg ? fmt(*c.lambda_reg) : std::string("auto"))
       << "\nstop_metric = " << (c.stop_metric == StopMetric::l2 ? "l2" : "image")
       << "\npicard_tol = " << fmt(c.picard_tol) << "\nmax_sweeps = " << c.max_sweeps
       << "\ndivergence_bound = " << fmt(c.divergence_bound) << "\n\n";
    os << "[diagnostics]\nq = " << fmt(c.q) << "\nfn_samples = " << c.fn_samples << "\n";
    if (!c.output_dir.empty()) os << "\n[output]\ndir = " << c.output_dir << "\n";
    return os.str();
}

void set_parameter(ExperimentConfig& c, const std::string& name, const std::string& value) {
    Parser ps;
    ps.cfg = c;
    static const std::map<std::string, std::string> alias = {
        {"alpha", "problem.alpha"}, {"T", "problem.T"},          {"K", "domain.K"},
        {"mx", "domain.mx"},        {"my", "domain.my"},         {"epsilon", "solver.epsilon"},
        {"lambda_reg", "solver.lambda_reg"}, {"method", "problem.method"}, {"seed", "problem.seed"},
        {"scale", "target.scale"},
    };
    const auto it = alias.find(name);
    const std::string key = it == alias.end() ? name : it->second;
    ps.set(key, value, 0);
    if (name == "mx") ps.set("domain.my", value, 0);  // one truncation knob for both axes
    ps.cfg.validate();
    c = ps.cfg;
}

namespace {

Polynomial scaled(Polynomial p, double s) {
    for (auto& t : p.terms) t.c *= s;
    return p;
}

}  // namespace

ControlProblem build_problem(const ExperimentConfig& c, Exec exec) {
    ControlProblem p;
    p.basis = build_basis(c.domain, c.mx, c.my);
    p.actuator = c.actuator;
    p.grid = TimeGrid(c.T, c.K);
    p.alpha = FractionalOrder(c.alpha);
    p.F = c.F;
    p.omega_c = c.omega_c;
    p.gamma = c.gamma;
    const Polynomial zd = scaled(c.z_d, c.target_scale);
    p.z_d = trace(Field::sample(c.domain, zd), c.gamma);
    p.d_s = c.d_s ? extend_target(scaled(*c.d_s, c.target_scale), c.gamma, c.omega_c, c.domain)
                  : extend_target(p.z_d, c.gamma, c.omega_c, c.domain);
    p.epsilon = c.epsilon;
    p.epsilon_u = c.epsilon_u;
    p.n_max = c.n_max;
    p.lambda_reg = c.lambda_reg;
    p.stop_metric = c.stop_metric;
    p.picard.picard_tol = c.picard_tol;
    p.picard.max_sweeps = c.max_sweeps;
    p.divergence_bound = c.divergence_bound;
    p.exec = exec;
    return p;
}

}  // namespace fracctl
