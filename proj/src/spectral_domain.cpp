#include "fracctl/spectral_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fracctl {

using std::numbers::pi;

namespace {

constexpr double kNodeTol = 1e-9;

std::string fmt_interval(double a, double b) {
    std::ostringstream os;
    os << "[" << a << ", " << b << "]";
    return os.str();
}

// Grid indices k with a <= k h <= b, tolerant to round-off in the bounds.
std::vector<int> nodes_in(double a, double b, double h, int n) {
    std::vector<int> out;
    for (int k = 0; k < n; ++k) {
        const double s = k * h;
        if (s >= a - kNodeTol * h && s <= b + kNodeTol * h) out.push_back(k);
    }
    return out;
}

bool near(double a, double b, double scale) { return std::abs(a - b) <= kNodeTol * scale; }

// \int_a^b cos_factor(i, len, s) ds
double cos_integral(int i, double len, double a, double b) {
    if (i == 0) return (b - a) / std::sqrt(len);
    const double k = i * pi / len;
    return std::sqrt(2.0 / len) * (std::sin(k * b) - std::sin(k * a)) / k;
}

double smoothstep(double d) {
    d = std::clamp(d, 0.0, 1.0);
    return d * d * (3.0 - 2.0 * d);
}

}  // namespace

void RectDomain::validate() const {
    if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("domain lengths must be positive");
    if (nx < 8 || ny < 8) throw std::invalid_argument("grid needs at least 8 nodes per axis");
}

Eigen::VectorXd trapezoid_weights(int n, double h) {
    if (n == 1) return Eigen::VectorXd::Constant(1, h);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n, h);
    w(0) = w(n - 1) = 0.5 * h;
    return w;
}

double SpectralBasis::cos_factor(int i, double len, double s) {
    if (i == 0) return 1.0 / std::sqrt(len);
    return std::sqrt(2.0 / len) * std::cos(i * pi * s / len);
}

SpectralBasis::SpectralBasis(const RectDomain& domain, int mx, int my) : domain_(domain), mx_(mx), my_(my) {
    domain_.validate();
    if (mx < 1 || my < 1) throw std::invalid_argument("spectral truncation must be at least 1 x 1");
    lambda_.resize(std::size_t(mx) * my);
    for (int i = 0; i < mx; ++i) {
        for (int j = 0; j < my; ++j) {
            const double kx = i * pi / domain_.lx, ky = j * pi / domain_.ly;
            lambda_[index(i, j)] = kx * kx + ky * ky;
        }
    }
    phix_.resize(domain_.nx, mx);
    phiy_.resize(domain_.ny, my);
    for (int k = 0; k < domain_.nx; ++k)
        for (int i = 0; i < mx; ++i) phix_(k, i) = cos_factor(i, domain_.lx, domain_.x(k));
    for (int k = 0; k < domain_.ny; ++k)
        for (int j = 0; j < my; ++j) phiy_(k, j) = cos_factor(j, domain_.ly, domain_.y(k));
    wx_ = trapezoid_weights(domain_.nx, domain_.dx());
    wy_ = trapezoid_weights(domain_.ny, domain_.dy());
}

SpectralBasis build_basis(const RectDomain& domain, int mx, int my) { return SpectralBasis(domain, mx, my); }

double SpectralBasis::eval(int m, double x, double y) const {
    const Mode md = mode(m);
    return cos_factor(md.i, domain_.lx, x) * cos_factor(md.j, domain_.ly, y);
}

Eigen::VectorXd SpectralBasis::to_spectral(const Eigen::MatrixXd& nodal) const {
    if (nodal.rows() != domain_.nx || nodal.cols() != domain_.ny) {
        throw std::invalid_argument("to_spectral: nodal array does not match the grid");
    }
    const Eigen::MatrixXd c = phix_.transpose() * wx_.asDiagonal() * nodal * wy_.asDiagonal() * phiy_;
    Eigen::VectorXd out(size());
    for (int i = 0; i < mx_; ++i)
        for (int j = 0; j < my_; ++j) out(index(i, j)) = c(i, j);
    return out;
}

Eigen::MatrixXd SpectralBasis::from_spectral(const Eigen::VectorXd& coeffs) const {
    if (coeffs.size() != size()) throw std::invalid_argument("from_spectral: coefficient count mismatch");
    Eigen::MatrixXd c(mx_, my_);
    for (int i = 0; i < mx_; ++i)
        for (int j = 0; j < my_; ++j) c(i, j) = coeffs(index(i, j));
    return phix_ * c * phiy_.transpose();
}

Field::Field(const RectDomain& domain, Eigen::MatrixXd values) : domain_(domain), values_(std::move(values)) {
    if (values_.rows() != domain_.nx || values_.cols() != domain_.ny) {
        throw std::invalid_argument("Field: value array does not match the grid");
    }
}

Field Field::zeros(const RectDomain& domain) {
    return Field(domain, Eigen::MatrixXd::Zero(domain.nx, domain.ny));
}

const Eigen::VectorXd& Field::coefficients(const SpectralBasis& basis) const {
    // a basis is determined by its grid and truncation, so those key the cache
    if (!coeffs_ || cached_mx_ != basis.mx() || cached_my_ != basis.my()) {
        coeffs_ = basis.to_spectral(values_);
        cached_mx_ = basis.mx();
        cached_my_ = basis.my();
    }
    return *coeffs_;
}

double Field::l2_norm() const {
    const Eigen::VectorXd wx = trapezoid_weights(domain_.nx, domain_.dx());
    const Eigen::VectorXd wy = trapezoid_weights(domain_.ny, domain_.dy());
    return std::sqrt((wx.transpose() * values_.cwiseAbs2() * wy).value());
}

Side parse_side(const std::string& s) {
    if (s == "left") return Side::left;
    if (s == "right") return Side::right;
    if (s == "bottom") return Side::bottom;
    if (s == "top") return Side::top;
    throw std::invalid_argument("unknown boundary side '" + s + "' (left, right, bottom, top)");
}

std::string to_string(Side s) {
    switch (s) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::bottom: return "bottom";
        case Side::top: return "top";
    }
    return "?";
}

Region Region::rect(double x0, double x1, double y0, double y1) {
    Region r;
    r.kind = Kind::interior;
    r.x0 = x0;
    r.x1 = x1;
    r.y0 = y0;
    r.y1 = y1;
    return r;
}

Region Region::segment(Side side, double s0, double s1) {
    Region r;
    r.kind = Kind::boundary;
    r.side = side;
    r.s0 = s0;
    r.s1 = s1;
    return r;
}

void Region::validate(const RectDomain& d) const {
    const double tol = kNodeTol * std::max(d.lx, d.ly);
    if (kind == Kind::interior) {
        if (!(x0 <= x1) || !(y0 <= y1) || x0 < -tol || y0 < -tol || x1 > d.lx + tol || y1 > d.ly + tol) {
            throw GeometryError("interior region " + fmt_interval(x0, x1) + " x " + fmt_interval(y0, y1) +
                                " is not contained in the domain");
        }
    } else {
        const double len = (side == Side::left || side == Side::right) ? d.ly : d.lx;
        if (!(s0 <= s1) || s0 < -tol || s1 > len + tol) {
            throw GeometryError("boundary segment " + fmt_interval(s0, s1) + " on side " + to_string(side) +
                                " is not contained in the boundary");
        }
    }
}

Eigen::VectorXd SubgridField::flat() const { return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size()); }

Eigen::VectorXd SubgridField::quadrature_weights() const {
    const Eigen::VectorXd wx = trapezoid_weights(int(ix.size()), dx);
    const Eigen::VectorXd wy = trapezoid_weights(int(iy.size()), dy);
    Eigen::VectorXd w(ix.size() * iy.size());
    for (std::size_t b = 0; b < iy.size(); ++b)
        for (std::size_t a = 0; a < ix.size(); ++a) w(a + b * ix.size()) = wx(a) * wy(b);
    return w;
}

double SubgridField::l2_norm() const { return std::sqrt(quadrature_weights().dot(flat().cwiseAbs2())); }

Eigen::VectorXd BoundaryProfile::quadrature_weights() const { return trapezoid_weights(size(), ds); }

double BoundaryProfile::l2_norm() const {
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
    return std::sqrt(quadrature_weights().dot(v.cwiseAbs2()));
}

SubgridField subgrid_nodes(const RectDomain& d, const Region& omega) {
    if (omega.kind != Region::Kind::interior) throw std::invalid_argument("restriction needs an interior region");
    omega.validate(d);
    SubgridField s;
    s.ix = nodes_in(omega.x0, omega.x1, d.dx(), d.nx);
    s.iy = nodes_in(omega.y0, omega.y1, d.dy(), d.ny);
    if (s.ix.empty() || s.iy.empty()) {
        throw GeometryError("region " + fmt_interval(omega.x0, omega.x1) + " x " +
                            fmt_interval(omega.y0, omega.y1) + " contains no grid nodes");
    }
    s.dx = d.dx();
    s.dy = d.dy();
    s.values = Eigen::MatrixXd::Zero(s.ix.size(), s.iy.size());
    return s;
}

SubgridField restrict_to(const Field& field, const Region& omega) {
    SubgridField s = subgrid_nodes(field.domain(), omega);
    for (std::size_t a = 0; a < s.ix.size(); ++a)
        for (std::size_t b = 0; b < s.iy.size(); ++b) s.values(a, b) = field(s.ix[a], s.iy[b]);
    return s;
}

BoundaryProfile boundary_nodes(const RectDomain& d, const Region& gamma) {
    if (gamma.kind != Region::Kind::boundary) throw std::invalid_argument("trace needs a boundary region");
    gamma.validate(d);
    BoundaryProfile p;
    p.side = gamma.side;
    const bool vertical = gamma.side == Side::left || gamma.side == Side::right;
    const double h = vertical ? d.dy() : d.dx();
    const int n = vertical ? d.ny : d.nx;
    p.ds = h;
    for (int k : nodes_in(gamma.s0, gamma.s1, h, n)) {
        switch (gamma.side) {
            case Side::left: p.nodes.emplace_back(0, k); break;
            case Side::right: p.nodes.emplace_back(d.nx - 1, k); break;
            case Side::bottom: p.nodes.emplace_back(k, 0); break;
            case Side::top: p.nodes.emplace_back(k, d.ny - 1); break;
        }
        p.s.push_back(k * h);
    }
    if (p.nodes.empty()) throw GeometryError("boundary segment contains no grid nodes");
    p.values.assign(p.nodes.size(), 0.0);
    return p;
}

BoundaryProfile trace(const Field& field, const Region& gamma) {
    BoundaryProfile p = boundary_nodes(field.domain(), gamma);
    for (std::size_t k = 0; k < p.nodes.size(); ++k) p.values[k] = field(p.nodes[k].first, p.nodes[k].second);
    return p;
}

void check_gamma_in_omega(const Region& gamma, const Region& omega_c, const RectDomain& d) {
    if (gamma.kind != Region::Kind::boundary || omega_c.kind != Region::Kind::interior) {
        throw GeometryError("expected a boundary segment and an interior region");
    }
    gamma.validate(d);
    omega_c.validate(d);
    const double scale = std::max(d.lx, d.ly);
    bool face = false;
    double lo = 0, hi = 0;
    switch (gamma.side) {
        case Side::left: face = near(omega_c.x0, 0.0, scale), lo = omega_c.y0, hi = omega_c.y1; break;
        case Side::right: face = near(omega_c.x1, d.lx, scale), lo = omega_c.y0, hi = omega_c.y1; break;
        case Side::bottom: face = near(omega_c.y0, 0.0, scale), lo = omega_c.x0, hi = omega_c.x1; break;
        case Side::top: face = near(omega_c.y1, d.ly, scale), lo = omega_c.x0, hi = omega_c.x1; break;
    }
    const double tol = kNodeTol * scale;
    if (!face || gamma.s0 < lo - tol || gamma.s1 > hi + tol) {
        throw GeometryError("boundary segment " + fmt_interval(gamma.s0, gamma.s1) + " on side " +
                            to_string(gamma.side) + " is not part of the boundary of omega_c " +
                            fmt_interval(omega_c.x0, omega_c.x1) + " x " + fmt_interval(omega_c.y0, omega_c.y1));
    }
}

double Polynomial::operator()(double x, double y) const {
    double s = 0.0;
    for (const auto& t : terms) s += t.c * std::pow(x, t.a) * std::pow(y, t.b);
    return s;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial p;
    for (const auto& l : terms)
        for (const auto& r : o.terms) p.terms.push_back({l.a + r.a, l.b + r.b, l.c * r.c});
    return p;
}

SubgridField extend_target(const BoundaryProfile& zd, const Region& gamma, const Region& omega_c,
                           const RectDomain& d, ExtensionProfile) {
    check_gamma_in_omega(gamma, omega_c, d);
    if (zd.size() == 0) throw std::invalid_argument("empty boundary profile");
    SubgridField s = subgrid_nodes(d, omega_c);
    const bool vertical = gamma.side == Side::left || gamma.side == Side::right;
    const double depth = vertical ? omega_c.x1 - omega_c.x0 : omega_c.y1 - omega_c.y0;
    for (std::size_t a = 0; a < s.ix.size(); ++a) {
        for (std::size_t b = 0; b < s.iy.size(); ++b) {
            const int i = s.ix[a], j = s.iy[b];
            double dist = 0;
            int tangential = 0;
            switch (gamma.side) {
                case Side::left: dist = d.x(i); tangential = j; break;
                case Side::right: dist = d.lx - d.x(i); tangential = j; break;
                case Side::bottom: dist = d.y(j); tangential = i; break;
                case Side::top: dist = d.ly - d.y(j); tangential = i; break;
            }
            // nearest node of gamma in the tangential direction (constant beyond its ends)
            const int first = vertical ? zd.nodes.front().second : zd.nodes.front().first;
            const int k = std::clamp(tangential - first, 0, zd.size() - 1);
            const double p = depth > 0.0 ? 1.0 - smoothstep(dist / depth) : 1.0;
            s.values(a, b) = dist == 0.0 ? zd.values[k] : p * zd.values[k];
        }
    }
    return s;
}

SubgridField extend_target(const Polynomial& ds, const Region& gamma, const Region& omega_c, const RectDomain& d) {
    check_gamma_in_omega(gamma, omega_c, d);
    SubgridField s = subgrid_nodes(d, omega_c);
    for (std::size_t a = 0; a < s.ix.size(); ++a)
        for (std::size_t b = 0; b < s.iy.size(); ++b) s.values(a, b) = ds(d.x(s.ix[a]), d.y(s.iy[b]));
    return s;
}

Actuator Actuator::zonal(double x0, double x1, double y0, double y1, double gain) {
    Actuator a;
    a.kind = Kind::zonal;
    a.x0 = x0;
    a.x1 = x1;
    a.y0 = y0;
    a.y1 = y1;
    a.gain = gain;
    return a;
}

Actuator Actuator::pointwise(double b1, double b2, double gain) {
    Actuator a;
    a.kind = Kind::pointwise;
    a.b1 = b1;
    a.b2 = b2;
    a.gain = gain;
    return a;
}

void Actuator::validate(const RectDomain& d) const {
    if (!std::isfinite(gain)) throw std::invalid_argument("actuator gain must be finite");
    if (kind == Kind::zonal) {
        Region::rect(x0, x1, y0, y1).validate(d);
    } else if (!(b1 > 0.0 && b1 < d.lx && b2 > 0.0 && b2 < d.ly)) {
        throw GeometryError("pointwise actuator location must lie inside the domain");
    }
}

Eigen::VectorXd actuator_coefficients(const Actuator& act, const SpectralBasis& basis) {
    const RectDomain& d = basis.domain();
    act.validate(d);
    Eigen::VectorXd b(basis.size());
    for (int m = 0; m < basis.size(); ++m) {
        const Mode md = basis.mode(m);
        if (act.kind == Actuator::Kind::zonal) {
            b(m) = act.gain * cos_integral(md.i, d.lx, act.x0, act.x1) * cos_integral(md.j, d.ly, act.y0, act.y1);
        } else {
            b(m) = act.gain * basis.eval(m, act.b1, act.b2);
        }
    }
    return b;
}

}  // namespace fracctl
