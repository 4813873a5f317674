#pragma once

// Rectangle geometry, the Neumann cosine eigenbasis of the Laplacian, grid <->
// spectral transforms, restriction to interior rectangles, boundary traces,
// target extension and actuator profiles.

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracctl {

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RectDomain {
    double lx = 1.0, ly = 1.0;
    int nx = 51, ny = 51;

    void validate() const;
    double dx() const { return lx / (nx - 1); }
    double dy() const { return ly / (ny - 1); }
    double x(int i) const { return i * dx(); }
    double y(int j) const { return j * dy(); }
};

struct Mode {
    int i, j;
};

/// Modes are stored in lexicographic (i, j) order: index m = i * my + j.
class SpectralBasis {
public:
    SpectralBasis() = default;
    SpectralBasis(const RectDomain& domain, int mx, int my);

    const RectDomain& domain() const { return domain_; }
    int mx() const { return mx_; }
    int my() const { return my_; }
    int size() const { return mx_ * my_; }
    Mode mode(int m) const { return {m / my_, m % my_}; }
    int index(int i, int j) const { return i * my_ + j; }
    const std::vector<double>& eigenvalues() const { return lambda_; }

    /// Normalized 1-D factors sampled on the grid: phi_x(node, i), phi_y(node, j).
    const Eigen::MatrixXd& phi_x() const { return phix_; }
    const Eigen::MatrixXd& phi_y() const { return phiy_; }

    double eval(int m, double x, double y) const;
    static double cos_factor(int i, double len, double s);

    /// Nodal (nx x ny) values -> coefficients by trapezoid-weighted projection.
    Eigen::VectorXd to_spectral(const Eigen::MatrixXd& nodal) const;
    Eigen::MatrixXd from_spectral(const Eigen::VectorXd& coeffs) const;

private:
    RectDomain domain_;
    int mx_ = 0, my_ = 0;
    std::vector<double> lambda_;
    Eigen::MatrixXd phix_, phiy_;
    Eigen::VectorXd wx_, wy_;
};

SpectralBasis build_basis(const RectDomain& domain, int mx, int my);

/// Composite trapezoid weights on n uniformly spaced nodes with spacing h.
Eigen::VectorXd trapezoid_weights(int n, double h);

/// State snapshot: nodal values with a cached coefficient view.
class Field {
public:
    Field() = default;
    Field(const RectDomain& domain, Eigen::MatrixXd values);
    static Field zeros(const RectDomain& domain);
    template <class Fn>
    static Field sample(const RectDomain& d, Fn&& fn) {
        Eigen::MatrixXd v(d.nx, d.ny);
        for (int i = 0; i < d.nx; ++i)
            for (int j = 0; j < d.ny; ++j) v(i, j) = fn(d.x(i), d.y(j));
        return Field(d, std::move(v));
    }

    const RectDomain& domain() const { return domain_; }
    const Eigen::MatrixXd& values() const { return values_; }
    double operator()(int i, int j) const { return values_(i, j); }
    const Eigen::VectorXd& coefficients(const SpectralBasis& basis) const;
    double l2_norm() const;

private:
    RectDomain domain_;
    Eigen::MatrixXd values_;
    mutable std::optional<Eigen::VectorXd> coeffs_;
    mutable int cached_mx_ = 0, cached_my_ = 0;
};

enum class Side { left, right, bottom, top };
Side parse_side(const std::string& s);
std::string to_string(Side s);

struct Region {
    enum class Kind { interior, boundary };
    Kind kind = Kind::interior;
    // interior: [x0, x1] x [y0, y1]
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    // boundary: side plus interval [s0, s1] in the tangential coordinate
    Side side = Side::left;
    double s0 = 0, s1 = 0;

    static Region rect(double x0, double x1, double y0, double y1);
    static Region segment(Side side, double s0, double s1);
    void validate(const RectDomain& d) const;
};

/// Nodal values on the grid nodes inside an interior rectangle.
struct SubgridField {
    std::vector<int> ix, iy;  // grid indices along x and y
    Eigen::MatrixXd values;   // ix.size() x iy.size()
    double dx = 0, dy = 0;

    int size() const { return int(values.size()); }
    /// Column-major flattening: dof = a + b * ix.size().
    Eigen::VectorXd flat() const;
    Eigen::VectorXd quadrature_weights() const;
    double l2_norm() const;
};

/// Samples along a boundary segment, ordered by the tangential coordinate.
struct BoundaryProfile {
    Side side = Side::left;
    std::vector<std::pair<int, int>> nodes;  // grid (i, j)
    std::vector<double> s;                   // tangential coordinate
    std::vector<double> values;
    double ds = 0;

    int size() const { return int(values.size()); }
    Eigen::VectorXd quadrature_weights() const;
    double l2_norm() const;
};

SubgridField restrict_to(const Field& field, const Region& omega);
SubgridField subgrid_nodes(const RectDomain& d, const Region& omega);
BoundaryProfile trace(const Field& field, const Region& gamma);
BoundaryProfile boundary_nodes(const RectDomain& d, const Region& gamma);

/// Throws GeometryError unless gamma lies on the boundary of omega_c.
void check_gamma_in_omega(const Region& gamma, const Region& omega_c, const RectDomain& d);

/// Sum of c * x^a * y^b.
struct Monomial {
    int a = 0, b = 0;
    double c = 0;
};
struct Polynomial {
    std::vector<Monomial> terms;
    double operator()(double x, double y) const;
    Polynomial operator*(const Polynomial& o) const;
};

enum class ExtensionProfile { smoothstep };

/// Extension of a boundary profile into omega_c: zd at each tangential
/// position times p(d), p = 1 on gamma, decreasing by a cubic smoothstep to 0
/// on the opposite face of omega_c.
SubgridField extend_target(const BoundaryProfile& zd, const Region& gamma, const Region& omega_c,
                           const RectDomain& d, ExtensionProfile profile = ExtensionProfile::smoothstep);
/// Extension given in closed form.
SubgridField extend_target(const Polynomial& ds, const Region& gamma, const Region& omega_c, const RectDomain& d);

struct Actuator {
    enum class Kind { zonal, pointwise };
    Kind kind = Kind::zonal;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // zonal support D
    double b1 = 0, b2 = 0;                  // pointwise location
    double gain = 1.0;

    static Actuator zonal(double x0, double x1, double y0, double y1, double gain = 1.0);
    static Actuator pointwise(double b1, double b2, double gain = 1.0);
    void validate(const RectDomain& d) const;
};

/// b_m = <B 1, e_m>.
Eigen::VectorXd actuator_coefficients(const Actuator& act, const SpectralBasis& basis);

}  // namespace fracctl
