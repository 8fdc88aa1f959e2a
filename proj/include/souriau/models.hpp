#pragma once

// Catalog of concrete Hamiltonian actions on surfaces: SO(3) and SO(2,1)
// coadjoint orbits, the Poincare disk and half-plane, the linear symplectic
// plane and the Euclidean displacement plane, with their closed-form
// thermodynamics and the maps relating them.

#include "souriau/gibbs.hpp"
#include "souriau/orbits.hpp"

#include <complex>
#include <map>

namespace souriau {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Hyperbolic plane models and Mobius maps.

/// A point of the Poincare disk (|w| < 1) or half-plane (im > 0).
struct ComplexPoint {
    double re = 0.0;
    double im = 0.0;

    Complex value() const { return {re, im}; }
    static ComplexPoint of(Complex z) { return {z.real(), z.imag()}; }
};

inline bool in_disk(const ComplexPoint& w) { return w.re * w.re + w.im * w.im < 1.0; }
inline bool in_half_plane(const ComplexPoint& x) { return x.im > 0.0; }

/// Point of the Riemann sphere C u {inf}.
struct ExtComplex {
    Complex z{0.0, 0.0};
    bool infinite = false;

    static ExtComplex inf() { return {{0.0, 0.0}, true}; }
};

using Mat2c = Eigen::Matrix2cd;
using Mat2 = Eigen::Matrix2d;

inline ExtComplex mobius(const Mat2c& A, const ExtComplex& w) {
    const Complex a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    if (a * d - b * c == Complex(0.0, 0.0)) throw std::invalid_argument("mobius: singular matrix");
    if (w.infinite) return c != Complex(0.0, 0.0) ? ExtComplex{a / c, false} : ExtComplex::inf();
    const Complex den = c * w.z + d;
    if (den == Complex(0.0, 0.0)) return ExtComplex::inf();
    return {(a * w.z + b) / den, false};
}

inline Complex mobius(const Mat2c& A, Complex w) {
    const ExtComplex r = mobius(A, ExtComplex{w, false});
    if (r.infinite) throw std::domain_error("mobius: image is the point at infinity");
    return r.z;
}

/// The Cayley matrix M = [[-i, i], [1, 1]] mapping the disk onto the half-plane.
inline Mat2c cayley_matrix() {
    Mat2c m;
    m << Complex(0, -1), Complex(0, 1), Complex(1, 0), Complex(1, 0);
    return m;
}

inline ComplexPoint cayley(const ComplexPoint& w) { return ComplexPoint::of(mobius(cayley_matrix(), w.value())); }

inline ComplexPoint cayley_inv(const ComplexPoint& xi) {
    const Complex x = xi.value(), i(0.0, 1.0);
    return ComplexPoint::of((i - x) / (i + x));
}

/// Element [[a, b], [conj b, conj a]] of SU(1,1).
class SU11Element {
public:
    SU11Element(Complex a, Complex b, double tol = 1e-10) : a_(a), b_(b) {
        const double d = std::norm(a) - std::norm(b);
        if (!(std::abs(d - 1.0) <= tol * (1.0 + std::norm(a))))
            throw std::invalid_argument("SU11Element: |a|^2 - |b|^2 must equal 1");
    }

    static SU11Element identity() { return {1.0, 0.0}; }

    /// Random element: a = sqrt(1 + |b|^2) e^{it}.
    static SU11Element random(Rng& rng, double spread = 0.7) {
        const Complex b(spread * rng.normal(), spread * rng.normal());
        const double t = 2.0 * std::numbers::pi * rng.uniform();
        return {std::sqrt(1.0 + std::norm(b)) * std::polar(1.0, t), b};
    }

    Complex a() const { return a_; }
    Complex b() const { return b_; }

    Mat2c matrix() const {
        Mat2c m;
        m << a_, b_, std::conj(b_), std::conj(a_);
        return m;
    }

    SU11Element operator*(const SU11Element& o) const {
        const Mat2c p = matrix() * o.matrix();
        return {p(0, 0), p(0, 1)};
    }

    SU11Element operator-() const { return {-a_, -b_}; }

private:
    Complex a_, b_;
};

/// Homomorphism SU(1,1) -> SO(2,1) with kernel {1, -1}.
inline Mat3 phi_hom(const SU11Element& A) {
    const Complex a = A.a(), b = A.b(), ac = std::conj(a), bc = std::conj(b), i(0.0, 1.0);
    const Complex a2 = a * a, ac2 = ac * ac, b2 = b * b, bc2 = bc * bc;
    Eigen::Matrix3cd m;
    m << (a2 + ac2 + (b2 + bc2)) / 2.0, -(a2 - ac2 - (b2 - bc2)) / (2.0 * i), -(a * b + ac * bc),
        (a2 - ac2 + (b2 - bc2)) / (2.0 * i), (a2 + ac2 - (b2 + bc2)) / 2.0, -(a * b - ac * bc) / i,
        -(a * bc + ac * b), -(ac * b - a * bc) / i, a * ac + b * bc;
    return m.real();
}

/// Isomorphism SU(1,1) -> SL(2, R), conjugation by the Cayley matrix.
inline Mat2 sigma_iso(const SU11Element& A) {
    const Complex a = A.a(), b = A.b();
    Mat2 s;
    s << a.real() - b.real(), a.imag() + b.imag(),
        -a.imag() + b.imag(), a.real() + b.real();
    return s;
}

inline bool is_sl2(const Mat2& m, double tol = 1e-10) { return std::abs(m.determinant() - 1.0) <= tol; }

/// Stereographic projection of the upper pseudo-sphere of radius R onto the unit disk.
inline ComplexPoint psi_R(const Vec3& r, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("psi_R: R must be positive");
    if (!on_orbit(OrbitSpec::pseudo_sphere(1, R), r)) throw std::invalid_argument("psi_R: point not on P_R+");
    const double d = R + std::sqrt(R * R + r.x() * r.x() + r.y() * r.y());
    return {r.x() / d, r.y() / d};
}

inline Vec3 psi_R_inv(const ComplexPoint& w, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("psi_R_inv: R must be positive");
    if (!in_disk(w)) throw std::invalid_argument("psi_R_inv: point outside the unit disk");
    const double s = w.re * w.re + w.im * w.im;
    const double k = R / (1.0 - s);
    return {2.0 * k * w.re, 2.0 * k * w.im, k * (1.0 + s)};
}

/// Moment map of the half-plane as a vector of F.
inline Vec3 half_plane_moment(const ComplexPoint& xi, double R) {
    if (!in_half_plane(xi)) throw std::invalid_argument("half_plane_moment: point outside the half-plane");
    const double s = xi.re * xi.re + xi.im * xi.im, k = R / (2.0 * xi.im);
    return {k * (1.0 - s), k * 2.0 * xi.re, k * (1.0 + s)};
}

// ---------------------------------------------------------------------------
// Closed forms.

namespace detail {

/// 1 - x coth x, accurate near 0.
inline double one_minus_xcoth(double x) {
    const double x2 = x * x;
    if (std::abs(x) < 0.1)
        return -x2 * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0 - x2 * (1.0 / 4725.0 - x2 * 2.0 / 93555.0))));
    return 1.0 - x / std::tanh(x);
}

}  // namespace detail

inline std::optional<ThermoReport> sphere_closed_form(double R, const AlgVec& beta) {
    const Vec3 bv = to_vec3(beta);
    const double b = bv.norm(), x = R * b;
    ThermoReport r;
    r.logP = std::log(4.0 * std::numbers::pi * R) + (x > 0.0 ? std::log(std::sinh(x) / x) : 0.0);
    if (x > 20.0) r.logP = std::log(2.0 * std::numbers::pi / b) + x + std::log1p(-std::exp(-2.0 * x));
    r.P = std::exp(r.logP);
    // h = (1 - x coth x) / b^2 and h'(b) / b
    double h, hp_over_b;
    if (x < 0.1) {
        const double R2 = R * R, x2 = x * x;
        h = -R2 * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0 - x2 * (1.0 / 4725.0 - x2 * 2.0 / 93555.0))));
        hp_over_b = R2 * R2 * (2.0 / 45.0 - x2 * (8.0 / 945.0 - x2 * (6.0 / 4725.0 - x2 * 16.0 / 93555.0)));
    } else {
        const double c = 1.0 / std::tanh(x);
        h = detail::one_minus_xcoth(x) / (b * b);
        const double dxc = R * c - R * x * (c * c - 1.0);  // d/db (x coth x)
        hp_over_b = (-dxc / (b * b) - 2.0 * detail::one_minus_xcoth(x) / (b * b * b)) / b;
    }
    r.E_J = h * beta;
    r.S = r.logP + r.E_J.dot(beta);
    r.Gamma = -h * AlgMat::Identity(3, 3) - hp_over_b * beta * beta.transpose();
    r.converged = true;
    r.est_rel_err = 0.0;
    return r;
}

/// Both sheets of the pseudo-sphere; sheet = +1 (upper) needs timelike-past beta, -1 timelike-future.
inline std::optional<ThermoReport> pseudo_sphere_closed_form(int sheet, double R, const AlgVec& beta) {
    const SpaceConfig cfg = SpaceConfig::minkowski();
    const Vec3 bv = to_vec3(beta);
    const CausalClass want = sheet > 0 ? CausalClass::timelike_past : CausalClass::timelike_future;
    if (classify(bv, cfg) != want) return std::nullopt;
    const double n = std::sqrt(-dot(bv, bv, cfg));
    const double k = (1.0 + R * n) / (n * n), kp = -2.0 / (n * n * n) - R / (n * n);
    const AlgVec eb = to_alg(scal(bv, cfg));
    ThermoReport r;
    r.logP = std::log(2.0 * std::numbers::pi / n) - n * R;
    r.P = std::exp(r.logP);
    r.E_J = -k * eb;
    r.S = 1.0 + std::log(2.0 * std::numbers::pi / n);
    AlgMat eta = AlgMat::Identity(3, 3);
    eta(2, 2) = -1.0;
    r.Gamma = k * eta - (kp / n) * eb * eb.transpose();
    r.converged = true;
    return r;
}

/// Euclidean displacement plane, Omega = {beta_r > 0}.
inline std::optional<ThermoReport> e2_closed_form(const AlgVec& beta) {
    const double br = beta[0], bx = beta[1], by = beta[2];
    if (!(br > 0.0)) return std::nullopt;
    const double qq = bx * bx + by * by;
    ThermoReport r;
    r.logP = std::log(2.0 * std::numbers::pi / br) + qq / (2.0 * br);
    r.P = std::exp(r.logP);
    r.E_J = make_alg({1.0 / br + qq / (2.0 * br * br), -bx / br, -by / br});
    r.S = 1.0 + std::log(2.0 * std::numbers::pi / br);
    r.Gamma = AlgMat::Zero(3, 3);
    r.Gamma(0, 0) = 1.0 / (br * br) + qq / (br * br * br);
    r.Gamma(0, 1) = r.Gamma(1, 0) = -bx / (br * br);
    r.Gamma(0, 2) = r.Gamma(2, 0) = -by / (br * br);
    r.Gamma(1, 1) = r.Gamma(2, 2) = 1.0 / br;
    r.converged = true;
    return r;
}

/// Values printed in the literature for the displacement plane, kept for the discrepancy report.
struct E2PrintedValues {
    double P;
    double S;
    AlgVec E_J;
};

inline E2PrintedValues e2_printed(const AlgVec& beta) {
    const double br = beta[0], bx = beta[1], by = beta[2], qq = bx * bx + by * by;
    return {std::numbers::pi * qq / (br * br), std::log(std::numbers::pi) + std::log(qq) - std::log(br * br),
            make_alg({2.0 / br, -2.0 * bx / qq, -2.0 * by / qq})};
}

/// Printed Gibbs densities on the disk and half-plane for beta = -|beta| e_z.
inline double disk_printed_density(double R, double abs_beta, const ComplexPoint& w) {
    const double s = w.re * w.re + w.im * w.im;
    return abs_beta / (2.0 * std::numbers::pi) * std::exp(-2.0 * R * abs_beta / (1.0 - s));
}

inline double half_plane_printed_density(double R, double abs_beta, const ComplexPoint& xi) {
    const double t = (1.0 + xi.im) * (1.0 + xi.im) + xi.re * xi.re;
    return abs_beta / (2.0 * std::numbers::pi) * std::exp(-R * abs_beta * t / (2.0 * xi.im));
}

// ---------------------------------------------------------------------------
// Samplers.

namespace detail {

/// Draws on a sphere or pseudo-sphere sheet from exp(-r.beta) dz dphi.
inline std::vector<Vec3> sample_orbit_points(const OrbitSpec& spec, const Vec3& beta, std::size_t n,
                                             std::uint64_t seed) {
    const SpaceConfig cfg = spec.config();
    const double R = spec.radius();
    Rng rng(seed);
    std::vector<Vec3> out;
    out.reserve(n);
    Mat3 g = Mat3::Identity();
    double rate = 0.0;  // density exp(-rate * z') in the frame where beta is along e_z
    if (spec.kind() == OrbitKind::sphere) {
        rate = beta.norm();
        if (rate > 0.0) g = frame_to(beta / rate, cfg);
    } else {
        const double nrm = std::sqrt(-dot(beta, beta, cfg));
        const double sign = spec.kind() == OrbitKind::pseudo_sphere_upper ? -1.0 : 1.0;
        g = frame_to(sign * beta / nrm, cfg);  // future unit vector
        rate = nrm;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform_open0();
        double z;
        switch (spec.kind()) {
        case OrbitKind::sphere: {
            // z + R in [0, 2R] with density proportional to exp(-rate (z + R))
            const double v = 1.0 - u;
            z = (rate > 0.0 ? -std::log1p(v * std::expm1(-2.0 * rate * R)) / rate : 2.0 * R * v) - R;
            break;
        }
        case OrbitKind::pseudo_sphere_upper: z = R - std::log(u) / rate; break;
        case OrbitKind::pseudo_sphere_lower: z = -R + std::log(u) / rate; break;
        default: throw std::invalid_argument("sample: unsupported orbit");
        }
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        out.push_back(g * chart_to_point(spec, {std::clamp(z, spec.z_range().first, spec.z_range().second), phi}));
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Model constructors.

namespace detail {

inline void require_radius(double R, const char* who) {
    if (!(R > 0.0 && std::isfinite(R))) throw std::invalid_argument(std::string(who) + ": R must be positive");
}

inline Mat3 so_exp(const AlgVec& x, double t, SpaceConfig cfg) { return group_exp(to_vec3(x), t, cfg); }

}  // namespace detail

inline GibbsModel make_orbit_model(const OrbitSpec& spec) {
    if (!spec.two_dimensional()) throw std::invalid_argument("make_orbit_model: the origin carries no Gibbs state");
    const SpaceConfig cfg = spec.config();
    const double R = spec.radius();
    const double scale = 2.0 * std::max(1.0, R);
    GibbsModel m;
    m.name = to_string(spec.kind());
    m.dim_g = 3;
    m.coord_names = {"z", "phi"};
    switch (spec.kind()) {
    case OrbitKind::sphere: m.axes[0] = QuadAxis::finite(-R, R, "z"); break;
    case OrbitKind::pseudo_sphere_upper: m.axes[0] = QuadAxis::upper(R, scale, "z"); break;
    case OrbitKind::pseudo_sphere_lower: m.axes[0] = QuadAxis::lower(-R, scale, "z"); break;
    case OrbitKind::hyperboloid: m.axes[0] = QuadAxis::line(0.0, scale, "z"); break;
    case OrbitKind::cone_future: m.axes[0] = QuadAxis::upper(0.0, scale, "z"); break;
    case OrbitKind::cone_past: m.axes[0] = QuadAxis::lower(0.0, scale, "z"); break;
    case OrbitKind::origin: break;
    }
    m.axes[1] = QuadAxis::periodic(2.0 * std::numbers::pi, "phi");
    m.bracket = StructureConstants::of_space(cfg);
    m.from_quad = [](double z, double phi) { return QuadMap{{z, phi}, 1.0}; };
    m.liouville_density = [](const ChartPoint&) { return 1.0; };
    m.moment_map = [spec, cfg](const ChartPoint& p) -> AlgVec {
        const double r = std::sqrt(std::max(0.0, spec.planar_radius_sq(p.a)));
        return to_alg(scal(Vec3(r * std::cos(p.b), r * std::sin(p.b), p.a), cfg));
    };
    m.group_exp = [cfg](const AlgVec& x, double t) { return detail::so_exp(x, t, cfg); };
    m.group_action = [spec](const Mat3& g, const ChartPoint& p) -> ChartPoint {
        const OrbitChartPoint c = point_to_chart(spec, g * chart_to_point(spec, {p.a, p.b}));
        return {c.z, c.phi};
    };
    m.adjoint = [](const Mat3& g) -> AlgMat { return g; };
    m.rotation_flow = true;

    switch (spec.kind()) {
    case OrbitKind::sphere:
        m.closed_form = [R](const AlgVec& b) { return sphere_closed_form(R, b); };
        break;
    case OrbitKind::pseudo_sphere_upper:
    case OrbitKind::pseudo_sphere_lower: {
        const int sheet = spec.kind() == OrbitKind::pseudo_sphere_upper ? 1 : -1;
        m.closed_form = [sheet, R](const AlgVec& b) { return pseudo_sphere_closed_form(sheet, R, b); };
        break;
    }
    default: break;
    }
    if (spec.kind() == OrbitKind::sphere || spec.kind() == OrbitKind::pseudo_sphere_upper ||
        spec.kind() == OrbitKind::pseudo_sphere_lower) {
        m.sampler = [spec](const AlgVec& beta, std::size_t n, std::uint64_t seed) {
            std::vector<ChartPoint> out;
            out.reserve(n);
            for (const Vec3& r : detail::sample_orbit_points(spec, to_vec3(beta), n, seed)) {
                const OrbitChartPoint c = point_to_chart(spec, r);
                out.push_back({c.z, c.phi});
            }
            return out;
        };
    }
    return m;
}

inline GibbsModel make_sphere(double R) {
    detail::require_radius(R, "make_sphere");
    return make_orbit_model(OrbitSpec::sphere(R));
}

inline GibbsModel make_pseudo_sphere(int sign, double R) {
    detail::require_radius(R, "make_pseudo_sphere");
    return make_orbit_model(OrbitSpec::pseudo_sphere(sign, R));
}

inline GibbsModel make_hyperboloid(double R) {
    detail::require_radius(R, "make_hyperboloid");
    return make_orbit_model(OrbitSpec::hyperboloid(R));
}

inline GibbsModel make_cone(int sign) { return make_orbit_model(OrbitSpec::cone(sign)); }

/// Poincare disk, chart (w_r, w_im); quadrature in (t, phi) with |w| = 1 - e^{-t}.
inline GibbsModel make_poincare_disk(double R) {
    detail::require_radius(R, "make_poincare_disk");
    const SpaceConfig cfg = SpaceConfig::minkowski();
    const OrbitSpec sheet = OrbitSpec::pseudo_sphere(1, R);
    GibbsModel m;
    m.name = "poincare-disk";
    m.coord_names = {"w_r", "w_im"};
    m.axes[0] = QuadAxis::upper(0.0, 1.0, "t").with_limit(30.0);
    m.axes[1] = QuadAxis::periodic(2.0 * std::numbers::pi, "phi");
    m.bracket = StructureConstants::of_space(cfg);
    m.from_quad = [](double t, double phi) {
        const double s = -std::expm1(-t);
        return QuadMap{{s * std::cos(phi), s * std::sin(phi)}, s * std::exp(-t)};
    };
    m.liouville_density = [R](const ChartPoint& p) {
        const double d = 1.0 - (p.a * p.a + p.b * p.b);
        return 4.0 * R / (d * d);
    };
    m.moment_map = [R, cfg](const ChartPoint& p) -> AlgVec { return to_alg(scal(psi_R_inv({p.a, p.b}, R), cfg)); };
    m.group_exp = [cfg](const AlgVec& x, double t) { return detail::so_exp(x, t, cfg); };
    m.group_action = [R](const Mat3& g, const ChartPoint& p) -> ChartPoint {
        const ComplexPoint w = psi_R(g * psi_R_inv({p.a, p.b}, R), R);
        return {w.re, w.im};
    };
    m.adjoint = [](const Mat3& g) -> AlgMat { return g; };
    m.closed_form = [R](const AlgVec& b) { return pseudo_sphere_closed_form(1, R, b); };
    m.sampler = [sheet, R](const AlgVec& beta, std::size_t n, std::uint64_t seed) {
        std::vector<ChartPoint> out;
        out.reserve(n);
        for (const Vec3& r : detail::sample_orbit_points(sheet, to_vec3(beta), n, seed)) {
            const ComplexPoint w = psi_R(r, R);
            out.push_back({w.re, w.im});
        }
        return out;
    };
    m.rotation_flow = true;
    return m;
}

/// Poincare half-plane, chart (xi_r, xi_im). Quadrature in geodesic polar
/// coordinates about xi = i: xi = M(w), w = (1 - e^-t) e^{i phi}.
inline GibbsModel make_poincare_half_plane(double R) {
    detail::require_radius(R, "make_poincare_half_plane");
    const SpaceConfig cfg = SpaceConfig::minkowski();
    const OrbitSpec sheet = OrbitSpec::pseudo_sphere(1, R);
    GibbsModel m;
    m.name = "poincare-half-plane";
    m.coord_names = {"xi_r", "xi_im"};
    m.axes[0] = QuadAxis::upper(0.0, 1.0, "t").with_limit(30.0);
    m.axes[1] = QuadAxis::periodic(2.0 * std::numbers::pi, "phi");
    m.bracket = StructureConstants::of_space(cfg);
    m.from_quad = [](double t, double phi) {
        const double s = -std::expm1(-t);
        const Complex w = std::polar(s, phi), i(0.0, 1.0);
        const Complex xi = i * (1.0 - w) / (1.0 + w);
        const double d = std::norm(1.0 + w);
        return QuadMap{{xi.real(), xi.imag()}, s * std::exp(-t) * 4.0 / (d * d)};
    };
    m.liouville_density = [R](const ChartPoint& p) { return R / (p.b * p.b); };
    m.moment_map = [R, cfg](const ChartPoint& p) -> AlgVec {
        return to_alg(scal(half_plane_moment({p.a, p.b}, R), cfg));
    };
    m.group_exp = [cfg](const AlgVec& x, double t) { return detail::so_exp(x, t, cfg); };
    m.group_action = [R](const Mat3& g, const ChartPoint& p) -> ChartPoint {
        const ComplexPoint w = cayley_inv({p.a, p.b});
        const ComplexPoint xi = cayley(psi_R(g * psi_R_inv(w, R), R));
        return {xi.re, xi.im};
    };
    m.adjoint = [](const Mat3& g) -> AlgMat { return g; };
    m.closed_form = [R](const AlgVec& b) { return pseudo_sphere_closed_form(1, R, b); };
    m.sampler = [sheet, R](const AlgVec& beta, std::size_t n, std::uint64_t seed) {
        std::vector<ChartPoint> out;
        out.reserve(n);
        for (const Vec3& r : detail::sample_orbit_points(sheet, to_vec3(beta), n, seed)) {
            const ComplexPoint xi = cayley(psi_R(r, R));
            out.push_back({xi.re, xi.im});
        }
        return out;
    };
    return m;
}

/// Moment map of SL(2, R) acting linearly on the symplectic plane, as a vector of F.
inline Vec3 sl2_plane_moment_vector(double u, double v) {
    return {(u * u - v * v) / 4.0, -u * v / 2.0, (u * u + v * v) / 4.0};
}

inline GibbsModel make_sl2_plane() {
    const SpaceConfig cfg = SpaceConfig::minkowski();
    GibbsModel m;
    m.name = "sl2-plane";
    m.coord_names = {"u", "v"};
    m.axes[0] = QuadAxis::line(0.0, 2.0, "u");
    m.axes[1] = QuadAxis::line(0.0, 2.0, "v");
    m.bracket = StructureConstants::of_space(cfg);
    m.from_quad = [](double u, double v) { return QuadMap{{u, v}, 1.0}; };
    m.liouville_density = [](const ChartPoint&) { return 1.0; };
    m.moment_map = [cfg](const ChartPoint& p) -> AlgVec { return to_alg(scal(sl2_plane_moment_vector(p.a, p.b), cfg)); };
    return m;
}

/// Image of the SL(2, R)-plane moment map on random points.
struct Sl2ImageCheck {
    std::size_t points = 0;
    double max_casimir = 0.0;  // max |J.J| / (1 + |J|^2)
    double min_z = 0.0;
    bool in_future_cone_closure = false;
};

inline Sl2ImageCheck sl2_image_check(std::size_t n, std::uint64_t seed, double tol = 1e-10) {
    const SpaceConfig cfg = SpaceConfig::minkowski();
    Rng rng(seed);
    Sl2ImageCheck c;
    c.points = n;
    c.min_z = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double u = 4.0 * rng.normal(), v = 4.0 * rng.normal();
        const Vec3 J = sl2_plane_moment_vector(u, v);
        c.max_casimir = std::max(c.max_casimir, std::abs(dot(J, J, cfg)) / (1.0 + J.squaredNorm()));
        c.min_z = std::min(c.min_z, J.z());
    }
    c.in_future_cone_closure = c.max_casimir <= tol && c.min_z >= 0.0;
    return c;
}

// Euclidean displacement group E(2) in the basis (e_r, e_x, e_y).

inline Mat3 e2_element(double phi, double x, double y) {
    Mat3 g;
    g << std::cos(phi), -std::sin(phi), x,
         std::sin(phi), std::cos(phi), y,
         0.0, 0.0, 1.0;
    return g;
}

inline Mat3 e2_algebra_matrix(const AlgVec& X) {
    Mat3 m;
    m << 0.0, -X[0], X[1],
         X[0], 0.0, X[2],
         0.0, 0.0, 0.0;
    return m;
}

inline AlgVec e2_algebra_coeffs(const Mat3& m) { return make_alg({m(1, 0), m(0, 2), m(1, 2)}); }

inline StructureConstants e2_structure_constants() {
    StructureConstants sc(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const Mat3 A = e2_algebra_matrix(AlgVec::Unit(3, a)), B = e2_algebra_matrix(AlgVec::Unit(3, b));
            const AlgVec c = e2_algebra_coeffs(A * B - B * A);
            for (int k = 0; k < 3; ++k) sc(a, b, k) = c[k];
        }
    return sc;
}

inline AlgVec e2_theta(const Mat3& g) {
    const double x = g(0, 2), y = g(1, 2);
    return make_alg({(x * x + y * y) / 2.0, -y, x});
}

inline GibbsModel make_e2_plane() {
    GibbsModel m;
    m.name = "e2-plane";
    m.coord_names = {"u", "v"};
    m.axes[0] = QuadAxis::line(0.0, 4.0, "u");
    m.axes[1] = QuadAxis::line(0.0, 4.0, "v");
    m.bracket = e2_structure_constants();
    m.from_quad = [](double u, double v) { return QuadMap{{u, v}, 1.0}; };
    m.liouville_density = [](const ChartPoint&) { return 1.0; };
    m.moment_map = [](const ChartPoint& p) -> AlgVec {
        return make_alg({(p.a * p.a + p.b * p.b) / 2.0, -p.b, p.a});
    };
    m.group_exp = [](const AlgVec& X, double t) -> Mat3 { return Mat3(t * e2_algebra_matrix(X)).exp(); };
    m.group_action = [](const Mat3& g, const ChartPoint& p) -> ChartPoint {
        const Vec3 r = g * Vec3(p.a, p.b, 1.0);
        return {r.x(), r.y()};
    };
    m.adjoint = [](const Mat3& g) -> AlgMat {
        const Mat3 gi = g.inverse();
        AlgMat ad(3, 3);
        for (int k = 0; k < 3; ++k) ad.col(k) = e2_algebra_coeffs(g * e2_algebra_matrix(AlgVec::Unit(3, k)) * gi);
        return ad;
    };
    m.cocycle_theta = [](const Mat3& g) { return e2_theta(g); };
    m.cocycle_Theta = [](const AlgVec& X) { return make_alg({0.0, -X[2], X[1]}); };
    m.closed_form = [](const AlgVec& b) { return e2_closed_form(b); };
    m.sampler = [](const AlgVec& beta, std::size_t n, std::uint64_t seed) {
        const double br = beta[0], sd = 1.0 / std::sqrt(br);
        const double mu = -beta[2] / br, mv = beta[1] / br;
        Rng rng(seed);
        std::vector<ChartPoint> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = mu + sd * rng.normal();
            const double v = mv + sd * rng.normal();
            out.push_back({u, v});
        }
        return out;
    };
    return m;
}

// ---------------------------------------------------------------------------
// Catalog by identifier.

inline const std::vector<std::string>& model_ids() {
    static const std::vector<std::string> ids{"sphere",      "pseudo-sphere-upper", "pseudo-sphere-lower",
                                              "hyperboloid", "cone-future",         "cone-past",
                                              "poincare-disk", "poincare-half-plane", "sl2-plane",
                                              "e2-plane"};
    return ids;
}

inline GibbsModel make_model(const std::string& id, double R = 1.0) {
    if (id == "sphere") return make_sphere(R);
    if (id == "pseudo-sphere-upper") return make_pseudo_sphere(1, R);
    if (id == "pseudo-sphere-lower") return make_pseudo_sphere(-1, R);
    if (id == "hyperboloid") return make_hyperboloid(R);
    if (id == "cone-future") return make_cone(1);
    if (id == "cone-past") return make_cone(-1);
    if (id == "poincare-disk") return make_poincare_disk(R);
    if (id == "poincare-half-plane") return make_poincare_half_plane(R);
    if (id == "sl2-plane") return make_sl2_plane();
    if (id == "e2-plane") return make_e2_plane();
    throw std::invalid_argument("unknown model '" + id + "'");
}

/// The 26 nonzero direction patterns of {-1, 0, 1}^3.
inline std::vector<AlgVec> probe_directions() {
    std::vector<AlgVec> out;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c)
                if (a != 0 || b != 0 || c != 0) out.push_back(make_alg({double(a), double(b), double(c)}));
    return out;
}

}  // namespace souriau
