#pragma once

// Coadjoint orbits of G inside F = g*: classification by the Casimir v.v,
// the (z, phi) chart and the Liouville measure dz dphi.

#include "souriau/space3.hpp"

#include <limits>
#include <numbers>
#include <optional>

namespace souriau {

enum class OrbitKind { origin, sphere, pseudo_sphere_upper, pseudo_sphere_lower, hyperboloid, cone_future, cone_past };

inline const char* to_string(OrbitKind k) {
    switch (k) {
    case OrbitKind::origin: return "origin";
    case OrbitKind::sphere: return "sphere";
    case OrbitKind::pseudo_sphere_upper: return "pseudo-sphere-upper";
    case OrbitKind::pseudo_sphere_lower: return "pseudo-sphere-lower";
    case OrbitKind::hyperboloid: return "hyperboloid";
    case OrbitKind::cone_future: return "cone-future";
    case OrbitKind::cone_past: return "cone-past";
    }
    return "?";
}

class OrbitSpec {
public:
    OrbitSpec(OrbitKind kind, double radius, SpaceConfig cfg) : kind_(kind), radius_(radius), cfg_(cfg) {
        const bool has_radius = kind == OrbitKind::sphere || kind == OrbitKind::pseudo_sphere_upper ||
                                kind == OrbitKind::pseudo_sphere_lower || kind == OrbitKind::hyperboloid;
        if (has_radius && !(radius > 0.0 && std::isfinite(radius)))
            throw std::invalid_argument(std::string("OrbitSpec: radius must be positive for ") + to_string(kind));
        if (!has_radius) radius_ = 0.0;
        if (kind == OrbitKind::sphere && cfg.lorentzian())
            throw std::invalid_argument("OrbitSpec: spheres are orbits of the Euclidean space (zeta = +1)");
        if (kind != OrbitKind::sphere && kind != OrbitKind::origin && !cfg.lorentzian())
            throw std::invalid_argument(std::string("OrbitSpec: ") + to_string(kind) + " requires zeta = -1");
    }

    static OrbitSpec sphere(double r) { return {OrbitKind::sphere, r, SpaceConfig::euclidean()}; }
    static OrbitSpec pseudo_sphere(int sign, double r) {
        return {sign > 0 ? OrbitKind::pseudo_sphere_upper : OrbitKind::pseudo_sphere_lower, r, SpaceConfig::minkowski()};
    }
    static OrbitSpec hyperboloid(double r) { return {OrbitKind::hyperboloid, r, SpaceConfig::minkowski()}; }
    static OrbitSpec cone(int sign) {
        return {sign > 0 ? OrbitKind::cone_future : OrbitKind::cone_past, 0.0, SpaceConfig::minkowski()};
    }

    OrbitKind kind() const { return kind_; }
    double radius() const { return radius_; }
    SpaceConfig config() const { return cfg_; }
    bool two_dimensional() const { return kind_ != OrbitKind::origin; }

    /// Value of v.v on the orbit.
    double casimir() const {
        switch (kind_) {
        case OrbitKind::sphere:
        case OrbitKind::hyperboloid: return radius_ * radius_;
        case OrbitKind::pseudo_sphere_upper:
        case OrbitKind::pseudo_sphere_lower: return -radius_ * radius_;
        default: return 0.0;
        }
    }

    /// Range of the z coordinate; infinite ends are +-infinity.
    std::pair<double, double> z_range() const {
        constexpr double inf = std::numeric_limits<double>::infinity();
        switch (kind_) {
        case OrbitKind::sphere: return {-radius_, radius_};
        case OrbitKind::pseudo_sphere_upper: return {radius_, inf};
        case OrbitKind::pseudo_sphere_lower: return {-inf, -radius_};
        case OrbitKind::hyperboloid: return {-inf, inf};
        case OrbitKind::cone_future: return {0.0, inf};
        case OrbitKind::cone_past: return {-inf, 0.0};
        case OrbitKind::origin: return {0.0, 0.0};
        }
        return {0.0, 0.0};
    }

    /// x^2 + y^2 as a function of z on the orbit.
    double planar_radius_sq(double z) const { return casimir() - cfg_.zeta() * z * z; }

    bool operator==(const OrbitSpec&) const = default;

private:
    OrbitKind kind_;
    double radius_;
    SpaceConfig cfg_;
};

struct OrbitChartPoint {
    double z = 0.0;
    double phi = 0.0;
};

inline OrbitSpec classify_orbit(const Vec3& v, SpaceConfig cfg, double tol = causal_tolerance) {
    const double c = dot(v, v, cfg);
    if (v.cwiseAbs().maxCoeff() <= tol) return {OrbitKind::origin, 0.0, cfg};
    if (!cfg.lorentzian()) return OrbitSpec::sphere(std::sqrt(c));
    if (c < -tol) return OrbitSpec::pseudo_sphere(v.z() > 0.0 ? 1 : -1, std::sqrt(-c));
    if (c > tol) return OrbitSpec::hyperboloid(std::sqrt(c));
    return OrbitSpec::cone(v.z() > 0.0 ? 1 : -1);
}

namespace detail {
inline double wrap_angle(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(phi, two_pi);
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a = 0.0;
    return a;
}
}  // namespace detail

inline bool on_orbit(const OrbitSpec& spec, const Vec3& v, double rel_tol = 1e-9) {
    const SpaceConfig cfg = spec.config();
    if (!spec.two_dimensional()) return v.cwiseAbs().maxCoeff() <= rel_tol;
    const double scale = 1.0 + v.squaredNorm();
    if (std::abs(dot(v, v, cfg) - spec.casimir()) > rel_tol * scale) return false;
    const auto [lo, hi] = spec.z_range();
    const double slack = rel_tol * std::sqrt(scale);
    return v.z() >= lo - slack && v.z() <= hi + slack;
}

inline Vec3 chart_to_point(const OrbitSpec& spec, OrbitChartPoint p) {
    if (!spec.two_dimensional()) throw std::invalid_argument("chart_to_point: the origin has no chart");
    const auto [lo, hi] = spec.z_range();
    const double slack = 1e-12 * (1.0 + std::abs(p.z));
    if (!(p.z >= lo - slack && p.z <= hi + slack) || !std::isfinite(p.z))
        throw std::invalid_argument("chart_to_point: z outside the orbit's range");
    const double r = std::sqrt(std::max(0.0, spec.planar_radius_sq(p.z)));
    return {r * std::cos(p.phi), r * std::sin(p.phi), p.z};
}

inline OrbitChartPoint point_to_chart(const OrbitSpec& spec, const Vec3& v) {
    if (!spec.two_dimensional()) throw std::invalid_argument("point_to_chart: the origin has no chart");
    if (!on_orbit(spec, v)) throw std::invalid_argument("point_to_chart: point is not on the orbit");
    // pole convention: phi = 0 where x = y = 0
    const double phi = (v.x() == 0.0 && v.y() == 0.0) ? 0.0 : detail::wrap_angle(std::atan2(v.y(), v.x()));
    return {v.z(), phi};
}

/// Liouville density in the (z, phi) chart: the measure is dz dphi.
inline double liouville_density(const OrbitSpec& spec, OrbitChartPoint) {
    if (!spec.two_dimensional()) throw std::invalid_argument("liouville_density: the origin carries no 2-form");
    return 1.0;
}

/// omega(t1, t2) for chart tangents given as (dz, dphi): omega = zeta dphi ^ dz.
inline double symplectic_pair(const OrbitSpec& spec, OrbitChartPoint, std::array<double, 2> t1,
                              std::array<double, 2> t2) {
    if (!spec.two_dimensional()) throw std::invalid_argument("symplectic_pair: the origin carries no 2-form");
    return spec.config().zeta() * (t1[1] * t2[0] - t1[0] * t2[1]);
}

/// Liouville measure of the part of the orbit with z in [z0, z1] (clamped to the orbit's range).
inline double liouville_measure(const OrbitSpec& spec, double z0, double z1) {
    const auto [lo, hi] = spec.z_range();
    const double a = std::max(lo, z0), b = std::min(hi, z1);
    return b > a ? 2.0 * std::numbers::pi * (b - a) : 0.0;
}

}  // namespace souriau
