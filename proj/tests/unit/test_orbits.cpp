#include "souriau/orbits.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace souriau;

namespace {

const SpaceConfig E = SpaceConfig::euclidean();
const SpaceConfig L = SpaceConfig::minkowski();
constexpr double pi = std::numbers::pi;

std::vector<OrbitSpec> all_orbits() {
    return {OrbitSpec::sphere(1.5),          OrbitSpec::pseudo_sphere(1, 2.0), OrbitSpec::pseudo_sphere(-1, 0.5),
            OrbitSpec::hyperboloid(1.25),    OrbitSpec::cone(1),               OrbitSpec::cone(-1)};
}

double sample_z(const OrbitSpec& o, std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto [lo, hi] = o.z_range();
    const double a = std::isfinite(lo) ? lo : std::isfinite(hi) ? hi - 5.0 : -3.0;
    const double b = std::isfinite(hi) ? hi : a + 5.0;
    return a + (b - a) * u(g);
}

}  // namespace

TEST(ClassifyOrbit, ListedExamples) {
    const OrbitSpec a = classify_orbit({0, 0, 2}, L);
    EXPECT_EQ(a.kind(), OrbitKind::pseudo_sphere_upper);
    EXPECT_DOUBLE_EQ(a.radius(), 2.0);
    EXPECT_EQ(classify_orbit({1, 0, 1}, L).kind(), OrbitKind::cone_future);
    EXPECT_EQ(classify_orbit({1, 0, -1}, L).kind(), OrbitKind::cone_past);
    EXPECT_EQ(classify_orbit({0, 0, -3}, L).kind(), OrbitKind::pseudo_sphere_lower);
    const OrbitSpec h = classify_orbit({2, 0, 1}, L);
    EXPECT_EQ(h.kind(), OrbitKind::hyperboloid);
    EXPECT_DOUBLE_EQ(h.radius(), std::sqrt(3.0));
    const OrbitSpec s = classify_orbit({3, 4, 0}, E);
    EXPECT_EQ(s.kind(), OrbitKind::sphere);
    EXPECT_DOUBLE_EQ(s.radius(), 5.0);
    EXPECT_EQ(classify_orbit(Vec3::Zero(), L).kind(), OrbitKind::origin);
    EXPECT_FALSE(classify_orbit(Vec3::Zero(), E).two_dimensional());
}

TEST(OrbitSpec, Casimirs) {
    EXPECT_DOUBLE_EQ(OrbitSpec::sphere(2).casimir(), 4.0);
    EXPECT_DOUBLE_EQ(OrbitSpec::pseudo_sphere(-1, 2).casimir(), -4.0);
    EXPECT_DOUBLE_EQ(OrbitSpec::hyperboloid(2).casimir(), 4.0);
    EXPECT_DOUBLE_EQ(OrbitSpec::cone(1).casimir(), 0.0);
    EXPECT_STREQ(to_string(OrbitKind::pseudo_sphere_lower), "pseudo-sphere-lower");
}

TEST(OrbitSpec, RejectsBadParameters) {
    EXPECT_THROW(OrbitSpec::sphere(0.0), std::invalid_argument);
    EXPECT_THROW(OrbitSpec::pseudo_sphere(1, -1.0), std::invalid_argument);
    EXPECT_THROW(OrbitSpec::hyperboloid(std::numeric_limits<double>::infinity()), std::invalid_argument);
    EXPECT_THROW(OrbitSpec(OrbitKind::sphere, 1.0, L), std::invalid_argument);
    EXPECT_THROW(OrbitSpec(OrbitKind::hyperboloid, 1.0, E), std::invalid_argument);
}

TEST(Chart, ListedPoints) {
    EXPECT_LE((chart_to_point(OrbitSpec::sphere(1), {0.0, 0.0}) - Vec3(1, 0, 0)).norm(), 1e-15);
    EXPECT_LE((chart_to_point(OrbitSpec::pseudo_sphere(1, 1), {2.0, pi / 2}) - Vec3(0, std::sqrt(3.0), 2)).norm(),
              1e-15);
    EXPECT_LE((chart_to_point(OrbitSpec::cone(-1), {-2.0, pi}) - Vec3(-2, 0, -2)).norm(), 1e-15);
}

TEST(Chart, RoundTripOnEveryOrbit) {
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> ang(0.0, 2 * pi);
    for (const OrbitSpec& o : all_orbits())
        for (int k = 0; k < 100; ++k) {
            const OrbitChartPoint c{sample_z(o, g), ang(g)};
            const Vec3 v = chart_to_point(o, c);
            EXPECT_TRUE(on_orbit(o, v)) << to_string(o.kind());
            EXPECT_NEAR(dot(v, v, o.config()), o.casimir(), 1e-12 * (1 + v.squaredNorm()));
            const OrbitChartPoint back = point_to_chart(o, v);
            EXPECT_NEAR(back.z, c.z, 1e-14 * (1 + std::abs(c.z)));
            EXPECT_NEAR(std::remainder(back.phi - c.phi, 2 * pi), 0.0, 1e-12);
            EXPECT_GE(back.phi, 0.0);
            EXPECT_LT(back.phi, 2 * pi);
        }
}

TEST(Chart, PolesMapToPhiZero) {
    const OrbitChartPoint p = point_to_chart(OrbitSpec::sphere(2), {0, 0, -2});
    EXPECT_EQ(p.phi, 0.0);
    EXPECT_EQ(p.z, -2.0);
    EXPECT_EQ(point_to_chart(OrbitSpec::pseudo_sphere(1, 1), e_z).phi, 0.0);
}

TEST(Chart, ErrorCases) {
    EXPECT_THROW(chart_to_point(OrbitSpec::sphere(1), {1.5, 0.0}), std::invalid_argument);
    EXPECT_THROW(chart_to_point(OrbitSpec::pseudo_sphere(1, 1), {0.5, 0.0}), std::invalid_argument);
    EXPECT_THROW(chart_to_point(OrbitSpec::cone(1), {-1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(point_to_chart(OrbitSpec::sphere(1), {1, 1, 0}), std::invalid_argument);
    EXPECT_THROW(point_to_chart(OrbitSpec::pseudo_sphere(1, 1), -e_z), std::invalid_argument);
    const OrbitSpec origin = classify_orbit(Vec3::Zero(), L);
    EXPECT_THROW(chart_to_point(origin, {0, 0}), std::invalid_argument);
    EXPECT_THROW(liouville_density(origin, {0, 0}), std::invalid_argument);
    EXPECT_THROW(symplectic_pair(origin, {0, 0}, {1, 0}, {0, 1}), std::invalid_argument);
}

TEST(GroupAction, PreservesEveryOrbit) {
    std::mt19937_64 g(12);
    std::normal_distribution<double> n(0.0, 0.6);
    std::uniform_real_distribution<double> ang(0.0, 2 * pi);
    for (const OrbitSpec& o : all_orbits())
        for (int k = 0; k < 40; ++k) {
            const Mat3 m = group_exp({n(g), n(g), n(g)}, 1.0, o.config());
            const Vec3 v = chart_to_point(o, {sample_z(o, g), ang(g)});
            EXPECT_TRUE(on_orbit(o, natural_action(m, v), 1e-8)) << to_string(o.kind());
        }
}

TEST(Liouville, SymplecticPairSigns) {
    EXPECT_EQ(symplectic_pair(OrbitSpec::sphere(1), {0, 0}, {0, 1}, {1, 0}), 1.0);
    EXPECT_EQ(symplectic_pair(OrbitSpec::pseudo_sphere(1, 1), {2, 0}, {0, 1}, {1, 0}), -1.0);
    EXPECT_EQ(symplectic_pair(OrbitSpec::sphere(1), {0, 0}, {1, 0}, {1, 0}), 0.0);
    EXPECT_EQ(liouville_density(OrbitSpec::hyperboloid(3), {1, 1}), 1.0);
}

TEST(Liouville, MatchesTheMixedProductNormalisation) {
    // |omega(d_z, d_phi)| = |det(v, d_z, d_phi)| / |v.v| on the non-null orbits
    std::mt19937_64 g(13);
    std::uniform_real_distribution<double> ang(0.0, 2 * pi);
    for (const OrbitSpec& o : all_orbits()) {
        if (o.casimir() == 0.0) continue;
        for (int k = 0; k < 20; ++k) {
            const double z = sample_z(o, g), phi = ang(g), h = 1e-6;
            const Vec3 v = chart_to_point(o, {z, phi});
            if (o.planar_radius_sq(z) < 1e-3) continue;
            const Vec3 dz = (chart_to_point(o, {z + h, phi}) - chart_to_point(o, {z - h, phi})) / (2 * h);
            const Vec3 dphi = (chart_to_point(o, {z, phi + h}) - chart_to_point(o, {z, phi - h})) / (2 * h);
            Mat3 m;
            m << v, dz, dphi;
            const double omega = symplectic_pair(o, {z, phi}, {1, 0}, {0, 1});
            EXPECT_NEAR(std::abs(omega), std::abs(m.determinant() / o.casimir()), 1e-6) << to_string(o.kind());
        }
    }
}

TEST(Liouville, SlabMeasure) {
    EXPECT_DOUBLE_EQ(liouville_measure(OrbitSpec::sphere(1), -1, 1), 4 * pi);
    EXPECT_DOUBLE_EQ(liouville_measure(OrbitSpec::sphere(2), -10, 10), 8 * pi);
    EXPECT_DOUBLE_EQ(liouville_measure(OrbitSpec::pseudo_sphere(1, 1), 0, 3), 4 * pi);
    EXPECT_DOUBLE_EQ(liouville_measure(OrbitSpec::cone(-1), 1, 3), 0.0);
}
