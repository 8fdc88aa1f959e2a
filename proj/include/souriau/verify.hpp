#pragma once

// Invariant suites run by `souriau_gibbs verify`.

#include "souriau/models.hpp"
#include "souriau/statstates.hpp"

#include <functional>
#include <sstream>

namespace souriau {

struct CheckResult {
    std::string name;
    double value = 0.0;  // measured residual
    double tol = 0.0;
    bool pass = false;
};

/// A printed formula compared with the value the code computes.
struct Finding {
    std::string title;
    std::string printed;
    std::string computed;
    double deviation = 0.0;
    std::string measure;  // what `deviation` is
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    std::vector<Finding> findings;
    std::string error;  // set when the suite threw

    bool passed() const {
        if (!error.empty()) return false;
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n{"algebra", "orbits", "thermo", "adjoint", "entropy", "discrepancies"};
    return n;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Relative error in norm; absolute when the reference vanishes.
template <class A, class B>
double rel_err_vec(const A& a, const B& b) {
    const double d = (a - b).norm(), n = b.norm();
    return n > 1e-12 ? d / n : d;
}

namespace detail {

struct Checker {
    SuiteReport& rep;

    void le(const std::string& name, double value, double tol) {
        rep.checks.push_back({name, value, tol, std::isfinite(value) && value <= tol});
    }
    void truth(const std::string& name, bool ok) { rep.checks.push_back({name, ok ? 0.0 : 1.0, 0.0, ok}); }
};

inline std::string fmt(double v) {
    std::ostringstream o;
    o.precision(10);
    o << v;
    return o.str();
}

inline std::string fmt(const AlgVec& v) {
    std::ostringstream o;
    o.precision(10);
    o << "(";
    for (int i = 0; i < v.size(); ++i) o << (i ? ", " : "") << v[i];
    o << ")";
    return o.str();
}

inline Vec3 random_vec(Rng& rng, double s) { return {s * rng.normal(), s * rng.normal(), s * rng.normal()}; }

inline AlgVec random_alg(Rng& rng, int dim, double s) {
    AlgVec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = s * rng.normal();
    return v;
}

/// A chart point of the model drawn from a bounded region.
inline ChartPoint random_chart_point(const GibbsModel& m, Rng& rng) {
    const auto coord = [&](const QuadAxis& a) {
        const double u = rng.uniform();
        switch (a.kind) {
        case AxisKind::periodic:
        case AxisKind::finite: return a.lo + u * (a.hi - a.lo);
        case AxisKind::upper: return a.lo + u * a.scale;
        case AxisKind::lower: return a.hi - u * a.scale;
        case AxisKind::line: return a.lo + (2.0 * u - 1.0) * a.scale;
        }
        return 0.0;
    };
    const double q0 = coord(m.axes[0]), q1 = coord(m.axes[1]);
    return m.from_quad(q0, q1).p;
}

struct ModelCase {
    GibbsModel model;
    AlgVec beta;
};

inline std::vector<ModelCase> group_cases() {
    return {{make_sphere(1.0), make_alg({0.3, -0.2, 1.1})},
            {make_pseudo_sphere(1, 1.0), make_alg({0.3, -0.2, -2.0})},
            {make_pseudo_sphere(-1, 0.5), make_alg({-0.4, 0.1, 1.5})},
            {make_poincare_disk(1.0), make_alg({0.2, 0.4, -1.7})},
            {make_poincare_half_plane(1.0), make_alg({-0.3, 0.2, -1.6})},
            {make_e2_plane(), make_alg({1.5, 0.7, -0.4})}};
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline SuiteReport verify_algebra() {
    SuiteReport rep{"algebra", {}, {}, {}};
    detail::Checker ck{rep};
    Rng rng(101);
    for (SpaceConfig cfg : {SpaceConfig::euclidean(), SpaceConfig::minkowski()}) {
        const std::string tag = cfg.zeta() > 0 ? "[zeta=+1] " : "[zeta=-1] ";
        double hom = 0.0, inv = 0.0, defect = 0.0, anti = 0.0, ortho = 0.0, hodge_j = 0.0, hodge2 = 0.0, grp = 0.0;
        for (int k = 0; k < 50; ++k) {
            const Vec3 u = detail::random_vec(rng, 1.0), v = detail::random_vec(rng, 1.0);
            const Mat3 ju = j(u, cfg), jv = j(v, cfg);
            hom = std::max(hom, (j(cross(u, v, cfg), cfg) - (ju * jv - jv * ju)).cwiseAbs().maxCoeff());
            inv = std::max(inv, (j_inv(ju, cfg) - u).norm());
            defect = std::max(defect, algebra_defect(ju, cfg));
            anti = std::max(anti, (cross(u, v, cfg) + cross(v, u, cfg)).norm());
            ortho = std::max(ortho, std::abs(dot(cross(u, v, cfg), u, cfg)));
            const double z = cfg.zeta();
            const Multivector scaled{1, {z * u.x(), z * u.y(), z * u.z()}};
            hodge_j = std::max(hodge_j, (bivector_endomorphism(hodge(scaled, cfg), cfg) - ju).cwiseAbs().maxCoeff());
            const Multivector mv{1, {u.x(), u.y(), u.z()}};
            const Multivector back = hodge(hodge(mv, cfg), cfg);
            for (int i = 0; i < 3; ++i) hodge2 = std::max(hodge2, std::abs(back.c[i] - z * mv.c[i]));
            grp = std::max(grp, group_defect(group_exp(u, 1.0, cfg), cfg));
        }
        ck.le(tag + "j(u x v) = [j(u), j(v)]", hom, 1e-12);
        ck.le(tag + "j_inv(j(u)) = u", inv, 1e-12);
        ck.le(tag + "j(u) lies in the Lie algebra", defect, 1e-12);
        ck.le(tag + "cross product antisymmetric", anti, 1e-14);
        ck.le(tag + "u . (u x v) = 0", ortho, 1e-12);
        ck.le(tag + "j(u) = endomorphism of *(zeta u)", hodge_j, 1e-12);
        ck.le(tag + "** = zeta on vectors", hodge2, 0.0);
        ck.le(tag + "exp(j(u)) lies in the group", grp, 1e-10);
        ck.le(tag + "structure constants: antisymmetry and Jacobi", StructureConstants::of_space(cfg).defect(), 1e-14);
    }
    ck.le("e(2) structure constants: antisymmetry and Jacobi", e2_structure_constants().defect(), 1e-14);
    return rep;
}

inline SuiteReport verify_orbits() {
    SuiteReport rep{"orbits", {}, {}, {}};
    detail::Checker ck{rep};
    Rng rng(202);
    const std::vector<OrbitSpec> specs{OrbitSpec::sphere(1.3),        OrbitSpec::pseudo_sphere(1, 0.7),
                                       OrbitSpec::pseudo_sphere(-1, 2.0), OrbitSpec::hyperboloid(1.1),
                                       OrbitSpec::cone(1),             OrbitSpec::cone(-1)};
    for (const OrbitSpec& s : specs) {
        const GibbsModel m = make_orbit_model(s);
        double round = 0.0, cas = 0.0, liou = 0.0;
        bool on = true, cls = true;
        for (int k = 0; k < 100; ++k) {
            const ChartPoint p = detail::random_chart_point(m, rng);
            const Vec3 r = chart_to_point(s, {p.a, p.b});
            on = on && on_orbit(s, r);
            const OrbitChartPoint back = point_to_chart(s, r);
            round = std::max(round, (chart_to_point(s, back) - r).norm());
            cas = std::max(cas, std::abs(dot(r, r, s.config()) - s.casimir()) / std::max(1.0, r.squaredNorm()));
            liou = std::max(liou, std::abs(std::abs(symplectic_pair(s, {p.a, p.b}, {1.0, 0.0}, {0.0, 1.0})) -
                                           liouville_density(s, {p.a, p.b})));
            if (std::abs(r.z()) > 1e-6) cls = cls && classify_orbit(r, s.config()).kind() == s.kind();
        }
        const std::string tag = std::string("[") + to_string(s.kind()) + "] ";
        ck.truth(tag + "chart points lie on the orbit", on);
        ck.le(tag + "chart round trip", round, 1e-10);
        ck.le(tag + "Casimir value", cas, 1e-10);
        ck.le(tag + "Liouville density = |omega(d_z, d_phi)|", liou, 1e-14);
        ck.truth(tag + "classification of orbit points", cls);
    }
    const Sl2ImageCheck sl = sl2_image_check(10000, 9);
    ck.le("SL(2,R) plane: moment image on the future cone (Casimir)", sl.max_casimir, 1e-10);
    ck.le("SL(2,R) plane: moment image has z >= 0", std::max(0.0, -sl.min_z), 1e-10);
    double psi = 0.0, cay = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double R = 0.5 + rng.uniform();
        const Vec3 r = chart_to_point(OrbitSpec::pseudo_sphere(1, R), {R + 3.0 * rng.uniform(), 6.0 * rng.uniform()});
        psi = std::max(psi, (psi_R_inv(psi_R(r, R), R) - r).norm() / r.norm());
        const ComplexPoint w = psi_R(r, R);
        const ComplexPoint w2 = cayley_inv(cayley(w));
        cay = std::max(cay, std::hypot(w2.re - w.re, w2.im - w.im));
    }
    ck.le("stereographic projection round trip", psi, 1e-10);
    ck.le("Cayley map round trip", cay, 1e-10);
    return rep;
}

inline SuiteReport verify_thermo() {
    SuiteReport rep{"thermo", {}, {}, {}};
    detail::Checker ck{rep};
    const std::vector<detail::ModelCase> cases{
        {make_sphere(1.0), make_alg({0.0, 0.0, 1.0})},
        {make_sphere(2.0), make_alg({0.4, -1.2, 0.3})},
        {make_sphere(0.5), make_alg({0.0, 0.0, 0.0})},
        {make_pseudo_sphere(1, 1.0), make_alg({0.0, 0.0, -2.0})},
        {make_pseudo_sphere(-1, 1.5), make_alg({0.5, -0.3, 1.2})},
        {make_poincare_disk(1.0), make_alg({0.2, 0.4, -1.7})},
        {make_poincare_half_plane(1.0), make_alg({-0.3, 0.2, -1.6})},
        {make_e2_plane(), make_alg({2.0, 1.0, 0.0})},
        {make_e2_plane(), make_alg({0.7, -0.5, 1.3})},
    };
    for (const auto& [m, beta] : cases) {
        const std::string tag = "[" + m.name + " beta=" + detail::fmt(beta) + "] ";
        const Evaluation ev = evaluate(m, beta);
        ck.truth(tag + "verdict inside", ev.verdict == Verdict::inside);
        if (ev.verdict != Verdict::inside) continue;
        const ThermoReport& r = ev.report;
        const std::optional<ThermoReport> c = m.closed_form(beta);
        ck.truth(tag + "closed form available", c.has_value());
        if (!c) continue;
        ck.le(tag + "P", rel_err(r.P, c->P), 1e-8);
        ck.le(tag + "E_J", rel_err_vec(r.E_J, c->E_J), 1e-8);
        ck.le(tag + "S", rel_err(r.S, c->S), 1e-8);
        ck.le(tag + "Gamma", rel_err_vec(r.Gamma, c->Gamma), 1e-7);
        ck.le(tag + "S = -integral rho log rho", std::abs(ev.S_direct - r.S), 1e-8);
    }
    const std::vector<detail::ModelCase> outside{
        {make_pseudo_sphere(1, 1.0), make_alg({0.0, 0.0, 1.0})},
        {make_pseudo_sphere(1, 1.0), make_alg({1.0, 0.0, 0.0})},
        {make_pseudo_sphere(1, 1.0), make_alg({1.0, 0.0, -1.0})},
        {make_poincare_half_plane(1.0), make_alg({0.0, 1.0, -1.0})},
        {make_hyperboloid(1.0), make_alg({0.0, 0.0, -1.0})},
        {make_e2_plane(), make_alg({-1.0, 0.0, 0.0})},
        {make_e2_plane(), make_alg({0.0, 1.0, 0.0})},
    };
    for (const auto& [m, beta] : outside)
        ck.truth("[" + m.name + " beta=" + detail::fmt(beta) + "] verdict diverged",
                 is_generalized_temperature(m, beta) == Verdict::diverged);

    // E_J = -grad log P by central differences
    const GibbsModel ps = make_pseudo_sphere(1, 1.0);
    const AlgVec b = make_alg({0.3, -0.2, -2.0});
    const ThermoReport r = thermo(ps, b);
    AlgVec g(3);
    const double h = 1e-4;
    for (int i = 0; i < 3; ++i) {
        const AlgVec d = AlgVec::Unit(3, i) * h;
        g[i] = -(thermo(ps, b + d).logP - thermo(ps, b - d).logP) / (2.0 * h);
    }
    ck.le("[pseudo-sphere-upper] E_J = -grad log P", rel_err_vec(r.E_J, g), 1e-6);
    const AlgVec back = invert_mean(ps, r.E_J, make_alg({0.0, 0.0, -1.0}));
    ck.le("[pseudo-sphere-upper] Legendre inversion recovers beta", (back - b).norm(), 1e-6);
    return rep;
}

inline SuiteReport verify_adjoint() {
    SuiteReport rep{"adjoint", {}, {}, {}};
    detail::Checker ck{rep};
    Rng rng(303);
    for (const auto& [m, beta] : detail::group_cases()) {
        const std::string tag = "[" + m.name + "] ";
        double dP = 0.0, dE = 0.0, dS = 0.0, equiv = 0.0, cocycle = 0.0;
        for (int k = 0; k < 3; ++k) {
            const Mat3 g = m.group_exp(detail::random_alg(rng, m.dim_g, 0.4), 1.0);
            const Transported t = thermo_pullback(m, g, beta);
            const ThermoReport d = thermo(m, t.beta);
            dP = std::max(dP, rel_err(t.P, d.P));
            dE = std::max(dE, rel_err_vec(t.E_J, d.E_J));
            dS = std::max(dS, rel_err(t.S, d.S));
            const Mat3 g2 = m.group_exp(detail::random_alg(rng, m.dim_g, 0.4), 1.0);
            cocycle = std::max(cocycle, (theta_of(m, g * g2) - theta_of(m, g) -
                                         coadjoint_inverse(m, g) * theta_of(m, g2)).norm());
            for (int i = 0; i < 10; ++i) {
                const ChartPoint p = detail::random_chart_point(m, rng);
                const AlgVec lhs = m.moment_map(m.group_action(g, p));
                const AlgVec rhs = coadjoint_inverse(m, g) * m.moment_map(p) + theta_of(m, g);
                equiv = std::max(equiv, rel_err_vec(lhs, rhs));
            }
        }
        ck.le(tag + "P(Ad_g beta) = exp(<theta(g^-1), beta>) P(beta)", dP, 1e-7);
        ck.le(tag + "E_J(Ad_g beta) = Ad*_{g^-1} E_J(beta) + theta(g)", dE, 1e-7);
        ck.le(tag + "S(Ad_g beta) = S(beta)", dS, 1e-7);
        ck.le(tag + "J(g.x) = Ad*_{g^-1} J(x) + theta(g)", equiv, 1e-10);
        ck.le(tag + "theta is a 1-cocycle", cocycle, 1e-10);
        ck.le(tag + "Theta_beta(beta) = 0", cocycle_Theta_beta(m, beta, beta).norm(), 1e-9);
        const OrbitMetricCheck om =
            orbit_metric_check(m, beta, detail::random_alg(rng, m.dim_g, 0.5), detail::random_alg(rng, m.dim_g, 0.5));
        ck.le(tag + "Gamma([beta,X1],[beta,Y1]) = <Theta_beta(X1), [beta,Y1]>",
              std::abs(om.lhs - om.rhs_statement) / std::max(1.0, std::abs(om.lhs)), 1e-7);
    }

    // e(2): Theta(X, Y) = x1 y2 - y1 x2 against the derivative of theta
    double Th = 0.0;
    for (int k = 0; k < 20; ++k) {
        const AlgVec X = detail::random_alg(rng, 3, 1.0), Y = detail::random_alg(rng, 3, 1.0);
        const double h = 1e-5;
        const AlgVec d = (e2_theta(e2_element(0, 0, 0) + h * e2_algebra_matrix(X)) -
                          e2_theta(e2_element(0, 0, 0) - h * e2_algebra_matrix(X))) / (2.0 * h);
        Th = std::max(Th, std::abs(d.dot(Y) - (X[1] * Y[2] - X[2] * Y[1])));
    }
    ck.le("[e2-plane] Theta(X, Y) = x1 y2 - y1 x2", Th, 1e-6);

    // SU(1,1), SO(2,1), SL(2,R)
    double hom = 0.0, inso = 0.0, sig = 0.0, conj = 0.0, cayley_eq = 0.0;
    const Mat2c M = cayley_matrix();
    for (int k = 0; k < 100; ++k) {
        const SU11Element A = SU11Element::random(rng), B = SU11Element::random(rng);
        hom = std::max(hom, (phi_hom(A * B) - phi_hom(A) * phi_hom(B)).cwiseAbs().maxCoeff());
        inso = std::max(inso, group_defect(phi_hom(A), SpaceConfig::minkowski()));
        sig = std::max(sig, std::abs(sigma_iso(A).determinant() - 1.0) +
                                (sigma_iso(A * B) - sigma_iso(A) * sigma_iso(B)).cwiseAbs().maxCoeff());
        conj = std::max(conj, (M * A.matrix() * M.inverse() - sigma_iso(A).cast<Complex>()).cwiseAbs().maxCoeff());
        const Complex w = std::polar(0.95 * rng.uniform(), 6.283 * rng.uniform());
        const Complex lhs = mobius(sigma_iso(A).cast<Complex>(), mobius(M, w));
        const Complex rhs = mobius(M, mobius(A.matrix(), w));
        cayley_eq = std::max(cayley_eq, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    ck.le("Phi is a homomorphism SU(1,1) -> SO(2,1)", hom, 1e-10);
    ck.le("Phi(A) lies in SO(2,1)", inso, 1e-10);
    ck.le("Sigma is a homomorphism into SL(2,R)", sig, 1e-10);
    ck.le("M A M^-1 = Sigma(A)", conj, 1e-10);
    ck.le("U_Sigma(A) o U_M = U_M o U_A", cayley_eq, 1e-9);
    return rep;
}

inline SuiteReport verify_entropy() {
    SuiteReport rep{"entropy", {}, {}, {}};
    detail::Checker ck{rep};
    const GibbsModel sp = make_sphere(1.0);
    const AlgVec b = make_alg({0.0, 0.0, 1.0});
    const GridDensity rho = gibbs_grid_density(sp, b);
    const double S = entropy(sp, b);
    ck.le("[sphere] grid density normalized", std::abs(rho.mass() - 1.0), 1e-8);
    ck.le("[sphere] s(rho_beta) = S(beta)", std::abs(entropy_functional(rho) - S), 1e-7);
    ck.le("[sphere] uniform density entropy = log 4 pi",
          std::abs(entropy_functional(uniform_density(rho.layout)) - std::log(4.0 * std::numbers::pi)), 1e-10);
    ck.le("[sphere] Jaynes entropy of the uniform density = 0",
          std::abs(jaynes_entropy(uniform_density(rho.layout), rho.layout->total_measure)), 1e-10);
    double prevH = 0.0;
    for (int N : {8, 64, 512}) {
        const Discretization d = discretize(rho, N);
        ck.le("[sphere] discretization N=" + std::to_string(N) + ": H = s_Jaynes + log N", std::abs(d.check), 1e-6);
        if (N > 8) ck.truth("[sphere] H grows with N=" + std::to_string(N), d.H > prevH);
        prevH = d.H;
    }
    double worst = -1.0, mean_res = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const GridDensity r1 = perturb_matched_mean(rho, 0.1, seed);
        worst = std::max(worst, entropy_functional(r1) - S);
        mean_res = std::max(mean_res, (grid_mean(r1) - grid_mean(rho)).cwiseAbs().maxCoeff());
    }
    ck.truth("[sphere] matched-mean perturbations lower the entropy", worst < 0.0);
    ck.le("[sphere] perturbations keep the mean of J", mean_res, 1e-8);
    const GridDensity bumped = perturb_matched_mean(rho, 0.2, 11);
    const double s0 = entropy_functional(bumped);
    for (double tau : {0.3, 1.7})
        ck.le("[sphere] entropy invariant under the flow, tau=" + detail::fmt(tau),
              std::abs(entropy_functional(flow_pushforward(bumped, tau)) - s0), 1e-6);
    const GridDensity moved = flow_pushforward(rho, 0.9);
    double diff = 0.0;
    for (std::size_t i = 0; i < rho.values.size(); ++i) diff = std::max(diff, std::abs(moved.values[i] - rho.values[i]));
    ck.le("[sphere] Gibbs density is a fixed point of the flow", diff, 1e-9);

    const GibbsModel e2 = make_e2_plane();
    const AlgVec be = make_alg({2.0, 1.0, 0.0});
    ck.le("[e2-plane] s(rho_beta) = S(beta)", std::abs(entropy_functional(gibbs_grid_density(e2, be)) - entropy(e2, be)),
          1e-7);
    return rep;
}

/// Printed formulas that disagree with the computed values. Never fails.
inline SuiteReport verify_discrepancies() {
    SuiteReport rep{"discrepancies", {}, {}, {}};
    // E(2) partition function and entropy
    {
        const GibbsModel e2 = make_e2_plane();
        double worstP = 0.0, worstS = 0.0;
        std::string sample;
        for (const AlgVec& b : {make_alg({2.0, 1.0, 0.0}), make_alg({1.0, 0.5, -0.5}), make_alg({0.5, 2.0, 1.0})}) {
            const ThermoReport q = thermo(e2, b);
            const E2PrintedValues pr = e2_printed(b);
            worstP = std::max(worstP, rel_err(pr.P, q.P));
            worstS = std::max(worstS, std::abs(pr.S - q.S));
            if (sample.empty())
                sample = "beta=(2,1,0): quadrature P=" + detail::fmt(q.P) + ", S=" + detail::fmt(q.S) +
                         "; printed P=" + detail::fmt(pr.P) + ", S=" + detail::fmt(pr.S);
        }
        rep.findings.push_back({"E(2) partition function",
                                "P = pi (bx^2 + by^2) / br^2",
                                "P = (2 pi / br) exp((bx^2 + by^2) / (2 br)); " + sample, worstP,
                                "max relative deviation of the printed P over 3 temperatures"});
        rep.findings.push_back({"E(2) entropy", "S = log pi + log(bx^2 + by^2) - log br^2 (= log P)",
                                "S = 1 + log(2 pi / br) = log P + <E_J, beta>", worstS,
                                "max absolute deviation of the printed S over 3 temperatures"});
    }
    // disk and half-plane density constants
    {
        const double R = 1.0;
        const AlgVec b = make_alg({0.0, 0.0, -2.0});
        const double nb = 2.0;
        const GibbsModel disk = make_poincare_disk(R), hp = make_poincare_half_plane(R);
        const GibbsState sd(disk, b), sh(hp, b);
        double lo = 1e300, hi = 0.0;
        Rng rng(404);
        for (int k = 0; k < 50; ++k) {
            const ComplexPoint w{0.9 * (2 * rng.uniform() - 1) / std::sqrt(2.0), 0.9 * (2 * rng.uniform() - 1) / std::sqrt(2.0)};
            const double r1 = disk_printed_density(R, nb, w) / sd.density({w.re, w.im});
            const ComplexPoint xi{2 * rng.uniform() - 1, 0.2 + 2 * rng.uniform()};
            const double r2 = half_plane_printed_density(R, nb, xi) / sh.density({xi.re, xi.im});
            lo = std::min({lo, r1, r2});
            hi = std::max({hi, r1, r2});
        }
        const double expected = std::exp(-2.0 * R * nb);
        rep.findings.push_back({"Poincare disk and half-plane Gibbs densities",
                                "printed densities (normalizing constant omitted)",
                                "normalized densities; printed/normalized = " + detail::fmt(0.5 * (lo + hi)) +
                                    " (exp(-2 R |beta|) = " + detail::fmt(expected) + ", R=1, |beta|=2)",
                                std::max(std::abs(lo - expected), std::abs(hi - expected)) / expected,
                                "relative deviation of the measured ratio from exp(-2 R |beta|), 100 points"});
    }
    // E(2) moment map components
    {
        Rng rng(505);
        double res_uv = 0.0, res_swapped = 0.0;
        const GibbsModel e2 = make_e2_plane();
        for (int k = 0; k < 100; ++k) {
            const double u = 3 * rng.normal(), v = 3 * rng.normal();
            const AlgVec b = detail::random_alg(rng, 3, 1.0);
            const double exponent = -(u * u + v * v) / 2 * b[0] + v * b[1] - u * b[2];
            const AlgVec J = e2.moment_map({u, v});
            res_uv = std::max(res_uv, std::abs(-J.dot(b) - exponent));
            const AlgVec Jx = make_alg({(u * u + v * v) / 2, v, -u});
            res_swapped = std::max(res_swapped, std::abs(-Jx.dot(b) - exponent));
        }
        rep.findings.push_back({"E(2) moment map components",
                                "J = (u^2+v^2)/2 eps_r - y eps_x + x eps_y (x, y are not chart coordinates)",
                                "J = (u^2+v^2)/2 eps_r - v eps_x + u eps_y, forced by the Hamiltonians -v, u; "
                                "exponent residual against the printed integrand " + detail::fmt(res_uv) +
                                    " (opposite signs: " + detail::fmt(res_swapped) + ")",
                                res_uv, "max |<J, beta> - printed exponent| over 100 random (point, beta)"});
    }
    // further observations
    {
        const GibbsModel e2 = make_e2_plane();
        const AlgVec b = make_alg({2.0, 1.0, 0.5});
        const ThermoReport q = thermo(e2, b);
        const E2PrintedValues pr = e2_printed(b);
        rep.findings.push_back({"E(2) mean moment (further observation)",
                                "E_J = (2/br, -2 bx/(bx^2+by^2), -2 by/(bx^2+by^2)) = " + detail::fmt(pr.E_J),
                                "E_J = -grad log P = " + detail::fmt(q.E_J), rel_err_vec(pr.E_J, q.E_J),
                                "relative deviation at beta=(2,1,0.5)"});
    }
    {
        Rng rng(606);
        double printed = 0.0, corrected = 0.0;
        for (int k = 0; k < 100; ++k) {
            const SU11Element A = SU11Element::random(rng);
            const double R = 1.0;
            const Vec3 r = chart_to_point(OrbitSpec::pseudo_sphere(1, R), {R + 2.0 * rng.uniform(), 6.28 * rng.uniform()});
            const Complex w = psi_R(r, R).value();
            const ComplexPoint lhs = psi_R(phi_hom(A) * r, R);
            const Complex rhs = mobius(A.matrix(), w);
            printed = std::max(printed, std::abs(lhs.value() - rhs));
            const SU11Element Ap(A.a(), -A.b());
            corrected = std::max(corrected, std::abs(lhs.value() - mobius(Ap.matrix(), w)));
        }
        rep.findings.push_back({"Equivariance of the stereographic projection (further observation)",
                                "psi_R o Phi(A) = U_A o psi_R",
                                "holds with U_A' for A' = (a, -b), i.e. Phi is conjugated by the half-turn about e_z; "
                                "residual with A' = " + detail::fmt(corrected),
                                printed, "max |psi_R(Phi(A) r) - U_A(psi_R(r))| over 100 pairs"});
    }
    {
        Rng rng(707);
        double d = 0.0;
        const Mat2c M = cayley_matrix();
        for (int k = 0; k < 20; ++k) {
            const SU11Element A = SU11Element::random(rng);
            d = std::max(d, (M * A.matrix() * M.inverse() - 2.0 * sigma_iso(A).cast<Complex>()).cwiseAbs().maxCoeff());
        }
        rep.findings.push_back({"Cayley conjugation (further observation)", "M A M^-1 = 2 Sigma(A)",
                                "M A M^-1 = Sigma(A); Mobius maps agree since scalars act trivially", d,
                                "max entry deviation of M A M^-1 from 2 Sigma(A)"});
    }
    {
        const Verdict cone = is_generalized_temperature(make_cone(1), make_alg({0.0, 0.0, -1.0}));
        const Verdict sl2 = is_generalized_temperature(make_sl2_plane(), make_alg({0.0, 0.0, -1.0}));
        rep.findings.push_back(
            {"Cones and the SL(2,R) plane (further observation)", "no Gibbs states",
             std::string("beta = -e_z: future cone ") + to_string(cone) + ", SL(2,R) plane " + to_string(sl2) +
                 " (P = 2 pi and 4 pi)",
             double((cone == Verdict::inside) + (sl2 == Verdict::inside)), "number of models with a Gibbs state at -e_z"});
    }
    return rep;
}

inline SuiteReport run_suite(const std::string& name) {
    static const std::map<std::string, std::function<SuiteReport()>> table{
        {"algebra", verify_algebra}, {"orbits", verify_orbits},   {"thermo", verify_thermo},
        {"adjoint", verify_adjoint}, {"entropy", verify_entropy}, {"discrepancies", verify_discrepancies}};
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown suite '" + name + "'");
    try {
        return it->second();
    } catch (const std::exception& e) {
        SuiteReport r{name, {}, {}, e.what()};
        return r;
    }
}

}  // namespace souriau
