// Acceptance checks 1-8. `acceptance N` runs one criterion, no argument runs all.
// Each criterion prints its measurements indented, then one PASS/FAIL line.

#include "souriau/verify.hpp"

#include <cstdio>
#include <cstring>
#include <iostream>

using namespace souriau;

namespace {

class Criterion {
public:
    Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

    /// Records value <= tol.
    void le(const std::string& what, double value, double tol) {
        const bool ok = std::isfinite(value) && value <= tol;
        note((ok ? "ok   " : "FAIL ") + what + ": " + num(value) + " (tol " + num(tol) + ")");
        pass_ = pass_ && ok;
    }

    void truth(const std::string& what, bool ok) {
        note((ok ? "ok   " : "FAIL ") + what);
        pass_ = pass_ && ok;
    }

    void note(const std::string& s) { std::cout << "    " << s << "\n" << std::flush; }

    bool finish() const {
        std::cout << (pass_ ? "PASS" : "FAIL") << " criterion " << id_ << ": " << title_ << "\n" << std::flush;
        return pass_;
    }

    static std::string num(double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.3e", v);
        return b;
    }

private:
    int id_;
    std::string title_;
    bool pass_ = true;
};

std::string vec(const AlgVec& v) {
    std::string s = "(";
    for (int i = 0; i < v.size(); ++i) {
        char b[32];
        std::snprintf(b, sizeof b, "%s%g", i ? ", " : "", v[i]);
        s += b;
    }
    return s + ")";
}

AlgVec random_alg(Rng& rng, int dim, double s) {
    AlgVec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = s * rng.normal();
    return v;
}

std::vector<Mat3> rotations(int count, SpaceConfig cfg, std::uint64_t seed, double spread) {
    Rng rng(seed);
    std::vector<Mat3> g{Mat3::Identity()};
    for (int k = 0; k < count; ++k) g.push_back(group_exp(Vec3(spread * rng.normal(), spread * rng.normal(), spread * rng.normal()), 1.0, cfg));
    return g;
}

struct Errors {
    double P = 0.0, E = 0.0, S = 0.0;
    void add(const ThermoReport& q, const ThermoReport& c) {
        P = std::max(P, rel_err(q.P, c.P));
        E = std::max(E, rel_err_vec(q.E_J, c.E_J));
        S = std::max(S, rel_err(q.S, c.S));
    }
};

// ---------------------------------------------------------------------------

bool criterion1() {
    Criterion c(1, "sphere closed forms");
    const auto gs = rotations(5, SpaceConfig::euclidean(), 11, 1.0);
    for (double R : {0.5, 1.0, 2.0}) {
        const GibbsModel m = make_sphere(R);
        Errors e;
        for (double b : {0.1, 0.5, 1.0, 2.0, 5.0})
            for (const Mat3& g : gs) {
                const AlgVec beta = to_alg(g * Vec3(0.0, 0.0, b));
                e.add(thermo(m, beta), *m.closed_form(beta));
            }
        const std::string tag = "R=" + Criterion::num(R) + " (30 temperatures) ";
        c.le(tag + "P rel err", e.P, 1e-8);
        c.le(tag + "E_J rel err", e.E, 1e-8);
        c.le(tag + "S rel err", e.S, 1e-8);
        const double P0 = thermo(m, make_alg({0.0, 0.0, 0.0})).P;
        c.le("R=" + Criterion::num(R) + " beta=0: |P - 4 pi R| / 4 pi R", rel_err(P0, 4.0 * std::numbers::pi * R), 1e-12);
    }
    return c.finish();
}

bool criterion2() {
    Criterion c(2, "pseudo-sphere closed forms and temperature domain");
    const auto gs = rotations(5, SpaceConfig::minkowski(), 22, 0.4);
    for (double R : {0.5, 1.0, 2.0}) {
        const GibbsModel m = make_pseudo_sphere(1, R);
        Errors e;
        for (double b : {0.1, 0.5, 1.0, 2.0, 5.0})
            for (const Mat3& g : gs) {
                const AlgVec beta = to_alg(g * Vec3(0.0, 0.0, -b));
                e.add(thermo(m, beta), *m.closed_form(beta));
            }
        const std::string tag = "R=" + Criterion::num(R) + " (30 timelike-past temperatures) ";
        c.le(tag + "P rel err", e.P, 1e-8);
        c.le(tag + "E_J rel err", e.E, 1e-8);
        c.le(tag + "S rel err", e.S, 1e-8);
    }
    for (int sheet : {1, -1}) {
        const GibbsModel m = make_pseudo_sphere(sheet, 1.0);
        const CausalClass want = sheet > 0 ? CausalClass::timelike_past : CausalClass::timelike_future;
        int agree = 0, total = 0;
        for (const AlgVec& d : probe_directions()) {
            const bool inside = is_generalized_temperature(m, d) == Verdict::inside;
            const bool expected = classify(to_vec3(d), SpaceConfig::minkowski()) == want;
            ++total;
            if (inside == expected) ++agree;
            else c.note("mismatch " + m.name + " beta=" + vec(d) + (inside ? " inside" : " diverged"));
        }
        c.truth(m.name + ": probe verdicts agree " + std::to_string(agree) + "/" + std::to_string(total), agree == total);
    }
    return c.finish();
}

bool criterion3() {
    Criterion c(3, "no Gibbs states on the hyperboloid, the cones and the SL(2,R) plane");
    const std::vector<GibbsModel> models{make_hyperboloid(1.0), make_cone(1), make_cone(-1), make_sl2_plane()};
    for (const GibbsModel& m : models) {
        int diverged = 0;
        for (const AlgVec& d : probe_directions()) {
            const Evaluation ev = evaluate(m, d);
            if (ev.verdict == Verdict::diverged) {
                ++diverged;
                continue;
            }
            c.note("inside: " + m.name + " beta=" + vec(d) + " P=" + Criterion::num(ev.report.P) +
                   " (converged integral, est rel err " + Criterion::num(ev.report.est_rel_err) + ")");
        }
        c.truth(m.name + ": diverged for " + std::to_string(diverged) + "/26 probes", diverged == 26);
    }
    const Sl2ImageCheck s = sl2_image_check(10000, 33);
    c.le("SL(2,R) plane moment image: max |Casimir| over 1e4 points", s.max_casimir, 1e-10);
    c.le("SL(2,R) plane moment image: max(0, -min z)", std::max(0.0, -s.min_z), 1e-10);
    return c.finish();
}

bool criterion4() {
    Criterion c(4, "Poincare disk and half-plane");
    const double R = 1.0;
    const GibbsModel ps = make_pseudo_sphere(1, R), disk = make_poincare_disk(R), hp = make_poincare_half_plane(R);
    double dd = 0.0, dh = 0.0;
    for (const AlgVec& beta : {make_alg({0.0, 0.0, -2.0}), make_alg({0.3, -0.5, -1.2}), make_alg({-1.0, 0.4, -3.0})}) {
        const ThermoReport a = thermo(ps, beta), b = thermo(disk, beta), h = thermo(hp, beta);
        dd = std::max({dd, rel_err(b.P, a.P), rel_err_vec(b.E_J, a.E_J), rel_err(b.S, a.S)});
        dh = std::max({dh, rel_err(h.P, a.P), rel_err_vec(h.E_J, a.E_J), rel_err(h.S, a.S)});
    }
    c.le("disk vs pseudo-sphere P, E_J, S (3 temperatures)", dd, 1e-7);
    c.le("half-plane vs pseudo-sphere P, E_J, S (3 temperatures)", dh, 1e-7);

    Rng rng(44);
    double eq_phi = 0.0, eq_phi_corrected = 0.0, eq_cayley = 0.0;
    const Mat2c M = cayley_matrix();
    for (int k = 0; k < 100; ++k) {
        const SU11Element A = SU11Element::random(rng);
        const Vec3 r = chart_to_point(OrbitSpec::pseudo_sphere(1, R), {R + 3.0 * rng.uniform(), 6.283 * rng.uniform()});
        const Complex w = psi_R(r, R).value();
        const Complex lhs = psi_R(phi_hom(A) * r, R).value();
        eq_phi = std::max(eq_phi, std::abs(lhs - mobius(A.matrix(), w)));
        eq_phi_corrected = std::max(eq_phi_corrected, std::abs(lhs - mobius(SU11Element(A.a(), -A.b()).matrix(), w)));
        const Complex w2 = std::polar(0.95 * rng.uniform(), 6.283 * rng.uniform());
        const Complex l2 = mobius(sigma_iso(A).cast<Complex>(), mobius(M, w2));
        const Complex r2 = mobius(M, mobius(A.matrix(), w2));
        eq_cayley = std::max(eq_cayley, std::abs(l2 - r2) / std::max(1.0, std::abs(r2)));
    }
    c.le("psi_R o Phi(A) = U_A o psi_R, 100 pairs", eq_phi, 1e-9);
    c.note("     same identity with A' = (a, -b) in place of A: " + Criterion::num(eq_phi_corrected));
    c.le("U_Sigma(A) o U_M = U_M o U_A, 100 pairs", eq_cayley, 1e-9);

    for (double nb : {1.0, 2.0}) {
        const AlgVec beta = make_alg({0.0, 0.0, -nb});
        for (const GibbsModel* m : {&disk, &hp}) {
            const GibbsState st(*m, beta);
            const auto grid = make_grid(*m, beta);
            double mass = 0.0;
            for (const GridNode& n : grid->nodes) mass += st.density(n.p) * n.measure;
            c.le(m->name + " |beta|=" + Criterion::num(nb) + ": |integral of rho - 1|", std::abs(mass - 1.0), 1e-8);
            double worst = 0.0;
            const double expected = std::exp(-2.0 * R * nb);
            for (int k = 0; k < 100; ++k) {
                double printed = 0.0, ours = 0.0;
                if (m == &disk) {
                    const ComplexPoint w = ComplexPoint::of(std::polar(0.97 * rng.uniform(), 6.283 * rng.uniform()));
                    printed = disk_printed_density(R, nb, w);
                    ours = st.density({w.re, w.im});
                } else {
                    const ComplexPoint xi{4.0 * rng.uniform() - 2.0, 0.1 + 3.0 * rng.uniform()};
                    printed = half_plane_printed_density(R, nb, xi);
                    ours = st.density({xi.re, xi.im});
                }
                worst = std::max(worst, std::abs(printed / ours - expected) / expected);
            }
            c.le(m->name + " |beta|=" + Criterion::num(nb) + ": printed/normalized vs exp(-2 R |beta|)", worst, 1e-6);
        }
    }
    return c.finish();
}

bool criterion5() {
    Criterion c(5, "E(2) thermodynamics and cocycles");
    const GibbsModel m = make_e2_plane();
    double eP = 0.0, eE = 0.0, printed = 0.0;
    for (double br : {0.5, 1.0, 2.0})
        for (double bx : {-1.0, 0.0, 1.5})
            for (double by : {-0.5, 0.0, 1.0}) {
                const AlgVec beta = make_alg({br, bx, by});
                const ThermoReport q = thermo(m, beta);
                const double P = 2.0 * std::numbers::pi / br * std::exp((bx * bx + by * by) / (2.0 * br));
                const AlgVec grad = make_alg({1.0 / br + (bx * bx + by * by) / (2.0 * br * br), -bx / br, -by / br});
                eP = std::max(eP, rel_err(q.P, P));
                eE = std::max(eE, rel_err_vec(q.E_J, grad));
                printed = std::max(printed, rel_err(e2_printed(beta).P, q.P));
            }
    c.le("P vs (2 pi / br) exp((bx^2 + by^2) / (2 br)), 27 temperatures", eP, 1e-8);
    c.le("E_J vs -grad log P", eE, 1e-6);
    c.note("     printed P = pi (bx^2 + by^2) / br^2 deviates by up to " + Criterion::num(printed) + " (relative)");

    Rng rng(55);
    double spread = 0.0, formula = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Mat3 g = e2_element(6.283 * rng.uniform(), 2.0 * rng.normal(), 2.0 * rng.normal());
        AlgVec lo = AlgVec::Constant(3, 1e300), hi = AlgVec::Constant(3, -1e300);
        for (int i = 0; i < 100; ++i) {
            const ChartPoint p{3.0 * rng.normal(), 3.0 * rng.normal()};
            const AlgVec th = m.moment_map(m.group_action(g, p)) - coadjoint_inverse(m, g) * m.moment_map(p);
            lo = lo.cwiseMin(th);
            hi = hi.cwiseMax(th);
            formula = std::max(formula, (th - e2_theta(g)).cwiseAbs().maxCoeff());
        }
        spread = std::max(spread, (hi - lo).maxCoeff());
    }
    c.le("theta(g) = J o Phi_g - Ad*_{g^-1} J: spread over points, 20 elements", spread, 1e-10);
    c.le("theta(g) vs ((x^2 + y^2)/2, -y, x)", formula, 1e-10);
    double Th = 0.0;
    for (int k = 0; k < 20; ++k) {
        const AlgVec X = random_alg(rng, 3, 1.0), Y = random_alg(rng, 3, 1.0);
        const double h = 1e-5;
        const AlgVec d = (e2_theta(m.group_exp(X, h)) - e2_theta(m.group_exp(X, -h))) / (2.0 * h);
        Th = std::max(Th, std::abs(d.dot(Y) - (X[1] * Y[2] - X[2] * Y[1])));
    }
    c.le("Theta(X, Y) = x1 y2 - y1 x2 vs derivative of theta", Th, 1e-6);
    return c.finish();
}

bool criterion6() {
    Criterion c(6, "general identities");
    struct Case {
        GibbsModel m;
        std::vector<AlgVec> betas;
    };
    std::vector<Case> cases{
        {make_sphere(1.0), {make_alg({0.3, -0.2, 1.1}), make_alg({0.0, 0.0, 0.4}), make_alg({-2.0, 1.0, 0.5})}},
        {make_pseudo_sphere(1, 1.0), {make_alg({0.3, -0.2, -2.0}), make_alg({0.0, 0.0, -0.7})}},
        {make_poincare_disk(1.0), {make_alg({0.2, 0.4, -1.7})}},
        {make_poincare_half_plane(1.0), {make_alg({-0.3, 0.2, -1.6})}},
        {make_e2_plane(), {make_alg({1.5, 0.7, -0.4}), make_alg({0.6, -1.0, 0.2})}},
    };
    Rng rng(66);
    int orbit_statement = 0, orbit_proof = 0, orbit_total = 0;
    for (const Case& cs : cases) {
        const GibbsModel& m = cs.m;
        double grad = 0.0, hess = 0.0, min_eig = 1e300, tP = 0.0, tE = 0.0, tS = 0.0, Tb = 0.0;
        for (const AlgVec& beta : cs.betas) {
            const ThermoReport r = thermo(m, beta);
            const double h1 = 1e-4, h2 = 5e-4;
            const auto lp = [&](const AlgVec& b) { return thermo(m, b).logP; };
            AlgVec g(m.dim_g);
            AlgMat H(m.dim_g, m.dim_g);
            for (int i = 0; i < m.dim_g; ++i) {
                const AlgVec ei = AlgVec::Unit(m.dim_g, i);
                g[i] = (lp(beta + h1 * ei) - lp(beta - h1 * ei)) / (2.0 * h1);
                for (int k = 0; k < m.dim_g; ++k) {
                    const AlgVec ek = AlgVec::Unit(m.dim_g, k);
                    H(i, k) = (lp(beta + h2 * (ei + ek)) - lp(beta + h2 * (ei - ek)) - lp(beta - h2 * (ei - ek)) +
                               lp(beta - h2 * (ei + ek))) / (4.0 * h2 * h2);
                }
            }
            grad = std::max(grad, rel_err_vec(r.E_J, AlgVec(-g)));
            hess = std::max(hess, rel_err_vec(r.Gamma, H));
            min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<AlgMat>(r.Gamma).eigenvalues().minCoeff());
            for (int k = 0; k < 20; ++k) {
                const Mat3 gg = m.group_exp(random_alg(rng, m.dim_g, 0.4), 1.0);
                const Transported t = thermo_pullback(m, gg, beta);
                const ThermoReport d = thermo(m, t.beta);
                tP = std::max(tP, rel_err(t.P, d.P));
                tE = std::max(tE, rel_err_vec(t.E_J, d.E_J));
                tS = std::max(tS, rel_err(t.S, d.S));
            }
            Tb = std::max(Tb, cocycle_Theta_beta(m, beta, beta).norm());
            for (int k = 0; k < 3; ++k) {
                const OrbitMetricCheck om =
                    orbit_metric_check(m, beta, random_alg(rng, m.dim_g, 0.7), random_alg(rng, m.dim_g, 0.7));
                const double scale = std::max(1.0, std::abs(om.lhs));
                ++orbit_total;
                if (std::abs(om.lhs - om.rhs_statement) <= 1e-7 * scale) ++orbit_statement;
                if (std::abs(om.lhs - om.rhs_proof) <= 1e-7 * scale) ++orbit_proof;
            }
        }
        const std::string tag = m.name + ": ";
        c.le(tag + "E_J = -grad log P", grad, 1e-5);
        c.le(tag + "Gamma = Hessian of log P", hess, 1e-5);
        c.truth(tag + "Gamma positive definite (min eigenvalue " + Criterion::num(min_eig) + ")", min_eig > 0.0);
        c.le(tag + "transport of P, 20 elements per temperature", tP, 1e-7);
        c.le(tag + "transport of E_J", tE, 1e-7);
        c.le(tag + "transport of S", tS, 1e-7);
        c.le(tag + "Theta_beta(beta) = 0", Tb, 1e-9);
    }

    for (const auto& [m, beta] : std::vector<std::pair<GibbsModel, AlgVec>>{
             {make_sphere(1.0), make_alg({0.0, 0.0, 1.0})}, {make_e2_plane(), make_alg({2.0, 1.0, 0.0})}}) {
        const GridDensity rho = gibbs_grid_density(m, beta);
        const double S = entropy(m, beta);
        double worst = -1e300, mean_res = 0.0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const GridDensity r1 = perturb_matched_mean(rho, 0.05, seed);
            worst = std::max(worst, entropy_functional(r1) - S);
            mean_res = std::max(mean_res, (grid_mean(r1) - grid_mean(rho)).cwiseAbs().maxCoeff());
        }
        c.truth(m.name + ": 50 matched-mean perturbations strictly lower s (max s - S = " + Criterion::num(worst) + ")",
                worst < 0.0);
        c.le(m.name + ": perturbation mean residual", mean_res, 1e-8);
    }
    const bool one = (orbit_statement == orbit_total) != (orbit_proof == orbit_total);
    c.note("orbit metric: Gamma([beta,X1],[beta,Y1]) = <Theta_beta(X1),[beta,Y1]> in " +
           std::to_string(orbit_statement) + "/" + std::to_string(orbit_total) + ", = <Theta_beta(X1),[Y1,beta]> in " +
           std::to_string(orbit_proof) + "/" + std::to_string(orbit_total));
    c.truth(std::string("orbit metric identity holds under exactly one bracket convention (") +
                (orbit_statement == orbit_total ? "[beta, X1]" : "[X1, beta]") + ")",
            one);
    return c.finish();
}

bool criterion7() {
    Criterion c(7, "entropy toolkit");
    for (const auto& [m, beta] : std::vector<std::pair<GibbsModel, AlgVec>>{
             {make_sphere(1.0), make_alg({0.0, 0.0, 1.0})}, {make_pseudo_sphere(1, 1.0), make_alg({0.0, 0.0, -2.0})}}) {
        const GridDensity rho = gibbs_grid_density(m, beta);
        for (int N : {8, 64, 512})
            c.le(m.name + " N=" + std::to_string(N) + ": |H - s_Jaynes - log N|", std::abs(discretize(rho, N).check), 1e-6);
        const GridDensity bumped = perturb_matched_mean(rho, 0.2, 7);
        const double s0 = entropy_functional(bumped);
        for (double tau : {0.3, 1.7})
            c.le(m.name + " tau=" + Criterion::num(tau) + ": |s(flow(rho)) - s(rho)| (non-Gibbs rho)",
                 std::abs(entropy_functional(flow_pushforward(bumped, tau)) - s0), 1e-6);
        double diff = 0.0;
        for (double tau : {0.3, 1.7}) {
            const GridDensity moved = flow_pushforward(rho, tau);
            for (std::size_t i = 0; i < rho.values.size(); ++i)
                diff = std::max(diff, std::abs(moved.values[i] - rho.values[i]));
        }
        c.le(m.name + ": Gibbs density fixed under its flow (max node difference)", diff, 1e-9);
    }
    return c.finish();
}

bool criterion8() {
    Criterion c(8, "sampler");
    const std::size_t n = 100000;
    for (const auto& [m, beta] : std::vector<std::pair<GibbsModel, AlgVec>>{
             {make_sphere(1.0), make_alg({0.3, -0.2, 1.1})},
             {make_pseudo_sphere(1, 1.0), make_alg({0.3, -0.2, -2.0})},
             {make_e2_plane(), make_alg({1.5, 0.7, -0.4})}}) {
        const ThermoReport r = thermo(m, beta);
        const std::vector<ChartPoint> pts = sample(m, beta, n, 2024);
        AlgVec mean = AlgVec::Zero(m.dim_g);
        for (const ChartPoint& p : pts) mean += m.moment_map(p);
        mean /= double(n);
        double worst = 0.0;
        for (int i = 0; i < m.dim_g; ++i)
            worst = std::max(worst, std::abs(mean[i] - r.E_J[i]) / std::sqrt(r.Gamma(i, i) / double(n)));
        c.le(m.name + ": max |mean - E_J| / (sigma / sqrt n)", worst, 4.0);
        const std::vector<ChartPoint> again = sample(m, beta, n, 2024);
        const bool same = std::memcmp(pts.data(), again.data(), n * sizeof(ChartPoint)) == 0;
        c.truth(m.name + ": identical draws for a repeated seed", same);
    }
    return c.finish();
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<bool (*)()> all{criterion1, criterion2, criterion3, criterion4,
                                      criterion5, criterion6, criterion7, criterion8};
    std::vector<int> which;
    if (argc > 1) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > 8) {
            std::cerr << "usage: acceptance [1-8]\n";
            return 2;
        }
        which.push_back(k);
    } else {
        for (int k = 1; k <= 8; ++k) which.push_back(k);
    }
    bool ok = true;
    for (int k : which) {
        try {
            ok = all[std::size_t(k - 1)]() && ok;
        } catch (const std::exception& e) {
            std::cout << "FAIL criterion " << k << ": exception: " << e.what() << "\n";
            ok = false;
        }
    }
    return ok ? 0 : 1;
}
