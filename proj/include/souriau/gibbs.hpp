#pragma once

// Generic Gibbs-state engine for a Hamiltonian action of a Lie group on a
// two-dimensional symplectic manifold: partition function by truncated
// quadrature, thermodynamic functions, Souriau-Fisher metric, cocycles,
// Legendre inversion, adjoint transport and sampling.

#include "souriau/quadrature.hpp"
#include "souriau/space3.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace souriau {

/// A point of the model's chart (coordinate names live in the model).
struct ChartPoint {
    double a = 0.0;
    double b = 0.0;
};

/// Chart point reached from quadrature coordinates, with d(chart)/d(quad).
struct QuadMap {
    ChartPoint p;
    double jacobian = 1.0;
};

struct ThermoReport {
    double P = 0.0;
    double logP = 0.0;
    AlgVec E_J;
    double S = 0.0;
    AlgMat Gamma;
    bool converged = false;
    double est_rel_err = 0.0;
};

enum class Verdict { inside, diverged };

inline const char* to_string(Verdict v) { return v == Verdict::inside ? "inside" : "diverged"; }

class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Deterministic random numbers (bit-identical across platforms).

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open0() { return 1.0 - uniform(); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open0()));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    std::uint64_t bits() { return eng_(); }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// ---------------------------------------------------------------------------

/// A symplectic manifold with a Hamiltonian action, seen through one chart.
/// The partition integral is computed in quadrature coordinates (q0, q1);
/// axis 1 may be periodic, axis 0 never is.
struct GibbsModel {
    std::string name;
    int dim_g = 3;
    std::array<std::string, 2> coord_names{"a", "b"};
    std::array<QuadAxis, 2> axes;
    StructureConstants bracket;

    std::function<QuadMap(double, double)> from_quad;
    std::function<double(const ChartPoint&)> liouville_density;
    std::function<AlgVec(const ChartPoint&)> moment_map;

    // group data, optional
    std::function<Mat3(const AlgVec&, double)> group_exp;
    std::function<ChartPoint(const Mat3&, const ChartPoint&)> group_action;
    std::function<AlgMat(const Mat3&)> adjoint;
    std::function<AlgVec(const Mat3&)> cocycle_theta;
    std::function<AlgVec(const AlgVec&)> cocycle_Theta;

    std::function<std::optional<ThermoReport>(const AlgVec&)> closed_form;
    std::function<std::vector<ChartPoint>(const AlgVec&, std::size_t, std::uint64_t)> sampler;

    /// Axis 1 is the angle of rotations about e_z and the flow of <J, e_z> shifts it.
    bool rotation_flow = false;

    bool has_group() const { return bool(group_action) && bool(adjoint) && bool(group_exp); }

    double pair(const AlgVec& xi, const AlgVec& x) const {
        check_beta(x);
        return xi.dot(x);
    }

    void check_beta(const AlgVec& beta) const {
        if (beta.size() != dim_g)
            throw std::invalid_argument(name + ": expected " + std::to_string(dim_g) + " coefficients, got " +
                                        std::to_string(beta.size()));
        if (!beta.allFinite()) throw std::invalid_argument(name + ": non-finite coefficients");
    }
};

inline AlgVec make_alg(std::initializer_list<double> v) {
    AlgVec out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

inline AlgVec to_alg(const Vec3& v) { return AlgVec(v); }
inline Vec3 to_vec3(const AlgVec& v) {
    if (v.size() != 3) throw std::invalid_argument("to_vec3: length must be 3");
    return {v[0], v[1], v[2]};
}

// ---------------------------------------------------------------------------
// Quadrature plan and evaluation.

struct QuadCell {
    Segment s0;
    Segment s1;
    std::vector<int> phi_counts;  // periodic axis 1: trapezoid nodes per axis-0 node
};

struct QuadPlan {
    std::vector<QuadCell> cells;
    bool periodic = false;
    double shift = 0.0;  // integrand values are stored as exp(-<J, beta> - shift)
    int order = 64;
    int panels = 2;
};

struct Evaluation {
    Verdict verdict = Verdict::diverged;
    std::string reason;
    ThermoReport report;
    double S_direct = 0.0;  // -int rho log rho, summed independently
    QuadPlan plan;
    int doublings = 0;
};

namespace detail {

struct NodeSample {
    double q0 = 0.0;
    double q1 = 0.0;
    ChartPoint p;
    double measure = 0.0;  // quadrature weight x jacobian x Liouville density
    AlgVec J;
    double expo = 0.0;  // -<J, beta>
};

inline bool sample_node(const GibbsModel& m, double q0, double q1, double w, const AlgVec& beta, NodeSample& s) {
    const QuadMap qm = m.from_quad(q0, q1);
    s.q0 = q0;
    s.q1 = q1;
    s.p = qm.p;
    s.measure = w * qm.jacobian * m.liouville_density(qm.p);
    if (!std::isfinite(s.measure)) return false;  // chart degenerates at the truncation edge
    s.J = m.moment_map(qm.p);
    s.expo = -s.J.dot(beta);
    return std::isfinite(s.expo) && std::isfinite(s.measure) && s.J.allFinite();
}

/// Running sums of the zeroth and first moments plus the convergence proxy
/// sum f (1 + |J|^2), all relative to exp(shift).
struct Moments {
    double m0 = 0.0;
    AlgVec m1;
    double proxy = 0.0;
    bool finite = true;

    explicit Moments(int dim = 0) : m1(AlgVec::Zero(dim)) {}

    void add(const NodeSample& s, double shift) {
        const double f = s.measure * std::exp(s.expo - shift);
        m0 += f;
        m1 += f * s.J;
        proxy += f * (1.0 + s.J.squaredNorm());
        if (!std::isfinite(f)) finite = false;
    }

    void scale(double c) {
        m0 *= c;
        m1 *= c;
        proxy *= c;
    }

    Moments& operator+=(const Moments& o) {
        m0 += o.m0;
        m1 += o.m1;
        proxy += o.proxy;
        finite = finite && o.finite;
        return *this;
    }
};

/// Shift bookkeeping: raises the reference exponent when a much larger
/// integrand value appears, rescaling everything accumulated so far.
struct ShiftState {
    double shift = 0.0;
    std::vector<Moments*> rescale;

    void observe(double expo) {
        if (expo > shift + 100.0) {
            const double c = std::exp(shift - expo);
            for (Moments* m : rescale) m->scale(c);
            shift = expo;
        }
    }
};

/// Visits every node of a cell. With adapt = true, the periodic axis is
/// refined per axis-0 node and the chosen counts are stored in the cell.
template <class Visit>
bool visit_cell(const GibbsModel& m, const QuadratureScheme& q, QuadCell& cell, bool adapt, const AlgVec& beta,
                ShiftState* shift, Visit&& visit) {
    const bool periodic = m.axes[1].kind == AxisKind::periodic;
    const std::vector<Node> n0 = panel_nodes(cell.s0, q.panels_per_segment, q.nodes_per_panel);
    NodeSample s;
    if (!periodic) {
        const std::vector<Node> n1 = panel_nodes(cell.s1, q.panels_per_segment, q.nodes_per_panel);
        for (const Node& x : n0)
            for (const Node& y : n1) {
                if (!sample_node(m, x.x, y.x, x.w * y.w, beta, s)) return false;
                if (shift) shift->observe(s.expo);
                visit(s);
            }
        return true;
    }

    const double period = cell.s1.hi - cell.s1.lo;
    if (adapt) cell.phi_counts.assign(n0.size(), q.phi_nodes);
    std::vector<NodeSample> buf;
    for (std::size_t i = 0; i < n0.size(); ++i) {
        const Node& x = n0[i];
        if (!adapt) {
            const int N = cell.phi_counts.at(i);
            const double h = period / N;
            for (int k = 0; k < N; ++k) {
                if (!sample_node(m, x.x, cell.s1.lo + k * h, x.w * h, beta, s)) return false;
                visit(s);
            }
            continue;
        }
        // nested trapezoid refinement; samples carry weight x.w and are rescaled by h at the end
        buf.clear();
        int N = q.phi_nodes;
        double prev = 0.0;
        const auto proxy_of = [&](double sh) {
            double t = 0.0;
            for (const NodeSample& b : buf) t += b.measure * std::exp(b.expo - sh) * (1.0 + b.J.squaredNorm());
            return t;
        };
        for (int k = 0; k < N; ++k) {
            if (!sample_node(m, x.x, cell.s1.lo + k * period / N, x.w, beta, s)) return false;
            if (shift) shift->observe(s.expo);
            buf.push_back(s);
        }
        double sh = shift ? shift->shift : 0.0;
        prev = proxy_of(sh) * (period / N);
        while (N < q.max_phi_nodes) {
            for (int k = 0; k < N; ++k) {
                if (!sample_node(m, x.x, cell.s1.lo + (2 * k + 1) * period / (2 * N), x.w, beta, s)) return false;
                if (shift) shift->observe(s.expo);
                buf.push_back(s);
            }
            N *= 2;
            sh = shift ? shift->shift : 0.0;
            const double cur = proxy_of(sh) * (period / N);
            const double diff = std::abs(cur - prev);
            prev = cur;
            if (!(cur > 0.0) || diff <= 1e-13 * cur) break;
        }
        cell.phi_counts[i] = N;
        const double h = period / N;
        // emit in index order k = 0..N-1 for reproducible summation
        std::vector<const NodeSample*> ordered(std::size_t(N), nullptr);
        {
            // buf holds levels: first q.phi_nodes nodes at stride N / phi_nodes, then odd refinements
            int level_n = q.phi_nodes;
            std::size_t pos = 0;
            const int stride0 = N / level_n;
            for (int k = 0; k < level_n; ++k) ordered[std::size_t(k * stride0)] = &buf[pos++];
            while (level_n < N) {
                const int stride = N / (2 * level_n);
                for (int k = 0; k < level_n; ++k) ordered[std::size_t((2 * k + 1) * stride)] = &buf[pos++];
                level_n *= 2;
            }
        }
        for (const NodeSample* b : ordered) {
            NodeSample t = *b;
            t.measure *= h;
            visit(t);
        }
    }
    return true;
}

struct Truncation {
    AxisTruncation t0, t1;
    explicit Truncation(const GibbsModel& m) : t0(m.axes[0]), t1(m.axes[1]) {}
    bool infinite() const { return t0.axis().infinite() || t1.axis().infinite(); }
    bool exhausted() const { return t0.exhausted() || t1.exhausted(); }
};

/// log of the marginal integrand at axis-0 (or axis-1) coordinate x, summed over the other axis.
inline double log_marginal(const GibbsModel& m, const QuadratureScheme& q, const Truncation& tr, int axis, double x,
                           const AlgVec& beta, double shift) {
    double total = 0.0;
    NodeSample s;
    const AxisTruncation& other = axis == 0 ? tr.t1 : tr.t0;
    const auto add = [&](double y, double w) {
        const double q0 = axis == 0 ? x : y, q1 = axis == 0 ? y : x;
        if (!sample_node(m, q0, q1, w, beta, s)) {
            total = std::numeric_limits<double>::infinity();
            return;
        }
        total += s.measure * std::exp(s.expo - shift);
    };
    if (other.axis().kind == AxisKind::periodic) {
        const int N = 4 * q.phi_nodes;
        const Segment e = other.extent();
        for (int k = 0; k < N; ++k) add(e.lo + k * (e.hi - e.lo) / N, (e.hi - e.lo) / N);
    } else {
        for (const Segment& sg : other.segments())
            for (const Node& n : panel_nodes(sg, q.panels_per_segment, 16)) add(n.x, n.w);
    }
    return total > 0.0 ? std::log(total) : -std::numeric_limits<double>::infinity();
}

/// Outward slope of the log marginal at every open truncation end; returns
/// false if any end fails to decay at rate tail_decay_floor.
inline bool tails_decay(const GibbsModel& m, const QuadratureScheme& q, const Truncation& tr, const AlgVec& beta,
                        double shift, std::string& why) {
    for (int axis = 0; axis < 2; ++axis) {
        const AxisTruncation& t = axis == 0 ? tr.t0 : tr.t1;
        for (const auto& [xb, dir] : t.open_ends()) {
            const double delta = 1e-3 * std::max(1.0, std::abs(xb));
            const double outer = log_marginal(m, q, tr, axis, xb, beta, shift);
            const double inner = log_marginal(m, q, tr, axis, xb - dir * delta, beta, shift);
            if (std::isinf(outer) && outer < 0.0) continue;  // underflowed: decayed
            if (!std::isfinite(outer) || !std::isfinite(inner)) {
                why = "non-finite integrand at the truncation boundary of axis " + m.axes[axis].name;
                return false;
            }
            const double slope = (outer - inner) / delta;
            if (slope >= -q.tail_decay_floor) {
                why = "log-integrand does not decay at the " + std::string(dir > 0 ? "upper" : "lower") +
                      " end of axis " + m.axes[axis].name + " (slope " + std::to_string(slope) + ")";
                return false;
            }
        }
    }
    return true;
}

}  // namespace detail

/// Full evaluation at beta: Omega verdict and, when inside, the thermodynamic report.
inline Evaluation evaluate(const GibbsModel& m, const AlgVec& beta, const QuadratureScheme& q = {}) {
    using namespace detail;
    m.check_beta(beta);
    q.validate();
    if (m.axes[0].kind == AxisKind::periodic) throw std::invalid_argument(m.name + ": axis 0 cannot be periodic");

    Evaluation ev;
    ev.plan.periodic = m.axes[1].kind == AxisKind::periodic;
    ev.plan.order = q.nodes_per_panel;
    ev.plan.panels = q.panels_per_segment;
    const auto fail = [&](std::string why) {
        ev.verdict = Verdict::diverged;
        ev.reason = std::move(why);
        ev.report.converged = false;
        return ev;
    };

    Truncation tr(m);
    Moments total(m.dim_g);
    ShiftState sh;
    // reference exponent from a coarse scan of the initial cell
    {
        NodeSample s;
        const Segment e0 = tr.t0.segments()[0], e1 = tr.t1.segments()[0];
        double best = -std::numeric_limits<double>::infinity();
        for (const Node& x : panel_nodes(e0, 1, 16))
            for (const Node& y : panel_nodes(e1, 1, 16)) {
                if (!sample_node(m, x.x, y.x, 1.0, beta, s)) return fail("non-finite integrand in the initial cell");
                best = std::max(best, s.expo);
            }
        sh.shift = best;
    }
    sh.rescale.push_back(&total);

    const auto run_cells = [&](const std::vector<std::pair<std::size_t, std::size_t>>& pairs, Moments& inc) {
        sh.rescale.push_back(&inc);
        bool ok = true;
        for (const auto& [i, jj] : pairs) {
            QuadCell cell{tr.t0.segments()[i], tr.t1.segments()[jj], {}};
            ok = visit_cell(m, q, cell, true, beta, &sh, [&](const NodeSample& s) { inc.add(s, sh.shift); });
            if (!ok) break;
            ev.plan.cells.push_back(std::move(cell));
        }
        sh.rescale.pop_back();
        return ok && inc.finite;
    };

    Moments first(m.dim_g);
    if (!run_cells({{0, 0}}, first)) return fail("non-finite integrand");
    total += first;

    const auto grow_once = [&](Moments& inc) {
        const std::size_t old0 = tr.t0.segments().size(), old1 = tr.t1.segments().size();
        if (tr.t0.axis().infinite()) tr.t0.grow(q.growth_factor);
        if (tr.t1.axis().infinite()) tr.t1.grow(q.growth_factor);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < tr.t0.segments().size(); ++i)
            for (std::size_t jj = 0; jj < tr.t1.segments().size(); ++jj)
                if (i >= old0 || jj >= old1) pairs.emplace_back(i, jj);
        return run_cells(pairs, inc);
    };

    double last_rel = 0.0;
    if (tr.infinite()) {
        bool contracted = false;
        for (int k = 1; k <= q.max_doublings && !tr.exhausted(); ++k) {
            Moments inc(m.dim_g);
            if (!grow_once(inc)) return fail("non-finite integrand after " + std::to_string(k) + " doublings");
            total += inc;
            ev.doublings = k;
            if (!(total.m0 > 0.0)) continue;
            const double rel = std::max(std::abs(inc.proxy) / total.proxy, std::abs(inc.m0) / total.m0);
            last_rel = rel;
            if (rel <= q.rel_tol) {
                contracted = true;
                break;
            }
        }
        if (!contracted && tr.exhausted()) return fail("truncation reached the chart limit without contracting");
        if (!contracted)
            return fail("truncation doubling did not contract within " + std::to_string(q.max_doublings) +
                        " doublings");
        std::string why;
        if (!tails_decay(m, q, tr, beta, sh.shift, why)) return fail(why);
        for (int e = 0; e < q.extra_doublings && !tr.exhausted(); ++e) {
            Moments inc(m.dim_g);
            if (!grow_once(inc)) return fail("non-finite integrand in safety doublings");
            total += inc;
            last_rel = std::abs(inc.proxy) / total.proxy;
        }
    }
    if (!(total.m0 > 0.0) || !std::isfinite(total.m0)) return fail("partition integral is not positive and finite");

    ev.plan.shift = sh.shift;
    ThermoReport& r = ev.report;
    r.logP = sh.shift + std::log(total.m0);
    r.P = std::exp(r.logP);
    r.E_J = total.m1 / total.m0;

    // second pass: central moments and direct entropy on the same nodes
    AlgMat cov = AlgMat::Zero(m.dim_g, m.dim_g);
    double m0 = 0.0, ent = 0.0;
    for (QuadCell& cell : ev.plan.cells) {
        visit_cell(m, q, cell, false, beta, nullptr, [&](const NodeSample& s) {
            const double f = s.measure * std::exp(s.expo - sh.shift);
            const AlgVec d = s.J - r.E_J;
            m0 += f;
            cov.noalias() += f * d * d.transpose();
            const double log_rho = s.expo - r.logP;
            ent -= f * log_rho;
        });
    }
    r.Gamma = cov / m0;
    r.Gamma = 0.5 * (r.Gamma + r.Gamma.transpose()).eval();
    ev.S_direct = ent / m0;
    r.S = r.logP + r.E_J.dot(beta);
    r.converged = true;
    r.est_rel_err = std::max(last_rel, 1e-15);
    ev.verdict = Verdict::inside;
    return ev;
}

inline Verdict is_generalized_temperature(const GibbsModel& m, const AlgVec& beta, const QuadratureScheme& q = {}) {
    return evaluate(m, beta, q).verdict;
}

/// Thermodynamic report, throwing DivergenceError outside Omega.
inline ThermoReport thermo(const GibbsModel& m, const AlgVec& beta, const QuadratureScheme& q = {}) {
    Evaluation ev = evaluate(m, beta, q);
    if (ev.verdict != Verdict::inside) throw DivergenceError(m.name + ": " + ev.reason);
    return ev.report;
}

struct PartitionValue {
    double P = 0.0;
    double est_rel_err = 0.0;
};

inline PartitionValue partition(const GibbsModel& m, const AlgVec& beta, const QuadratureScheme& q = {}) {
    const ThermoReport r = thermo(m, beta, q);
    return {r.P, r.est_rel_err};
}

inline AlgVec mean_moment(const GibbsModel& m, const AlgVec& beta, const QuadratureScheme& q = {}) {
    return thermo(m, beta, q).E_J;
}

inline double entropy(const GibbsModel& m, const AlgVec& beta, const QuadratureScheme& q = {}) {
    return thermo(m, beta, q).S;
}

inline AlgMat souriau_metric(const GibbsModel& m, const AlgVec& beta, const QuadratureScheme& q = {}) {
    return thermo(m, beta, q).Gamma;
}

/// Gibbs state at a fixed beta: the density rho_beta with respect to the Liouville measure.
class GibbsState {
public:
    GibbsState(const GibbsModel& m, AlgVec beta, const QuadratureScheme& q = {})
        : model_(m), beta_(std::move(beta)), report_(thermo(m, beta_, q)) {}

    double density(const ChartPoint& p) const { return std::exp(-model_.moment_map(p).dot(beta_) - report_.logP); }
    const ThermoReport& report() const { return report_; }
    const AlgVec& beta() const { return beta_; }

private:
    GibbsModel model_;
    AlgVec beta_;
    ThermoReport report_;
};

inline double gibbs_density(const GibbsModel& m, const AlgVec& beta, const ChartPoint& p,
                            const QuadratureScheme& q = {}) {
    return GibbsState(m, beta, q).density(p);
}

// ---------------------------------------------------------------------------
// Legendre inversion.

struct InvertOptions {
    double tol = 1e-8;
    int max_iter = 100;
    int max_halvings = 40;
};

/// Newton solve of E_J(beta) = e_target from beta0 (DE_J = -Gamma), halving
/// the step whenever the residual grows or the iterate leaves Omega.
inline AlgVec invert_mean(const GibbsModel& m, const AlgVec& e_target, const AlgVec& beta0,
                          const QuadratureScheme& q = {}, const InvertOptions& opt = {}) {
    m.check_beta(beta0);
    if (e_target.size() != m.dim_g) throw std::invalid_argument("invert_mean: target length mismatch");
    AlgVec beta = beta0;
    Evaluation ev = evaluate(m, beta, q);
    if (ev.verdict != Verdict::inside) throw DivergenceError("invert_mean: start point outside Omega");
    AlgVec res = ev.report.E_J - e_target;
    for (int it = 0; it < opt.max_iter; ++it) {
        if (res.norm() <= opt.tol) return beta;
        const AlgVec step = ev.report.Gamma.ldlt().solve(res);
        double t = 1.0;
        bool accepted = false;
        for (int h = 0; h < opt.max_halvings; ++h, t *= 0.5) {
            const AlgVec trial = beta + t * step;
            Evaluation ev2 = evaluate(m, trial, q);
            if (ev2.verdict != Verdict::inside) continue;
            const AlgVec res2 = ev2.report.E_J - e_target;
            if (res2.norm() < res.norm() || res2.norm() <= opt.tol) {
                beta = trial;
                ev = std::move(ev2);
                res = res2;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    if (res.norm() <= opt.tol) return beta;
    throw ConvergenceError("invert_mean: no convergence (residual " + std::to_string(res.norm()) + ")");
}

// ---------------------------------------------------------------------------
// Adjoint transport and cocycles.

inline void require_group(const GibbsModel& m, const char* what) {
    if (!m.has_group()) throw std::invalid_argument(std::string(what) + ": model " + m.name + " has no group data");
}

/// Ad*_{g^{-1}} on covector components: the transpose of Ad_{g^{-1}}.
inline AlgMat coadjoint_inverse(const GibbsModel& m, const Mat3& g) {
    require_group(m, "coadjoint_inverse");
    return m.adjoint(g).inverse().transpose();
}

inline AlgVec theta_of(const GibbsModel& m, const Mat3& g) {
    return m.cocycle_theta ? m.cocycle_theta(g) : AlgVec(AlgVec::Zero(m.dim_g));
}

inline AlgVec Theta_of(const GibbsModel& m, const AlgVec& x) {
    return m.cocycle_Theta ? m.cocycle_Theta(x) : AlgVec(AlgVec::Zero(m.dim_g));
}

struct Transported {
    double P = 0.0;
    AlgVec E_J;
    double S = 0.0;
    AlgVec beta;  // Ad_g beta
};

/// P, E_J and S at Ad_g beta predicted from their values at beta.
inline Transported thermo_pullback(const GibbsModel& m, const Mat3& g, const AlgVec& beta,
                                   const QuadratureScheme& q = {}) {
    require_group(m, "thermo_pullback");
    const ThermoReport r = thermo(m, beta, q);
    const Mat3 ginv = g.inverse();
    Transported t;
    t.beta = m.adjoint(g) * beta;
    t.P = std::exp(theta_of(m, ginv).dot(beta)) * r.P;
    t.E_J = coadjoint_inverse(m, g) * r.E_J + theta_of(m, g);
    t.S = r.S;
    return t;
}

/// theta_beta(g) = theta(g) - E_J(beta) + Ad*_{g^{-1}} E_J(beta).
inline AlgVec cocycle_theta_beta(const GibbsModel& m, const AlgVec& beta, const Mat3& g,
                                 const QuadratureScheme& q = {}) {
    require_group(m, "cocycle_theta_beta");
    const AlgVec E = mean_moment(m, beta, q);
    return theta_of(m, g) - E + coadjoint_inverse(m, g) * E;
}

/// Theta_beta(X) = Theta(X) - ad*_X E_J(beta), as a covector.
inline AlgVec cocycle_Theta_beta(const GibbsModel& m, const AlgVec& beta, const AlgVec& x,
                                 const QuadratureScheme& q = {}) {
    m.check_beta(x);
    const AlgVec E = mean_moment(m, beta, q);
    return Theta_of(m, x) - coad_inf(x, E, m.bracket);
}

struct OrbitMetricCheck {
    double lhs = 0.0;            // Gamma(beta)(X, Y) with X = [beta, X1], Y = [beta, Y1]
    double rhs_statement = 0.0;  // <Theta_beta(X1), [beta, Y1]>
    double rhs_proof = 0.0;      // <Theta_beta(X1), [Y1, beta]>
};

inline OrbitMetricCheck orbit_metric_check(const GibbsModel& m, const AlgVec& beta, const AlgVec& x1,
                                           const AlgVec& y1, const QuadratureScheme& q = {}) {
    m.check_beta(x1);
    m.check_beta(y1);
    const ThermoReport r = thermo(m, beta, q);
    const AlgVec X = m.bracket.bracket(beta, x1), Y = m.bracket.bracket(beta, y1);
    const AlgVec th = Theta_of(m, x1) - coad_inf(x1, r.E_J, m.bracket);
    OrbitMetricCheck c;
    c.lhs = X.dot(r.Gamma * Y);
    c.rhs_statement = th.dot(Y);
    c.rhs_proof = -th.dot(Y);
    return c;
}

// ---------------------------------------------------------------------------

/// n i.i.d. draws from the Gibbs state, deterministic in seed.
inline std::vector<ChartPoint> sample(const GibbsModel& m, const AlgVec& beta, std::size_t n, std::uint64_t seed,
                                      const QuadratureScheme& q = {}) {
    m.check_beta(beta);
    if (!m.sampler) throw std::invalid_argument("sample: model " + m.name + " has no sampler");
    const Evaluation ev = evaluate(m, beta, q);
    if (ev.verdict != Verdict::inside) throw DivergenceError(m.name + ": " + ev.reason);
    if (n == 0) return {};
    return m.sampler(beta, n, seed);
}

/// The same action with moment map J + mu.
inline GibbsModel shift_moment(const GibbsModel& m, const AlgVec& mu) {
    m.check_beta(mu);
    GibbsModel s = m;
    s.name = m.name + "+mu";
    const auto J = m.moment_map;
    s.moment_map = [J, mu](const ChartPoint& p) -> AlgVec { return J(p) + mu; };
    if (m.has_group()) {
        const auto theta = m.cocycle_theta;
        const auto adj = m.adjoint;
        const int dim = m.dim_g;
        s.cocycle_theta = [theta, adj, mu, dim](const Mat3& g) -> AlgVec {
            const AlgVec base = theta ? theta(g) : AlgVec(AlgVec::Zero(dim));
            return base + mu - AlgMat(adj(g).inverse().transpose()) * mu;
        };
    }
    const auto Theta = m.cocycle_Theta;
    const StructureConstants sc = m.bracket;
    const int dim = m.dim_g;
    s.cocycle_Theta = [Theta, sc, mu, dim](const AlgVec& x) -> AlgVec {
        const AlgVec base = Theta ? Theta(x) : AlgVec(AlgVec::Zero(dim));
        return base + coad_inf(x, mu, sc);
    };
    if (m.closed_form) {
        const auto cf = m.closed_form;
        s.closed_form = [cf, mu](const AlgVec& beta) -> std::optional<ThermoReport> {
            std::optional<ThermoReport> r = cf(beta);
            if (!r) return r;
            const double d = mu.dot(beta);
            r->logP -= d;
            r->P = std::exp(r->logP);
            r->E_J += mu;
            return r;
        };
    }
    return s;
}

}  // namespace souriau
