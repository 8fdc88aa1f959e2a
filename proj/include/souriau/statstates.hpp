#pragma once

// Statistical states sampled on a quadrature grid: entropy functional,
// Jaynes correction, equal-measure discretization, matched-mean
// perturbations and transport by the rotation flow.

#include "souriau/gibbs.hpp"

#include <unsupported/Eigen/FFT>

#include <memory>
#include <numeric>

namespace souriau {

struct GridNode {
    double q0 = 0.0;
    double q1 = 0.0;
    ChartPoint p;
    double measure = 0.0;  // Liouville measure carried by the node
    AlgVec J;
};

/// Consecutive nodes sharing q0 and equispaced in the periodic coordinate, starting at its lower bound.
struct GridStrip {
    std::size_t offset = 0;
    std::size_t count = 0;
};

struct GridLayout {
    std::shared_ptr<const GibbsModel> model;
    std::vector<GridNode> nodes;
    std::vector<GridStrip> strips;  // empty unless axis 1 is periodic
    double total_measure = 0.0;

    bool periodic() const { return !strips.empty(); }
};

struct GridDensity {
    std::shared_ptr<const GridLayout> layout;
    std::vector<double> values;

    double mass() const {
        double m = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) m += values[i] * layout->nodes[i].measure;
        return m;
    }

    bool normalized(double tol = 1e-8) const { return std::abs(mass() - 1.0) <= tol; }
};

inline constexpr double underflow_floor = 1e-300;

/// Grid of the quadrature plan that evaluates the Gibbs state at beta.
inline std::shared_ptr<const GridLayout> make_grid(const GibbsModel& m, const AlgVec& beta,
                                                   const QuadratureScheme& q = {}) {
    Evaluation ev = evaluate(m, beta, q);
    if (ev.verdict != Verdict::inside) throw DivergenceError(m.name + ": " + ev.reason);
    auto layout = std::make_shared<GridLayout>();
    layout->model = std::make_shared<const GibbsModel>(m);
    for (QuadCell& cell : ev.plan.cells) {
        detail::visit_cell(m, q, cell, false, beta, nullptr, [&](const detail::NodeSample& s) {
            layout->nodes.push_back({s.q0, s.q1, s.p, s.measure, s.J});
        });
        if (ev.plan.periodic) {
            std::size_t off = layout->nodes.size();
            for (int c : cell.phi_counts) off -= std::size_t(c);
            for (int c : cell.phi_counts) {
                layout->strips.push_back({off, std::size_t(c)});
                off += std::size_t(c);
            }
        }
    }
    for (const GridNode& n : layout->nodes) layout->total_measure += n.measure;
    return layout;
}

inline GridDensity gibbs_grid_density(const GibbsModel& m, const AlgVec& beta, const QuadratureScheme& q = {}) {
    const ThermoReport r = thermo(m, beta, q);
    GridDensity d{make_grid(m, beta, q), {}};
    d.values.reserve(d.layout->nodes.size());
    for (const GridNode& n : d.layout->nodes) d.values.push_back(std::exp(-n.J.dot(beta) - r.logP));
    return d;
}

/// Density proportional to f on the layout, normalized on the grid.
template <class F>
GridDensity density_from(std::shared_ptr<const GridLayout> layout, F&& f) {
    GridDensity d{std::move(layout), {}};
    d.values.reserve(d.layout->nodes.size());
    for (const GridNode& n : d.layout->nodes) d.values.push_back(f(n));
    const double mass = d.mass();
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("density_from: mass must be positive");
    for (double& v : d.values) v /= mass;
    return d;
}

inline GridDensity uniform_density(std::shared_ptr<const GridLayout> layout) {
    return density_from(std::move(layout), [](const GridNode&) { return 1.0; });
}

/// s(rho) = -sum rho log rho dlambda, with 0 log 0 = 0 below the underflow floor.
inline double entropy_functional(const GridDensity& rho) {
    double s = 0.0;
    for (std::size_t i = 0; i < rho.values.size(); ++i) {
        const double v = rho.values[i];
        if (v < 0.0 || !std::isfinite(v)) throw std::invalid_argument("entropy_functional: negative density value");
        if (v <= underflow_floor) continue;
        s -= v * std::log(v) * rho.layout->nodes[i].measure;
    }
    return s;
}

/// Entropy relative to a window of Liouville measure W.
inline double jaynes_entropy(const GridDensity& rho, double W) {
    if (!(W > 0.0) || !std::isfinite(W)) throw std::invalid_argument("jaynes_entropy: window measure must be positive");
    return entropy_functional(rho) - std::log(W);
}

inline AlgVec grid_mean(const GridDensity& rho) {
    const int dim = rho.layout->model->dim_g;
    AlgVec e = AlgVec::Zero(dim);
    for (std::size_t i = 0; i < rho.values.size(); ++i)
        e += rho.values[i] * rho.layout->nodes[i].measure * rho.layout->nodes[i].J;
    return e;
}

struct Discretization {
    std::vector<double> k;   // probabilities of the N equal-measure level sets
    double H = 0.0;          // Shannon entropy of k
    double s_jaynes = 0.0;   // Jaynes entropy of the level-set average of rho
    double window = 0.0;     // Liouville measure of the grid window
    double check = 0.0;      // H - (s_jaynes + log N)
};

/// N level sets of rho with equal Liouville measure, nodes ordered by density
/// (ties by index) and node measure split at the quantile boundaries.
inline Discretization discretize(const GridDensity& rho, int N) {
    if (N < 2) throw std::invalid_argument("discretize: N must be at least 2");
    const auto& nodes = rho.layout->nodes;
    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rho.values[a] < rho.values[b]; });
    Discretization d;
    d.window = rho.layout->total_measure;
    const double width = d.window / N;
    d.k.assign(std::size_t(N), 0.0);
    double cum = 0.0;
    int bin = 0;
    for (std::size_t idx : order) {
        double mu = nodes[idx].measure;
        const double v = rho.values[idx];
        while (mu > 0.0) {
            double take = mu;
            if (bin < N - 1) {
                const double room = (bin + 1) * width - cum;
                if (room <= 0.0) {
                    ++bin;
                    continue;
                }
                take = std::min(mu, room);
            }
            d.k[std::size_t(bin)] += v * take;
            cum += take;
            mu = take == mu ? 0.0 : mu - take;
        }
    }
    for (double ki : d.k)
        if (ki > underflow_floor) d.H -= ki * std::log(ki);
    // level-set average density c_i = k_i / width
    double s_avg = 0.0;
    for (double ki : d.k) {
        const double c = ki / width;
        if (c > underflow_floor) s_avg -= width * c * std::log(c);
    }
    d.s_jaynes = s_avg - std::log(d.window);
    d.check = d.H - (d.s_jaynes + std::log(double(N)));
    return d;
}

namespace detail {

/// Mean and spread of a quadrature coordinate under rho, for bump placement.
inline std::pair<double, double> coordinate_moments(const GridDensity& rho, int axis) {
    double m = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < rho.values.size(); ++i) {
        const double x = axis == 0 ? rho.layout->nodes[i].q0 : rho.layout->nodes[i].q1;
        const double w = rho.values[i] * rho.layout->nodes[i].measure;
        m += w * x;
        m2 += w * x * x;
    }
    return {m, std::sqrt(std::max(1e-12, m2 - m * m))};
}

}  // namespace detail

/// rho_1 = rho exp(eta + l0 + <l, J>), eta a random smooth bump of sup norm
/// `amplitude`, with (l0, l) solved so that rho_1 keeps the mass and the mean of J.
inline GridDensity perturb_matched_mean(const GridDensity& rho, double amplitude, std::uint64_t seed) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw std::invalid_argument("perturb_matched_mean: amplitude must be finite and non-negative");
    if (amplitude == 0.0) return rho;
    const auto& L = *rho.layout;
    const int dim = L.model->dim_g;
    const std::size_t n = rho.values.size();

    // smooth bump: truncated cosine series with 1/k^2 decay
    constexpr int K = 4;
    Rng rng(seed);
    double coef[K + 1][K + 1], ph0[K + 1][K + 1], ph1[K + 1][K + 1];
    for (int a = 0; a <= K; ++a)
        for (int b = 0; b <= K; ++b) {
            coef[a][b] = (a == 0 && b == 0) ? 0.0 : rng.normal() / double(a * a + b * b);
            ph0[a][b] = 2.0 * std::numbers::pi * rng.uniform();
            ph1[a][b] = 2.0 * std::numbers::pi * rng.uniform();
        }
    const auto [c0, w0] = detail::coordinate_moments(rho, 0);
    const auto [c1, w1] = detail::coordinate_moments(rho, 1);
    const bool periodic1 = L.model->axes[1].kind == AxisKind::periodic;
    const double period = L.model->axes[1].hi - L.model->axes[1].lo;
    std::vector<double> eta(n);
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s0 = std::numbers::pi * (std::tanh((L.nodes[i].q0 - c0) / (2.0 * w0)) + 1.0) / 2.0;
        const double s1 = periodic1 ? 2.0 * std::numbers::pi * (L.nodes[i].q1 - L.model->axes[1].lo) / period
                                    : std::numbers::pi * (std::tanh((L.nodes[i].q1 - c1) / (2.0 * w1)) + 1.0) / 2.0;
        double e = 0.0;
        for (int a = 0; a <= K; ++a)
            for (int b = 0; b <= K; ++b)
                if (coef[a][b] != 0.0) e += coef[a][b] * std::cos(a * s0 + ph0[a][b]) * std::cos(b * s1 + ph1[a][b]);
        eta[i] = e;
        sup = std::max(sup, std::abs(e));
    }
    for (double& e : eta) e *= amplitude / sup;

    const AlgVec target = grid_mean(rho);
    const double mass0 = rho.mass();
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(dim + 1);
    {
        double z = 0.0;
        for (std::size_t i = 0; i < n; ++i) z += rho.values[i] * std::exp(eta[i]) * L.nodes[i].measure;
        lam[0] = std::log(mass0 / z);
    }
    GridDensity out{rho.layout, std::vector<double>(n)};
    const auto build = [&](const Eigen::VectorXd& l, Eigen::VectorXd& F, Eigen::MatrixXd& Jac) {
        F = Eigen::VectorXd::Zero(dim + 1);
        Jac = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
        Eigen::VectorXd phi(dim + 1);
        for (std::size_t i = 0; i < n; ++i) {
            const double ex = eta[i] + l[0] + l.tail(dim).dot(L.nodes[i].J);
            const double v = rho.values[i] * std::exp(ex);
            out.values[i] = v;
            phi[0] = 1.0;
            phi.tail(dim) = L.nodes[i].J;
            const double w = v * L.nodes[i].measure;
            F += w * phi;
            Jac.noalias() += w * phi * phi.transpose();
        }
        F[0] -= mass0;
        F.tail(dim) -= target;
        return F.allFinite() && Jac.allFinite();
    };
    Eigen::VectorXd F;
    Eigen::MatrixXd Jac;
    if (!build(lam, F, Jac)) throw std::runtime_error("perturb_matched_mean: positivity lost (amplitude too large)");
    const double scale = 1.0 + target.cwiseAbs().maxCoeff();
    for (int it = 0; it < 60 && F.cwiseAbs().maxCoeff() > 1e-13 * scale; ++it) {
        const Eigen::VectorXd step = Jac.ldlt().solve(F);
        double t = 1.0;
        const double f0 = F.norm();
        Eigen::VectorXd trial;
        bool ok = false;
        for (int h = 0; h < 40; ++h, t *= 0.5) {
            trial = lam - t * step;
            if (build(trial, F, Jac) && F.norm() < f0) {
                ok = true;
                break;
            }
        }
        if (!ok) break;
        lam = trial;
    }
    build(lam, F, Jac);
    if (!(F.cwiseAbs().maxCoeff() <= 1e-9 * scale))
        throw std::runtime_error("perturb_matched_mean: moment matching failed (amplitude too large)");
    return out;
}

/// Transport of rho by the flow of <J, e_z> over time tau: rho_tau(z, phi) = rho(z, phi + tau),
/// resampled by trigonometric interpolation along each periodic strip.
inline GridDensity flow_pushforward(const GridDensity& rho, double tau) {
    const auto& L = *rho.layout;
    if (!L.model->rotation_flow || !L.periodic())
        throw std::invalid_argument("flow_pushforward: model " + L.model->name + " has no implemented rotation flow");
    if (tau == 0.0) return rho;
    GridDensity out{rho.layout, rho.values};
    Eigen::FFT<double> fft;
    std::vector<double> in;
    std::vector<std::complex<double>> spec;
    std::vector<double> back;
    for (const GridStrip& s : L.strips) {
        const int N = int(s.count);
        in.assign(rho.values.begin() + std::ptrdiff_t(s.offset), rho.values.begin() + std::ptrdiff_t(s.offset + s.count));
        double peak = 0.0;
        for (double v : in) peak = std::max(peak, std::abs(v));
        if (peak == 0.0) continue;
        fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
        fft.fwd(spec, in);
        for (int m = 0; m < int(spec.size()); ++m) {
            if (2 * m == N)
                spec[std::size_t(m)] *= std::cos(m * tau);
            else
                spec[std::size_t(m)] *= std::polar(1.0, m * tau);
        }
        fft.inv(back, spec);
        for (int k = 0; k < N; ++k) {
            double v = back[std::size_t(k)];
            if (v < 0.0) {
                if (v < -1e-9 * peak) throw std::runtime_error("flow_pushforward: strip under-resolved");
                v = 0.0;
            }
            out.values[s.offset + std::size_t(k)] = v;
        }
    }
    return out;
}

}  // namespace souriau
