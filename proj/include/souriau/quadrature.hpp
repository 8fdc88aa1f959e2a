#pragma once

// Quadrature primitives for the partition integral: Gauss-Legendre panels on
// (possibly growing) intervals and a refining periodic trapezoid rule.

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace souriau {

/// Parameters of the partition-integral quadrature.
struct QuadratureScheme {
    int nodes_per_panel = 64;        // Gauss-Legendre order, one of 16, 32, 64, 128
    int panels_per_segment = 2;      // panels per truncation segment
    int phi_nodes = 128;             // initial periodic trapezoid nodes
    int max_phi_nodes = 16384;
    double growth_factor = 2.0;      // truncation length multiplier per step
    double rel_tol = 1e-10;
    int max_doublings = 12;
    int extra_doublings = 2;         // taken after the increment test passes
    double tail_decay_floor = 1e-3;  // required outward decay rate of log(integrand)

    void validate() const {
        if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureScheme: rel_tol must be positive");
        if (max_doublings < 1) throw std::invalid_argument("QuadratureScheme: max_doublings must be >= 1");
        if (nodes_per_panel != 16 && nodes_per_panel != 32 && nodes_per_panel != 64 && nodes_per_panel != 128)
            throw std::invalid_argument("QuadratureScheme: nodes_per_panel must be 16, 32, 64 or 128");
        if (panels_per_segment < 1) throw std::invalid_argument("QuadratureScheme: panels_per_segment must be >= 1");
        if (phi_nodes < 4 || max_phi_nodes < phi_nodes)
            throw std::invalid_argument("QuadratureScheme: bad periodic node counts");
        if (!(growth_factor > 1.0)) throw std::invalid_argument("QuadratureScheme: growth_factor must exceed 1");
        if (extra_doublings < 0) throw std::invalid_argument("QuadratureScheme: extra_doublings must be >= 0");
        if (!(tail_decay_floor >= 0.0)) throw std::invalid_argument("QuadratureScheme: tail_decay_floor must be >= 0");
    }
};

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};

namespace detail {

template <unsigned N>
GaussRule make_gauss_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    GaussRule r;
    // boost stores the non-negative half; N is even here so zero is not a node
    for (std::size_t i = a.size(); i-- > 0;) {
        r.x.push_back(-a[i]);
        r.w.push_back(wt[i]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        r.x.push_back(a[i]);
        r.w.push_back(wt[i]);
    }
    return r;
}

}  // namespace detail

inline const GaussRule& gauss_rule(int n) {
    static const GaussRule r16 = detail::make_gauss_rule<16>();
    static const GaussRule r32 = detail::make_gauss_rule<32>();
    static const GaussRule r64 = detail::make_gauss_rule<64>();
    static const GaussRule r128 = detail::make_gauss_rule<128>();
    switch (n) {
    case 16: return r16;
    case 32: return r32;
    case 64: return r64;
    case 128: return r128;
    default: throw std::invalid_argument("gauss_rule: unsupported order " + std::to_string(n));
    }
}

/// A closed interval in a quadrature variable.
struct Segment {
    double lo = 0.0;
    double hi = 0.0;
};

struct Node {
    double x;
    double w;
};

/// Gauss-Legendre nodes on a segment split into equal panels.
inline std::vector<Node> panel_nodes(Segment s, int panels, int order) {
    const GaussRule& g = gauss_rule(order);
    std::vector<Node> out;
    out.reserve(std::size_t(panels) * g.x.size());
    const double h = (s.hi - s.lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = s.lo + p * h;
        const double half = 0.5 * h, mid = a + half;
        for (std::size_t i = 0; i < g.x.size(); ++i) out.push_back({mid + half * g.x[i], half * g.w[i]});
    }
    return out;
}

/// Shape of a quadrature axis. Infinite ends are truncated and grown.
enum class AxisKind { periodic, finite, upper, lower, line };

struct QuadAxis {
    AxisKind kind = AxisKind::finite;
    double lo = 0.0;      // periodic/finite: lower bound; upper: finite end; line: anchor
    double hi = 0.0;      // periodic/finite: upper bound; lower: finite end
    double scale = 1.0;   // initial truncation length for infinite ends
    std::string name;
    double limit = std::numeric_limits<double>::infinity();  // largest truncation length the chart supports

    static QuadAxis periodic(double period, std::string name) { return {AxisKind::periodic, 0.0, period, 1.0, std::move(name)}; }
    static QuadAxis finite(double a, double b, std::string name) { return {AxisKind::finite, a, b, b - a, std::move(name)}; }
    static QuadAxis upper(double a, double scale, std::string name) { return {AxisKind::upper, a, 0.0, scale, std::move(name)}; }
    static QuadAxis lower(double b, double scale, std::string name) { return {AxisKind::lower, 0.0, b, scale, std::move(name)}; }
    static QuadAxis line(double anchor, double scale, std::string name) { return {AxisKind::line, anchor, 0.0, scale, std::move(name)}; }

    bool infinite() const { return kind == AxisKind::upper || kind == AxisKind::lower || kind == AxisKind::line; }

    QuadAxis with_limit(double l) const {
        QuadAxis a = *this;
        a.limit = l;
        return a;
    }
};

/// Segment list of one axis, grown geometrically on its infinite ends.
class AxisTruncation {
public:
    explicit AxisTruncation(const QuadAxis& axis) : axis_(axis) {
        switch (axis.kind) {
        case AxisKind::periodic:
        case AxisKind::finite: segments_.push_back({axis.lo, axis.hi}); break;
        case AxisKind::upper: segments_.push_back({axis.lo, axis.lo + axis.scale}); break;
        case AxisKind::lower: segments_.push_back({axis.hi - axis.scale, axis.hi}); break;
        case AxisKind::line: segments_.push_back({axis.lo - axis.scale, axis.lo + axis.scale}); break;
        }
        length_ = axis.scale;
    }

    const QuadAxis& axis() const { return axis_; }
    const std::vector<Segment>& segments() const { return segments_; }

    /// Extends every infinite end; returns the indices of the new segments.
    std::vector<std::size_t> grow(double factor) {
        std::vector<std::size_t> added;
        if (exhausted()) return added;
        const double next = std::min(length_ * factor, axis_.limit);
        const auto push = [&](Segment s) {
            added.push_back(segments_.size());
            segments_.push_back(s);
        };
        switch (axis_.kind) {
        case AxisKind::upper: push({axis_.lo + length_, axis_.lo + next}); break;
        case AxisKind::lower: push({axis_.hi - next, axis_.hi - length_}); break;
        case AxisKind::line:
            push({axis_.lo - next, axis_.lo - length_});
            push({axis_.lo + length_, axis_.lo + next});
            break;
        default: break;
        }
        length_ = next;
        return added;
    }

    /// Truncation boundaries with their outward direction (+1 or -1).
    std::vector<std::pair<double, int>> open_ends() const {
        switch (axis_.kind) {
        case AxisKind::upper: return {{axis_.lo + length_, +1}};
        case AxisKind::lower: return {{axis_.hi - length_, -1}};
        case AxisKind::line: return {{axis_.lo + length_, +1}, {axis_.lo - length_, -1}};
        default: return {};
        }
    }

    double length() const { return length_; }

    /// True once an infinite end has reached the axis limit.
    bool exhausted() const { return axis_.infinite() && length_ >= axis_.limit; }

    /// Covered interval.
    Segment extent() const {
        switch (axis_.kind) {
        case AxisKind::upper: return {axis_.lo, axis_.lo + length_};
        case AxisKind::lower: return {axis_.hi - length_, axis_.hi};
        case AxisKind::line: return {axis_.lo - length_, axis_.lo + length_};
        default: return {axis_.lo, axis_.hi};
        }
    }

private:
    QuadAxis axis_;
    std::vector<Segment> segments_;
    double length_ = 1.0;
};

}  // namespace souriau
