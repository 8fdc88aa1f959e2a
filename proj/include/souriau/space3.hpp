#pragma once

// Oriented three-dimensional (pseudo-)Euclidean space F, identified both with
// the Lie algebra g of its symmetry group (SO(3) or SO(2,1)) and with g*.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace souriau {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Coefficient vectors of (co)algebra elements; every algebra handled here has dimension <= 4.
inline constexpr int max_algebra_dim = 4;
using AlgVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, max_algebra_dim, 1>;
using AlgMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, max_algebra_dim, max_algebra_dim>;

/// Signature selector: zeta = +1 gives (+,+,+), zeta = -1 gives (+,+,-).
class SpaceConfig {
public:
    explicit SpaceConfig(int zeta = 1) : zeta_(zeta) {
        if (zeta != 1 && zeta != -1)
            throw std::invalid_argument("SpaceConfig: zeta must be +1 or -1, got " + std::to_string(zeta));
    }

    static SpaceConfig euclidean() { return SpaceConfig(1); }
    static SpaceConfig minkowski() { return SpaceConfig(-1); }

    int zeta() const { return zeta_; }
    bool lorentzian() const { return zeta_ == -1; }

    /// Gram matrix of an admissible basis, diag(1, 1, zeta).
    Mat3 metric() const { return Eigen::Vector3d(1.0, 1.0, double(zeta_)).asDiagonal(); }

    bool operator==(const SpaceConfig&) const = default;

private:
    int zeta_;
};

inline const Vec3 e_x{1.0, 0.0, 0.0};
inline const Vec3 e_y{0.0, 1.0, 0.0};
inline const Vec3 e_z{0.0, 0.0, 1.0};

inline double dot(const Vec3& v, const Vec3& w, SpaceConfig cfg) {
    return v.x() * w.x() + v.y() * w.y() + cfg.zeta() * v.z() * w.z();
}

/// Adapted cross product: the unique bilinear map with j(v x w) = [j(v), j(w)].
inline Vec3 cross(const Vec3& v, const Vec3& w, SpaceConfig cfg) {
    return {v.y() * w.z() - v.z() * w.y(),
            v.z() * w.x() - v.x() * w.z(),
            cfg.zeta() * (v.x() * w.y() - v.y() * w.x())};
}

/// Lie algebra isomorphism F -> g, as an endomorphism of F.
inline Mat3 j(const Vec3& v, SpaceConfig cfg) {
    const double a = v.x(), b = v.y(), c = v.z(), z = cfg.zeta();
    Mat3 m;
    m << 0.0, -c, b,
         c, 0.0, -a,
         -z * b, z * a, 0.0;
    return m;
}

/// Deviation of m from the algebra condition m^T eta + eta m = 0 (max abs entry).
inline double algebra_defect(const Mat3& m, SpaceConfig cfg) {
    const Mat3 eta = cfg.metric();
    return (m.transpose() * eta + eta * m).cwiseAbs().maxCoeff();
}

inline Vec3 j_inv(const Mat3& m, SpaceConfig cfg, double tol = 1e-10) {
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    if (algebra_defect(m, cfg) > tol * scale)
        throw std::invalid_argument("j_inv: matrix is not an element of the Lie algebra of F");
    return {m(2, 1) * cfg.zeta(), m(0, 2), m(1, 0)};
}

/// Dual-basis components of scal(v), defined by <scal(v), w> = v . w.
inline Vec3 scal(const Vec3& v, SpaceConfig cfg) { return {v.x(), v.y(), cfg.zeta() * v.z()}; }

/// Inverse of scal: the vector whose scalar products reproduce the covector.
inline Vec3 unscal(const Vec3& xi, SpaceConfig cfg) { return {xi.x(), xi.y(), cfg.zeta() * xi.z()}; }

// ---------------------------------------------------------------------------
// Hodge star on the exterior algebra of F, in coefficient form.

/// Homogeneous multivector in the admissible basis. Grade 0 and 3 use c[0];
/// grade 1 uses (e_x, e_y, e_z); grade 2 uses (e_y^e_z, e_z^e_x, e_x^e_y).
struct Multivector {
    int grade = 0;
    std::array<double, 3> c{0.0, 0.0, 0.0};

    bool operator==(const Multivector&) const = default;
};

inline Multivector hodge(const Multivector& m, SpaceConfig cfg) {
    const double z = cfg.zeta();
    switch (m.grade) {
    case 0: return {3, {m.c[0], 0.0, 0.0}};
    case 3: return {0, {z * m.c[0], 0.0, 0.0}};
    // *(e_x) = e_y^e_z, *(e_y) = e_z^e_x, *(e_z) = zeta e_x^e_y
    case 1: return {2, {m.c[0], m.c[1], z * m.c[2]}};
    // *(e_y^e_z) = zeta e_x, *(e_z^e_x) = zeta e_y, *(e_x^e_y) = e_z
    case 2: return {1, {z * m.c[0], z * m.c[1], m.c[2]}};
    default: throw std::invalid_argument("hodge: grade must be in 0..3, got " + std::to_string(m.grade));
    }
}

/// Endomorphism of F associated with a bivector through the metric:
/// (u ^ w)(v) = (u.v) w - (w.v) u.
inline Mat3 bivector_endomorphism(const Multivector& b, SpaceConfig cfg) {
    if (b.grade != 2) throw std::invalid_argument("bivector_endomorphism: grade-2 input required");
    const std::array<std::pair<Vec3, Vec3>, 3> pairs{{{e_y, e_z}, {e_z, e_x}, {e_x, e_y}}};
    Mat3 m = Mat3::Zero();
    for (int k = 0; k < 3; ++k) {
        const auto& [u, w] = pairs[k];
        for (int col = 0; col < 3; ++col) {
            const Vec3 v = Vec3::Unit(col);
            m.col(col) += b.c[k] * (dot(u, v, cfg) * w - dot(w, v, cfg) * u);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Causal structure.

enum class CausalClass { zero, spacelike, timelike_future, timelike_past, lightlike_future, lightlike_past };

inline const char* to_string(CausalClass c) {
    switch (c) {
    case CausalClass::zero: return "zero";
    case CausalClass::spacelike: return "spacelike";
    case CausalClass::timelike_future: return "timelike-future";
    case CausalClass::timelike_past: return "timelike-past";
    case CausalClass::lightlike_future: return "lightlike-future";
    case CausalClass::lightlike_past: return "lightlike-past";
    }
    return "?";
}

inline constexpr double causal_tolerance = 1e-12;

inline CausalClass classify(const Vec3& v, SpaceConfig cfg, double tol = causal_tolerance) {
    if (v.cwiseAbs().maxCoeff() <= tol) return CausalClass::zero;
    const double n = dot(v, v, cfg);
    if (n > tol) return CausalClass::spacelike;
    // with zeta = +1 a nonzero vector always has n > 0 up to rounding
    if (!cfg.lorentzian()) return CausalClass::spacelike;
    const bool future = v.z() > 0.0;
    if (n < -tol) return future ? CausalClass::timelike_future : CausalClass::timelike_past;
    return future ? CausalClass::lightlike_future : CausalClass::lightlike_past;
}

// ---------------------------------------------------------------------------
// Symmetry group G (SO(3) or the restricted SO(2,1)).

/// exp(t j(v)): element of the one-parameter subgroup generated by v.
inline Mat3 group_exp(const Vec3& v, double t, SpaceConfig cfg) {
    const Mat3 a = t * j(v, cfg);
    return a.exp();
}

/// Max abs violation of g^T eta g = eta, det g = 1 (and g33 > 0 when zeta = -1).
inline double group_defect(const Mat3& g, SpaceConfig cfg) {
    const Mat3 eta = cfg.metric();
    double d = (g.transpose() * eta * g - eta).cwiseAbs().maxCoeff();
    d = std::max(d, std::abs(g.determinant() - 1.0));
    if (cfg.lorentzian() && g(2, 2) <= 0.0) d = std::max(d, 1.0);
    return d;
}

inline bool is_group_element(const Mat3& g, SpaceConfig cfg, double tol = 1e-10) {
    return group_defect(g, cfg) <= tol * (1.0 + g.cwiseAbs().maxCoeff());
}

inline Vec3 natural_action(const Mat3& g, const Vec3& v) { return g * v; }

/// Inverse of a group element: g^{-1} = eta g^T eta.
inline Mat3 group_inverse(const Mat3& g, SpaceConfig cfg) {
    const Mat3 eta = cfg.metric();
    return eta * g.transpose() * eta;
}

/// Rotation about e_z by angle a.
inline Mat3 rotation_z(double a) {
    Mat3 r;
    r << std::cos(a), -std::sin(a), 0.0,
         std::sin(a), std::cos(a), 0.0,
         0.0, 0.0, 1.0;
    return r;
}

/// Group element g with g(e_z) = u for a unit vector u (u.u = zeta, and for
/// zeta = -1, u future directed). Rotation about e_z composed with a rotation
/// (zeta = 1) or boost (zeta = -1) in the (x, z) plane.
inline Mat3 frame_to(const Vec3& u, SpaceConfig cfg) {
    const double rho = std::hypot(u.x(), u.y());
    const double az = rho > 0.0 ? std::atan2(u.y(), u.x()) : 0.0;
    Mat3 tilt = Mat3::Identity();
    if (cfg.lorentzian()) {
        const double ch = u.z(), sh = rho;
        tilt << ch, 0.0, sh,
                0.0, 1.0, 0.0,
                sh, 0.0, ch;
    } else {
        const double c = u.z(), s = rho;
        tilt << c, 0.0, s,
                0.0, 1.0, 0.0,
                -s, 0.0, c;
    }
    return rotation_z(az) * tilt;
}

// ---------------------------------------------------------------------------
// Generic structure constants and the infinitesimal coadjoint action.

/// Structure constants c(i, j, k) with [b_i, b_j] = sum_k c(i, j, k) b_k.
class StructureConstants {
public:
    StructureConstants() = default;

    explicit StructureConstants(int dim) : dim_(dim), c_(std::size_t(dim * dim * dim), 0.0) {
        if (dim < 1 || dim > max_algebra_dim)
            throw std::invalid_argument("StructureConstants: dimension must be in 1.." + std::to_string(max_algebra_dim));
    }

    /// Structure constants of F with the adapted cross product.
    static StructureConstants of_space(SpaceConfig cfg) {
        StructureConstants sc(3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const Vec3 w = cross(Vec3::Unit(a), Vec3::Unit(b), cfg);
                for (int k = 0; k < 3; ++k) sc(a, b, k) = w[k];
            }
        return sc;
    }

    int dim() const { return dim_; }
    double& operator()(int i, int j, int k) { return c_[std::size_t((i * dim_ + j) * dim_ + k)]; }
    double operator()(int i, int j, int k) const { return c_[std::size_t((i * dim_ + j) * dim_ + k)]; }

    AlgVec bracket(const AlgVec& x, const AlgVec& y) const {
        check_dim(x);
        check_dim(y);
        AlgVec out = AlgVec::Zero(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                const double xy = x[i] * y[j];
                if (xy == 0.0) continue;
                for (int k = 0; k < dim_; ++k) out[k] += xy * (*this)(i, j, k);
            }
        return out;
    }

    /// Matrix of ad_X in the basis: column j is [X, b_j].
    AlgMat ad(const AlgVec& x) const {
        AlgMat m(dim_, dim_);
        for (int jj = 0; jj < dim_; ++jj) m.col(jj) = bracket(x, AlgVec::Unit(dim_, jj));
        return m;
    }

    /// Largest violation of antisymmetry and of the Jacobi identity on basis triples.
    double defect() const {
        double d = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k) d = std::max(d, std::abs((*this)(i, j, k) + (*this)(j, i, k)));
        for (int a = 0; a < dim_; ++a)
            for (int b = 0; b < dim_; ++b)
                for (int c = 0; c < dim_; ++c) {
                    const AlgVec ea = AlgVec::Unit(dim_, a), eb = AlgVec::Unit(dim_, b), ec = AlgVec::Unit(dim_, c);
                    const AlgVec jac = bracket(ea, bracket(eb, ec)) + bracket(eb, bracket(ec, ea)) +
                                     bracket(ec, bracket(ea, eb));
                    d = std::max(d, jac.cwiseAbs().maxCoeff());
                }
        return d;
    }

    void validate(double tol = 1e-12) const {
        if (dim_ < 1 || defect() > tol)
            throw std::invalid_argument("StructureConstants: not a Lie bracket (antisymmetry or Jacobi fails)");
    }

private:
    void check_dim(const AlgVec& v) const {
        if (v.size() != dim_) throw std::invalid_argument("StructureConstants: dimension mismatch");
    }

    int dim_ = 0;
    std::vector<double> c_;
};

/// ad*_X xi, defined by <ad*_X xi, Y> = <xi, [X, Y]>.
inline AlgVec coad_inf(const AlgVec& x, const AlgVec& xi, const StructureConstants& sc) {
    return sc.ad(x).transpose() * xi;
}

}  // namespace souriau
