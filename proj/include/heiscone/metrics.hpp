#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "heiscone/core.hpp"

namespace heiscone {

// The metric family:
//   GL(L)     dx^2 + dy^2 + L w^2 on the Heisenberg group, w = dt + 2x dy - 2y dx
//   GSasaki   GL(1/4), the contact metric g
//   GCone     dr^2 + r^2 g on the cone
//   GAB(C)    (dx^2+dy^2)/a^2 + (w^2+dr^2)/b^2 with a = sqrt(C b)/2, b = C r
//   GPrime    GAB(1), constant holomorphic sectional curvature -1
//   GBergman  (4/rho)|dz2|^2 + (4/rho^2)|dz1 + conj(z2) dz2|^2 on the Siegel domain
//   GSubU     dr^2 + r^2 dt^2 on the half-plane (pullback under (t,r) -> (0,2t,r))
//   GSubC     (1+y^2)dx^2 - 2xy dx dy + (1+x^2)dy^2 on the complex plane
//   GSubU3    dr^2 + r^2 ((1+y^2)dx^2 - 2xy dx dy + (1+x^2)dy^2) on the half-space

enum class MetricKind { GL, GSasaki, GCone, GAB, GPrime, GBergman, GSubU, GSubC, GSubU3 };

struct MetricId {
    MetricKind kind;
    double param = 0.0;  // L for GL, C for GAB

    static MetricId gl(double L) {
        if (!(L > 0)) throw std::invalid_argument("MetricId::gl: L must be positive");
        return {MetricKind::GL, L};
    }
    static MetricId sasaki() { return {MetricKind::GSasaki, 0.25}; }
    static MetricId cone() { return {MetricKind::GCone, 0.0}; }
    static MetricId ab(double C) {
        if (!(C > 0)) throw std::invalid_argument("MetricId::ab: C must be positive");
        return {MetricKind::GAB, C};
    }
    static MetricId prime() { return {MetricKind::GPrime, 1.0}; }
    static MetricId bergman() { return {MetricKind::GBergman, 0.0}; }
    static MetricId sub_u() { return {MetricKind::GSubU, 0.0}; }
    static MetricId sub_c() { return {MetricKind::GSubC, 0.0}; }
    static MetricId sub_u3() { return {MetricKind::GSubU3, 0.0}; }

    friend bool operator==(const MetricId& a, const MetricId& b) {
        return a.kind == b.kind && a.param == b.param;
    }
};

constexpr Manifold manifold_of(const MetricId& m) {
    switch (m.kind) {
        case MetricKind::GL:
        case MetricKind::GSasaki: return Manifold::Heisenberg;
        case MetricKind::GCone:
        case MetricKind::GAB:
        case MetricKind::GPrime: return Manifold::Cone;
        case MetricKind::GBergman: return Manifold::Siegel;
        case MetricKind::GSubU: return Manifold::HalfPlane;
        case MetricKind::GSubC: return Manifold::ComplexPlane;
        case MetricKind::GSubU3: return Manifold::HalfSpace;
    }
    return Manifold::Heisenberg;
}

inline std::string metric_name(const MetricId& m) {
    switch (m.kind) {
        case MetricKind::GL: return "gl(" + std::to_string(m.param) + ")";
        case MetricKind::GSasaki: return "sasaki";
        case MetricKind::GCone: return "cone";
        case MetricKind::GAB: return "gab(" + std::to_string(m.param) + ")";
        case MetricKind::GPrime: return "gprime";
        case MetricKind::GBergman: return "bergman";
        case MetricKind::GSubU: return "subU";
        case MetricKind::GSubC: return "subC";
        case MetricKind::GSubU3: return "subU3";
    }
    return "?";
}

// Contact form components, w = dt + 2x dy - 2y dx, in (x,y,t[,r]) coordinates.
inline Vec omega_components(const Point& p) {
    Vec w(p.dim());
    w[0] = -2.0 * p[1];
    w[1] = 2.0 * p[0];
    w[2] = 1.0;
    return w;
}

namespace detail {

inline Mat heis_metric(const Point& p, double L) {
    const Vec w = omega_components(p);
    Mat g(3, 3);
    g(0, 0) = 1.0;
    g(1, 1) = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) += L * w[i] * w[j];
    return g;
}

inline void require_interior(const Point& p) {
    const int ri = radial_index(p.manifold());
    if (ri >= 0 && p[ri] <= kDomainGuard)
        throw std::domain_error("metric_matrix: point violates the r-guard");
    if (p.manifold() == Manifold::Siegel && rho(p) <= kDomainGuard)
        throw std::domain_error("metric_matrix: point violates the rho-guard");
}

}  // namespace detail

inline Mat metric_matrix(const MetricId& m, const Point& p) {
    if (p.manifold() != manifold_of(m))
        throw std::invalid_argument("metric_matrix: point is not on the metric's manifold");
    detail::require_interior(p);
    switch (m.kind) {
        case MetricKind::GL:
        case MetricKind::GSasaki: {
            const double L = m.kind == MetricKind::GL ? m.param : 0.25;
            return detail::heis_metric(p, L);
        }
        case MetricKind::GCone: {
            const double r = p[3];
            const Mat g3 = detail::heis_metric(heis_point(p[0], p[1], p[2]), 0.25);
            Mat g(4, 4);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) g(i, j) = r * r * g3(i, j);
            g(3, 3) = 1.0;
            return g;
        }
        case MetricKind::GAB:
        case MetricKind::GPrime: {
            const double C = m.kind == MetricKind::GAB ? m.param : 1.0;
            const double r = p[3];
            const double a2 = C * C * r / 4.0;   // a = sqrt(C b)/2 = C sqrt(r)/2
            const double b2 = C * C * r * r;     // b = C r
            Vec w = omega_components(p);
            Mat g(4, 4);
            g(0, 0) = 1.0 / a2;
            g(1, 1) = 1.0 / a2;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) g(i, j) += w[i] * w[j] / b2;
            g(3, 3) += 1.0 / b2;
            return g;
        }
        case MetricKind::GBergman: {
            const double q = rho(p);
            const double x2 = p[2], y2 = p[3];
            // Real parts of dz1 + conj(z2) dz2 in (x1,y1,x2,y2) coordinates.
            const Vec A = {1.0, 0.0, x2, y2};
            const Vec B = {0.0, 1.0, -y2, x2};
            Mat g(4, 4);
            g(2, 2) = 4.0 / q;
            g(3, 3) = 4.0 / q;
            const double c = 4.0 / (q * q);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) g(i, j) += c * (A[i] * A[j] + B[i] * B[j]);
            return g;
        }
        case MetricKind::GSubU: {
            const double r = p[1];
            Mat g(2, 2);
            g(0, 0) = r * r;
            g(1, 1) = 1.0;
            return g;
        }
        case MetricKind::GSubC: {
            const double x = p[0], y = p[1];
            Mat g(2, 2);
            g(0, 0) = 1.0 + y * y;
            g(0, 1) = g(1, 0) = -x * y;
            g(1, 1) = 1.0 + x * x;
            return g;
        }
        case MetricKind::GSubU3: {
            const double x = p[0], y = p[1], r = p[2];
            Mat g(3, 3);
            g(0, 0) = r * r * (1.0 + y * y);
            g(0, 1) = g(1, 0) = -r * r * x * y;
            g(1, 1) = r * r * (1.0 + x * x);
            g(2, 2) = 1.0;
            return g;
        }
    }
    throw std::logic_error("metric_matrix: unhandled metric kind");
}

inline double inner(const MetricId& m, const Point& p, const Tangent& u, const Tangent& v) {
    if (!(u.base() == p) || !(v.base() == p))
        throw std::invalid_argument("inner: tangent base point mismatch");
    const Mat g = metric_matrix(m, p);
    return u.components().dot(g * v.components());
}

inline double norm(const MetricId& m, const Point& p, const Tangent& u) {
    return std::sqrt(inner(m, p, u, u));
}

// g-orthonormal basis from the Cholesky factor of the metric: columns of
// (L^T)^{-1} for G = L L^T.
inline std::array<Vec, 4> orthonormal_basis(const MetricId& m, const Point& p) {
    const Mat g = metric_matrix(m, p);
    Mat lower(g.rows(), g.cols());
    if (!g.cholesky(lower)) throw std::domain_error("orthonormal_basis: metric not SPD");
    const Mat lt_inv = lower.transposed().inverse();
    std::array<Vec, 4> basis;
    for (int j = 0; j < g.cols(); ++j) {
        Vec e(g.rows());
        for (int i = 0; i < g.rows(); ++i) e[i] = lt_inv(i, j);
        basis[j] = e;
    }
    return basis;
}

}  // namespace heiscone
