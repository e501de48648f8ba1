#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "heiscone/curvature.hpp"
#include "heiscone/frames.hpp"

namespace heiscone {

// A differentiable map between manifolds carrying its exact Jacobian.  The
// finite-difference Jacobian exists as a cross-check path only.
struct SmoothMap {
    std::string name;
    Manifold domain;
    Manifold codomain;
    std::function<Point(const Point&)> formula;
    std::function<Mat(const Point&)> jacobian;

    Point operator()(const Point& p) const {
        if (p.manifold() != domain) throw std::invalid_argument(name + ": point not in domain");
        return formula(p);
    }
};

inline Mat fd_jacobian(const SmoothMap& f, const Point& p, double step = 1e-6) {
    const int n = dimension(f.domain), m = dimension(f.codomain);
    Mat J(m, n);
    for (int j = 0; j < n; ++j) {
        const double h = fd_step(p, j, step);
        for (int i = 0; i < m; ++i)
            J(i, j) = diff1([&](double s) { return f.formula(p.displaced(j, s))[i]; }, h);
    }
    return J;
}

inline Tangent pushforward(const SmoothMap& f, const Point& p, const Tangent& u) {
    if (!(u.base() == p)) throw std::invalid_argument("pushforward: tangent not based at p");
    return Tangent(f(p), f.jacobian(p) * u.components());
}

inline Mat pullback_metric(const SmoothMap& f, const MetricId& codomain_metric, const Point& p) {
    const Point q = f(p);
    const Mat J = f.jacobian(p);
    return J.transposed() * metric_matrix(codomain_metric, q) * J;
}

inline double isometry_residual(const SmoothMap& f, const MetricId& m_src, const MetricId& m_dst,
                                const Point& p) {
    return (pullback_metric(f, m_dst, p) - metric_matrix(m_src, p)).frobenius();
}

inline Vec pullback_oneform(const SmoothMap& f, const Point& p,
                            const std::function<Vec(const Point&)>& form) {
    const Vec w = form(f(p));
    return f.jacobian(p).transposed() * w;
}

// ---------------------------------------------------------------------------
// The named maps
// ---------------------------------------------------------------------------

// Left translation by (zeta, s): (z,t) -> (zeta + z, s + t + 2 Im(zeta conj(z))).
inline SmoothMap left_translation(double zx, double zy, double s) {
    Mat J = Mat::identity(3);
    J(2, 0) = 2 * zy;
    J(2, 1) = -2 * zx;
    return {"left-translation", Manifold::Heisenberg, Manifold::Heisenberg,
            [=](const Point& p) {
                return heis_point(zx + p[0], zy + p[1], s + p[2] + 2 * (zy * p[0] - zx * p[1]));
            },
            [=](const Point&) { return J; }};
}

inline SmoothMap rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    Mat J = Mat::identity(3);
    J(0, 0) = c;
    J(0, 1) = -s;
    J(1, 0) = s;
    J(1, 1) = c;
    return {"rotation", Manifold::Heisenberg, Manifold::Heisenberg,
            [=](const Point& p) {
                return heis_point(c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]);
            },
            [=](const Point&) { return J; }};
}

// Conjugation j(z,t) = (conj z, -t).
inline SmoothMap conjugation() {
    Mat J = Mat::identity(3);
    J(1, 1) = -1;
    J(2, 2) = -1;
    return {"conjugation", Manifold::Heisenberg, Manifold::Heisenberg,
            [](const Point& p) { return heis_point(p[0], -p[1], -p[2]); },
            [=](const Point&) { return J; }};
}

// Dilation D_delta(z,t) = (delta z, delta^2 t).
inline SmoothMap dilation(double delta) {
    Mat J = Mat::identity(3);
    J(0, 0) = delta;
    J(1, 1) = delta;
    J(2, 2) = delta * delta;
    return {"dilation", Manifold::Heisenberg, Manifold::Heisenberg,
            [=](const Point& p) {
                return heis_point(delta * p[0], delta * p[1], delta * delta * p[2]);
            },
            [=](const Point&) { return J; }};
}

// iota_U(t,r) = (0, 2t, r): half-plane into the cone.
inline SmoothMap embed_half_plane() {
    Mat J(4, 2);
    J(2, 0) = 2;
    J(3, 1) = 1;
    return {"iota_U", Manifold::HalfPlane, Manifold::Cone,
            [](const Point& p) { return cone_point(0, 0, 2 * p[0], p[1]); },
            [=](const Point&) { return J; }};
}

// iota_C(z) = (z, 0, 1): complex plane into the cone.
inline SmoothMap embed_complex_plane() {
    Mat J(4, 2);
    J(0, 0) = 1;
    J(1, 1) = 1;
    return {"iota_C", Manifold::ComplexPlane, Manifold::Cone,
            [](const Point& p) { return cone_point(p[0], p[1], 0, 1); },
            [=](const Point&) { return J; }};
}

// iota_U3(z,r) = (z, 0, r): half-space into the cone.
inline SmoothMap embed_half_space() {
    Mat J(4, 3);
    J(0, 0) = 1;
    J(1, 1) = 1;
    J(3, 2) = 1;
    return {"iota_U3", Manifold::HalfSpace, Manifold::Cone,
            [](const Point& p) { return cone_point(p[0], p[1], 0, p[2]); },
            [=](const Point&) { return J; }};
}

// iota_H(z,t) = (z, t, 1): Heisenberg group into the cone as the r = 1 slice.
inline SmoothMap embed_heisenberg() {
    Mat J(4, 3);
    J(0, 0) = 1;
    J(1, 1) = 1;
    J(2, 2) = 1;
    return {"iota_H", Manifold::Heisenberg, Manifold::Cone,
            [](const Point& p) { return cone_point(p[0], p[1], p[2], 1); },
            [=](const Point&) { return J; }};
}

// Boundary map h(z,t) = ((-|z|^2 + it)/2, z) onto the Siegel boundary.
inline SmoothMap boundary_map() {
    return {"h", Manifold::Heisenberg, Manifold::Siegel,
            [](const Point& p) {
                return siegel_point(-0.5 * (p[0] * p[0] + p[1] * p[1]), 0.5 * p[2], p[0], p[1]);
            },
            [](const Point& p) {
                Mat J(4, 3);
                J(0, 0) = -p[0];
                J(0, 1) = -p[1];
                J(1, 2) = 0.5;
                J(2, 0) = 1;
                J(3, 1) = 1;
                return J;
            }};
}

// Horospherical map H(z,t,r) = ((-|z|^2 - r + it)/2, z) into the Siegel domain.
inline SmoothMap horospherical_map() {
    return {"H", Manifold::Cone, Manifold::Siegel,
            [](const Point& p) {
                return siegel_point(-0.5 * (p[0] * p[0] + p[1] * p[1] + p[3]), 0.5 * p[2], p[0],
                                    p[1]);
            },
            [](const Point& p) {
                Mat J(4, 4);
                J(0, 0) = -p[0];
                J(0, 1) = -p[1];
                J(0, 3) = -0.5;
                J(1, 2) = 0.5;
                J(2, 0) = 1;
                J(3, 1) = 1;
                return J;
            }};
}

// PCR equivalence G(z,t,r) = (z,t,4/r^2) between the cone with g_r and the
// half-space with g'.  The fiber map is forced by matching the horizontal
// restrictions: g'(X,X)|_{4/r^2} = r^2 = g_r(X,X).
inline SmoothMap pcr_map() {
    return {"G", Manifold::Cone, Manifold::Cone,
            [](const Point& p) { return cone_point(p[0], p[1], p[2], 4.0 / (p[3] * p[3])); },
            [](const Point& p) {
                Mat J = Mat::identity(4);
                J(3, 3) = -8.0 / (p[3] * p[3] * p[3]);
                return J;
            }};
}

inline SmoothMap pcr_map_inverse() {
    return {"G^-1", Manifold::Cone, Manifold::Cone,
            [](const Point& p) { return cone_point(p[0], p[1], p[2], 2.0 / std::sqrt(p[3])); },
            [](const Point& p) {
                Mat J = Mat::identity(4);
                J(3, 3) = -1.0 / std::pow(p[3], 1.5);
                return J;
            }};
}

inline SmoothMap identity_map(Manifold m) {
    const Mat J = Mat::identity(dimension(m));
    return {"id", m, m, [](const Point& p) { return p; }, [=](const Point&) { return J; }};
}

inline SmoothMap compose(const SmoothMap& f, const SmoothMap& g) {
    if (g.codomain != f.domain) throw std::invalid_argument("compose: domain mismatch");
    return {f.name + "*" + g.name, g.domain, f.codomain,
            [f, g](const Point& p) { return f(g(p)); },
            [f, g](const Point& p) { return f.jacobian(g(p)) * g.jacobian(p); }};
}

// ---------------------------------------------------------------------------
// Distributions and the PCR / holomorphy residuals
// ---------------------------------------------------------------------------

enum class DistributionId {
    Horizontal,        // span{X, Y} on the Heisenberg group or on the cone
    SiegelHorizontal,  // span{H_* X, H_* Y} on the Siegel domain
};

inline std::pair<Tangent, Tangent> distribution_basis(DistributionId d, const Point& p) {
    switch (d) {
        case DistributionId::Horizontal: {
            const double x = p[0], y = p[1];
            if (p.manifold() == Manifold::Heisenberg)
                return {Tangent(p, {1, 0, 2 * y}), Tangent(p, {0, 1, -2 * x})};
            if (p.manifold() == Manifold::Cone)
                return {Tangent(p, {1, 0, 2 * y, 0}), Tangent(p, {0, 1, -2 * x, 0})};
            throw std::invalid_argument("distribution_basis: horizontal needs Heisenberg or cone");
        }
        case DistributionId::SiegelHorizontal: {
            if (p.manifold() != Manifold::Siegel)
                throw std::invalid_argument("distribution_basis: point not in the Siegel domain");
            // Pushforwards of X, Y under the horospherical map at H^{-1}(p):
            // H_*X = (-x, y, 1, 0), H_*Y = (-y, -x, 0, 1) with z = z2.
            const double x = p[2], y = p[3];
            return {Tangent(p, {-x, y, 1, 0}), Tangent(p, {-y, -x, 0, 1})};
        }
    }
    throw std::logic_error("distribution_basis: unhandled distribution");
}

// Norm of the difference of the 2x2 Gram matrices of the distribution basis
// under m_src at p and under m_dst at f(p) after pushforward.
inline double pcr_kahler_residual(const SmoothMap& f, const MetricId& m_src,
                                  const MetricId& m_dst, DistributionId dist, const Point& p) {
    const auto [e1, e2] = distribution_basis(dist, p);
    const Point q = f(p);
    const Tangent f1 = pushforward(f, p, e1), f2 = pushforward(f, p, e2);
    Mat diff(2, 2);
    const Tangent* src[2] = {&e1, &e2};
    const Tangent* dst[2] = {&f1, &f2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            diff(i, j) = inner(m_dst, q, *dst[i], *dst[j]) - inner(m_src, p, *src[i], *src[j]);
    return diff.frobenius();
}

// Residual of the projection of f_*X, f_*Y onto the horizontal span at the
// image; zero says f carries the horizontal distribution into itself.
inline double pcr_distribution_residual(const SmoothMap& f, const Point& p) {
    const auto [e1, e2] = distribution_basis(DistributionId::Horizontal, p);
    const Point q = f(p);
    const auto [h1, h2] = distribution_basis(DistributionId::Horizontal, q);
    double worst = 0;
    for (const Tangent& u : {pushforward(f, p, e1), pushforward(f, p, e2)}) {
        // Least-squares projection onto span{h1,h2} in coordinates.
        Mat A(2, 2);
        A(0, 0) = h1.components().dot(h1.components());
        A(0, 1) = A(1, 0) = h1.components().dot(h2.components());
        A(1, 1) = h2.components().dot(h2.components());
        Vec b = {h1.components().dot(u.components()), h2.components().dot(u.components())};
        const Vec c = A.inverse() * b;
        const Vec res = u.components() - c[0] * h1.components() - c[1] * h2.components();
        worst = std::max(worst, res.norm());
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Second fundamental form of the embedded submanifolds
// ---------------------------------------------------------------------------

// B(u,v) = (nabla_U V)^N in the ambient metric, for u, v tangent to the
// submanifold chart at p.  The pushforward field of the constant-component
// extension of v is differentiated along u (exactly zero for the linear
// embeddings; kept general via the Hessian of the formula).
inline Tangent second_fundamental_form(const SmoothMap& embedding, const Point& p,
                                       const Tangent& u, const Tangent& v,
                                       const MetricId& ambient = MetricId::cone(),
                                       double step = kFdStepDefault) {
    if (!(u.base() == p) || !(v.base() == p))
        throw std::invalid_argument("second_fundamental_form: tangents not based at p");
    if (u.base().manifold() != embedding.domain)
        throw std::invalid_argument("second_fundamental_form: tangents not on the submanifold");
    const Point q = embedding(p);
    const Mat J = embedding.jacobian(p);
    const Vec U = J * u.components();
    const Vec V = J * v.components();
    const int n = dimension(embedding.codomain);

    // d/ds [J(p + s u) v] at s = 0.
    Vec dJv(n);
    {
        const double h = 1e-4;
        for (int i = 0; i < n; ++i)
            dJv[i] = diff1(
                [&](double s) {
                    Vec c = p.coords();
                    for (int a = 0; a < p.dim(); ++a) c[a] += s * u[a];
                    const Vec w = embedding.jacobian(Point(p.manifold(), c)) * v.components();
                    return w[i];
                },
                h);
    }

    const ChristoffelTable gam = christoffel(ambient, q, step);
    Vec full(n);
    for (int k = 0; k < n; ++k) {
        double s = dJv[k];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += gam.gamma(k, i, j) * U[i] * V[j];
        full[k] = s;
    }

    // Normal projection: subtract the g-orthogonal projection onto the image
    // of J, computed from the induced Gram matrix.
    const Mat G = metric_matrix(ambient, q);
    const Mat Gram = J.transposed() * G * J;
    const Vec rhs = J.transposed() * (G * full);
    const Vec coeff = Gram.inverse() * rhs;
    const Vec tangential = J * coeff;
    return Tangent(q, full - tangential);
}

// max over a tangent basis of |f_*(c_src u) - c_dst(f_* u)| (coordinate norm).
// Declared here, defined in structures.hpp which owns the complex structures.

}  // namespace heiscone
