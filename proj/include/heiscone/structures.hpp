#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "heiscone/maps.hpp"

namespace heiscone {

// ---------------------------------------------------------------------------
// Almost complex structures
// ---------------------------------------------------------------------------
//   JHorizontal  JX = Y, JY = -X on ker(w) in the Heisenberg group
//   JCone        J Xr = Yr, J Yr = -Xr, J Tr = -dr, J dr = Tr  (Kaehler cone)
//   ICone        I X = Y, I Y = -X, I T = dr, I dr = -T        (second structure)
//   JSiegel      multiplication by i on C^2 in real coordinates
enum class ComplexStructureId { JHorizontal, JCone, ICone, JSiegel };

constexpr Manifold manifold_of(ComplexStructureId c) {
    switch (c) {
        case ComplexStructureId::JHorizontal: return Manifold::Heisenberg;
        case ComplexStructureId::JCone:
        case ComplexStructureId::ICone: return Manifold::Cone;
        case ComplexStructureId::JSiegel: return Manifold::Siegel;
    }
    return Manifold::Heisenberg;
}

// Coordinate matrix of the structure at p (bundle-wide structures only).
inline Mat cstruct_matrix(ComplexStructureId c, const Point& p) {
    if (p.manifold() != manifold_of(c))
        throw std::invalid_argument("cstruct_matrix: structure not defined on this manifold");
    const double x = p[0], y = p[1];
    switch (c) {
        case ComplexStructureId::ICone: {
            // I dx = (0,1,-2x,-2y), I dy = (-1,0,-2y,2x), I dt = dr, I dr = -dt
            Mat A(4, 4);
            A(1, 0) = 1;
            A(2, 0) = -2 * x;
            A(3, 0) = -2 * y;
            A(0, 1) = -1;
            A(2, 1) = -2 * y;
            A(3, 1) = 2 * x;
            A(3, 2) = 1;
            A(2, 3) = -1;
            return A;
        }
        case ComplexStructureId::JCone: {
            const double r = p[3];
            // J dx = (0,1,-2x,ry), J dy = (-1,0,-2y,-rx), J dt = -(r/2)dr, J dr = (2/r)dt
            Mat A(4, 4);
            A(1, 0) = 1;
            A(2, 0) = -2 * x;
            A(3, 0) = r * y;
            A(0, 1) = -1;
            A(2, 1) = -2 * y;
            A(3, 1) = -r * x;
            A(3, 2) = -r / 2;
            A(2, 3) = 2 / r;
            return A;
        }
        case ComplexStructureId::JSiegel: {
            Mat A(4, 4);
            A(1, 0) = 1;
            A(0, 1) = -1;
            A(3, 2) = 1;
            A(2, 3) = -1;
            return A;
        }
        case ComplexStructureId::JHorizontal:
            throw std::invalid_argument("cstruct_matrix: JHorizontal lives on ker(w) only");
    }
    throw std::logic_error("cstruct_matrix: unhandled structure");
}

inline Tangent apply_cstruct(ComplexStructureId c, const Point& p, const Tangent& u) {
    if (!(u.base() == p)) throw std::invalid_argument("apply_cstruct: tangent not based at p");
    if (c == ComplexStructureId::JHorizontal) {
        if (p.manifold() != Manifold::Heisenberg)
            throw std::invalid_argument("apply_cstruct: JHorizontal needs a Heisenberg point");
        const Vec w = omega_components(p);
        const double wu = w.dot(u.components());
        if (std::abs(wu) > 1e-10)
            throw std::invalid_argument("apply_cstruct: vector outside ker(w)");
        // Project onto ker(w), then JX = Y, JY = -X on the (alpha, beta) split
        // u = alpha X + beta Y.
        const double alpha = u[0], beta = u[1];
        const Tangent Xp = eval_frame(FrameId::X, p), Yp = eval_frame(FrameId::Y, p);
        return alpha * Yp - beta * Xp;
    }
    return Tangent(p, cstruct_matrix(c, p) * u.components());
}

// Nijenhuis tensor on coordinate fields d_i, d_j:
//   N(u,v) = [cu, cv] - c[cu, v] - c[u, cv] - [u, v]
// with the brackets of the fields q -> A_c(q) e_i taken by finite differences.
inline Tangent nijenhuis(ComplexStructureId c, const Point& p, int i, int j,
                         double step = kFdStepDefault) {
    const int n = p.dim();
    const auto field = [&](int axis) {
        return [c, axis](const Point& q) {
            Mat A = cstruct_matrix(c, q);
            Vec v(A.rows());
            for (int k = 0; k < A.rows(); ++k) v[k] = A(k, axis);
            return v;
        };
    };
    const auto P = field(i), Q = field(j);
    const Mat A = cstruct_matrix(c, p);
    const Vec Pp = P(p), Qp = Q(p);

    std::array<Vec, 4> dP, dQ;
    for (int a = 0; a < n; ++a) {
        dP[a] = partial_vector(P, p, a, step);
        dQ[a] = partial_vector(Q, p, a, step);
    }
    // [P,Q]^k = P^m d_m Q^k - Q^m d_m P^k
    Vec bracket(n);
    for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int m = 0; m < n; ++m) s += Pp[m] * dQ[m][k] - Qp[m] * dP[m][k];
        bracket[k] = s;
    }
    // c[P, e_j] = -A dP_j ;  c[e_i, Q] = A dQ_i ;  [e_i, e_j] = 0
    const Vec out = bracket + A * dP[j] - A * dQ[i];
    return Tangent(p, out);
}

// ---------------------------------------------------------------------------
// Differential forms (component evaluators in the coordinate basis)
// ---------------------------------------------------------------------------

struct Form1 {
    std::string name;
    Manifold manifold;
    std::function<Vec(const Point&)> comp;  // comp(p)[i] = form(d_i)

    double operator()(const Point& p, const Tangent& u) const {
        return comp(p).dot(u.components());
    }
};

struct Form2 {
    std::string name;
    Manifold manifold;
    std::function<double(const Point&, int, int)> comp;  // F(d_i, d_j), antisymmetric

    double operator()(const Point& p, const Tangent& u, const Tangent& v) const {
        const int n = p.dim();
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += comp(p, i, j) * u[i] * v[j];
        return s;
    }
};

inline Form1 omega_form(Manifold m = Manifold::Heisenberg) {
    return {"omega", m, [](const Point& p) { return omega_components(p); }};
}

inline Form1 omega_tilde_form(Manifold m = Manifold::Heisenberg) {
    return {"omega~", m, [](const Point& p) { return 0.5 * omega_components(p); }};
}

// Omega_r = d(r^2/2 w~) = r dr ^ w~ + r^2 dx ^ dy on the cone.
inline Form2 fundamental_form_cone() {
    return {"Omega_r", Manifold::Cone, [](const Point& p, int i, int j) {
                const double r = p[3];
                const Vec wt = 0.5 * omega_components(p);
                double s = 0;
                if (i == 3) s += r * wt[j];
                if (j == 3) s -= r * wt[i];
                if (i == 0 && j == 1) s += r * r;
                if (i == 1 && j == 0) s -= r * r;
                return s;
            }};
}

// Positive smooth functions a(r), b(r) defining g_{a,b} and Omega_{a,b}.
struct ABFunctions {
    std::string label;
    std::function<double(double)> a;
    std::function<double(double)> b;
};

// Omega_{a,b} = dx ^ dy / a^2 + w ^ dr / b^2.
inline Form2 fundamental_form_ab(ABFunctions fns) {
    return {"Omega_ab[" + fns.label + "]", Manifold::Cone,
            [fns](const Point& p, int i, int j) {
                const double a = fns.a(p[3]), b = fns.b(p[3]);
                const Vec w = omega_components(p);
                double s = 0;
                if (i == 0 && j == 1) s += 1.0 / (a * a);
                if (i == 1 && j == 0) s -= 1.0 / (a * a);
                if (j == 3) s += w[i] / (b * b);
                if (i == 3) s -= w[j] / (b * b);
                return s;
            }};
}

inline ABFunctions ab_prime() {
    return {"prime", [](double r) { return std::sqrt(r) / 2; }, [](double r) { return r; }};
}

inline Form2 fundamental_form_prime() {
    Form2 f = fundamental_form_ab(ab_prime());
    f.name = "Omega'";
    return f;
}

// Kaehler form of the Bergman metric, the real expansion of -4i d dbar log(rho):
//   Omega = (8/rho) dx2 ^ dy2 + (8/rho^2) A ^ B,
//   A = dx1 + x2 dx2 + y2 dy2,  B = dy1 + x2 dy2 - y2 dx2.
inline Form2 fundamental_form_bergman() {
    return {"Omega_Bergman", Manifold::Siegel, [](const Point& p, int i, int j) {
                const double q = rho(p);
                const double x2 = p[2], y2 = p[3];
                const Vec A = {1, 0, x2, y2};
                const Vec B = {0, 1, -y2, x2};
                double s = (8.0 / (q * q)) * (A[i] * B[j] - A[j] * B[i]);
                if (i == 2 && j == 3) s += 8.0 / q;
                if (i == 3 && j == 2) s -= 8.0 / q;
                return s;
            }};
}

// dF(d_i, d_j) for a 1-form.
inline double exterior_derivative(const Form1& f, const Point& p, int i, int j,
                                  double step = kFdStepDefault) {
    const auto comp = [&](int axis) {
        return [&f, axis](const Point& q) { return f.comp(q)[axis]; };
    };
    return partial_scalar(comp(j), p, i, step) - partial_scalar(comp(i), p, j, step);
}

// dF(d_i, d_j, d_k) = d_i F_jk - d_j F_ik + d_k F_ij for a 2-form.
inline double exterior_derivative(const Form2& f, const Point& p, int i, int j, int k,
                                  double step = kFdStepDefault) {
    const auto comp = [&](int a, int b) {
        return [&f, a, b](const Point& q) { return f.comp(q, a, b); };
    };
    return partial_scalar(comp(j, k), p, i, step) - partial_scalar(comp(i, k), p, j, step) +
           partial_scalar(comp(i, j), p, k, step);
}

// ---------------------------------------------------------------------------
// Residuals of the structural identities
// ---------------------------------------------------------------------------

// |(sqrt(L)/2) dw(X,Y) - g_L(phi X, Y)| with phi X = JX = Y, aggregated (max)
// over the sample points; identically |2 sqrt(L) - 1|, zero iff L = 1/4.
inline double contact_metric_residual(double L, const std::vector<Point>& samples,
                                      double step = kFdStepDefault) {
    if (!(L > 0)) throw std::invalid_argument("contact_metric_residual: L must be positive");
    const MetricId gl = MetricId::gl(L);
    const Form1 w = omega_form();
    double worst = 0;
    for (const Point& p : samples) {
        const Tangent X = eval_frame(FrameId::X, p), Y = eval_frame(FrameId::Y, p);
        double dw = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i < j) dw += exterior_derivative(w, p, i, j, step) * (X[i] * Y[j] - X[j] * Y[i]);
        const double lhs = 0.5 * std::sqrt(L) * dw;
        const double rhs = inner(gl, p, Y, Y);  // g_L(phi X, Y) with phi X = Y
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

inline std::vector<Point> default_contact_samples() {
    std::vector<Point> pts;
    for (double x : {-2.0, 0.0, 1.5})
        for (double y : {-1.0, 0.5})
            for (double t : {-3.0, 0.0, 2.0}) pts.push_back(heis_point(x, y, t));
    return pts;
}

inline double contact_metric_residual(double L) {
    return contact_metric_residual(L, default_contact_samples());
}

// |g(nabla_v xi, u) + g(nabla_u xi, v)| for a frame field xi; zero for all
// u, v iff xi is Killing.
inline double killing_residual(const MetricId& m, FrameId field, const Point& p,
                               const Tangent& u, const Tangent& v,
                               double step = kFdStepDefault) {
    if (manifold_of(field) != manifold_of(m))
        throw std::invalid_argument("killing_residual: field not on the metric's manifold");
    const int n = p.dim();
    const auto xi = [&](const Point& q) { return eval_frame(field, q, &m).components(); };
    const ChristoffelTable gam = christoffel(m, p, step);
    std::array<Vec, 4> dxi;
    for (int a = 0; a < n; ++a) dxi[a] = partial_vector(xi, p, a, step);

    const auto nabla = [&](const Tangent& dir) {
        const Vec x = xi(p);
        Vec out(n);
        for (int k = 0; k < n; ++k) {
            double s = 0;
            for (int i = 0; i < n; ++i) {
                s += dir[i] * dxi[i][k];
                for (int j = 0; j < n; ++j) s += dir[i] * gam.gamma(k, i, j) * x[j];
            }
            out[k] = s;
        }
        return Tangent(p, out);
    };
    return std::abs(inner(m, p, nabla(v), u) + inner(m, p, nabla(u), v));
}

// Norm (in g) of R(u, T~)v - g(u,v) T~ + g(T~,v) u for the contact metric;
// vanishing for all u, v characterizes the Sasakian structure.
inline double sasaki_residual(const Point& p, const Tangent& u, const Tangent& v,
                              double step = kFdStepDefault) {
    const MetricId g = MetricId::sasaki();
    const Tangent xi = eval_frame(FrameId::Ttilde, p);
    const Tangent lhs = riemann(g, p, u, xi, v, CurvatureConvention::Paper, step);
    const Tangent rhs = inner(g, p, u, v) * xi - inner(g, p, xi, v) * u;
    const Tangent diff = lhs - rhs;
    return norm(g, p, diff);
}

// max over a basis (coordinates, or the named distribution) of
// |f_*(c_src u) - c_dst(f_* u)| in the image coordinates.
inline double holomorphy_residual(const SmoothMap& f, ComplexStructureId c_src,
                                  ComplexStructureId c_dst, const Point& p,
                                  std::optional<DistributionId> restrict_to = std::nullopt) {
    std::vector<Tangent> basis;
    if (restrict_to) {
        const auto [e1, e2] = distribution_basis(*restrict_to, p);
        basis = {e1, e2};
    } else {
        for (int i = 0; i < p.dim(); ++i) basis.push_back(coordinate_tangent(p, i));
    }
    double worst = 0;
    for (const Tangent& u : basis) {
        const Tangent lhs = pushforward(f, p, apply_cstruct(c_src, p, u));
        const Tangent rhs = apply_cstruct(c_dst, f(p), pushforward(f, p, u));
        worst = std::max(worst, (lhs.components() - rhs.components()).norm());
    }
    return worst;
}

}  // namespace heiscone
