#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <variant>
#include <vector>

#include "heiscone/curvature.hpp"
#include "heiscone/ode.hpp"
#include "heiscone/rng.hpp"

namespace heiscone {

// ---------------------------------------------------------------------------
// Numerical geodesics: qdot = v, vdot^k = -Gamma^k_{ij} v^i v^j
// ---------------------------------------------------------------------------

struct GeodesicState {
    Point point;
    Tangent velocity;

    GeodesicState(const MetricId& m, Point p, Tangent v) : point(p), velocity(v) {
        if (std::abs(norm(m, p, v) - 1.0) > 1e-9)
            throw std::invalid_argument("GeodesicState: velocity is not unit speed");
    }
};

struct CurveSample {
    double s;
    Point point;
    Tangent velocity;
};

enum class Termination { Completed, HitDomainBoundary, StepUnderflow };

struct Curve {
    MetricId metric;
    std::vector<CurveSample> samples;
    Termination termination = Termination::Completed;

    double param_span() const {
        return samples.empty() ? 0.0 : samples.back().s - samples.front().s;
    }
};

struct IntegratorConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double guard = kDomainGuard;    // integration halts at r (or rho) = guard
    double christoffel_step = 1e-3;
    double max_step = 0.25;
};

namespace detail {

inline OdeState pack_state(const Vec& q, const Vec& v) {
    OdeState y;
    y.n = 2 * q.size();
    for (int i = 0; i < q.size(); ++i) {
        y.y[i] = q[i];
        y.y[q.size() + i] = v[i];
    }
    return y;
}

inline std::pair<Vec, Vec> unpack_state(const OdeState& y) {
    const int n = y.n / 2;
    Vec q(n), v(n);
    for (int i = 0; i < n; ++i) {
        q[i] = y[i];
        v[i] = y[n + i];
    }
    return {q, v};
}

}  // namespace detail

// Integrates the unit-speed geodesic of m from `init` for the given arclength.
// A trajectory that reaches the domain guard is truncated there and flagged,
// not an error.
inline Curve integrate_geodesic(const MetricId& m, const GeodesicState& init, double length,
                                const IntegratorConfig& cfg = {}) {
    if (!(length > 0)) throw std::invalid_argument("integrate_geodesic: length must be positive");
    const Manifold man = manifold_of(m);
    const int n = dimension(man);
    const int ri = radial_index(man);

    const auto rhs = [&](double, const OdeState& y) {
        auto [q, v] = detail::unpack_state(y);
        const Point p(man, q);
        const ChristoffelTable gam = christoffel(m, p, cfg.christoffel_step);
        Vec acc(n);
        for (int k = 0; k < n; ++k) {
            double s = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) s += gam.gamma(k, i, j) * v[i] * v[j];
            acc[k] = -s;
        }
        OdeState dy;
        dy.n = 2 * n;
        for (int i = 0; i < n; ++i) {
            dy.y[i] = v[i];
            dy.y[n + i] = acc[i];
        }
        return dy;
    };
    const auto event = [&](const OdeState& y) {
        if (ri >= 0) return y[ri] - cfg.guard;
        if (man == Manifold::Siegel) return rho(y[0], y[1], y[2], y[3]) - cfg.guard;
        return 1.0;
    };

    OdeConfig ocfg;
    ocfg.abs_tol = cfg.abs_tol;
    ocfg.rel_tol = cfg.rel_tol;
    ocfg.h_max = cfg.max_step;
    const OdeState y0 = detail::pack_state(init.point.coords(), init.velocity.components());
    const OdeResult r = integrate_ode(rhs, y0, length, ocfg, event);

    Curve curve{m, {}, Termination::Completed};
    const auto push = [&](double s, const OdeState& y) {
        auto [q, v] = detail::unpack_state(y);
        const Point p(man, q);
        curve.samples.push_back({s, p, Tangent(p, v)});
    };
    push(0.0, y0);
    for (const auto& st : r.steps)
        if (st.s1 <= r.s_end) push(st.s1, st.y1);
    if (curve.samples.back().s < r.s_end) push(r.s_end, r.y_end);
    switch (r.outcome) {
        case OdeOutcome::Completed: curve.termination = Termination::Completed; break;
        case OdeOutcome::Event: curve.termination = Termination::HitDomainBoundary; break;
        case OdeOutcome::StepUnderflow: curve.termination = Termination::StepUnderflow; break;
    }
    return curve;
}

// Trapezoidal sum of metric speeds; equals the parameter span for unit-speed
// curves up to integrator tolerance.
inline double arc_length(const Curve& c) {
    if (c.samples.empty()) throw std::invalid_argument("arc_length: empty curve");
    double total = 0;
    for (std::size_t i = 1; i < c.samples.size(); ++i) {
        const auto& a = c.samples[i - 1];
        const auto& b = c.samples[i];
        const double sa = norm(c.metric, a.point, a.velocity);
        const double sb = norm(c.metric, b.point, b.velocity);
        total += 0.5 * (sa + sb) * (b.s - a.s);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Closed-form geodesics on the Heisenberg group
// ---------------------------------------------------------------------------
//   horizontal   gamma(s) = (a s + x0, b s + y0, 2(a y0 - b x0) s + t0)
//   vertical     gamma(s) = (x0, y0, c s + t0), c = +-1  (parameter runs at
//                twice arclength: the unit-speed curve has tdot = 2c)
//   general      z(s) = i k (e^{-2ics} - 1)/(2c) + z0,
//                t(s) = (1/c)[(1+c^2)s - (1-c^2) sin(2cs)/(2c)
//                        - Re(conj(z0) k (e^{-2ics}-1))] + t0
// with a series fallback for |c| -> 0 recovering the horizontal line.

struct HeisHorizontal {
    double a, b;
    Point p0;
};
struct HeisVertical {
    double c;
    Point p0;
};
struct HeisGeneral {
    double c;
    std::complex<double> k;
    Point p0;
};
using HeisGeodesicParams = std::variant<HeisHorizontal, HeisVertical, HeisGeneral>;

inline constexpr double kDegenerateEps = 1e-8;

inline Point closed_form_heis(const HeisGeodesicParams& params, double s) {
    if (const auto* h = std::get_if<HeisHorizontal>(&params)) {
        if (std::abs(h->a * h->a + h->b * h->b - 1.0) > 1e-9)
            throw std::invalid_argument("closed_form_heis: need a^2 + b^2 = 1");
        const double x0 = h->p0[0], y0 = h->p0[1], t0 = h->p0[2];
        return heis_point(h->a * s + x0, h->b * s + y0, 2 * (h->a * y0 - h->b * x0) * s + t0);
    }
    if (const auto* v = std::get_if<HeisVertical>(&params)) {
        if (std::abs(std::abs(v->c) - 1.0) > 1e-9)
            throw std::invalid_argument("closed_form_heis: vertical needs |c| = 1");
        return heis_point(v->p0[0], v->p0[1], v->c * s + v->p0[2]);
    }
    const auto& g = std::get<HeisGeneral>(params);
    const double c = g.c;
    const std::complex<double> k = g.k;
    if (std::abs(std::norm(k) + c * c - 1.0) > 1e-9)
        throw std::invalid_argument("closed_form_heis: need |k|^2 + c^2 = 1");
    const std::complex<double> z0(g.p0[0], g.p0[1]);
    const double t0 = g.p0[2];
    if (std::abs(c) < kDegenerateEps) {
        // 3-term series in c around the horizontal line.
        const std::complex<double> I(0, 1);
        const std::complex<double> z =
            z0 + k * s - I * k * c * s * s - (2.0 / 3.0) * k * c * c * s * s * s;
        const std::complex<double> zk = std::conj(z0) * k;
        const double t = t0 - 2 * s * zk.imag() +
                         c * (2 * s + (2.0 / 3.0) * s * s * s + 2 * s * s * zk.real()) +
                         c * c * (4.0 / 3.0) * s * s * s * zk.imag();
        return heis_point(z.real(), z.imag(), t);
    }
    const std::complex<double> I(0, 1);
    const std::complex<double> E = std::exp(-2.0 * I * c * s) - 1.0;
    const std::complex<double> z = I * k * E / (2 * c) + z0;
    const double t =
        (1 / c) * ((1 + c * c) * s - (1 - c * c) * std::sin(2 * c * s) / (2 * c) -
                   (std::conj(z0) * k * E).real()) +
        t0;
    return heis_point(z.real(), z.imag(), t);
}

// d gamma / ds at s = 0.  Unit speed for the horizontal and general families;
// the vertical family runs at speed 1/2 (see above).
inline Vec heis_initial_velocity(const HeisGeodesicParams& params) {
    if (const auto* h = std::get_if<HeisHorizontal>(&params)) {
        const double x0 = h->p0[0], y0 = h->p0[1];
        return {h->a, h->b, 2 * (h->a * y0 - h->b * x0)};
    }
    if (const auto* v = std::get_if<HeisVertical>(&params)) return {0, 0, v->c};
    const auto& g = std::get<HeisGeneral>(params);
    const double x0 = g.p0[0], y0 = g.p0[1];
    const double xd = g.k.real(), yd = g.k.imag();
    return {xd, yd, 2 * g.c - 2 * x0 * yd + 2 * y0 * xd};
}

// ---------------------------------------------------------------------------
// Closed-form geodesics on the cone
// ---------------------------------------------------------------------------
//   radial          gamma(s) = (x0, y0, t0, s + r0)
//   vertical-plane  r(s) = sqrt(s^2 + 2 c1 s + r0^2),
//                   t(s) = t0 + sign * 2[ atan((s+c1)/w) - atan(c1/w) ],
//                   w = sqrt(r0^2 - c1^2)
//   general         with w as above, A(s) = atan((s+c1)/w), Theta = A(s)-A(0),
//                   E(s) = exp(-2i (c3/w) A(s)):
//                   z(s) = (iC/(2 c3))(E(s) - E(0)) + z0
//                   t(s) = ((2c3^2+|C|^2)/(c3 w)) Theta
//                          - (|C|^2/(2 c3^2)) sin(2 (c3/w) Theta)
//                          - (1/c3) Re(conj(z0) C (E(s)-E(0))) + t0
// The A-difference form keeps the angle continuous across the sign change of
// r0^2 + c1 s, which the principal-branch arctan display does not.

struct ConeRadial {
    Point p0;
};
struct ConeVerticalPlane {
    double c1;
    int sign = +1;  // direction of the t-motion, c3 = sign * w
    Point p0;
};
struct ConeGeneral {
    double c1, c3;
    std::complex<double> C;
    Point p0;
};
using ConeGeodesicParams = std::variant<ConeRadial, ConeVerticalPlane, ConeGeneral>;

inline Point closed_form_cone(const ConeGeodesicParams& params, double s) {
    if (const auto* rl = std::get_if<ConeRadial>(&params)) {
        const double r = s + rl->p0[3];
        if (r <= 0) throw std::domain_error("closed_form_cone: r(s) <= 0");
        return cone_point(rl->p0[0], rl->p0[1], rl->p0[2], r);
    }
    if (const auto* vp = std::get_if<ConeVerticalPlane>(&params)) {
        const double r0 = vp->p0[3], c1 = vp->c1;
        const double w2 = r0 * r0 - c1 * c1;
        if (w2 <= 0)
            throw std::invalid_argument("closed_form_cone: vertical plane needs r0^2 - c1^2 > 0");
        const double w = std::sqrt(w2);
        const double rr = s * s + 2 * c1 * s + r0 * r0;
        if (rr <= 0) throw std::domain_error("closed_form_cone: r(s) <= 0");
        const double theta = std::atan((s + c1) / w) - std::atan(c1 / w);
        return cone_point(vp->p0[0], vp->p0[1], vp->p0[2] + vp->sign * 2 * theta, std::sqrt(rr));
    }
    const auto& g = std::get<ConeGeneral>(params);
    const double r0 = g.p0[3], c1 = g.c1, c3 = g.c3;
    const double normC2 = std::norm(g.C);
    if (std::abs(normC2 - (r0 * r0 - c1 * c1 - c3 * c3)) > 1e-9 || normC2 <= 0)
        throw std::invalid_argument("closed_form_cone: need |C|^2 = r0^2 - c1^2 - c3^2 > 0");
    const double w = std::sqrt(r0 * r0 - c1 * c1);
    const double rr = s * s + 2 * c1 * s + r0 * r0;
    if (rr <= 0) throw std::domain_error("closed_form_cone: r(s) <= 0");
    const double A = std::atan((s + c1) / w), A0 = std::atan(c1 / w);
    const double theta = A - A0;
    const std::complex<double> z0(g.p0[0], g.p0[1]);
    const double t0 = g.p0[2];
    const std::complex<double> I(0, 1);

    std::complex<double> z;
    double t;
    if (std::abs(c3) < kDegenerateEps) {
        // 3-term series in c3; the leading order is the straight z-line of the
        // horizontal (c3 = 0) geodesic.
        const double A2 = A * A - A0 * A0, A3 = A * A * A - A0 * A0 * A0;
        z = z0 + g.C * theta / w - I * g.C * c3 * A2 / (w * w) -
            (2.0 / 3.0) * g.C * c3 * c3 * A3 / (w * w * w);
        const std::complex<double> zc = std::conj(z0) * g.C;
        t = t0 + 2 * c3 * theta / w + (2.0 / 3.0) * normC2 * c3 * theta * theta * theta / (w * w * w) -
            2 * theta * zc.imag() / w + 2 * c3 * A2 * zc.real() / (w * w) +
            (4.0 / 3.0) * c3 * c3 * A3 * zc.imag() / (w * w * w);
    } else {
        const std::complex<double> E = std::exp(-2.0 * I * (c3 / w) * A);
        const std::complex<double> E0 = std::exp(-2.0 * I * (c3 / w) * A0);
        const std::complex<double> dE = E - E0;
        z = I * g.C / (2 * c3) * dE + z0;
        t = ((2 * c3 * c3 + normC2) / (c3 * w)) * theta -
            (normC2 / (2 * c3 * c3)) * std::sin(2 * (c3 / w) * theta) -
            (std::conj(z0) * g.C * dE).real() / c3 + t0;
    }
    return cone_point(z.real(), z.imag(), t, std::sqrt(rr));
}

// d gamma / ds at s = 0; unit speed in g_r for every family.
inline Vec cone_initial_velocity(const ConeGeodesicParams& params) {
    if (std::holds_alternative<ConeRadial>(params)) return {0, 0, 0, 1};
    if (const auto* vp = std::get_if<ConeVerticalPlane>(&params)) {
        const double r0 = vp->p0[3];
        const double w = std::sqrt(r0 * r0 - vp->c1 * vp->c1);
        return {0, 0, vp->sign * 2 * w / (r0 * r0), vp->c1 / r0};
    }
    const auto& g = std::get<ConeGeneral>(params);
    const double r0 = g.p0[3];
    const double w = std::sqrt(r0 * r0 - g.c1 * g.c1);
    const std::complex<double> I(0, 1);
    // F(0) = C e^{-2i (c3/w) atan(c1/w)} / r0 and zdot = F / r.
    const std::complex<double> F0 = g.C * std::exp(-2.0 * I * (g.c3 / w) * std::atan(g.c1 / w)) / r0;
    const double xd = F0.real() / r0, yd = F0.imag() / r0;
    const double x0 = g.p0[0], y0 = g.p0[1];
    const double td = 2 * g.c3 / (r0 * r0) - 2 * x0 * yd + 2 * y0 * xd;
    return {xd, yd, td, g.c1 / r0};
}

// ---------------------------------------------------------------------------
// Two-point boundary value problem on the totally geodesic surface U
// ---------------------------------------------------------------------------
// U is the vertical slice {x = x0, y = y0} of the cone with coordinates (t, r)
// (t is the cone's t).  The in-slice geodesics are the vertical-plane family;
// two points are joined iff |t1 - t0| < 2 pi.

struct UPoint {
    double t, r;
};

struct UBvpSolution {
    double s;  // arclength to the target
    double a;  // c1 parameter of the vertical-plane geodesic, a in (-r0, r0]
};

struct UBvpResult {
    bool solvable = false;
    std::vector<UBvpSolution> solutions;  // sorted by s, forward branch only
};

// Forward evaluation of the in-slice geodesic with parameter a.
inline UPoint u_geodesic_eval(const UPoint& p0, double a, int sign, double s) {
    const double rr = s * s + 2 * a * s + p0.r * p0.r;
    if (rr <= 0) throw std::domain_error("u_geodesic_eval: r(s) <= 0");
    const double w2 = p0.r * p0.r - a * a;
    if (w2 <= 0) return {p0.t, std::sqrt(rr)};  // radial line
    const double w = std::sqrt(w2);
    const double theta = std::atan((s + a) / w) - std::atan(a / w);
    return {p0.t + sign * 2 * theta, std::sqrt(rr)};
}

inline UBvpResult bvp_solve_U(const UPoint& p0, const UPoint& p1) {
    if (!(p0.r > 0) || !(p1.r > 0)) throw std::invalid_argument("bvp_solve_U: need r > 0");
    const double dt = p1.t - p0.t;
    UBvpResult out;
    if (dt == 0.0) {
        out.solvable = true;
        out.solutions.push_back({std::abs(p1.r - p0.r), p1.r >= p0.r ? p0.r : -p0.r});
        return out;
    }
    const double pi = 3.14159265358979323846;
    if (std::abs(dt) >= 2 * pi) return out;  // unsolvable
    const int sign = dt > 0 ? +1 : -1;
    const double cosp = std::cos(0.5 * dt);
    for (const double sigma : {+1.0, -1.0}) {
        const double s2 = p1.r * p1.r + p0.r * p0.r + sigma * 2 * p0.r * p1.r * cosp;
        if (s2 <= 0) continue;
        const double s = std::sqrt(s2);  // forward branch only
        const double a = (p1.r * p1.r - p0.r * p0.r - s2) / (2 * s);
        if (!(a > -p0.r && a < p0.r)) continue;
        const UPoint hit = u_geodesic_eval(p0, a, sign, s);
        if (std::abs(hit.r - p1.r) > 1e-9 * (1 + p1.r) || std::abs(hit.t - p1.t) > 1e-9) continue;
        out.solutions.push_back({s, a});
    }
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const UBvpSolution& x, const UBvpSolution& y) { return x.s < y.s; });
    out.solvable = !out.solutions.empty();
    return out;
}

inline Point u_to_cone(const UPoint& p) { return cone_point(0, 0, p.t, p.r); }

// ---------------------------------------------------------------------------
// Shooting
// ---------------------------------------------------------------------------

struct ShootConfig {
    double tol = 1e-10;
    int max_iterations = 60;
    int restarts = 6;
    double max_length = 50.0;
    std::uint64_t seed = 12345;
    IntegratorConfig integrator{1e-11, 1e-11, kDomainGuard, 1e-3, 0.25};
};

struct ShootResult {
    bool converged = false;
    Vec velocity;    // unit initial velocity (in m)
    double length = 0;
    double residual = 0;
    int iterations = 0;
};

namespace detail {

// Endpoint of the geodesic with "shooting vector" w = length * unit_velocity.
inline Vec shoot_endpoint(const MetricId& m, const Point& p0, const Vec& w,
                          const IntegratorConfig& icfg) {
    const double len = std::sqrt(Vec(w).dot(metric_matrix(m, p0) * w));
    if (len < 1e-14) return p0.coords();
    Vec v = (1.0 / len) * w;
    const Curve c = integrate_geodesic(m, GeodesicState(m, p0, Tangent(p0, v)), len, icfg);
    return c.samples.back().point.coords();
}

}  // namespace detail

// Damped Newton on the shooting vector; deterministic for a given seed.
inline ShootResult shoot_bvp(const MetricId& m, const Point& p0, const Point& p1,
                             double tol = 1e-10, const ShootConfig& cfg = {}) {
    if (p0 == p1) throw std::invalid_argument("shoot_bvp: endpoints coincide");
    const int n = p0.dim();
    Rng rng(derive_seed(cfg.seed, "shoot"));
    const Mat g0 = metric_matrix(m, p0);

    ShootResult best;
    best.residual = 1e300;
    best.velocity = Vec(n);

    for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
        Vec w(n);
        if (attempt == 0) {
            for (int i = 0; i < n; ++i) w[i] = p1[i] - p0[i];
        } else {
            for (int i = 0; i < n; ++i) w[i] = rng.uniform(-1, 1);
            const double chord = (p1.coords() - p0.coords()).norm();
            w *= (chord + rng.uniform(0, 2)) / std::max(w.norm(), 1e-12);
        }
        int iters = 0;
        double resid = 1e300;
        for (; iters < cfg.max_iterations; ++iters) {
            Vec F(n);
            bool ok = true;
            try {
                F = detail::shoot_endpoint(m, p0, w, cfg.integrator) - p1.coords();
            } catch (const std::exception&) {
                ok = false;
            }
            if (!ok) break;
            resid = F.max_abs();
            if (resid < tol) break;

            Mat J(n, n);
            try {
                for (int j = 0; j < n; ++j) {
                    const double h = 1e-7 * std::max(1.0, std::abs(w[j]));
                    Vec wp = w;
                    wp[j] += h;
                    const Vec Fp = detail::shoot_endpoint(m, p0, wp, cfg.integrator) - p1.coords();
                    for (int i = 0; i < n; ++i) J(i, j) = (Fp[i] - F[i]) / h;
                }
            } catch (const std::exception&) {
                break;
            }
            Vec step(n);
            try {
                step = J.inverse() * F;
            } catch (const std::exception&) {
                break;
            }
            double alpha = 1.0;
            bool improved = false;
            for (int halving = 0; halving < 10; ++halving) {
                Vec wt = w - alpha * step;
                const double lt = std::sqrt(wt.dot(g0 * wt));
                if (lt < cfg.max_length) {
                    try {
                        const Vec Ft = detail::shoot_endpoint(m, p0, wt, cfg.integrator) - p1.coords();
                        if (Ft.max_abs() < resid) {
                            w = wt;
                            improved = true;
                            break;
                        }
                    } catch (const std::exception&) {
                    }
                }
                alpha *= 0.5;
            }
            if (!improved) break;
        }
        const double len = std::sqrt(w.dot(g0 * w));
        if (resid < tol && len > 1e-12) {
            if (!best.converged || len < best.length) {
                best.converged = true;
                best.velocity = (1.0 / len) * w;
                best.length = len;
                best.residual = resid;
                best.iterations = iters;
            }
        } else if (!best.converged && resid < best.residual) {
            best.velocity = len > 1e-12 ? (1.0 / len) * w : w;
            best.length = len;
            best.residual = resid;
            best.iterations = iters;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Carnot-Caratheodory distance estimation through the Riemannian approximants
// ---------------------------------------------------------------------------

struct CcEntry {
    double L;
    bool converged;
    double distance;
};

struct CcEstimate {
    std::vector<CcEntry> entries;
    bool any_converged = false;
    double estimate = 0;  // last converged entry
};

inline CcEstimate cc_distance_estimate(const Point& p0, const Point& p1,
                                       const std::vector<double>& L_list,
                                       const ShootConfig& cfg = {}) {
    CcEstimate out;
    if (p0 == p1) {
        for (double L : L_list) out.entries.push_back({L, true, 0.0});
        out.any_converged = true;
        out.estimate = 0;
        return out;
    }
    for (double L : L_list) {
        const MetricId m = MetricId::gl(L);
        const ShootResult r = shoot_bvp(m, p0, p1, cfg.tol, cfg);
        out.entries.push_back({L, r.converged, r.converged ? r.length : 0.0});
        if (r.converged) {
            out.any_converged = true;
            out.estimate = r.length;
        }
    }
    return out;
}

}  // namespace heiscone
