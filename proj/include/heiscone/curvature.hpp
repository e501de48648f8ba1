#pragma once

#include <array>
#include <cmath>

#include "heiscone/fd.hpp"
#include "heiscone/metrics.hpp"

namespace heiscone {

// Sign convention for the curvature tensor.  Paper:
//   R(U,V)W = nabla_V nabla_U W - nabla_U nabla_V W + nabla_{[U,V]} W,
// which is the negative of the usual textbook tensor (Standard).
enum class CurvatureConvention { Paper, Standard };

struct ChristoffelTable {
    Point base;
    MetricId metric;
    int dim;
    double step;
    std::array<double, 64> g{};  // gamma^k_{ij}, symmetric in (i,j)

    double gamma(int k, int i, int j) const { return g[16 * k + 4 * i + j]; }
    double& gamma(int k, int i, int j) { return g[16 * k + 4 * i + j]; }
};

namespace detail {

struct MetricJets {
    int n;
    Mat g, ginv;
    std::array<Mat, 4> dg;                  // dg[m](i,j) = d_m g_ij
    std::array<std::array<Mat, 4>, 4> ddg;  // ddg[m][l](i,j) = d_m d_l g_ij

    // dginv[m] = -ginv * dg[m] * ginv
    Mat dginv(int m) const { return -1.0 * (ginv * dg[m] * ginv); }
};

inline MetricJets metric_jets(const MetricId& m, const Point& p, double step,
                              bool second_order) {
    MetricJets jets{p.dim(), Mat(), Mat(), {}, {}};
    const auto eval = [&](const Point& q) { return metric_matrix(m, q); };
    jets.g = eval(p);
    jets.ginv = jets.g.inverse();
    for (int a = 0; a < jets.n; ++a) jets.dg[a] = partial_matrix(eval, p, a, step);
    if (second_order) {
        for (int a = 0; a < jets.n; ++a)
            for (int b = 0; b <= a; ++b) {
                jets.ddg[a][b] = partial2_matrix(eval, p, a, b, step);
                jets.ddg[b][a] = jets.ddg[a][b];
            }
    }
    return jets;
}

inline ChristoffelTable christoffel_from_jets(const MetricJets& jets, const Point& p,
                                              const MetricId& m, double step) {
    ChristoffelTable t{p, m, jets.n, step, {}};
    const int n = jets.n;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                double s = 0;
                for (int l = 0; l < n; ++l)
                    s += jets.ginv(k, l) *
                         (jets.dg[i](j, l) + jets.dg[j](i, l) - jets.dg[l](i, j));
                t.gamma(k, i, j) = 0.5 * s;
                t.gamma(k, j, i) = t.gamma(k, i, j);
            }
    return t;
}

}  // namespace detail

inline ChristoffelTable christoffel(const MetricId& m, const Point& p,
                                    double step = kFdStepDefault) {
    return detail::christoffel_from_jets(detail::metric_jets(m, p, step, false), p, m, step);
}

// Full curvature tensor in the standard convention, R(d_i,d_j)d_k = R^l_{kij} d_l,
//   R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
//             + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}.
// The Gamma-derivatives are assembled from d g and d^2 g, so the metric is the
// only finite-differenced quantity.
struct RiemannTensor {
    Point base;
    MetricId metric;
    int dim;
    Mat g;
    std::array<double, 256> comp{};  // standard-convention R^l_{kij}

    double r(int l, int k, int i, int j) const { return comp[64 * l + 16 * k + 4 * i + j]; }
    double& r(int l, int k, int i, int j) { return comp[64 * l + 16 * k + 4 * i + j]; }

    // R(u,v)w in the requested convention.
    Tangent apply(const Tangent& u, const Tangent& v, const Tangent& w,
                  CurvatureConvention conv) const {
        Vec out(dim);
        for (int l = 0; l < dim; ++l) {
            double s = 0;
            for (int k = 0; k < dim; ++k)
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) s += r(l, k, i, j) * w[k] * u[i] * v[j];
            out[l] = conv == CurvatureConvention::Paper ? -s : s;
        }
        return Tangent(base, out);
    }
};

inline RiemannTensor riemann_tensor(const MetricId& m, const Point& p,
                                    double step = kFdStepDefault) {
    const auto jets = detail::metric_jets(m, p, step, true);
    const auto gam = detail::christoffel_from_jets(jets, p, m, step);
    const int n = jets.n;

    // dGamma[m][k][i][j] = d_m Gamma^k_{ij}
    std::array<std::array<double, 64>, 4> dgam{};
    for (int a = 0; a < n; ++a) {
        const Mat dgi = jets.dginv(a);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) {
                    double s = 0;
                    for (int l = 0; l < n; ++l) {
                        s += dgi(k, l) * (jets.dg[i](j, l) + jets.dg[j](i, l) - jets.dg[l](i, j));
                        s += jets.ginv(k, l) * (jets.ddg[a][i](j, l) + jets.ddg[a][j](i, l) -
                                                jets.ddg[a][l](i, j));
                    }
                    dgam[a][16 * k + 4 * i + j] = 0.5 * s;
                    dgam[a][16 * k + 4 * j + i] = 0.5 * s;
                }
    }

    RiemannTensor R{p, m, n, jets.g, {}};
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = dgam[i][16 * l + 4 * j + k] - dgam[j][16 * l + 4 * i + k];
                    for (int mm = 0; mm < n; ++mm)
                        s += gam.gamma(l, i, mm) * gam.gamma(mm, j, k) -
                             gam.gamma(l, j, mm) * gam.gamma(mm, i, k);
                    R.r(l, k, i, j) = s;
                }
    return R;
}

inline Tangent riemann(const MetricId& m, const Point& p, const Tangent& u, const Tangent& v,
                       const Tangent& w, CurvatureConvention conv = CurvatureConvention::Paper,
                       double step = kFdStepDefault) {
    if (!(u.base() == p) || !(v.base() == p) || !(w.base() == p))
        throw std::invalid_argument("riemann: tangent base point mismatch");
    return riemann_tensor(m, p, step).apply(u, v, w, conv);
}

// Sectional curvature K(u,v) = g(R(u,v)u, v) / (|u|^2 |v|^2 - g(u,v)^2),
// paper convention; for orthonormal pairs the denominator is 1.
inline double sectional_from_tensor(const RiemannTensor& R, const Tangent& u, const Tangent& v) {
    const double gram = u.components().dot(R.g * u.components()) *
                            v.components().dot(R.g * v.components()) -
                        std::pow(u.components().dot(R.g * v.components()), 2);
    if (gram < 1e-12) throw std::domain_error("sectional: degenerate plane");
    const Tangent Ruvu = R.apply(u, v, u, CurvatureConvention::Paper);
    return Ruvu.components().dot(R.g * v.components()) / gram;
}

inline double sectional(const MetricId& m, const Point& p, const Tangent& u, const Tangent& v,
                        double step = kFdStepDefault) {
    if (!(u.base() == p) || !(v.base() == p))
        throw std::invalid_argument("sectional: tangent base point mismatch");
    return sectional_from_tensor(riemann_tensor(m, p, step), u, v);
}

// Ricci quadratic form Ric(u,u) = sum_i g(R(u,e_i)u, e_i) over a g-orthonormal
// frame (paper convention), its metric trace, and the (n-1)- and n(n-1)-
// normalized variants matching the cone corollary's values.
struct RicciScalar {
    int dim;
    Mat ricci;      // coordinate matrix of the trace-convention Ricci form
    double scalar;  // trace

    double operator()(const Tangent& u) const { return u.components().dot(ricci * u.components()); }
    double normalized(const Tangent& u) const { return (*this)(u) / (dim - 1); }
    double scalar_normalized() const { return scalar / (dim * (dim - 1)); }
};

inline RicciScalar ricci_and_scalar(const MetricId& m, const Point& p,
                                    double step = kFdStepDefault) {
    const RiemannTensor R = riemann_tensor(m, p, step);
    const auto frame = orthonormal_basis(m, p);
    const int n = R.dim;
    RicciScalar out{n, Mat(n, n), 0.0};
    // Ric(d_a, d_b) via the frame sum, symmetrized.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b <= a; ++b) {
            const Tangent ua(p, Vec::basis(n, a));
            const Tangent ub(p, Vec::basis(n, b));
            double s = 0;
            for (int i = 0; i < n; ++i) {
                const Tangent ei(p, frame[i]);
                const Tangent r1 = R.apply(ua, ei, ub, CurvatureConvention::Paper);
                s += r1.components().dot(R.g * ei.components());
            }
            out.ricci(a, b) = s;
            out.ricci(b, a) = s;
        }
    for (int i = 0; i < n; ++i) {
        const Tangent ei(p, frame[i]);
        out.scalar += out(ei);
    }
    return out;
}

}  // namespace heiscone
