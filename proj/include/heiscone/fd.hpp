#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "heiscone/core.hpp"

namespace heiscone {

// Finite-difference machinery shared by the curvature and structure modules:
// 4th-order central stencils with one Richardson extrapolation level (h, h/2).
// Steps scale with the coordinate magnitude and shrink near the r = 0 / rho = 0
// walls so that every stencil point stays inside the domain.

inline constexpr double kFdStepDefault = 1e-3;

// f is a callable double(double offset) evaluated around offset 0.

template <class F>
double diff1_h(F&& f, double h) {
    return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
}

template <class F>
double diff1(F&& f, double h) {
    const double d1 = diff1_h(f, h);
    const double d2 = diff1_h(f, h / 2);
    return (16 * d2 - d1) / 15;
}

template <class F>
double diff2_h(F&& f, double f0, double h) {
    return (-f(2 * h) + 16 * f(h) - 30 * f0 + 16 * f(-h) - f(-2 * h)) / (12 * h * h);
}

template <class F>
double diff2(F&& f, double h) {
    const double f0 = f(0.0);
    const double d1 = diff2_h(f, f0, h);
    const double d2 = diff2_h(f, f0, h / 2);
    return (16 * d2 - d1) / 15;
}

// Largest safe displacement of coordinate `axis` keeping the point strictly
// inside the domain guards (stencils reach 2h, so callers divide by >= 2.5).
inline double boundary_margin(const Point& p, int axis) {
    const Manifold m = p.manifold();
    if (axis == radial_index(m)) return p.radius() - kDomainGuard;
    if (m == Manifold::Siegel) {
        const double q = rho(p);
        // |d rho| <= 2|dz1re| + 2|z2||dz2|; a displacement below this bound
        // cannot cross the wall.
        const double slope = 2.0 * (1.0 + std::abs(p[2]) + std::abs(p[3]));
        return (q - kDomainGuard) / slope;
    }
    return 1e30;
}

inline double fd_step(const Point& p, int axis, double base) {
    double h = base * std::max(1.0, std::abs(p[axis]));
    const double margin = boundary_margin(p, axis) / 2.5;
    if (margin <= 0) throw std::domain_error("fd_step: point too close to the domain boundary");
    return std::min(h, margin);
}

// First and second partial derivatives of matrix- or vector-valued functions
// of a point.  The function is evaluated once per stencil offset, not per
// component.

template <class F>
Mat partial_matrix(F&& eval, const Point& p, int axis, double base_step) {
    const double h = fd_step(p, axis, base_step);
    const auto at = [&](double s) { return eval(p.displaced(axis, s)); };
    // D(h): coefficients (-1, 8, -8, 1)/(12h) at offsets (2h, h, -h, -2h)
    // D(h/2): (-1, 8, -8, 1)/(6h) at offsets (h, h/2, -h/2, -h)
    Mat out = (-1.0 / (12 * h) * -1.0 / 15.0) * at(2 * h);
    out += ((8.0 / (12 * h)) * (-1.0 / 15.0) + (-1.0 / (6 * h)) * (16.0 / 15.0)) * at(h);
    out += ((8.0 / (6 * h)) * (16.0 / 15.0)) * at(h / 2);
    out += ((-8.0 / (6 * h)) * (16.0 / 15.0)) * at(-h / 2);
    out += ((-8.0 / (12 * h)) * (-1.0 / 15.0) + (1.0 / (6 * h)) * (16.0 / 15.0)) * at(-h);
    out += ((1.0 / (12 * h)) * (-1.0 / 15.0)) * at(-2 * h);
    return out;
}

template <class F>
Mat partial2_matrix(F&& eval, const Point& p, int axis1, int axis2, double base_step) {
    if (axis1 == axis2) {
        const double h = fd_step(p, axis1, base_step);
        const auto at = [&](double s) { return eval(p.displaced(axis1, s)); };
        // D2(h): (-1, 16, -30, 16, -1)/(12h^2) at (2h, h, 0, -h, -2h)
        // D2(h/2): (-1, 16, -30, 16, -1)/(3h^2) at (h, h/2, 0, -h/2, -h)
        const double c = 1.0 / (12 * h * h), d = 1.0 / (3 * h * h);
        Mat out = (-c * -1.0 / 15.0) * at(2 * h);
        out += ((16 * c) * (-1.0 / 15.0) + (-d) * (16.0 / 15.0)) * at(h);
        out += ((16 * d) * (16.0 / 15.0)) * at(h / 2);
        out += ((-30 * c) * (-1.0 / 15.0) + (-30 * d) * (16.0 / 15.0)) * at(0.0);
        out += ((16 * d) * (16.0 / 15.0)) * at(-h / 2);
        out += ((16 * c) * (-1.0 / 15.0) + (-d) * (16.0 / 15.0)) * at(-h);
        out += (-c * -1.0 / 15.0) * at(-2 * h);
        return out;
    }
    const auto inner = [&](const Point& q) { return partial_matrix(eval, q, axis2, base_step); };
    return partial_matrix(inner, p, axis1, base_step);
}

// Derivative of a scalar field along a coordinate axis.
template <class F>
double partial_scalar(F&& eval, const Point& p, int axis, double base_step) {
    const double h = fd_step(p, axis, base_step);
    return diff1([&](double s) { return eval(p.displaced(axis, s)); }, h);
}

// Derivative of a vector field (components as Vec) along a coordinate axis.
template <class F>
Vec partial_vector(F&& eval, const Point& p, int axis, double base_step) {
    const double h = fd_step(p, axis, base_step);
    const Vec v0 = eval(p);
    Vec out(v0.size());
    for (int i = 0; i < v0.size(); ++i)
        out[i] = diff1([&](double s) { return eval(p.displaced(axis, s))[i]; }, h);
    return out;
}

}  // namespace heiscone
