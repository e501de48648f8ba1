#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "heiscone/metrics.hpp"

namespace heiscone {

// Named frame fields.  On the Heisenberg group:
//   X = d/dx + 2y d/dt,  Y = d/dy - 2x d/dt,  T = d/dt,  Ttilde = 2T,
//   ZRe/ZIm = real and imaginary parts of Z = (X - iY)/2.
// On the cone:
//   Xr = X/r, Yr = Y/r, Tr = Ttilde/r, Dr = d/dr,
//   Xp = aX, Yp = aY, Tp = bT, Rp = b d/dr  (a = C sqrt(r)/2, b = C r),
//   N1, N2 = normals of the complex-plane embedding, NU3 = normal of the
//   half-space embedding.
enum class FrameId { X, Y, T, Ttilde, ZRe, ZIm, Xr, Yr, Tr, Dr, Xp, Yp, Tp, Rp, N1, N2, NU3 };

constexpr Manifold manifold_of(FrameId f) {
    switch (f) {
        case FrameId::X:
        case FrameId::Y:
        case FrameId::T:
        case FrameId::Ttilde:
        case FrameId::ZRe:
        case FrameId::ZIm: return Manifold::Heisenberg;
        default: return Manifold::Cone;
    }
}

inline std::string_view frame_name(FrameId f) {
    switch (f) {
        case FrameId::X: return "X";
        case FrameId::Y: return "Y";
        case FrameId::T: return "T";
        case FrameId::Ttilde: return "T~";
        case FrameId::ZRe: return "Z.re";
        case FrameId::ZIm: return "Z.im";
        case FrameId::Xr: return "Xr";
        case FrameId::Yr: return "Yr";
        case FrameId::Tr: return "Tr";
        case FrameId::Dr: return "dr";
        case FrameId::Xp: return "X'";
        case FrameId::Yp: return "Y'";
        case FrameId::Tp: return "T'";
        case FrameId::Rp: return "R'";
        case FrameId::N1: return "N1";
        case FrameId::N2: return "N2";
        case FrameId::NU3: return "N(U3)";
    }
    return "?";
}

inline std::optional<FrameId> frame_from_name(std::string_view s) {
    for (FrameId f :
         {FrameId::X, FrameId::Y, FrameId::T, FrameId::Ttilde, FrameId::ZRe, FrameId::ZIm,
          FrameId::Xr, FrameId::Yr, FrameId::Tr, FrameId::Dr, FrameId::Xp, FrameId::Yp,
          FrameId::Tp, FrameId::Rp, FrameId::N1, FrameId::N2, FrameId::NU3})
        if (frame_name(f) == s) return f;
    return std::nullopt;
}

// `ctx` supplies the GAB parameter C for the primed frames; they default to
// the GPrime normalization C = 1.
inline Tangent eval_frame(FrameId f, const Point& p, const MetricId* ctx = nullptr) {
    if (p.manifold() != manifold_of(f))
        throw std::invalid_argument("eval_frame: frame not defined on this manifold");
    const double x = p[0], y = p[1];
    switch (f) {
        case FrameId::X: return Tangent(p, {1, 0, 2 * y});
        case FrameId::Y: return Tangent(p, {0, 1, -2 * x});
        case FrameId::T: return Tangent(p, {0, 0, 1});
        case FrameId::Ttilde: return Tangent(p, {0, 0, 2});
        case FrameId::ZRe: return Tangent(p, {0.5, 0, y});
        case FrameId::ZIm: return Tangent(p, {0, -0.5, x});
        default: break;
    }
    const double r = p[3];
    switch (f) {
        case FrameId::Xr: return Tangent(p, {1 / r, 0, 2 * y / r, 0});
        case FrameId::Yr: return Tangent(p, {0, 1 / r, -2 * x / r, 0});
        case FrameId::Tr: return Tangent(p, {0, 0, 2 / r, 0});
        case FrameId::Dr: return Tangent(p, {0, 0, 0, 1});
        case FrameId::Xp:
        case FrameId::Yp:
        case FrameId::Tp:
        case FrameId::Rp: {
            double C = 1.0;
            if (ctx != nullptr) {
                if (ctx->kind == MetricKind::GAB)
                    C = ctx->param;
                else if (ctx->kind != MetricKind::GPrime)
                    throw std::invalid_argument("eval_frame: primed frames need a GAB metric");
            }
            const double a = C * std::sqrt(r) / 2.0, b = C * r;
            switch (f) {
                case FrameId::Xp: return Tangent(p, {a, 0, 2 * a * y, 0});
                case FrameId::Yp: return Tangent(p, {0, a, -2 * a * x, 0});
                case FrameId::Tp: return Tangent(p, {0, 0, b, 0});
                default: return Tangent(p, {0, 0, 0, b});
            }
        }
        case FrameId::N1: {
            const double n = std::sqrt(1 + x * x + y * y);
            return Tangent(p, {y / n, -x / n, 2 * n, 0});
        }
        case FrameId::N2: return Tangent(p, {0, 0, 0, 1});
        case FrameId::NU3: {
            const double n = std::sqrt(1 + x * x + y * y);
            return Tangent(p, {y / (r * n), -x / (r * n), 2 * n / r, 0});
        }
        default: break;
    }
    throw std::logic_error("eval_frame: unhandled frame");
}

// Reeb vector field of the contact form associated with a Heisenberg metric:
// for GL(L) the form is sqrt(L) w and the Reeb field is T / sqrt(L); for the
// contact metric g = GL(1/4) this is Ttilde = 2T (form wtilde = w/2).
inline Tangent reeb_field(const MetricId& m, const Point& p) {
    double L;
    switch (m.kind) {
        case MetricKind::GL: L = m.param; break;
        case MetricKind::GSasaki: L = 0.25; break;
        default: throw std::invalid_argument("reeb_field: defined for Heisenberg metrics only");
    }
    return Tangent(p, {0, 0, 1.0 / std::sqrt(L)});
}

}  // namespace heiscone
