#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "heiscone/core.hpp"

namespace heiscone {

// Deterministic sampling helper.  The uniform draw is built from raw engine
// bits so that reports are byte-identical for a given seed regardless of the
// standard library's distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int index(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

    // Sampling boxes used by the verification battery: x,y in [-3,3],
    // t in [-5,5], r in [0.2,5], rho in [0.3,4].
    Point heis_point() { return heiscone::heis_point(xy(), xy(), tt()); }
    Point cone_point() { return heiscone::cone_point(xy(), xy(), tt(), rr()); }
    Point half_plane_point() { return heiscone::half_plane_point(tt(), rr()); }
    Point complex_plane_point() { return heiscone::complex_plane_point(xy(), xy()); }
    Point half_space_point() { return heiscone::half_space_point(xy(), xy(), rr()); }
    Point siegel_point() {
        const double x2 = uniform(-2, 2), y2 = uniform(-2, 2);
        const double rho = uniform(0.3, 4);
        const double x1 = -0.5 * (rho + x2 * x2 + y2 * y2);
        return heiscone::siegel_point(x1, uniform(-3, 3), x2, y2);
    }
    Point point_on(Manifold m) {
        switch (m) {
            case Manifold::Heisenberg: return heis_point();
            case Manifold::Cone: return cone_point();
            case Manifold::Siegel: return siegel_point();
            case Manifold::HalfPlane: return half_plane_point();
            case Manifold::ComplexPlane: return complex_plane_point();
            case Manifold::HalfSpace: return half_space_point();
        }
        throw std::invalid_argument("Rng::point_on: unknown manifold");
    }

    Tangent tangent(const Point& p) {
        Vec v(p.dim());
        for (int i = 0; i < p.dim(); ++i) v[i] = uniform(-1, 1);
        return Tangent(p, v);
    }

  private:
    double xy() { return uniform(-3, 3); }
    double tt() { return uniform(-5, 5); }
    double rr() { return uniform(0.2, 5); }
    std::mt19937_64 eng_;
};

// Per-check seed derivation (FNV-1a mix) so results do not depend on the
// order in which checks run or on filtering.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
    std::uint64_t h = 1469598103934665603ull ^ base;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace heiscone
