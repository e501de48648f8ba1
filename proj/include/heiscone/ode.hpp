#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace heiscone {

// Adaptive Dormand-Prince 5(4) with cubic-Hermite dense output.  States are
// small (position + velocity, at most 8 doubles), so everything is inline
// storage.

struct OdeState {
    std::array<double, 8> y{};
    int n = 0;

    double& operator[](int i) { return y[i]; }
    double operator[](int i) const { return y[i]; }
};

inline OdeState ode_axpy(const OdeState& base, double c, const OdeState& d) {
    OdeState out = base;
    for (int i = 0; i < base.n; ++i) out.y[i] += c * d.y[i];
    return out;
}

struct OdeConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double h_init = 1e-2;
    double h_max = 0.25;
    double h_min = 1e-13;
};

struct OdeStepRecord {
    double s0, s1;
    OdeState y0, y1;
    OdeState f0, f1;
};

inline OdeState hermite_eval(const OdeStepRecord& st, double s) {
    const double h = st.s1 - st.s0;
    const double u = (s - st.s0) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    OdeState out;
    out.n = st.y0.n;
    for (int i = 0; i < out.n; ++i)
        out.y[i] = h00 * st.y0[i] + h * h10 * st.f0[i] + h01 * st.y1[i] + h * h11 * st.f1[i];
    return out;
}

enum class OdeOutcome { Completed, Event, StepUnderflow };

struct OdeResult {
    OdeOutcome outcome;
    std::vector<OdeStepRecord> steps;
    double s_end = 0;
    OdeState y_end;
};

// rhs: OdeState(double s, const OdeState&); event: double(const OdeState&),
// integration stops where the event function first crosses <= 0 (located on
// the Hermite interpolant by bisection).
template <class RHS, class EVENT>
OdeResult integrate_ode(RHS&& rhs, const OdeState& y0, double s_end, const OdeConfig& cfg,
                        EVENT&& event) {
    static constexpr double A[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    static constexpr double C[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double E[7] = {35.0 / 384 - 5179.0 / 57600,
                                    0.0,
                                    500.0 / 1113 - 7571.0 / 16695,
                                    125.0 / 192 - 393.0 / 640,
                                    -2187.0 / 6784 + 92097.0 / 339200,
                                    11.0 / 84 - 187.0 / 2100,
                                    -1.0 / 40};

    OdeResult res;
    res.y_end = y0;
    double s = 0;
    double h = std::min(cfg.h_init, std::min(cfg.h_max, s_end));
    OdeState y = y0;
    OdeState f = rhs(s, y);

    while (s < s_end) {
        h = std::min(h, s_end - s);
        if (h < cfg.h_min) {
            res.outcome = OdeOutcome::StepUnderflow;
            res.s_end = s;
            res.y_end = y;
            return res;
        }
        std::array<OdeState, 7> k;
        k[0] = f;
        bool stage_ok = true;
        for (int i = 1; i < 7 && stage_ok; ++i) {
            OdeState yi = y;
            for (int j = 0; j < i; ++j)
                for (int m = 0; m < y.n; ++m) yi.y[m] += h * A[i][j] * k[j].y[m];
            try {
                k[i] = rhs(s + C[i] * h, yi);
            } catch (const std::exception&) {
                stage_ok = false;  // stage left the domain; retry shorter
            }
        }
        if (!stage_ok) {
            h *= 0.3;
            continue;
        }
        OdeState y1 = y;
        for (int j = 0; j < 7; ++j)
            for (int m = 0; m < y.n; ++m) y1.y[m] += h * A[6][j] * k[j].y[m];

        double err = 0;
        for (int m = 0; m < y.n; ++m) {
            double e = 0;
            for (int j = 0; j < 7; ++j) e += E[j] * k[j].y[m];
            e *= h;
            const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[m]), std::abs(y1[m]));
            err += (e / scale) * (e / scale);
        }
        err = std::sqrt(err / y.n);

        if (err <= 1.0) {
            OdeStepRecord rec{s, s + h, y, y1, k[0], k[6]};  // FSAL: k7 = f(s+h, y1)
            if (event(y1) <= 0.0) {
                // Bisect the Hermite interpolant for the crossing.  The record
                // keeps the full step so the interpolant stays valid; the
                // truncated endpoint is reported on the result.
                double lo = s, hi = s + h;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + std::abs(hi)); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (event(hermite_eval(rec, mid)) <= 0.0)
                        hi = mid;
                    else
                        lo = mid;
                }
                res.steps.push_back(rec);
                res.outcome = OdeOutcome::Event;
                res.s_end = hi;
                res.y_end = hermite_eval(rec, hi);
                return res;
            }
            res.steps.push_back(rec);
            s += h;
            y = y1;
            f = k[6];
        }
        const double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        h = std::min(h, cfg.h_max);
    }
    res.outcome = OdeOutcome::Completed;
    res.s_end = s_end;
    res.y_end = y;
    return res;
}

}  // namespace heiscone
