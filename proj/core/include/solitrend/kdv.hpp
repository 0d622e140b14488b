#pragma once

#include <functional>
#include <vector>

#include "solitrend/errors.hpp"
#include "solitrend/waves.hpp"

namespace solitrend {

// Time integration of u_t + 6 u u_x + u_xxx + C = 0 on a periodic grid.
//
// Two independent schemes cross-validate each other:
//   zabusky_kruskal    explicit leapfrog with the three-point-average
//                      nonlinearity and the five-point dispersion stencil;
//                      one midpoint half-step starts the scheme.
//   pseudospectral_rk4 exact dispersion through an integrating factor in
//                      Fourier space, classical RK4 on the (2/3-dealiased)
//                      nonlinearity.
//
// Internally everything runs in the N6 normalization. Data given in the
// u_t + u u_x + delta u_xxx + C = 0 form (delta != 1) is transported to N6
// by the affine map U(X,T) = 6 u(X/sqrt(delta), T/sqrt(delta)) and back.

enum class Scheme {
    zabusky_kruskal,
    pseudospectral_rk4,
};

struct SolverConfig {
    Scheme scheme = Scheme::pseudospectral_rk4;
    double dt = 0.0;         // upper bound; the run subdivides T into equal steps <= dt
    double forcing = 0.0;    // C >= 0
    double delta = 1.0;      // dispersion coefficient of the caller's data form
    long long max_steps = 200'000'000;

    void check() const;

    /// Leapfrog bound dt <= dx^3 / (4 + 6 dx^2 umax); enforced, not advisory.
    static double zk_stable_dt(double dx, double umax);
    /// Advective RK4 bound for the integrating-factor scheme.
    static double spectral_stable_dt(double dx, double umax);
};

/// Called with intermediate states during evolve (first call at t0, last at
/// the final time).
using EvolveObserver = std::function<void(const WaveField&)>;

WaveField evolve(const WaveField& field, const SolverConfig& cfg, double advance_time);
WaveField evolve(const WaveField& field, const SolverConfig& cfg, double advance_time,
                 const EvolveObserver& observer, double observe_every);

struct Invariants {
    double i1 = 0.0;  // integral of u
    double i2 = 0.0;  // integral of u^2
    double i3 = 0.0;  // integral of 2 u^3 - u_x^2 (spectral derivative)
};

Invariants invariants(const WaveField& field);

struct EmittedSoliton {
    double amplitude = 0.0;
    double speed = 0.0;  // from peak displacement between two late snapshots
};

/// Evolves train initial data to time T, measures the separated peaks at
/// 0.9 T and T, and pairs them by height order. Requires the displacement
/// per window to stay under half the domain so the periodic seam unwraps
/// unambiguously. Throws if fewer than expected_n peaks separate.
std::vector<EmittedSoliton> fission(const WaveField& initial, const SolverConfig& cfg,
                                    double total_time, int expected_n);

/// Evolves a kappa-soliton under forcing C > 0 and tracks its peak until the
/// unwrapped position first re-crosses the start. Returns the measured
/// return time (linearly interpolated between tracking samples).
double forced_return(const SolverConfig& cfg, double kappa, const Grid1D& grid);

}  // namespace solitrend
