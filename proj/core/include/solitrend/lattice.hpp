#pragma once

#include <string>
#include <vector>

#include "solitrend/errors.hpp"

namespace solitrend {

// Periodic chain of oscillators with the asymmetric quadratic force law
//   accel_i = k [ (d_i - d_{i-1}) + alpha (d_i^2 - d_{i-1}^2) + c1 ],
// d_i = s_{i+1} - s_i. The linear part is the discrete second difference;
// the alpha part is the difference of squared bond stretches, which
// telescopes over the ring (momentum is conserved exactly when c1 = 0) and
// whose continuum limit carries the dispersive-equation nonlinearity.

struct ChainConfig {
    double stiffness = 1.0;  // k > 0, 1/time^2
    double alpha = 0.0;      // nonlinearity per displacement unit
    double c1 = 0.0;         // constant drive
    double spacing = 1.0;    // h > 0; site coordinates are y = x/h
    int sites = 0;           // N
    double dt = 0.0;         // > 0 and <= 0.1/sqrt(k)

    void check() const;
};

struct ChainState {
    std::vector<double> s;  // displacements
    std::vector<double> v;  // velocities
    double t = 0.0;
};

struct ChainSample {
    double t = 0.0;
    std::vector<double> s;
    std::vector<double> v;
};

std::vector<double> chain_accel(const ChainState& state, const ChainConfig& cfg);

/// Velocity-Verlet integration; returns every sample_every-th state plus the
/// final one. Halts on blow-up.
std::vector<ChainSample> integrate_chain(const ChainState& initial, const ChainConfig& cfg,
                                         double total_time, int sample_every);

/// Kinetic + bond potential k (d^2/2 + alpha d^3/3) + drive term -k c1 s.
double chain_energy(const ChainState& state, const ChainConfig& cfg);

double chain_momentum(const ChainState& state);

/// Sine-mode projections (2/N normalization) of displacements and velocities.
struct ModeProjection {
    double displacement = 0.0;
    double velocity = 0.0;
};
ModeProjection chain_mode(const ChainState& state, int mode);

/// Chain whose site-derivative field equals `profile` (mean removed) moving
/// right: s from the spectral antiderivative, v = -sqrt(k) * profile.
ChainState chain_from_profile(const ChainConfig& cfg, const std::vector<double>& profile);

/// Standing single-mode data s_j = amplitude * sin(2 pi m j / N), v = 0.
ChainState chain_single_mode(const ChainConfig& cfg, int mode, double amplitude);

/// Comparison clock of the dispersive route, T = alpha * tau. Degenerates for
/// alpha == 0, which is rejected; the linear route applies there instead.
double kdv_frame_time(double alpha, double tau);

struct ContinuumComparison {
    double correlation = 0.0;           // Pearson correlation of the two fields
    double compare_time = 0.0;          // final common time in the rescaled frame
    double spectral_tail_fraction = 0.0;  // energy above 2/3 of the band at t=0
    bool tail_warning = false;          // tail fraction exceeded 1%
    std::string route;                  // "kdv" or "linear"
};

/// Maps the chain trajectory through the moving-frame rescaling and
/// correlates the transported field with the matched continuum evolution:
/// the dispersive equation for alpha != 0, the d'Alembert transport solution
/// for the harmonic chain.
ContinuumComparison continuum_compare(const std::vector<ChainSample>& trajectory,
                                      const ChainConfig& cfg);

/// Trajectory CSV: t, then one displacement column per site.
void write_chain_csv(std::ostream& out, const std::vector<ChainSample>& trajectory,
                     int site_stride);

}  // namespace solitrend
