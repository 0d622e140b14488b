#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "solitrend/errors.hpp"

namespace solitrend {

/// Bull/bear head counts. N = bulls + bears must be >= 1.
struct MarketCounts {
    long long bulls = 0;
    long long bears = 0;
};

struct ParticipantStats {
    double p_plus = 0.0;   // bulls / N
    double p_minus = 0.0;  // bears / N
    double p = 0.0;        // K/N = 1 - (p_plus - p_minus)
    long long imbalance = 0;  // M = bulls - bears
    long long residual = 0;   // K = N - M
};

ParticipantStats participant_probabilities(const MarketCounts& counts);

/// Entropy split of the participant distribution.
/// informative T = -(p+ - p-) ln(p+ - p-), defined only for p+ > p-;
/// redundant   R = -p ln p, with R(1) = 0.
struct EntropySplit {
    double informative = 0.0;
    double redundant = 0.0;
};

EntropySplit entropy_split(double p_plus, double p_minus, double p);

/// H = -sum p_i ln p_i; zero components contribute 0, negatives rejected.
double shannon_entropy(std::span<const double> p);

/// Second-order expansion of H around a reference distribution p0, plus the
/// positive quadratic distance D* = sum (p_i - p_i0)^2 / (2 p_i0).
struct TaylorEntropy {
    double approx_entropy = 0.0;
    double d_star = 0.0;
};

TaylorEntropy entropy_taylor(std::span<const double> p, std::span<const double> p0);

/// Two-component probability state; both components strictly inside (0,1).
struct ProbState2 {
    double p1 = 0.0;
    double p2 = 0.0;
};

/// Reference probabilities and coupling rate for the two-component systems.
struct ReferenceState {
    double p10 = 0.0;
    double p20 = 0.0;
    double gamma = 0.0;  // 1/time, nonzero

    void check() const;
};

/// D* restricted to two components.
double d_star2(const ProbState2& state, const ReferenceState& ref);

/// D** = (p1-p10)^2/(2 p10) + (p2-p20)^2/(2 p20) - (p2-p20)^3/(6 p20^2).
double d_double_star(const ProbState2& state, const ReferenceState& ref);

/// Derived oscillator constants.
///
/// chi, alpha, c1, c2 follow directly from the reference state. Two values
/// are carried for the quadratic-restoring rate: k = 2 gamma^2/(p10 p20),
/// which has the same 1/time^2 units as chi and is the one the integrators
/// and tests use, and k_rate_form = 2 gamma/p20, a first-order rate variant
/// reported alongside for comparison.
struct OscParams {
    double chi = 0.0;          // gamma^2 / (p10 p20)
    double k = 0.0;            // 2 gamma^2 / (p10 p20)
    double alpha = 0.0;        // 1 / (4 p20)
    double c1 = 0.0;           // 3 p20 / 4
    double c2 = 0.0;           // p20
    double k_rate_form = 0.0;  // 2 gamma / p20
};

OscParams osc_params(const ReferenceState& ref);

struct OscSample {
    double t = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

using OscTrajectory = std::vector<OscSample>;

/// Conservative two-component linear system
///   dp1/dt =  (gamma/p20) (p2 - p20)
///   dp2/dt = -(gamma/p10) (p1 - p10)
/// integrated with classical RK4 at fixed dt; one output sample per step.
/// The sign pairing makes dD*/dt = 0 hold exactly and p2 oscillate at
/// angular frequency sqrt(chi). Halts if the state leaves (0,1).
OscTrajectory integrate_harmonic(const ReferenceState& ref, const ProbState2& init,
                                 double dt, double total_time);

/// Conservative two-component system with the cubic correction
///   dp1/dt = -gamma [ (p2-p20)/p20 - (p2-p20)^2/(2 p20^2) ]
///   dp2/dt =  (gamma/p10) (p1 - p10)
/// which conserves D** and induces (1/k) p2'' = -p2 + alpha p2^2 + c1 with
/// the OscParams constants. The cubic well confines orbits with
/// D**(init) < (2/3) p20; larger initial distances are rejected, and escape
/// past the unstable equilibrium p2 = 3 p20 halts the run.
OscTrajectory integrate_nonharmonic(const ReferenceState& ref, const ProbState2& init,
                                    double dt, double total_time);

/// CSV (t,p1,p2,d_star) or (t,p1,p2,d_double_star).
void write_trajectory_csv(std::ostream& out, const OscTrajectory& traj,
                          const ReferenceState& ref, bool harmonic);

}  // namespace solitrend
