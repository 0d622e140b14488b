#include "solitrend/oscillator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace solitrend {

ParticipantStats participant_probabilities(const MarketCounts& counts) {
    if (counts.bulls < 0 || counts.bears < 0)
        throw validation_error("participant_probabilities: counts must be non-negative");
    const long long n = counts.bulls + counts.bears;
    if (n < 1) throw validation_error("participant_probabilities: no participants");
    ParticipantStats s;
    s.p_plus = static_cast<double>(counts.bulls) / static_cast<double>(n);
    s.p_minus = static_cast<double>(counts.bears) / static_cast<double>(n);
    s.imbalance = counts.bulls - counts.bears;
    s.residual = n - s.imbalance;
    s.p = static_cast<double>(s.residual) / static_cast<double>(n);
    return s;
}

EntropySplit entropy_split(double p_plus, double p_minus, double p) {
    if (!(p_plus > p_minus))
        throw undefined_error("entropy_split: informative part undefined for p+ <= p-");
    if (!(p > 0.0) || p > 1.0)
        throw validation_error("entropy_split: p must lie in (0,1]");
    const double d = p_plus - p_minus;
    EntropySplit out;
    out.informative = (d == 1.0) ? 0.0 : -d * std::log(d);
    out.redundant = (p == 1.0) ? 0.0 : -p * std::log(p);
    return out;
}

double shannon_entropy(std::span<const double> p) {
    double h = 0.0;
    for (double pi : p) {
        if (pi < 0.0) throw validation_error("shannon_entropy: negative component");
        if (pi > 0.0) h -= pi * std::log(pi);
    }
    return h;
}

TaylorEntropy entropy_taylor(std::span<const double> p, std::span<const double> p0) {
    if (p.size() != p0.size())
        throw validation_error("entropy_taylor: length mismatch");
    TaylorEntropy out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (!(p0[i] > 0.0))
            throw validation_error("entropy_taylor: reference component must be > 0");
        const double d = p[i] - p0[i];
        out.approx_entropy -= p[i] * std::log(p0[i]) + d + d * d / (2.0 * p0[i]);
        out.d_star += d * d / (2.0 * p0[i]);
    }
    return out;
}

void ReferenceState::check() const {
    if (!(p10 > 0.0 && p10 < 1.0 && p20 > 0.0 && p20 < 1.0))
        throw validation_error("ReferenceState: probabilities must lie in (0,1)");
    if (gamma == 0.0 || !std::isfinite(gamma))
        throw validation_error("ReferenceState: gamma must be finite and nonzero");
}

double d_star2(const ProbState2& state, const ReferenceState& ref) {
    const double d1 = state.p1 - ref.p10;
    const double d2 = state.p2 - ref.p20;
    return d1 * d1 / (2.0 * ref.p10) + d2 * d2 / (2.0 * ref.p20);
}

double d_double_star(const ProbState2& state, const ReferenceState& ref) {
    const double d1 = state.p1 - ref.p10;
    const double d2 = state.p2 - ref.p20;
    return d1 * d1 / (2.0 * ref.p10) + d2 * d2 / (2.0 * ref.p20)
         - d2 * d2 * d2 / (6.0 * ref.p20 * ref.p20);
}

OscParams osc_params(const ReferenceState& ref) {
    ref.check();
    OscParams out;
    out.chi = ref.gamma * ref.gamma / (ref.p10 * ref.p20);
    out.k = 2.0 * out.chi;
    out.alpha = 1.0 / (4.0 * ref.p20);
    out.c1 = 3.0 * ref.p20 / 4.0;
    out.c2 = ref.p20;
    out.k_rate_form = 2.0 * ref.gamma / ref.p20;
    return out;
}

namespace {

struct Deriv {
    double dp1;
    double dp2;
};

template <class Rhs>
OscTrajectory integrate_rk4(const ReferenceState& ref, const ProbState2& init, double dt,
                            double total_time, Rhs&& rhs, const char* name,
                            double escape_p2 /* 0 = none */) {
    ref.check();
    if (!(dt > 0.0)) throw validation_error(std::string(name) + ": dt must be > 0");
    if (!(total_time > 0.0)) throw validation_error(std::string(name) + ": total_time must be > 0");
    if (!(init.p1 > 0.0 && init.p1 < 1.0 && init.p2 > 0.0 && init.p2 < 1.0))
        throw validation_error(std::string(name) + ": initial state must lie in (0,1)");

    const long long steps = static_cast<long long>(std::ceil(total_time / dt - 1e-9));
    OscTrajectory traj;
    traj.reserve(static_cast<size_t>(steps) + 1);
    ProbState2 s = init;
    traj.push_back({0.0, s.p1, s.p2});
    for (long long n = 0; n < steps; ++n) {
        const Deriv k1 = rhs(s);
        const ProbState2 s2{s.p1 + 0.5 * dt * k1.dp1, s.p2 + 0.5 * dt * k1.dp2};
        const Deriv k2 = rhs(s2);
        const ProbState2 s3{s.p1 + 0.5 * dt * k2.dp1, s.p2 + 0.5 * dt * k2.dp2};
        const Deriv k3 = rhs(s3);
        const ProbState2 s4{s.p1 + dt * k3.dp1, s.p2 + dt * k3.dp2};
        const Deriv k4 = rhs(s4);
        s.p1 += dt / 6.0 * (k1.dp1 + 2.0 * k2.dp1 + 2.0 * k3.dp1 + k4.dp1);
        s.p2 += dt / 6.0 * (k1.dp2 + 2.0 * k2.dp2 + 2.0 * k3.dp2 + k4.dp2);
        const double t = static_cast<double>(n + 1) * dt;
        if (!(s.p1 > 0.0 && s.p1 < 1.0 && s.p2 > 0.0 && s.p2 < 1.0))
            throw numeric_error(std::string(name) + ": state left (0,1) at t=" + std::to_string(t)
                                + " (p1=" + std::to_string(s.p1) + ", p2=" + std::to_string(s.p2) + ")");
        if (escape_p2 > 0.0 && s.p2 >= escape_p2)
            throw numeric_error(std::string(name) + ": orbit escaped the cubic well at t="
                                + std::to_string(t) + " (p2=" + std::to_string(s.p2) + ")");
        traj.push_back({t, s.p1, s.p2});
    }
    return traj;
}

}  // namespace

OscTrajectory integrate_harmonic(const ReferenceState& ref, const ProbState2& init,
                                 double dt, double total_time) {
    const double g = ref.gamma;
    const double p10 = ref.p10;
    const double p20 = ref.p20;
    return integrate_rk4(
        ref, init, dt, total_time,
        [g, p10, p20](const ProbState2& s) {
            return Deriv{g / p20 * (s.p2 - p20), -g / p10 * (s.p1 - p10)};
        },
        "integrate_harmonic", 0.0);
}

OscTrajectory integrate_nonharmonic(const ReferenceState& ref, const ProbState2& init,
                                    double dt, double total_time) {
    ref.check();
    // Well depth at the unstable equilibrium p2 = 3 p20 is (2/3) p20.
    const double well = 2.0 / 3.0 * ref.p20;
    if (d_double_star(init, ref) >= well)
        throw validation_error("integrate_nonharmonic: initial amplitude exceeds the confining well"
                               " (D**=" + std::to_string(d_double_star(init, ref))
                               + " >= " + std::to_string(well) + ")");
    const double g = ref.gamma;
    const double p10 = ref.p10;
    const double p20 = ref.p20;
    return integrate_rk4(
        ref, init, dt, total_time,
        [g, p10, p20](const ProbState2& s) {
            const double d2 = s.p2 - p20;
            return Deriv{-g * (d2 / p20 - d2 * d2 / (2.0 * p20 * p20)),
                         g / p10 * (s.p1 - p10)};
        },
        "integrate_nonharmonic", 3.0 * p20);
}

void write_trajectory_csv(std::ostream& out, const OscTrajectory& traj,
                          const ReferenceState& ref, bool harmonic) {
    out << (harmonic ? "t,p1,p2,d_star\n" : "t,p1,p2,d_double_star\n");
    char buf[160];
    for (const OscSample& s : traj) {
        const ProbState2 state{s.p1, s.p2};
        const double d = harmonic ? d_star2(state, ref) : d_double_star(state, ref);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.t, s.p1, s.p2, d);
        out << buf;
    }
}

}  // namespace solitrend
