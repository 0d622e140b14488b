#include "solitrend/kdv.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "fft_util.hpp"
#include "solitrend/analytic.hpp"

namespace solitrend {

namespace {

using detail::Fft;

double linf_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

void check_finite(const std::vector<double>& u, long long step, double t) {
    const double m = linf_of(u);
    if (!std::isfinite(m) || m > 1e6)
        throw numeric_error("evolve: blow-up detected at step " + std::to_string(step)
                            + ", t=" + std::to_string(t) + " (linf=" + std::to_string(m) + ")");
}

// 6 u u_x + u_xxx + C with the Zabusky-Kruskal stencils.
void zk_rhs(const std::vector<double>& u, double dx, double forcing, std::vector<double>& out) {
    const int n = static_cast<int>(u.size());
    const double inv_dx = 1.0 / dx;
    const double inv_2dx3 = 1.0 / (2.0 * dx * dx * dx);
    for (int j = 0; j < n; ++j) {
        const int jm2 = (j - 2 + n) % n;
        const int jm1 = (j - 1 + n) % n;
        const int jp1 = (j + 1) % n;
        const int jp2 = (j + 2) % n;
        const double nonlinear =
            (u[jp1] + u[j] + u[jm1]) * (u[jp1] - u[jm1]) * inv_dx;
        const double dispersive =
            (u[jp2] - 2.0 * u[jp1] + 2.0 * u[jm1] - u[jm2]) * inv_2dx3;
        out[j] = nonlinear + dispersive + forcing;
    }
}

struct StepPlan {
    long long steps;
    double dt;
};

StepPlan plan_steps(double advance_time, double dt_bound, long long max_steps,
                    const char* scheme_name) {
    if (advance_time == 0.0) return {0, dt_bound};
    const long long steps =
        std::max<long long>(1, static_cast<long long>(std::ceil(advance_time / dt_bound - 1e-9)));
    if (steps > max_steps)
        throw validation_error(std::string(scheme_name) + ": run needs " + std::to_string(steps)
                               + " steps, exceeding max_steps");
    return {steps, advance_time / static_cast<double>(steps)};
}

class ObserverClock {
public:
    ObserverClock(const EvolveObserver* obs, double every, double t0)
        : obs_(obs && *obs ? obs : nullptr), every_(every), next_(t0) {}

    bool active() const { return obs_ != nullptr; }
    bool due(double t) const { return active() && t + 1e-12 >= next_; }

    void offer(const WaveField& field) {
        if (!due(field.time)) return;
        (*obs_)(field);
        last_ = field.time;
        next_ = field.time + every_;
    }
    void final(const WaveField& field) {
        if (active() && last_ < field.time - 1e-12) (*obs_)(field);
    }

private:
    const EvolveObserver* obs_;
    double every_;
    double next_;
    double last_ = -1e300;
};

WaveField evolve_zk(const WaveField& field, const SolverConfig& cfg, double advance_time,
                    const EvolveObserver* observer, double observe_every) {
    const Grid1D& g = field.grid;
    const double dx = g.dx;
    const double bound = SolverConfig::zk_stable_dt(dx, std::max(linf_of(field.samples), 1e-12));
    if (cfg.dt > bound)
        throw validation_error("evolve: dt=" + std::to_string(cfg.dt)
                               + " violates the leapfrog stability bound "
                               + std::to_string(bound) + " for this field");
    const StepPlan plan = plan_steps(advance_time, cfg.dt, cfg.max_steps, "zabusky-kruskal");
    if (plan.steps == 0) return field;
    const double dt = plan.dt;

    std::vector<double> prev = field.samples;
    std::vector<double> curr(prev.size());
    std::vector<double> next(prev.size());
    std::vector<double> rhs(prev.size());
    std::vector<double> half(prev.size());

    ObserverClock clock(observer, observe_every, field.time);
    clock.offer(field);

    // Midpoint start: half-step to t + dt/2, then a full step on that slope.
    zk_rhs(prev, dx, cfg.forcing, rhs);
    for (size_t j = 0; j < prev.size(); ++j) half[j] = prev[j] - 0.5 * dt * rhs[j];
    zk_rhs(half, dx, cfg.forcing, rhs);
    for (size_t j = 0; j < prev.size(); ++j) curr[j] = prev[j] - dt * rhs[j];

    WaveField snapshot{g, curr, field.time + dt};
    clock.offer(snapshot);

    for (long long n = 1; n < plan.steps; ++n) {
        zk_rhs(curr, dx, cfg.forcing, rhs);
        for (size_t j = 0; j < curr.size(); ++j) next[j] = prev[j] - 2.0 * dt * rhs[j];
        prev.swap(curr);
        curr.swap(next);
        const double t = field.time + static_cast<double>(n + 1) * dt;
        if (n % 64 == 0) {
            check_finite(curr, n, t);
            const double now_bound = SolverConfig::zk_stable_dt(dx, linf_of(curr));
            if (dt > now_bound)
                throw numeric_error("evolve: field growth broke the leapfrog stability bound at t="
                                    + std::to_string(t) + "; lower dt below "
                                    + std::to_string(now_bound));
        }
        if (clock.due(t)) {
            snapshot.samples = curr;
            snapshot.time = t;
            clock.offer(snapshot);
        }
    }
    check_finite(curr, plan.steps, field.time + advance_time);
    WaveField out{g, std::move(curr), field.time + advance_time};
    clock.final(out);
    return out;
}

WaveField evolve_spectral(const WaveField& field, const SolverConfig& cfg, double advance_time,
                          const EvolveObserver* observer, double observe_every) {
    const Grid1D& g = field.grid;
    const int n = g.nx;
    const StepPlan plan = plan_steps(advance_time, cfg.dt, cfg.max_steps, "pseudospectral");
    if (plan.steps == 0) return field;
    const double dt = plan.dt;

    Fft fft(n);
    const int nk = fft.nk();
    std::vector<std::complex<double>> v(static_cast<size_t>(nk));
    std::vector<std::complex<double>> e_half(static_cast<size_t>(nk));
    std::vector<std::complex<double>> e_full(static_cast<size_t>(nk));
    std::vector<std::complex<double>> deriv_ik(static_cast<size_t>(nk));
    std::vector<bool> dealias(static_cast<size_t>(nk));

    const double two_pi_over_l = 2.0 * M_PI / g.length;
    for (int j = 0; j < nk; ++j) {
        const double k = two_pi_over_l * j;
        const std::complex<double> lin(0.0, k * k * k);  // from -u_xxx
        e_half[j] = std::exp(lin * (dt / 2.0));
        e_full[j] = e_half[j] * e_half[j];
        deriv_ik[j] = std::complex<double>(0.0, k);
        dealias[j] = (3 * j <= n);  // 2/3 rule on the quadratic product
    }

    std::vector<double> u(static_cast<size_t>(n));
    std::vector<double> usq(static_cast<size_t>(n));
    std::vector<std::complex<double>> a(v.size()), b(v.size()), c(v.size()), d(v.size()),
        tmp(v.size());

    fft.forward(field.samples.data(), v.data());

    auto nonlinear = [&](const std::vector<std::complex<double>>& spec,
                         std::vector<std::complex<double>>& out) {
        fft.backward(spec.data(), u.data());
        for (int j = 0; j < n; ++j) usq[j] = u[j] * u[j];
        fft.forward(usq.data(), out.data());
        for (int j = 0; j < nk; ++j)
            out[j] = dealias[j] ? -3.0 * deriv_ik[j] * out[j] : std::complex<double>(0.0, 0.0);
        out[0] -= cfg.forcing;  // uniform sink acts on the mean mode only
    };

    WaveField snapshot{g, field.samples, field.time};
    ObserverClock clock(observer, observe_every, field.time);
    clock.offer(snapshot);

    for (long long step = 0; step < plan.steps; ++step) {
        nonlinear(v, a);
        for (size_t j = 0; j < v.size(); ++j) tmp[j] = e_half[j] * (v[j] + (dt / 2.0) * a[j]);
        nonlinear(tmp, b);
        for (size_t j = 0; j < v.size(); ++j) tmp[j] = e_half[j] * v[j] + (dt / 2.0) * b[j];
        nonlinear(tmp, c);
        for (size_t j = 0; j < v.size(); ++j) tmp[j] = e_full[j] * v[j] + dt * e_half[j] * c[j];
        nonlinear(tmp, d);
        for (size_t j = 0; j < v.size(); ++j)
            v[j] = e_full[j] * v[j]
                 + (dt / 6.0) * (e_full[j] * a[j] + 2.0 * e_half[j] * (b[j] + c[j]) + d[j]);

        const double t = field.time + static_cast<double>(step + 1) * dt;
        const bool obs_due = clock.due(t);
        if (step % 32 == 31 || obs_due || step + 1 == plan.steps) {
            fft.backward(v.data(), u.data());
            check_finite(u, step + 1, t);
            if (obs_due) {
                snapshot.samples = u;
                snapshot.time = t;
                clock.offer(snapshot);
            }
        }
    }

    fft.backward(v.data(), u.data());
    WaveField out{g, std::move(u), field.time + advance_time};
    clock.final(out);
    return out;
}

WaveField evolve_n6(const WaveField& field, const SolverConfig& cfg, double advance_time,
                    const EvolveObserver* observer, double observe_every) {
    switch (cfg.scheme) {
        case Scheme::zabusky_kruskal:
            return evolve_zk(field, cfg, advance_time, observer, observe_every);
        case Scheme::pseudospectral_rk4:
            return evolve_spectral(field, cfg, advance_time, observer, observe_every);
    }
    throw validation_error("evolve: unknown scheme");
}

}  // namespace

void SolverConfig::check() const {
    if (!(dt > 0.0)) throw validation_error("SolverConfig: dt must be > 0");
    if (forcing < 0.0) throw validation_error("SolverConfig: forcing must be >= 0");
    if (!(delta > 0.0)) throw validation_error("SolverConfig: delta must be > 0");
    if (max_steps < 1) throw validation_error("SolverConfig: max_steps must be >= 1");
}

double SolverConfig::zk_stable_dt(double dx, double umax) {
    return dx * dx * dx / (4.0 + 6.0 * dx * dx * std::max(umax, 0.0));
}

double SolverConfig::spectral_stable_dt(double dx, double umax) {
    const double kmax = M_PI / dx;
    return 2.8 / (6.0 * std::max(umax, 1e-12) * kmax);
}

WaveField evolve(const WaveField& field, const SolverConfig& cfg, double advance_time) {
    return evolve(field, cfg, advance_time, EvolveObserver{}, 0.0);
}

WaveField evolve(const WaveField& field, const SolverConfig& cfg, double advance_time,
                 const EvolveObserver& observer, double observe_every) {
    cfg.check();
    validate(field);
    if (advance_time < 0.0) throw validation_error("evolve: advance_time must be >= 0");

    if (cfg.delta == 1.0) return evolve_n6(field, cfg, advance_time, &observer, observe_every);

    // Transport the delta-form data to N6, run, transport back.
    const double s = std::sqrt(cfg.delta);
    WaveField inner{Grid1D::make(field.grid.length / s, field.grid.nx),
                    field.samples, field.time / s};
    for (double& v : inner.samples) v /= 6.0;

    SolverConfig inner_cfg = cfg;
    inner_cfg.delta = 1.0;
    inner_cfg.dt = cfg.dt / s;
    inner_cfg.forcing = cfg.forcing * s / 6.0;

    EvolveObserver mapped_observer;
    if (observer) {
        mapped_observer = [&](const WaveField& f) {
            WaveField outer{field.grid, f.samples, f.time * s};
            for (double& v : outer.samples) v *= 6.0;
            observer(outer);
        };
    }
    WaveField result = evolve_n6(inner, inner_cfg, advance_time / s, &mapped_observer,
                                 observe_every / s);
    WaveField out{field.grid, std::move(result.samples), field.time + advance_time};
    for (double& v : out.samples) v *= 6.0;
    return out;
}

Invariants invariants(const WaveField& field) {
    validate(field);
    const int n = field.grid.nx;
    const double dx = field.grid.dx;

    long double s1 = 0.0L, s2 = 0.0L, s3 = 0.0L;
    for (double v : field.samples) {
        s1 += v;
        s2 += static_cast<long double>(v) * v;
        s3 += 2.0L * v * v * v;
    }

    Fft fft(n);
    std::vector<std::complex<double>> spec(static_cast<size_t>(fft.nk()));
    fft.forward(field.samples.data(), spec.data());
    const double two_pi_over_l = 2.0 * M_PI / field.grid.length;
    for (int j = 0; j < fft.nk(); ++j)
        spec[j] *= std::complex<double>(0.0, two_pi_over_l * j);
    if (n % 2 == 0) spec[static_cast<size_t>(fft.nk() - 1)] = 0.0;  // Nyquist derivative
    std::vector<double> ux(static_cast<size_t>(n));
    fft.backward(spec.data(), ux.data());
    for (double v : ux) s3 -= static_cast<long double>(v) * v;

    return {static_cast<double>(s1 * dx), static_cast<double>(s2 * dx),
            static_cast<double>(s3 * dx)};
}

namespace {

double wrap_signed(double d, double length) {
    d = std::fmod(d, length);
    if (d > 0.5 * length) d -= length;
    if (d < -0.5 * length) d += length;
    return d;
}

struct EarlyStop {};

}  // namespace

std::vector<EmittedSoliton> fission(const WaveField& initial, const SolverConfig& cfg,
                                    double total_time, int expected_n) {
    if (expected_n < 1) throw validation_error("fission: expected_n must be >= 1");
    if (!(total_time > 0.0)) throw validation_error("fission: total_time must be > 0");

    const double t_a = 0.9 * total_time;
    WaveField at_a = evolve(initial, cfg, t_a);
    WaveField at_b = evolve(at_a, cfg, total_time - t_a);

    std::vector<Peak> peaks_a = find_peaks(at_a);
    std::vector<Peak> peaks_b = find_peaks(at_b);
    if (static_cast<int>(peaks_a.size()) < expected_n
        || static_cast<int>(peaks_b.size()) < expected_n)
        throw numeric_error("fission: expected " + std::to_string(expected_n)
                            + " separated peaks, found "
                            + std::to_string(std::min(peaks_a.size(), peaks_b.size())));
    peaks_a.resize(static_cast<size_t>(expected_n));
    peaks_b.resize(static_cast<size_t>(expected_n));

    // Height order pairs the solitons: amplitude ordering matches speed
    // ordering, and the window is short enough that ranks cannot swap.
    std::vector<EmittedSoliton> out;
    out.reserve(static_cast<size_t>(expected_n));
    const double window = total_time - t_a;
    for (int i = 0; i < expected_n; ++i) {
        const double displacement =
            wrap_signed(peaks_b[static_cast<size_t>(i)].position
                        - peaks_a[static_cast<size_t>(i)].position,
                        initial.grid.length);
        out.push_back(EmittedSoliton{peaks_b[static_cast<size_t>(i)].height,
                                     displacement / window});
    }
    return out;
}

double forced_return(const SolverConfig& cfg, double kappa, const Grid1D& grid) {
    cfg.check();
    if (!(cfg.forcing > 0.0))
        throw undefined_error("forced_return: requires forcing > 0");
    if (!(kappa > 0.0)) throw validation_error("forced_return: kappa must be > 0");

    const double x0 = grid.length / 4.0;
    const SolitonParam p{kappa, x0, 0.0};
    WaveField field = sample_profile([&](double x) { return soliton(p, x, 0.0); }, grid, 0.0);

    const double t1_estimate = 4.0 * kappa * kappa / (3.0 * cfg.forcing);
    const double budget = 2.5 * t1_estimate;
    const double observe_every = t1_estimate / 400.0;

    double unwrapped = 0.0;
    double prev_pos = x0;
    double prev_t = 0.0;
    double prev_excursion = 0.0;
    double crossing = -1.0;
    bool launched = false;

    EvolveObserver tracker = [&](const WaveField& f) {
        const std::vector<Peak> peaks = find_peaks(f);
        if (peaks.empty()) return;
        const Peak& top = peaks.front();
        unwrapped += wrap_signed(top.position - prev_pos, grid.length);
        prev_pos = top.position;
        const double excursion = unwrapped;  // displacement from x0
        if (excursion > 5.0 * grid.dx) launched = true;
        if (launched && excursion <= 0.0 && prev_excursion > 0.0) {
            const double frac = prev_excursion / (prev_excursion - excursion);
            crossing = prev_t + frac * (f.time - prev_t);
            throw EarlyStop{};
        }
        prev_excursion = excursion;
        prev_t = f.time;
    };

    try {
        evolve(field, cfg, budget, tracker, observe_every);
    } catch (const EarlyStop&) {
    }
    if (crossing < 0.0)
        throw numeric_error("forced_return: no return within t=" + std::to_string(budget));
    return crossing;
}

}  // namespace solitrend
