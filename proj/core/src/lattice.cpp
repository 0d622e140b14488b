#include "solitrend/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "fft_util.hpp"
#include "solitrend/kdv.hpp"
#include "solitrend/waves.hpp"

namespace solitrend {

namespace {

void accel_into(const std::vector<double>& s, const ChainConfig& cfg, std::vector<double>& out) {
    const int n = static_cast<int>(s.size());
    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1) % n;
        const int im = (i - 1 + n) % n;
        const double d_right = s[ip] - s[i];
        const double d_left = s[i] - s[im];
        out[i] = cfg.stiffness
               * ((d_right - d_left)
                  + cfg.alpha * (d_right * d_right - d_left * d_left)
                  + cfg.c1);
    }
}

std::vector<double> spectral_site_derivative(const std::vector<double>& s) {
    const int n = static_cast<int>(s.size());
    detail::Fft fft(n);
    std::vector<std::complex<double>> spec(static_cast<size_t>(fft.nk()));
    fft.forward(s.data(), spec.data());
    for (int m = 0; m < fft.nk(); ++m)
        spec[static_cast<size_t>(m)] *= std::complex<double>(0.0, 2.0 * M_PI * m / n);
    if (n % 2 == 0) spec[static_cast<size_t>(fft.nk() - 1)] = 0.0;
    std::vector<double> out(static_cast<size_t>(n));
    fft.backward(spec.data(), out.data());
    return out;
}

// g(y) -> g(y + shift) by a spectral phase rotation.
std::vector<double> spectral_shift(const std::vector<double>& g, double shift) {
    const int n = static_cast<int>(g.size());
    detail::Fft fft(n);
    std::vector<std::complex<double>> spec(static_cast<size_t>(fft.nk()));
    fft.forward(g.data(), spec.data());
    for (int m = 0; m < fft.nk(); ++m) {
        const double phase = 2.0 * M_PI * m * shift / n;
        spec[static_cast<size_t>(m)] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    std::vector<double> out(static_cast<size_t>(n));
    fft.backward(spec.data(), out.data());
    return out;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const size_t n = a.size();
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

void ChainConfig::check() const {
    if (!(stiffness > 0.0)) throw validation_error("ChainConfig: stiffness must be > 0");
    if (!(spacing > 0.0)) throw validation_error("ChainConfig: spacing must be > 0");
    if (sites < 8) throw validation_error("ChainConfig: need at least 8 sites");
    if (!(dt > 0.0)) throw validation_error("ChainConfig: dt must be > 0");
    if (dt > 0.1 / std::sqrt(stiffness))
        throw validation_error("ChainConfig: dt exceeds the stability bound 0.1/sqrt(k)");
}

std::vector<double> chain_accel(const ChainState& state, const ChainConfig& cfg) {
    if (static_cast<int>(state.s.size()) != cfg.sites
        || static_cast<int>(state.v.size()) != cfg.sites)
        throw validation_error("chain_accel: state size does not match config");
    std::vector<double> out(state.s.size());
    accel_into(state.s, cfg, out);
    return out;
}

std::vector<ChainSample> integrate_chain(const ChainState& initial, const ChainConfig& cfg,
                                         double total_time, int sample_every) {
    cfg.check();
    if (!(total_time > 0.0)) throw validation_error("integrate_chain: total_time must be > 0");
    if (sample_every < 1) throw validation_error("integrate_chain: sample_every must be >= 1");
    if (static_cast<int>(initial.s.size()) != cfg.sites
        || static_cast<int>(initial.v.size()) != cfg.sites)
        throw validation_error("integrate_chain: state size does not match config");

    const long long steps =
        std::max<long long>(1, static_cast<long long>(std::ceil(total_time / cfg.dt - 1e-9)));
    const double dt = total_time / static_cast<double>(steps);

    std::vector<double> s = initial.s;
    std::vector<double> v = initial.v;
    std::vector<double> a(s.size());
    accel_into(s, cfg, a);

    std::vector<ChainSample> traj;
    traj.push_back({initial.t, s, v});

    for (long long n = 0; n < steps; ++n) {
        for (size_t i = 0; i < s.size(); ++i) {
            v[i] += 0.5 * dt * a[i];
            s[i] += dt * v[i];
        }
        accel_into(s, cfg, a);
        for (size_t i = 0; i < s.size(); ++i) v[i] += 0.5 * dt * a[i];

        const double t = initial.t + static_cast<double>(n + 1) * dt;
        if (n % 64 == 0) {
            double m = 0.0;
            for (double x : s) m = std::max(m, std::fabs(x));
            if (!std::isfinite(m) || m > 1e6)
                throw numeric_error("integrate_chain: blow-up at t=" + std::to_string(t));
        }
        if ((n + 1) % sample_every == 0 || n + 1 == steps)
            traj.push_back({t, s, v});
    }
    return traj;
}

double chain_energy(const ChainState& state, const ChainConfig& cfg) {
    const int n = static_cast<int>(state.s.size());
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = state.s[(i + 1) % n] - state.s[i];
        e += 0.5 * state.v[i] * state.v[i];
        e += cfg.stiffness * (0.5 * d * d + cfg.alpha * d * d * d / 3.0);
        e -= cfg.stiffness * cfg.c1 * state.s[i];
    }
    return e;
}

double chain_momentum(const ChainState& state) {
    long double sum = 0.0L;
    for (double v : state.v) sum += v;
    return static_cast<double>(sum);
}

ModeProjection chain_mode(const ChainState& state, int mode) {
    const int n = static_cast<int>(state.s.size());
    ModeProjection out;
    for (int j = 0; j < n; ++j) {
        const double w = std::sin(2.0 * M_PI * mode * j / n);
        out.displacement += state.s[static_cast<size_t>(j)] * w;
        out.velocity += state.v[static_cast<size_t>(j)] * w;
    }
    out.displacement *= 2.0 / n;
    out.velocity *= 2.0 / n;
    return out;
}

ChainState chain_from_profile(const ChainConfig& cfg, const std::vector<double>& profile) {
    if (static_cast<int>(profile.size()) != cfg.sites)
        throw validation_error("chain_from_profile: profile size does not match config");
    const int n = cfg.sites;
    const double mean = std::accumulate(profile.begin(), profile.end(), 0.0) / n;

    detail::Fft fft(n);
    std::vector<std::complex<double>> spec(static_cast<size_t>(fft.nk()));
    fft.forward(profile.data(), spec.data());
    spec[0] = 0.0;  // mean removed; s must be periodic
    for (int m = 1; m < fft.nk(); ++m)
        spec[static_cast<size_t>(m)] /= std::complex<double>(0.0, 2.0 * M_PI * m / n);
    if (n % 2 == 0) spec[static_cast<size_t>(fft.nk() - 1)] = 0.0;

    ChainState state;
    state.s.resize(static_cast<size_t>(n));
    fft.backward(spec.data(), state.s.data());
    state.v.resize(static_cast<size_t>(n));
    const double root_k = std::sqrt(cfg.stiffness);
    for (int j = 0; j < n; ++j)
        state.v[static_cast<size_t>(j)] = -root_k * (profile[static_cast<size_t>(j)] - mean);
    return state;
}

ChainState chain_single_mode(const ChainConfig& cfg, int mode, double amplitude) {
    ChainState state;
    state.s.resize(static_cast<size_t>(cfg.sites));
    state.v.assign(static_cast<size_t>(cfg.sites), 0.0);
    for (int j = 0; j < cfg.sites; ++j)
        state.s[static_cast<size_t>(j)] = amplitude * std::sin(2.0 * M_PI * mode * j / cfg.sites);
    return state;
}

double kdv_frame_time(double alpha, double tau) {
    if (alpha == 0.0)
        throw undefined_error("kdv_frame_time: rescaled time degenerates for alpha == 0;"
                              " use the linear route");
    return alpha * tau;  // T = (epsilon/2) tau with epsilon = 2 alpha
}

ContinuumComparison continuum_compare(const std::vector<ChainSample>& trajectory,
                                      const ChainConfig& cfg) {
    if (trajectory.size() < 2)
        throw validation_error("continuum_compare: need at least initial and final states");
    const ChainSample& first = trajectory.front();
    const ChainSample& last = trajectory.back();
    const int n = cfg.sites;
    if (static_cast<int>(first.s.size()) != n || static_cast<int>(last.s.size()) != n)
        throw validation_error("continuum_compare: trajectory does not match config");

    const double root_k = std::sqrt(cfg.stiffness);
    const double tau_final = root_k * (last.t - first.t);

    const std::vector<double> p0 = spectral_site_derivative(first.s);
    std::vector<double> p_lattice = spectral_site_derivative(last.s);
    p_lattice = spectral_shift(p_lattice, tau_final);  // into the frame X = y - tau

    // Smoothness gate: energy above two thirds of the band at t = 0.
    double tail = 0.0, total = 0.0;
    {
        detail::Fft fft(n);
        std::vector<std::complex<double>> spec(static_cast<size_t>(fft.nk()));
        fft.forward(p0.data(), spec.data());
        for (int m = 1; m < fft.nk(); ++m) {
            const double e = std::norm(spec[static_cast<size_t>(m)]);
            total += e;
            if (3 * m > n) tail += e;
        }
    }

    ContinuumComparison out;
    out.spectral_tail_fraction = (total > 0.0) ? tail / total : 0.0;
    out.tail_warning = out.spectral_tail_fraction > 0.01;

    std::vector<double> p_model;
    if (cfg.alpha == 0.0) {
        // Harmonic chain: the transported profile is stationary in the frame.
        out.route = "linear";
        out.compare_time = tau_final;
        p_model = p0;
    } else {
        out.route = "kdv";
        const double frame_time = kdv_frame_time(cfg.alpha, tau_final);
        out.compare_time = frame_time;
        const double epsilon = 2.0 * cfg.alpha;
        const double delta = 1.0 / (12.0 * epsilon);

        // N6 transport of P_T + P P_X + delta P_XXX + c1/eps = 0:
        // v = P/(6 delta) evolved to s = delta T.
        WaveField v0{Grid1D::make(static_cast<double>(n), n),
                     std::vector<double>(static_cast<size_t>(n)), 0.0};
        for (int j = 0; j < n; ++j)
            v0.samples[static_cast<size_t>(j)] = p0[static_cast<size_t>(j)] / (6.0 * delta);

        double vmax = 0.0;
        for (double x : v0.samples) vmax = std::max(vmax, std::fabs(x));
        SolverConfig solver;
        solver.scheme = Scheme::pseudospectral_rk4;
        solver.dt = 0.4 * SolverConfig::spectral_stable_dt(1.0, vmax);
        solver.forcing = (cfg.c1 / epsilon) / (6.0 * delta * delta);
        const WaveField evolved = evolve(v0, solver, delta * frame_time);

        p_model.resize(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            p_model[static_cast<size_t>(j)] = 6.0 * delta * evolved.samples[static_cast<size_t>(j)];
    }

    out.correlation = pearson(p_lattice, p_model);
    return out;
}

void write_chain_csv(std::ostream& out, const std::vector<ChainSample>& trajectory,
                     int site_stride) {
    if (site_stride < 1) throw validation_error("write_chain_csv: site_stride must be >= 1");
    out << "t";
    if (!trajectory.empty())
        for (size_t j = 0; j < trajectory.front().s.size(); j += static_cast<size_t>(site_stride))
            out << ",s" << j;
    out << "\n";
    char buf[64];
    for (const ChainSample& sample : trajectory) {
        std::snprintf(buf, sizeof buf, "%.17g", sample.t);
        out << buf;
        for (size_t j = 0; j < sample.s.size(); j += static_cast<size_t>(site_stride)) {
            std::snprintf(buf, sizeof buf, ",%.17g", sample.s[j]);
            out << buf;
        }
        out << "\n";
    }
}

}  // namespace solitrend
