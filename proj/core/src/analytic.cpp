#include "solitrend/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace solitrend {

namespace {

double sech2(double x) {
    const double s = 1.0 / std::cosh(x);
    return s * s;
}

}  // namespace

void SolitonParam::check() const {
    if (!(kappa > 0.0)) throw validation_error("SolitonParam: kappa must be > 0");
    if (forcing < 0.0) throw validation_error("SolitonParam: forcing must be >= 0");
}

double soliton(const SolitonParam& p, double x, double t) {
    p.check();
    if (p.forcing != 0.0)
        throw validation_error("soliton: unforced form requires forcing == 0");
    const double phase = p.kappa * (x - p.center) - 4.0 * p.kappa * p.kappa * p.kappa * t;
    return 2.0 * p.kappa * p.kappa * sech2(phase);
}

double forced_soliton(const SolitonParam& p, double x, double t) {
    p.check();
    const double k3 = p.kappa * p.kappa * p.kappa;
    const double phase = p.kappa * (x - p.center) - 4.0 * k3 * t + 3.0 * p.forcing * p.kappa * t * t;
    return 2.0 * p.kappa * p.kappa * sech2(phase) - p.forcing * t;
}

ReturnTime return_time(const SolitonParam& p) {
    p.check();
    if (p.forcing == 0.0)
        throw undefined_error("return_time: no return without forcing (C == 0)");
    ReturnTime out;
    out.t1 = 4.0 * p.kappa * p.kappa / (3.0 * p.forcing);
    out.t1_kappa_cubed = 8.0 * p.kappa * p.kappa * p.kappa / p.forcing;
    return out;
}

void TrainSpec::check() const {
    if (n < 1) throw validation_error("TrainSpec: n must be >= 1");
    if (!(kappa > 0.0)) throw validation_error("TrainSpec: kappa must be > 0");
    if (forcing < 0.0) throw validation_error("TrainSpec: forcing must be >= 0");
}

double train_profile(const TrainSpec& spec, double x) {
    spec.check();
    return spec.initial_height() * sech2(spec.kappa * (x - spec.center));
}

TrainPredictions train_predictions(const TrainSpec& spec) {
    spec.check();
    TrainPredictions out;
    out.amplitudes.reserve(static_cast<size_t>(spec.n));
    for (int m = 1; m <= spec.n; ++m) {
        const double m2 = static_cast<double>(m) * m;
        out.amplitudes.push_back(2.0 * m2 * spec.kappa * spec.kappa);
        out.speeds.push_back(4.0 * m2 * spec.kappa * spec.kappa);
        out.arrival_ratios.push_back(m2);
    }
    return out;
}

WaveField superpose_trains(std::span<const TrainSpec> specs, const Grid1D& grid, double t) {
    if (specs.empty()) throw validation_error("superpose_trains: need at least one train");
    WaveField field{grid, std::vector<double>(static_cast<size_t>(grid.nx), 0.0), t};
    for (const TrainSpec& spec : specs) {
        spec.check();
        const double local_t = t - spec.t_offset;
        for (int i = 0; i < grid.nx; ++i) {
            const double x = i * grid.dx;
            double value = 0.0;
            for (int m = 1; m <= spec.n; ++m) {
                const double km = m * spec.kappa;
                const double phase = km * (x - spec.center) - 4.0 * km * km * km * local_t
                                   + 3.0 * spec.forcing * km * local_t * local_t;
                value += 2.0 * km * km * sech2(phase);
            }
            value -= spec.forcing * local_t;  // one shared background per train
            field.samples[static_cast<size_t>(i)] += value;
        }
    }
    return field;
}

double merge_amplitude(double a1, double a2) {
    if (!(a1 > 0.0 && a2 > 0.0))
        throw validation_error("merge_amplitude: amplitudes must be > 0");
    return 0.5 * (a1 + a2);
}

namespace {

// Pulse curves for the train with members m = 1..n: amplitude 2 m^2 kappa^2,
// center t_offset + m^2 * t1, width m*kappa (readability scale; the peak
// values are what the figures pin down).
void append_train_curves(FigureData& fig, const std::string& prefix, double kappa, int n,
                         double t_offset, double t1) {
    for (int m = 1; m <= n; ++m) {
        PulseCurve c;
        c.label = prefix + "P" + std::to_string(m);
        c.amplitude = 2.0 * m * m * kappa * kappa;
        c.center_time = t_offset + m * m * t1;
        c.width = m * kappa;
        fig.curves.push_back(std::move(c));
    }
}

}  // namespace

FigureData figure_spec(int figure) {
    FigureData fig;
    fig.figure = figure;
    const double kappa_half = 0.5;  // 2 kappa^2 = 0.5
    switch (figure) {
        case 2:
            fig.caption = "two-soliton train, amplitudes 0.5 and 2";
            append_train_curves(fig, "", kappa_half, 2, 0.0, 1.0);
            fig.t_begin = -1.0;
            fig.t_end = 6.0;
            break;
        case 3:
            fig.caption = "three-soliton train, amplitudes 0.5, 2 and 4.5";
            append_train_curves(fig, "", kappa_half, 3, 0.0, 1.0);
            fig.t_begin = -1.0;
            fig.t_end = 12.0;
            break;
        case 4: {
            fig.caption = "three-soliton train with the largest pulse merged with a 2.25 pulse";
            append_train_curves(fig, "", kappa_half, 3, 0.0, 1.0);
            PulseCurve& third = fig.curves[2];
            third.label = "P3&P4";
            third.amplitude = merge_amplitude(third.amplitude, 2.25);  // -> 3.375
            fig.t_begin = -1.0;
            fig.t_end = 12.0;
            break;
        }
        case 5: {
            fig.caption = "three two-soliton trains, first-order pulses offset by 1";
            const double kappas[3] = {2.0, 2.1, 2.2};
            for (int i = 0; i < 3; ++i)
                append_train_curves(fig, "T" + std::to_string(i + 1), kappas[i], 2,
                                    static_cast<double>(i), 1.0);
            fig.t_begin = -0.5;
            fig.t_end = 8.0;
            break;
        }
        default:
            throw validation_error("figure_spec: figure must be one of 2,3,4,5");
    }
    return fig;
}

double pulse_value(const PulseCurve& curve, double tau) {
    return curve.amplitude * sech2(curve.width * (tau - curve.center_time));
}

void write_figure_csv(std::ostream& out, const FigureData& fig, int samples_per_unit) {
    if (samples_per_unit < 2)
        throw validation_error("write_figure_csv: need at least 2 samples per time unit");
    out << "t";
    for (const PulseCurve& c : fig.curves) out << "," << c.label;
    out << "\n";
    const double dt = 1.0 / samples_per_unit;
    const long n = std::lround((fig.t_end - fig.t_begin) / dt);
    char buf[64];
    for (long i = 0; i <= n; ++i) {
        const double tau = fig.t_begin + i * dt;
        std::snprintf(buf, sizeof buf, "%.17g", tau);
        out << buf;
        for (const PulseCurve& c : fig.curves) {
            std::snprintf(buf, sizeof buf, ",%.17g", pulse_value(c, tau));
            out << buf;
        }
        out << "\n";
    }
}

}  // namespace solitrend
