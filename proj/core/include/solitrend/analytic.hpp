#pragma once

#include <span>
#include <string>
#include <vector>

#include "solitrend/errors.hpp"
#include "solitrend/waves.hpp"

namespace solitrend {

// Closed forms below use the N6 normalization u_t + 6 u u_x + u_xxx (+ C) = 0,
// under which a kappa-soliton has amplitude 2 kappa^2 and speed 4 kappa^2.
// delta_form_value() transports them to the u_t + u u_x + delta u_xxx form.

/// Parameters of a single (optionally forced) soliton.
struct SolitonParam {
    double kappa = 1.0;   // > 0, 1/space
    double center = 0.0;  // x0
    double forcing = 0.0; // C >= 0

    void check() const;
    double amplitude() const { return 2.0 * kappa * kappa; }
    double speed() const { return 4.0 * kappa * kappa; }
};

/// 2 kappa^2 sech^2(kappa (x - x0) - 4 kappa^3 t); requires forcing == 0.
double soliton(const SolitonParam& p, double x, double t);

/// 2 kappa^2 sech^2(kappa (x - x0) - 4 kappa^3 t + 3 C kappa t^2) - C t.
/// The time-quadratic phase boost makes the constant-forcing residual vanish
/// identically; the peak rides x0 + 4 kappa^2 t - 3 C t^2 on a background
/// drifting down at rate C.
double forced_soliton(const SolitonParam& p, double x, double t);

/// First return of the forced peak to its start: positive root of
/// 4 kappa^2 T - 3 C T^2, i.e. t1 = 4 kappa^2 / (3C). t1_kappa_cubed keeps
/// the kappa^3-scaling variant 8 kappa^3 / C alongside for comparison.
struct ReturnTime {
    double t1 = 0.0;
    double t1_kappa_cubed = 0.0;
};

/// Requires forcing > 0; without forcing the peak never turns around.
ReturnTime return_time(const SolitonParam& p);

/// Initial profile that fissions into n solitons.
struct TrainSpec {
    int n = 1;            // >= 1
    double kappa = 1.0;   // > 0
    double center = 0.0;
    double forcing = 0.0;
    double t_offset = 0.0;  // per-train time shift used by superpositions

    void check() const;
    double initial_height() const { return n * (n + 1) * kappa * kappa; }
};

/// n(n+1) kappa^2 sech^2(kappa (x - x0)).
double train_profile(const TrainSpec& spec, double x);

/// Emitted-soliton predictions for the train: amplitudes 2 m^2 kappa^2,
/// speeds 4 m^2 kappa^2, arrival-time ratios m^2 (m = 1..n).
struct TrainPredictions {
    std::vector<double> amplitudes;
    std::vector<double> speeds;
    std::vector<double> arrival_ratios;
};

TrainPredictions train_predictions(const TrainSpec& spec);

/// Pointwise sum of forced-soliton trains, each shifted by its own t_offset.
/// Each train contributes its member pulses (kappa_m = m kappa, shared
/// center) plus one background drift term -C (t - t_offset).
WaveField superpose_trains(std::span<const TrainSpec> specs, const Grid1D& grid, double t);

/// Height of the pulse formed when two solitons coalesce: the arithmetic
/// mean of the two amplitudes.
double merge_amplitude(double a1, double a2);

/// W = f(x + t) - c2 t, the drifting d'Alembert solution of W_T - W_X = C2.
template <class F>
double linear_wave(F&& f, double c2, double x, double t) {
    return f(x + t) - c2 * t;
}

/// Transport of an N6 solution u(x,t) to the u_t + u u_x + delta u_xxx = 0
/// form: U(X,T) = 6 u(X/sqrt(delta), T/sqrt(delta)).
template <class F>
double delta_form_value(F&& n6_solution, double delta, double X, double T) {
    if (!(delta > 0.0)) throw validation_error("delta_form_value: delta must be > 0");
    const double s = std::sqrt(delta);
    return 6.0 * n6_solution(X / s, T / s);
}

// ---------------------------------------------------------------------------
// Synthetic chart figures: each figure is a set of sech^2 pulse curves in the
// time domain, one curve per emitted soliton, with amplitudes from the train
// rules and centers at the m^2 arrival times.

struct PulseCurve {
    std::string label;
    double amplitude = 0.0;    // peak value
    double center_time = 0.0;  // arrival time
    double width = 0.0;        // sech^2 argument scale (1/time)
};

struct FigureData {
    int figure = 0;
    std::string caption;
    std::vector<PulseCurve> curves;
    double t_begin = 0.0;
    double t_end = 0.0;
};

/// Figure catalog:
///   2: two-soliton train, amplitudes 0.5 and 2
///   3: three-soliton train, amplitudes 0.5, 2, 4.5
///   4: figure 3 with the largest pulse merged with a 2.25 pulse -> 3.375
///   5: three two-soliton trains (kappa 2, 2.1, 2.2), first-order pulses
///      offset by 1 in time; amplitude pairs (8,32), (8.82,35.28), (9.68,38.72)
FigureData figure_spec(int figure);

double pulse_value(const PulseCurve& curve, double tau);

/// Samples every curve on a uniform time grid; column k is curve k.
/// CSV: header "t,<label>,..." then rows.
void write_figure_csv(std::ostream& out, const FigureData& fig, int samples_per_unit);

}  // namespace solitrend
