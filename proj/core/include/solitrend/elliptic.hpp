#pragma once

#include "solitrend/errors.hpp"

namespace solitrend {

struct JacobiElliptic {
    double sn = 0.0;
    double cn = 0.0;
    double dn = 0.0;
};

/// Jacobi elliptic functions for parameter m in [0,1], computed by the
/// arithmetic-geometric-mean descending Landen recursion (tolerance 1e-14,
/// at most 32 scale levels). m = 0 and m = 1 use the trigonometric and
/// hyperbolic closed forms.
JacobiElliptic jacobi_elliptic(double u, double m);

/// Complete elliptic integral of the first kind, K(m) = pi / (2 agm(1, sqrt(1-m))).
/// Diverges as m -> 1; m must lie in [0,1).
double elliptic_K(double m);

/// Travelling-wave parameters for the periodic solutions of the forced
/// dispersive equation in its unit-nonlinearity form. The profile obeys
///   f'^2 = -f^3/3 + v f^2 + a f + b = (1/3)(f3 - f)(f - f2)(f - f1)
/// and reads f(xi) = f2 + (f3 - f2) cn^2(delta * xi, m).
struct CnoidalParams {
    double v = 0.0;      // wave speed
    double a = 0.0;      // integration constants of the reduced ODE
    double b = 0.0;
    double f1 = 0.0;     // sorted real roots of the cubic, f1 <= f2 <= f3
    double f2 = 0.0;
    double f3 = 0.0;
    double m = 0.0;      // (f3 - f2) / (f3 - f1)
    double delta = 0.0;  // sqrt((f3 - f1) / 12)

    /// Solves the cubic; rejects complex roots naming the discriminant.
    static CnoidalParams from_coefficients(double v, double a, double b);
    /// Builds v, a, b from prescribed roots.
    static CnoidalParams from_roots(double f1, double f2, double f3);
};

/// Stationary profile f(xi).
double cnoidal_profile(const CnoidalParams& p, double xi);

/// Spatial period 2 K(m) / delta of the stationary profile.
double cnoidal_period(const CnoidalParams& p);

/// Full forced solution f(x - v t + boost_coeff * C t^2) - C t. The default
/// boost coefficient 1/2 makes the forced-equation residual vanish in the
/// unit-nonlinearity normalization the cubic above belongs to.
double cnoidal(const CnoidalParams& p, double forcing, double x, double t,
               double boost_coeff = 0.5);

}  // namespace solitrend
