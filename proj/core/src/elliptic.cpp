#include "solitrend/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace solitrend {

namespace {

constexpr int kMaxLevels = 32;
constexpr double kAgmTol = 1e-14;

}  // namespace

JacobiElliptic jacobi_elliptic(double u, double m) {
    if (!(m >= 0.0 && m <= 1.0))
        throw validation_error("jacobi_elliptic: parameter m must lie in [0,1], got "
                               + std::to_string(m));
    if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
    if (m == 1.0) {
        const double sech = 1.0 / std::cosh(u);
        return {std::tanh(u), sech, sech};
    }

    // Descending Landen: AGM scale a_{n+1} = (a_n+b_n)/2, b_{n+1} = sqrt(a_n b_n),
    // c_{n+1} = (a_n-b_n)/2, then unwind the amplitude phi backwards through
    // sin(2 phi_{n-1} - phi_n) = (c_n / a_n) sin(phi_n).
    std::array<double, kMaxLevels + 1> as{};
    std::array<double, kMaxLevels + 1> cs{};
    double an = 1.0;
    double bn = std::sqrt(1.0 - m);
    double cn = std::sqrt(m);
    int levels = 0;
    as[0] = an;
    cs[0] = cn;
    while (std::fabs(cn) > kAgmTol * std::fabs(an) && levels < kMaxLevels) {
        const double an_next = 0.5 * (an + bn);
        const double bn_next = std::sqrt(an * bn);
        cn = 0.5 * (an - bn);
        an = an_next;
        bn = bn_next;
        ++levels;
        as[static_cast<size_t>(levels)] = an;
        cs[static_cast<size_t>(levels)] = cn;
    }

    double phi = std::ldexp(1.0, levels) * an * u;
    double phi_prev = phi;
    for (int n = levels; n >= 1; --n) {
        phi_prev = phi;
        const double ratio = cs[static_cast<size_t>(n)] / as[static_cast<size_t>(n)];
        phi = 0.5 * (phi + std::asin(std::clamp(ratio * std::sin(phi), -1.0, 1.0)));
    }

    JacobiElliptic out;
    out.sn = std::sin(phi);
    out.cn = std::cos(phi);
    // dn = cos(phi_0) / cos(phi_1 - phi_0); the Landen angles keep the
    // denominator away from zero for m < 1.
    const double denom = std::cos(phi_prev - phi);
    out.dn = (levels == 0) ? std::sqrt(1.0 - m * out.sn * out.sn) : out.cn / denom;
    return out;
}

double elliptic_K(double m) {
    if (!(m >= 0.0 && m < 1.0))
        throw validation_error("elliptic_K: parameter m must lie in [0,1), got "
                               + std::to_string(m));
    double an = 1.0;
    double bn = std::sqrt(1.0 - m);
    for (int i = 0; i < kMaxLevels && std::fabs(an - bn) > kAgmTol * an; ++i) {
        const double an_next = 0.5 * (an + bn);
        bn = std::sqrt(an * bn);
        an = an_next;
    }
    return M_PI / (2.0 * an);
}

namespace {

CnoidalParams finish(double v, double a, double b, double f1, double f2, double f3) {
    CnoidalParams p;
    p.v = v;
    p.a = a;
    p.b = b;
    p.f1 = f1;
    p.f2 = f2;
    p.f3 = f3;
    const double span = f3 - f1;
    if (!(span > 0.0))
        throw validation_error("cnoidal: degenerate roots (f3 == f1), no oscillatory regime");
    p.m = (f3 - f2) / span;
    p.m = std::clamp(p.m, 0.0, 1.0);
    p.delta = std::sqrt(span / 12.0);
    return p;
}

}  // namespace

CnoidalParams CnoidalParams::from_coefficients(double v, double a, double b) {
    // -f^3/3 + v f^2 + a f + b = 0  <=>  f^3 - 3v f^2 - 3a f - 3b = 0.
    // Depressed via f = g + v: g^3 + p g + q = 0.
    const double p = -3.0 * (v * v + a);
    const double q = -(2.0 * v * v * v + 3.0 * a * v + 3.0 * b);
    const double discriminant = -4.0 * p * p * p - 27.0 * q * q;
    if (!(discriminant > 0.0))
        throw validation_error("cnoidal: cubic has complex roots, discriminant="
                               + std::to_string(discriminant));
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    std::array<double, 3> roots{};
    for (int k = 0; k < 3; ++k)
        roots[static_cast<size_t>(k)] = v + r * std::cos(theta - 2.0 * M_PI * k / 3.0);
    std::sort(roots.begin(), roots.end());
    return finish(v, a, b, roots[0], roots[1], roots[2]);
}

CnoidalParams CnoidalParams::from_roots(double f1, double f2, double f3) {
    std::array<double, 3> roots{f1, f2, f3};
    std::sort(roots.begin(), roots.end());
    const double v = (roots[0] + roots[1] + roots[2]) / 3.0;
    const double a = -(roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2]) / 3.0;
    const double b = roots[0] * roots[1] * roots[2] / 3.0;
    return finish(v, a, b, roots[0], roots[1], roots[2]);
}

double cnoidal_profile(const CnoidalParams& p, double xi) {
    const double cn = jacobi_elliptic(p.delta * xi, p.m).cn;
    return p.f2 + (p.f3 - p.f2) * cn * cn;
}

double cnoidal_period(const CnoidalParams& p) {
    return 2.0 * elliptic_K(p.m) / p.delta;
}

double cnoidal(const CnoidalParams& p, double forcing, double x, double t, double boost_coeff) {
    if (forcing < 0.0) throw validation_error("cnoidal: forcing must be >= 0");
    const double xi = x - p.v * t + boost_coeff * forcing * t * t;
    return cnoidal_profile(p, xi) - forcing * t;
}

}  // namespace solitrend
