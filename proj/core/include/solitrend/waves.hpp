#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "solitrend/errors.hpp"

namespace solitrend {

/// Uniform periodic 1-D grid. Index arithmetic wraps modulo nx.
struct Grid1D {
    double length = 0.0;
    int nx = 0;
    double dx = 0.0;

    /// Validates length > 0, nx >= 8, and nx*dx == length to 1 part in 1e12.
    static Grid1D make(double length, int nx);

    int wrap(int i) const {
        int r = i % nx;
        return r < 0 ? r + nx : r;
    }
    double x(int i) const { return wrap(i) * dx; }

    bool operator==(const Grid1D&) const = default;
};

/// Sampled real field on a Grid1D, stamped with the model time it represents.
struct WaveField {
    Grid1D grid;
    std::vector<double> samples;
    double time = 0.0;
};

/// Local maximum with parabolically refined position and height.
struct Peak {
    double position = 0.0;  // refined, in [0, L)
    double height = 0.0;    // refined
    int index = 0;          // raw sample index of the maximum
};

struct FieldNorms {
    double l2 = 0.0;    // sqrt(sum samples^2 * dx)
    double linf = 0.0;  // max |sample|
};

/// Samples f(x) at the grid nodes. Rejects non-finite values naming the
/// offending x.
template <class F>
WaveField sample_profile(F&& f, const Grid1D& grid, double t) {
    WaveField field{grid, std::vector<double>(static_cast<size_t>(grid.nx)), t};
    for (int i = 0; i < grid.nx; ++i) {
        const double x = i * grid.dx;
        const double value = f(x);
        if (!std::isfinite(value))
            throw validation_error("sample_profile: non-finite value at x=" + std::to_string(x));
        field.samples[static_cast<size_t>(i)] = value;
    }
    return field;
}

/// Throws if sample count mismatches the grid or any sample is non-finite.
void validate(const WaveField& field);

/// All local maxima with refined height >= min_height, highest first.
/// Positions come from a parabola through the three samples around each
/// maximum, wrapped into [0, L).
std::vector<Peak> find_peaks(const WaveField& field, double min_height);

/// Same with min_height = 1% of linf (filters dispersive-tail maxima).
std::vector<Peak> find_peaks(const WaveField& field);

FieldNorms field_norms(const WaveField& field);

/// Two-column CSV (x,value) with a "# t=<time>" comment header.
void write_field_csv(std::ostream& out, const WaveField& field);
WaveField read_field_csv(std::istream& in);
void write_field_csv_file(const std::string& path, const WaveField& field);
WaveField read_field_csv_file(const std::string& path);

}  // namespace solitrend
