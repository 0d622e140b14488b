#include "solitrend/waves.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace solitrend {

Grid1D Grid1D::make(double length, int nx) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw validation_error("Grid1D: length must be positive and finite");
    if (nx < 8) throw validation_error("Grid1D: need at least 8 points, got " + std::to_string(nx));
    Grid1D g;
    g.length = length;
    g.nx = nx;
    g.dx = length / nx;
    if (std::fabs(g.dx * nx - length) > 1e-12 * length)
        throw validation_error("Grid1D: nx*dx does not reproduce length");
    return g;
}

void validate(const WaveField& field) {
    if (static_cast<int>(field.samples.size()) != field.grid.nx)
        throw validation_error("WaveField: sample count does not match grid");
    for (size_t i = 0; i < field.samples.size(); ++i)
        if (!std::isfinite(field.samples[i]))
            throw validation_error("WaveField: non-finite sample at index " + std::to_string(i));
}

std::vector<Peak> find_peaks(const WaveField& field, double min_height) {
    if (!(min_height > 0.0)) throw validation_error("find_peaks: min_height must be > 0");
    const auto& s = field.samples;
    const Grid1D& g = field.grid;
    std::vector<Peak> peaks;
    for (int i = 0; i < g.nx; ++i) {
        const double left = s[static_cast<size_t>(g.wrap(i - 1))];
        const double mid = s[static_cast<size_t>(i)];
        const double right = s[static_cast<size_t>(g.wrap(i + 1))];
        // Left edge of plateaus counts once.
        if (!(mid > left && mid >= right)) continue;

        const double denom = left - 2.0 * mid + right;
        double offset = 0.0;
        double height = mid;
        if (denom < 0.0) {
            offset = 0.5 * (left - right) / denom;
            offset = std::clamp(offset, -1.0, 1.0);
            height = mid - 0.25 * (left - right) * offset;
        }
        if (height < min_height) continue;

        double pos = std::fmod((i + offset) * g.dx, g.length);
        if (pos < 0.0) pos += g.length;
        peaks.push_back(Peak{pos, height, i});
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.height > b.height; });
    return peaks;
}

std::vector<Peak> find_peaks(const WaveField& field) {
    const double linf = field_norms(field).linf;
    if (linf == 0.0) return {};
    return find_peaks(field, 0.01 * linf);
}

FieldNorms field_norms(const WaveField& field) {
    // Neumaier-compensated sum in long double so that the l2 norm is
    // invariant under cyclic reordering of the samples.
    long double sum = 0.0L;
    long double comp = 0.0L;
    double linf = 0.0;
    for (double v : field.samples) {
        const long double term = static_cast<long double>(v) * v;
        const long double next = sum + term;
        if (std::fabs((double)sum) >= std::fabs((double)term))
            comp += (sum - next) + term;
        else
            comp += (term - next) + sum;
        sum = next;
        linf = std::max(linf, std::fabs(v));
    }
    const long double total = (sum + comp) * static_cast<long double>(field.grid.dx);
    return {static_cast<double>(sqrtl(total)), linf};
}

void write_field_csv(std::ostream& out, const WaveField& field) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "# t=%.17g\n", field.time);
    out << buf;
    for (int i = 0; i < field.grid.nx; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", i * field.grid.dx,
                      field.samples[static_cast<size_t>(i)]);
        out << buf;
    }
}

WaveField read_field_csv(std::istream& in) {
    std::string line;
    double t = 0.0;
    std::vector<double> xs, values;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find("t=");
            if (eq != std::string::npos) t = std::strtod(line.c_str() + eq + 2, nullptr);
            continue;
        }
        if (line.rfind("x,", 0) == 0) continue;  // optional header row
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw validation_error("field CSV: missing comma on line " + std::to_string(lineno));
        char* end = nullptr;
        const double x = std::strtod(line.c_str(), &end);
        const double v = std::strtod(line.c_str() + comma + 1, &end);
        xs.push_back(x);
        values.push_back(v);
    }
    if (xs.size() < 8) throw validation_error("field CSV: fewer than 8 samples");
    const double dx = xs[1] - xs[0];
    if (!(dx > 0.0)) throw validation_error("field CSV: x column must increase");
    const Grid1D grid = Grid1D::make(dx * static_cast<double>(xs.size()),
                                     static_cast<int>(xs.size()));
    WaveField field{grid, std::move(values), t};
    validate(field);
    return field;
}

void write_field_csv_file(const std::string& path, const WaveField& field) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot open for writing: " + path);
    write_field_csv(out, field);
}

WaveField read_field_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open: " + path);
    return read_field_csv(in);
}

}  // namespace solitrend
