#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solitrend/errors.hpp"

namespace solitrend {

/// 0, 1, 1, 2, 3, 5, 8, 13, 21, ...
std::vector<long long> fib_numbers(int count);

/// F(i+k)/F(i) for each k (negative k gives the mirror ratios). Converges to
/// phi^k; i >= 20 is recommended and F(i) must be nonzero.
std::vector<double> fib_limit_ratios(std::span<const int> ks, int i);

/// Projection/expansion ratio set: 0.62, 1.00, 1.62, 2.00, 2.62, 4.24.
std::vector<double> miner_ratios();

/// Retracement mirror set: 0.382, 0.500, 0.618, 1.000.
std::vector<double> retracement_ratios();

/// 100 * |a-b| / max(a,b); the one rule that reproduces every tabulated row.
double percent_difference(double a, double b);

struct RatioRow {
    int index = 0;
    double reference = 0.0;
    std::optional<double> model;
    std::optional<double> difference_percent;  // absent whenever model is
};

struct RatioTable {
    std::string title;
    std::vector<std::string> columns;  // three names: index is implicit
    std::vector<RatioRow> rows;
    std::vector<std::string> notes;
};

/// Fibonacci ratios against the tabulated amplitude column. The model column
/// is reference data without a generating formula; see the table note.
RatioTable table1();

/// Fibonacci numbers against the squared arrival-ratio column m^2.
RatioTable table2();

void write_table_csv(std::ostream& out, const RatioTable& table);
RatioTable read_table_csv(std::istream& in);
void write_table_text(std::ostream& out, const RatioTable& table);

}  // namespace solitrend
