#include "solitrend/fib.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace solitrend {

std::vector<long long> fib_numbers(int count) {
    if (count < 1) throw validation_error("fib_numbers: count must be >= 1");
    std::vector<long long> out;
    out.reserve(static_cast<size_t>(count));
    long long a = 0, b = 1;
    for (int i = 0; i < count; ++i) {
        out.push_back(a);
        const long long next = a + b;
        a = b;
        b = next;
    }
    return out;
}

std::vector<double> fib_limit_ratios(std::span<const int> ks, int i) {
    int max_k = 0;
    for (int k : ks) max_k = std::max(max_k, k);
    const std::vector<long long> fib = fib_numbers(i + max_k + 1);
    const long long denom = fib[static_cast<size_t>(i)];
    if (denom == 0) throw validation_error("fib_limit_ratios: F(i) is zero");
    std::vector<double> out;
    out.reserve(ks.size());
    for (int k : ks) {
        const int j = i + k;
        if (j < 0) throw validation_error("fib_limit_ratios: index i+k below zero");
        out.push_back(static_cast<double>(fib[static_cast<size_t>(j)])
                      / static_cast<double>(denom));
    }
    return out;
}

std::vector<double> miner_ratios() { return {0.62, 1.00, 1.62, 2.00, 2.62, 4.24}; }

std::vector<double> retracement_ratios() { return {0.382, 0.500, 0.618, 1.000}; }

double percent_difference(double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw validation_error("percent_difference: values must be > 0");
    return 100.0 * std::fabs(a - b) / std::max(a, b);
}

namespace {

RatioTable build(std::string title, std::vector<std::string> columns,
                 std::span<const double> reference,
                 std::span<const std::optional<double>> model) {
    RatioTable t;
    t.title = std::move(title);
    t.columns = std::move(columns);
    for (size_t i = 0; i < reference.size(); ++i) {
        RatioRow row;
        row.index = static_cast<int>(i) + 1;
        row.reference = reference[i];
        row.model = model[i];
        if (row.model) row.difference_percent = percent_difference(row.reference, *row.model);
        t.rows.push_back(row);
    }
    return t;
}

}  // namespace

RatioTable table1() {
    const double reference[] = {1.0, 1.62, 2.62, 4.24, 6.85, 11.09, 17.94};
    const std::optional<double> model[] = {1.0, std::nullopt, 3.0, 4.0, 6.0, 10.0, 16.0};
    RatioTable t = build("Fibonacci ratios vs soliton amplitude ratios",
                         {"fibonacci_ratio", "soliton_amplitude", "difference_percent"},
                         reference, model);
    t.notes.push_back("amplitude column is tabulated reference data without a generating rule");
    t.notes.push_back("the source table is titled for eleven rows but lists seven");
    return t;
}

RatioTable table2() {
    const double reference[] = {1, 2, 3, 5, 8, 13, 21, 34};
    const std::optional<double> model[] = {1.0,          std::nullopt, std::nullopt, 4.0,
                                           9.0,          16.0,         25.0,         36.0};
    RatioTable t = build("Fibonacci numbers vs soliton time spacing",
                         {"fibonacci_number", "soliton_time_ratio", "difference_percent"},
                         reference, model);
    t.notes.push_back("model column is the squared arrival-ratio sequence m^2");
    return t;
}

namespace {

std::string cell(const std::optional<double>& v) {
    if (!v) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return buf;
}

}  // namespace

void write_table_csv(std::ostream& out, const RatioTable& table) {
    out << "# " << table.title << "\n";
    for (const std::string& note : table.notes) out << "# " << note << "\n";
    out << "index," << table.columns[0] << "," << table.columns[1] << ","
        << table.columns[2] << "\n";
    for (const RatioRow& row : table.rows) {
        out << row.index << "," << cell(row.reference) << "," << cell(row.model) << ","
            << cell(row.difference_percent) << "\n";
    }
}

RatioTable read_table_csv(std::istream& in) {
    RatioTable t;
    std::string line;
    bool got_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string text = line.size() > 2 ? line.substr(2) : "";
            if (t.title.empty())
                t.title = text;
            else
                t.notes.push_back(text);
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        while (fields.size() < 4) fields.emplace_back();
        if (!got_header) {
            got_header = true;
            t.columns = {fields[1], fields[2], fields[3]};
            continue;
        }
        RatioRow row;
        row.index = std::stoi(fields[0]);
        row.reference = std::strtod(fields[1].c_str(), nullptr);
        if (!fields[2].empty()) row.model = std::strtod(fields[2].c_str(), nullptr);
        if (!fields[3].empty())
            row.difference_percent = std::strtod(fields[3].c_str(), nullptr);
        t.rows.push_back(row);
    }
    return t;
}

void write_table_text(std::ostream& out, const RatioTable& table) {
    out << table.title << "\n";
    char buf[128];
    std::snprintf(buf, sizeof buf, "%4s  %18s  %18s  %14s\n", "no", table.columns[0].c_str(),
                  table.columns[1].c_str(), table.columns[2].c_str());
    out << buf;
    for (const RatioRow& row : table.rows) {
        char ref[32], model[32], diff[32];
        std::snprintf(ref, sizeof ref, "%.2f", row.reference);
        if (row.model)
            std::snprintf(model, sizeof model, "%.2f", *row.model);
        else
            std::snprintf(model, sizeof model, "-");
        if (row.difference_percent)
            std::snprintf(diff, sizeof diff, "%.1f", *row.difference_percent);
        else
            std::snprintf(diff, sizeof diff, "-");
        std::snprintf(buf, sizeof buf, "%4d  %18s  %18s  %14s\n", row.index, ref, model, diff);
        out << buf;
    }
    for (const std::string& note : table.notes) out << "note: " << note << "\n";
}

}  // namespace solitrend
