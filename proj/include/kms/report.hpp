#pragma once

// Plot-ready tables with a provenance header, serialised as CSV or JSON.
//
// CSV:  "# key=value" comment lines, a header line, then one line per row.
// JSON: {"config": {key: value, ...}, "rows": [...]}; when keyed_rows is set, "rows" is an
//       object keyed by the first column instead of an array.

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kms/measure.hpp"
#include "kms/params.hpp"

namespace kms::report {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    bool keyed_rows = false;

    void add_config(std::string key, std::string value);
    void add_config(std::string key, double value);
    void add_row(std::vector<Cell> row);
};

enum class Format { csv, json };

/// %.17g, with "inf", "-inf" and "nan" spelled out.
std::string format_double(double x);

/// Adds theta, beta1, gamma and p to the table config.
void add_params(Table& table, const ModelParams& params);

Table cylinder_table(const ModelParams& params, const CylinderTable& cylinders);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);
void write(const Table& table, Format format, std::ostream& out);

}  // namespace kms::report
