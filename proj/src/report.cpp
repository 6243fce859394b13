#include "kms/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace kms::report {

void Table::add_config(std::string key, std::string value) {
    config.emplace_back(std::move(key), std::move(value));
}

void Table::add_config(std::string key, double value) {
    config.emplace_back(std::move(key), format_double(value));
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("row width does not match the column count");
    }
    rows.push_back(std::move(row));
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void add_params(Table& table, const ModelParams& params) {
    table.add_config("theta", params.theta);
    table.add_config("beta1", params.beta1);
    table.add_config("gamma", params.gamma);
    table.add_config("p", params.p);
}

Table cylinder_table(const ModelParams& params, const CylinderTable& cylinders) {
    Table table;
    add_params(table, params);
    table.add_config("n", std::to_string(cylinders.length()));
    table.columns = {"word", "probability"};
    table.keyed_rows = true;
    for (std::size_t i = 0; i < cylinders.size(); ++i) {
        table.add_row({format_word(cylinders.word_at(i)), cylinders[i]});
    }
    return table;
}

namespace {

std::string csv_cell(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    const std::string& s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

nlohmann::ordered_json json_cell(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    if (const auto* i = std::get_if<long long>(&cell)) return *i;
    return std::get<std::string>(cell);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    for (const auto& [key, value] : table.config) {
        out << "# " << key << '=' << value << '\n';
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << csv_cell(row[c]);
        }
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["config"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.config) {
        doc["config"][key] = value;
    }
    if (table.keyed_rows) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::object();
        for (const auto& row : table.rows) {
            const std::string key = csv_cell(row.front());
            if (row.size() == 2) {
                rows[key] = json_cell(row[1]);
            } else {
                nlohmann::ordered_json obj;
                for (std::size_t c = 1; c < row.size(); ++c) obj[table.columns[c]] = json_cell(row[c]);
                rows[key] = obj;
            }
        }
        doc["rows"] = rows;
    } else {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json obj;
            for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_cell(row[c]);
            rows.push_back(obj);
        }
        doc["rows"] = rows;
    }
    out << doc.dump(2) << '\n';
}

void write(const Table& table, Format format, std::ostream& out) {
    if (format == Format::csv) {
        write_csv(table, out);
    } else {
        write_json(table, out);
    }
}

}  // namespace kms::report
