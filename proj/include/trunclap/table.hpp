#pragma once

/// @file table.hpp
/// @brief Result tables with deterministic CSV and JSON emission.

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace trunclap {

using Cell = std::variant<std::monostate, bool, long long, double, std::string>;

class Table {
public:
    Table(std::string name, std::vector<std::string> columns);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    void add_row(std::vector<Cell> row);

    /// Column index by name; throws std::out_of_range.
    std::size_t column(const std::string& name) const;
    double number(std::size_t row, const std::string& col) const;
    bool flag(std::size_t row, const std::string& col) const;
    std::string text(std::size_t row, const std::string& col) const;

    nlohmann::json& metadata() { return meta_; }
    const nlohmann::json& metadata() const { return meta_; }

    /// (x, y) series written by write_plot_data, one file per series.
    void add_series(std::string name, std::vector<std::pair<double, double>> points);

    void write_csv(std::ostream& out) const;
    nlohmann::json to_json() const;

    /// Writes <dir>/<name>.csv and <dir>/<name>.json.
    void write(const std::filesystem::path& dir) const;
    /// Writes <dir>/<name>_<series>.dat as whitespace-separated "x y" lines.
    void write_plot_data(const std::filesystem::path& dir) const;

private:
    std::string name_;
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    nlohmann::json meta_ = nlohmann::json::object();
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series_;
};

/// Shortest decimal form that round-trips, so identical runs print identical bytes.
std::string format_number(double x);

}  // namespace trunclap
