#include "trunclap/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace trunclap {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(const std::string& s) const { return csv_escape(s); }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::json cell_json(const Cell& c) {
    struct Visitor {
        nlohmann::json operator()(std::monostate) const { return nullptr; }
        nlohmann::json operator()(bool b) const { return b; }
        nlohmann::json operator()(long long v) const { return v; }
        nlohmann::json operator()(double v) const {
            if (!std::isfinite(v)) return nullptr;
            return v;
        }
        nlohmann::json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

void open_or_throw(std::ofstream& f, const std::filesystem::path& p) {
    f.open(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Table::Table(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        throw std::invalid_argument("table " + name_ + ": row has " + std::to_string(row.size()) + " cells, expected " +
                                    std::to_string(columns_.size()));
    rows_.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == name) return i;
    throw std::out_of_range("table " + name_ + " has no column " + name);
}

double Table::number(std::size_t row, const std::string& col) const {
    const Cell& c = rows_.at(row).at(column(col));
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
    return std::nan("");
}

bool Table::flag(std::size_t row, const std::string& col) const {
    const Cell& c = rows_.at(row).at(column(col));
    if (const auto* b = std::get_if<bool>(&c)) return *b;
    throw std::invalid_argument("column " + col + " is not boolean");
}

std::string Table::text(std::size_t row, const std::string& col) const {
    const Cell& c = rows_.at(row).at(column(col));
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return cell_text(c);
}

void Table::add_series(std::string name, std::vector<std::pair<double, double>> points) {
    series_.emplace_back(std::move(name), std::move(points));
}

void Table::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << csv_escape(columns_[i]);
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << '\n';
    }
}

nlohmann::json Table::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rows_) {
        nlohmann::json r = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[columns_[i]] = cell_json(row[i]);
        rows.push_back(std::move(r));
    }
    return {{"name", name_}, {"columns", columns_}, {"rows", std::move(rows)}, {"metadata", meta_}};
}

void Table::write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    std::ofstream csv;
    open_or_throw(csv, dir / (name_ + ".csv"));
    write_csv(csv);
    std::ofstream js;
    open_or_throw(js, dir / (name_ + ".json"));
    js << to_json().dump(2) << '\n';
}

void Table::write_plot_data(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& [label, points] : series_) {
        std::ofstream f;
        open_or_throw(f, dir / (name_ + "_" + label + ".dat"));
        f << "# " << label << '\n';
        for (const auto& [x, y] : points) f << format_number(x) << ' ' << format_number(y) << '\n';
    }
}

}  // namespace trunclap
