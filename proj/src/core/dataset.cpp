#include "dataset.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "text_util.hpp"

namespace kac {

const char* to_string(DataType type) {
    switch (type) {
        case DataType::Continuous: return "continuous";
        case DataType::Ordinal: return "ordinal";
        case DataType::Binary: return "binary";
        case DataType::Categorical: return "categorical";
    }
    return "?";
}

DataType parse_data_type(const std::string& token) {
    if (token == "continuous") return DataType::Continuous;
    if (token == "ordinal") return DataType::Ordinal;
    if (token == "binary") return DataType::Binary;
    if (token == "categorical") return DataType::Categorical;
    throw FormatError("unknown data type '" + token + "'");
}

Dataset::Dataset(std::vector<Column> columns) : columns_(std::move(columns)) {
    rows_ = columns_.empty() ? 0 : columns_.front().values.size();
    validate();
}

void Dataset::validate() const {
    std::set<std::string> seen;
    for (const auto& col : columns_) {
        if (!seen.insert(col.label).second) throw InputError("duplicate column label '" + col.label + "'");
        if (col.values.size() != rows_) throw InputError("column '" + col.label + "' has a different length");
        if (rows_ == 0) throw InputError("dataset has no rows");
        std::set<double> levels;
        for (double v : col.values) {
            if (!std::isfinite(v)) throw InputError("non-finite value in column '" + col.label + "'");
            if (is_discrete(col.dtype)) {
                if (v != std::floor(v) || v < 0) {
                    throw InputError("column '" + col.label + "' holds a non-integer level code");
                }
                levels.insert(v);
            }
        }
        if (col.dtype == DataType::Binary && levels.size() > 2) {
            throw InputError("binary column '" + col.label + "' has more than two levels");
        }
    }
}

std::vector<std::string> Dataset::labels() const {
    std::vector<std::string> out;
    for (const auto& c : columns_) out.push_back(c.label);
    return out;
}

Dataset Dataset::select(std::span<const std::size_t> indices) const {
    std::vector<Column> cols;
    for (auto i : indices) cols.push_back(column(i));
    return Dataset(std::move(cols));
}

Dataset Dataset::permute_rows(std::span<const std::size_t> order) const {
    if (order.size() != rows_) throw InputError("row permutation has wrong length");
    std::vector<Column> cols = columns_;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        for (std::size_t r = 0; r < rows_; ++r) cols[k].values[r] = columns_[k].values.at(order[r]);
    }
    return Dataset(std::move(cols));
}

void Dataset::zscore_continuous() {
    for (auto& col : columns_) {
        if (col.dtype != DataType::Continuous) continue;
        const double n = static_cast<double>(rows_);
        double mean = 0.0;
        for (double v : col.values) mean += v;
        mean /= n;
        double ss = 0.0;
        for (double v : col.values) ss += (v - mean) * (v - mean);
        const double sd = rows_ > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        for (double& v : col.values) v = sd > 0.0 ? (v - mean) / sd : v - mean;
    }
}

std::filesystem::path default_schema_path(const std::filesystem::path& csv) {
    auto out = csv;
    out.replace_extension(".schema");
    return out;
}

Dataset read_dataset(const std::filesystem::path& csv, const std::filesystem::path& schema) {
    std::ifstream schema_in(schema, std::ios::binary);
    if (!schema_in) throw IoError("cannot open schema " + schema.string());
    std::map<std::string, DataType> types;
    std::vector<std::string> schema_order;
    std::string line;
    int line_no = 0;
    while (std::getline(schema_in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split(line, ',');
        if (fields.size() != 2) {
            throw FormatError(schema.string() + ":" + std::to_string(line_no) + ": expected 'label,dtype'");
        }
        const std::string label = trim(fields[0]);
        try {
            types[label] = parse_data_type(trim(fields[1]));
        } catch (const FormatError& err) {
            throw FormatError(schema.string() + ":" + std::to_string(line_no) + ": " + err.what());
        }
        schema_order.push_back(label);
    }

    std::ifstream in(csv, std::ios::binary);
    if (!in) throw IoError("cannot open dataset " + csv.string());
    if (!std::getline(in, line)) throw FormatError(csv.string() + ": empty file");
    std::vector<Column> columns;
    for (const auto& raw : split(trim(line), ',')) {
        Column col;
        col.label = trim(raw);
        auto it = types.find(col.label);
        if (it == types.end()) {
            throw FormatError(csv.string() + ": column '" + col.label + "' missing from schema " + schema.string());
        }
        col.dtype = it->second;
        columns.push_back(std::move(col));
    }
    if (columns.size() != types.size() || schema_order.size() != types.size()) {
        throw FormatError("schema " + schema.string() + " does not match the columns of " + csv.string());
    }
    line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(trim(line), ',');
        if (fields.size() != columns.size()) {
            throw FormatError(csv.string() + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(columns.size()) + " fields");
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v = 0.0;
            if (!parse_double(fields[c], v)) {
                throw FormatError(csv.string() + ":" + std::to_string(line_no) + ": cannot parse '" + fields[c] + "'");
            }
            columns[c].values.push_back(v);
        }
    }
    try {
        return Dataset(std::move(columns));
    } catch (const InputError& err) {
        throw FormatError(csv.string() + ": " + err.what());
    }
}

void write_dataset(const Dataset& data, const std::filesystem::path& csv, const std::filesystem::path& schema) {
    {
        std::ofstream out(schema, std::ios::binary);
        if (!out) throw IoError("cannot open " + schema.string() + " for writing");
        for (const auto& c : data.columns()) out << c.label << ',' << to_string(c.dtype) << '\n';
        if (!out) throw IoError("write failed: " + schema.string());
    }
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw IoError("cannot open " + csv.string() + " for writing");
    const auto& cols = data.columns();
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c].label;
    out << '\n';
    std::string row;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        row.clear();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) row += ',';
            const double v = cols[c].values[r];
            row += is_discrete(cols[c].dtype) ? std::to_string(static_cast<long long>(v)) : format_double(v);
        }
        out << row << '\n';
    }
    if (!out) throw IoError("write failed: " + csv.string());
}

}  // namespace kac
