#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace kac {

enum class DataType { Continuous, Ordinal, Binary, Categorical };

const char* to_string(DataType type);
DataType parse_data_type(const std::string& token);

inline bool is_discrete(DataType t) { return t != DataType::Continuous; }

/// One variable. Discrete levels are stored as integer-valued doubles.
struct Column {
    std::string label;
    DataType dtype = DataType::Continuous;
    std::vector<double> values;
};

/// Column-oriented table, n rows by p typed variables.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<Column> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    const Column& column(std::size_t c) const { return columns_.at(c); }
    const std::vector<Column>& columns() const { return columns_; }
    std::vector<std::string> labels() const;

    /// New dataset holding the given columns in the given order.
    Dataset select(std::span<const std::size_t> indices) const;
    /// Rows reordered by `order` (a permutation of 0..n-1), same for every column.
    Dataset permute_rows(std::span<const std::size_t> order) const;

    /// Standardizes continuous columns to zero mean and unit sample variance.
    /// Constant columns are left centered at zero.
    void zscore_continuous();

private:
    void validate() const;

    std::size_t rows_ = 0;
    std::vector<Column> columns_;
};

// CSV: header row of labels, one row per sample. Schema sidecar: `label,dtype`
// lines, dtype in {continuous, ordinal, binary, categorical}.

Dataset read_dataset(const std::filesystem::path& csv, const std::filesystem::path& schema);
void write_dataset(const Dataset& data, const std::filesystem::path& csv, const std::filesystem::path& schema);

/// `data.csv` -> `data.schema`
std::filesystem::path default_schema_path(const std::filesystem::path& csv);

}  // namespace kac
