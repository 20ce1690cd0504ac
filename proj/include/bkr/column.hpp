#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bkr/kernels.hpp"

namespace bkr {

enum class ColumnType { Numeric, NumericVector, Categorical, String };

enum class KernelChoice { Auto, Rbf, Indicator, EditRbf };

/// Kernel configuration for one column. Auto resolves to RBF for numeric
/// payloads, indicator for categorical, edit-RBF for strings. A lengthscale
/// override skips the median heuristic.
struct KernelSpec {
    KernelChoice kernel = KernelChoice::Auto;
    std::optional<double> lengthscale;
};

/// Labels of a categorical column.
struct CategoricalData {
    std::vector<std::string> labels;
};

/// Raw strings of a text column.
struct StringData {
    std::vector<std::string> values;
};

/// One typed column of a mixed-type table. Numeric payloads (scalar or
/// fixed-dimension vector) are stored as an n x d matrix. The missing mask is
/// carried per row; payload entries for missing rows are placeholders.
struct Column {
    std::string name;
    std::variant<Eigen::MatrixXd, CategoricalData, StringData> payload;
    std::vector<std::uint8_t> missing;  // size n, nonzero = missing

    Eigen::Index size() const;
    bool is_numeric() const { return std::holds_alternative<Eigen::MatrixXd>(payload); }
    bool is_categorical() const { return std::holds_alternative<CategoricalData>(payload); }
    bool is_string() const { return std::holds_alternative<StringData>(payload); }
    bool has_missing() const;
};

/// Per-column schema entry: declared type, vector dimension, kernel choice.
struct ColumnSchema {
    std::string name;
    ColumnType type = ColumnType::Numeric;
    Eigen::Index dim = 1;  // for NumericVector
    KernelSpec kernel;
};

struct Schema {
    std::vector<ColumnSchema> columns;

    const ColumnSchema& by_name(const std::string& name) const;
};

/// A mixed-type table: equally sized columns plus per-cell missingness.
struct Dataset {
    std::vector<Column> columns;

    Eigen::Index n_rows() const;
    Eigen::Index n_cols() const { return static_cast<Eigen::Index>(columns.size()); }
    const Column& by_name(const std::string& name) const;
    Eigen::Index index_of(const std::string& name) const;

    /// Row indices with no missing cell in any column.
    std::vector<Eigen::Index> complete_rows() const;

    /// Row indices complete in both named columns.
    std::vector<Eigen::Index> complete_rows(Eigen::Index col_a, Eigen::Index col_b) const;
};

/// Lazily evaluable kernel over (a row subset of) one column, with the
/// lengthscale already resolved. This is the entry point shared by the full
/// Gram construction and the Nystrom cross blocks, so both see the same
/// bandwidth.
class ColumnKernel {
public:
    ColumnKernel(const Column& column, const KernelSpec& spec);
    ColumnKernel(const Column& column, const KernelSpec& spec,
                 const std::vector<Eigen::Index>& rows);

    Eigen::Index size() const { return n_; }

    /// Kernel value between rows i and j of the subset.
    double operator()(Eigen::Index i, Eigen::Index j) const;

    /// Full n x n Gram matrix.
    GramMatrix gram() const;

    /// n x m block of kernel values against the landmark rows (subset indices).
    Eigen::MatrixXd cross(const std::vector<Eigen::Index>& landmarks) const;

    /// Resolved lengthscale; empty for the indicator kernel.
    std::optional<double> lengthscale() const { return lengthscale_; }

private:
    Eigen::Index n_ = 0;
    std::optional<double> lengthscale_;
    // Materialised subset payload.
    std::variant<Eigen::MatrixXd, std::vector<int>, std::vector<std::string>> data_;
};

/// Gram matrix of a complete column under its kernel spec. Throws data_error
/// if the column has missing rows (callers restrict rows first).
GramMatrix build_gram(const Column& column, const KernelSpec& spec);
GramMatrix build_gram(const Column& column, const KernelSpec& spec,
                      const std::vector<Eigen::Index>& rows);

}  // namespace bkr
