#include "bkr/column.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "bkr/error.hpp"

namespace bkr {

Eigen::Index Column::size() const {
    if (is_numeric()) return std::get<Eigen::MatrixXd>(payload).rows();
    if (is_categorical())
        return static_cast<Eigen::Index>(std::get<CategoricalData>(payload).labels.size());
    return static_cast<Eigen::Index>(std::get<StringData>(payload).values.size());
}

bool Column::has_missing() const {
    return std::any_of(missing.begin(), missing.end(),
                       [](std::uint8_t m) { return m != 0; });
}

const ColumnSchema& Schema::by_name(const std::string& name) const {
    for (const auto& c : columns)
        if (c.name == name) return c;
    throw config_error("schema has no column named '" + name + "'");
}

Eigen::Index Dataset::n_rows() const {
    return columns.empty() ? 0 : columns.front().size();
}

const Column& Dataset::by_name(const std::string& name) const {
    return columns[static_cast<std::size_t>(index_of(name))];
}

Eigen::Index Dataset::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == name) return static_cast<Eigen::Index>(i);
    throw config_error("dataset has no column named '" + name + "'");
}

std::vector<Eigen::Index> Dataset::complete_rows() const {
    const Eigen::Index n = n_rows();
    std::vector<Eigen::Index> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) {
        bool ok = true;
        for (const auto& c : columns) {
            if (c.missing[static_cast<std::size_t>(r)]) {
                ok = false;
                break;
            }
        }
        if (ok) rows.push_back(r);
    }
    return rows;
}

std::vector<Eigen::Index> Dataset::complete_rows(Eigen::Index col_a,
                                                 Eigen::Index col_b) const {
    const auto& a = columns[static_cast<std::size_t>(col_a)];
    const auto& b = columns[static_cast<std::size_t>(col_b)];
    std::vector<Eigen::Index> rows;
    for (Eigen::Index r = 0; r < n_rows(); ++r)
        if (!a.missing[static_cast<std::size_t>(r)] &&
            !b.missing[static_cast<std::size_t>(r)])
            rows.push_back(r);
    return rows;
}

namespace {

std::vector<Eigen::Index> all_rows(Eigen::Index n) {
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = i;
    return rows;
}

KernelChoice resolve_kernel(const Column& column, const KernelSpec& spec) {
    if (spec.kernel != KernelChoice::Auto) {
        if (spec.kernel == KernelChoice::Rbf && !column.is_numeric())
            throw config_error("column '" + column.name + "': rbf kernel needs numeric data");
        if (spec.kernel == KernelChoice::Indicator && !column.is_categorical())
            throw config_error("column '" + column.name +
                               "': indicator kernel needs categorical data");
        if (spec.kernel == KernelChoice::EditRbf && !column.is_string())
            throw config_error("column '" + column.name +
                               "': edit-rbf kernel needs string data");
        return spec.kernel;
    }
    if (column.is_numeric()) return KernelChoice::Rbf;
    if (column.is_categorical()) return KernelChoice::Indicator;
    return KernelChoice::EditRbf;
}

}  // namespace

ColumnKernel::ColumnKernel(const Column& column, const KernelSpec& spec)
    : ColumnKernel(column, spec, all_rows(column.size())) {}

ColumnKernel::ColumnKernel(const Column& column, const KernelSpec& spec,
                           const std::vector<Eigen::Index>& rows) {
    n_ = static_cast<Eigen::Index>(rows.size());
    if (n_ < 1) throw data_error("column '" + column.name + "': no rows to evaluate");
    for (Eigen::Index r : rows)
        if (column.missing[static_cast<std::size_t>(r)])
            throw data_error("column '" + column.name + "': missing value in selected rows");

    const KernelChoice kind = resolve_kernel(column, spec);
    try {
        switch (kind) {
            case KernelChoice::Rbf: {
                const auto& full = std::get<Eigen::MatrixXd>(column.payload);
                Eigen::MatrixXd pts(n_, full.cols());
                for (Eigen::Index i = 0; i < n_; ++i)
                    pts.row(i) = full.row(rows[static_cast<std::size_t>(i)]);
                if (!pts.allFinite())
                    throw data_error("column '" + column.name + "': non-finite numeric value");
                lengthscale_ = spec.lengthscale ? Lengthscale(*spec.lengthscale).value
                                                : median_heuristic(pts).value;
                data_ = std::move(pts);
                break;
            }
            case KernelChoice::Indicator: {
                const auto& labels = std::get<CategoricalData>(column.payload).labels;
                std::unordered_map<std::string, int> ids;
                std::vector<int> coded(static_cast<std::size_t>(n_));
                for (Eigen::Index i = 0; i < n_; ++i) {
                    const auto& s = labels[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])];
                    auto [it, _] = ids.emplace(s, static_cast<int>(ids.size()));
                    coded[static_cast<std::size_t>(i)] = it->second;
                }
                data_ = std::move(coded);
                break;
            }
            case KernelChoice::EditRbf: {
                const auto& values = std::get<StringData>(column.payload).values;
                std::vector<std::string> subset(static_cast<std::size_t>(n_));
                for (Eigen::Index i = 0; i < n_; ++i)
                    subset[static_cast<std::size_t>(i)] =
                        values[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])];
                lengthscale_ = spec.lengthscale ? Lengthscale(*spec.lengthscale).value
                                                : median_heuristic_edit(subset).value;
                data_ = std::move(subset);
                break;
            }
            case KernelChoice::Auto:
                break;  // unreachable
        }
    } catch (const degenerate_error& e) {
        throw degenerate_error("column '" + column.name + "': " + e.what());
    }
}

double ColumnKernel::operator()(Eigen::Index i, Eigen::Index j) const {
    if (const auto* pts = std::get_if<Eigen::MatrixXd>(&data_)) {
        const double d2 = (pts->row(i) - pts->row(j)).squaredNorm();
        const double ell = *lengthscale_;
        return std::exp(-d2 / (2.0 * ell * ell));
    }
    if (const auto* labels = std::get_if<std::vector<int>>(&data_)) {
        return (*labels)[static_cast<std::size_t>(i)] ==
                       (*labels)[static_cast<std::size_t>(j)]
                   ? 1.0
                   : 0.0;
    }
    const auto& strs = std::get<std::vector<std::string>>(data_);
    const double d = edit_distance(strs[static_cast<std::size_t>(i)],
                                   strs[static_cast<std::size_t>(j)]);
    const double ell = *lengthscale_;
    return std::exp(-(d * d) / (2.0 * ell * ell));
}

GramMatrix ColumnKernel::gram() const {
    if (const auto* pts = std::get_if<Eigen::MatrixXd>(&data_))
        return gram_rbf(*pts, Lengthscale(*lengthscale_));
    if (const auto* labels = std::get_if<std::vector<int>>(&data_))
        return gram_indicator(*labels);
    return gram_edit_rbf(std::get<std::vector<std::string>>(data_),
                         Lengthscale(*lengthscale_));
}

Eigen::MatrixXd ColumnKernel::cross(const std::vector<Eigen::Index>& landmarks) const {
    const auto m = static_cast<Eigen::Index>(landmarks.size());
    Eigen::MatrixXd k(n_, m);
    if (const auto* pts = std::get_if<Eigen::MatrixXd>(&data_)) {
        const double inv = -1.0 / (2.0 * (*lengthscale_) * (*lengthscale_));
        for (Eigen::Index c = 0; c < m; ++c) {
            const auto lm_row = pts->row(landmarks[static_cast<std::size_t>(c)]);
            for (Eigen::Index i = 0; i < n_; ++i)
                k(i, c) = std::exp(inv * (pts->row(i) - lm_row).squaredNorm());
        }
        return k;
    }
    for (Eigen::Index c = 0; c < m; ++c)
        for (Eigen::Index i = 0; i < n_; ++i)
            k(i, c) = (*this)(i, landmarks[static_cast<std::size_t>(c)]);
    return k;
}

GramMatrix build_gram(const Column& column, const KernelSpec& spec) {
    return ColumnKernel(column, spec).gram();
}

GramMatrix build_gram(const Column& column, const KernelSpec& spec,
                      const std::vector<Eigen::Index>& rows) {
    return ColumnKernel(column, spec, rows).gram();
}

}  // namespace bkr
