#pragma once

#include <string>

#include "bkr/column.hpp"

namespace bkr {

/// Parse the JSON schema sidecar:
///   {"columns": [{"name": ..., "type": "numeric" | "numeric-vector" |
///                 "categorical" | "string", "dim": d, "kernel": "auto" |
///                 "rbf" | "indicator" | "edit-rbf", "lengthscale": l}, ...]}
/// dim is required for numeric-vector; kernel and lengthscale are optional.
Schema load_schema(const std::string& path);
Schema parse_schema(const std::string& json_text);

/// Load a CSV (UTF-8, comma separated, header row matching the schema
/// column names in order). Vector cells are semicolon-joined numbers; empty
/// fields mark missing values. Errors report the offending row and column.
Dataset load_dataset(const std::string& csv_path, const Schema& schema);
Dataset load_dataset(const std::string& csv_path, const std::string& schema_path);

/// Write the dataset as CSV (and optionally its schema). Numbers are printed
/// in shortest round-trip form, so reloading reproduces cells exactly.
void write_dataset_csv(const Dataset& dataset, const std::string& csv_path);
void write_schema(const Schema& schema, const std::string& path);
std::string schema_to_json(const Schema& schema);

}  // namespace bkr
