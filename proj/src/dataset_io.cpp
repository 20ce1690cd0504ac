#include "bkr/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bkr/error.hpp"

namespace bkr {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ColumnType parse_type(const std::string& s, const std::string& col) {
    if (s == "numeric") return ColumnType::Numeric;
    if (s == "numeric-vector") return ColumnType::NumericVector;
    if (s == "categorical") return ColumnType::Categorical;
    if (s == "string") return ColumnType::String;
    throw config_error("schema column '" + col + "': unknown type '" + s + "'");
}

const char* type_name(ColumnType t) {
    switch (t) {
        case ColumnType::Numeric: return "numeric";
        case ColumnType::NumericVector: return "numeric-vector";
        case ColumnType::Categorical: return "categorical";
        case ColumnType::String: return "string";
    }
    return "numeric";
}

KernelChoice parse_kernel(const std::string& s, const std::string& col) {
    if (s == "auto") return KernelChoice::Auto;
    if (s == "rbf") return KernelChoice::Rbf;
    if (s == "indicator") return KernelChoice::Indicator;
    if (s == "edit-rbf") return KernelChoice::EditRbf;
    throw config_error("schema column '" + col + "': unknown kernel '" + s + "'");
}

const char* kernel_name(KernelChoice k) {
    switch (k) {
        case KernelChoice::Auto: return "auto";
        case KernelChoice::Rbf: return "rbf";
        case KernelChoice::Indicator: return "indicator";
        case KernelChoice::EditRbf: return "edit-rbf";
    }
    return "auto";
}

// RFC-4180-style CSV: fields may be double-quoted; embedded quotes are
// doubled. Returns one row of cells; handles \r\n line ends.
std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quote_csv(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, std::size_t row, const std::string& col) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v))
        throw data_error("row " + std::to_string(row) + ", column '" + col +
                         "': cannot parse numeric cell '" + s + "'");
    return v;
}

std::vector<std::string> split_semicolons(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(';', start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

}  // namespace

Schema parse_schema(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("schema: invalid JSON: ") + e.what());
    }
    if (!root.is_object() || !root.contains("columns") || !root["columns"].is_array())
        throw config_error("schema: expected an object with a 'columns' array");

    Schema schema;
    for (const auto& item : root["columns"]) {
        if (!item.is_object() || !item.contains("name") || !item.contains("type"))
            throw config_error("schema: every column needs 'name' and 'type'");
        ColumnSchema col;
        col.name = item["name"].get<std::string>();
        col.type = parse_type(item["type"].get<std::string>(), col.name);
        if (col.type == ColumnType::NumericVector) {
            if (!item.contains("dim"))
                throw config_error("schema column '" + col.name +
                                   "': numeric-vector needs 'dim'");
            col.dim = item["dim"].get<Eigen::Index>();
            if (col.dim < 1)
                throw config_error("schema column '" + col.name + "': dim must be >= 1");
        }
        if (item.contains("kernel"))
            col.kernel.kernel = parse_kernel(item["kernel"].get<std::string>(), col.name);
        if (item.contains("lengthscale")) {
            const double ell = item["lengthscale"].get<double>();
            if (!(ell > 0.0))
                throw config_error("schema column '" + col.name +
                                   "': lengthscale must be positive");
            col.kernel.lengthscale = ell;
        }
        schema.columns.push_back(std::move(col));
    }
    if (schema.columns.empty()) throw config_error("schema: no columns defined");
    return schema;
}

Schema load_schema(const std::string& path) {
    try {
        return parse_schema(read_file(path));
    } catch (const data_error& e) {
        throw config_error(e.what());
    }
}

Dataset load_dataset(const std::string& csv_path, const Schema& schema) {
    const std::string text = read_file(csv_path);

    std::vector<std::string> lines;
    std::string cur;
    bool quoted = false;
    for (char ch : text) {  // split on newlines outside quotes
        if (ch == '"') quoted = !quoted;
        if (ch == '\n' && !quoted) {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(std::move(cur));
    }
    if (lines.empty()) throw data_error(csv_path + ": empty CSV file");

    const auto header = split_csv_row(lines.front());
    const std::size_t k = schema.columns.size();
    if (header.size() != k)
        throw data_error(csv_path + ": header has " + std::to_string(header.size()) +
                         " columns but schema declares " + std::to_string(k));
    for (std::size_t c = 0; c < k; ++c)
        if (header[c] != schema.columns[c].name)
            throw data_error(csv_path + ": header column '" + header[c] +
                             "' does not match schema column '" +
                             schema.columns[c].name + "'");

    const std::size_t n = lines.size() - 1;

    Dataset dataset;
    dataset.columns.resize(k);
    std::vector<Eigen::MatrixXd*> numeric(k, nullptr);
    for (std::size_t c = 0; c < k; ++c) {
        Column& col = dataset.columns[c];
        col.name = schema.columns[c].name;
        col.missing.assign(n, 0);
        switch (schema.columns[c].type) {
            case ColumnType::Numeric:
                col.payload = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), 1);
                break;
            case ColumnType::NumericVector:
                col.payload = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                    schema.columns[c].dim);
                break;
            case ColumnType::Categorical: {
                CategoricalData data;
                data.labels.assign(n, std::string());
                col.payload = std::move(data);
                break;
            }
            case ColumnType::String: {
                StringData data;
                data.values.assign(n, std::string());
                col.payload = std::move(data);
                break;
            }
        }
        if (col.is_numeric()) numeric[c] = &std::get<Eigen::MatrixXd>(col.payload);
    }

    for (std::size_t r = 0; r < n; ++r) {
        const auto cells = split_csv_row(lines[r + 1]);
        if (cells.size() != k)
            throw data_error(csv_path + ": row " + std::to_string(r + 1) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(k));
        for (std::size_t c = 0; c < k; ++c) {
            Column& col = dataset.columns[c];
            const std::string& cell = cells[c];
            if (cell.empty()) {
                col.missing[r] = 1;
                continue;
            }
            switch (schema.columns[c].type) {
                case ColumnType::Numeric:
                    (*numeric[c])(static_cast<Eigen::Index>(r), 0) =
                        parse_double(cell, r + 1, col.name);
                    break;
                case ColumnType::NumericVector: {
                    const auto parts = split_semicolons(cell);
                    if (static_cast<Eigen::Index>(parts.size()) != schema.columns[c].dim)
                        throw data_error("row " + std::to_string(r + 1) + ", column '" +
                                         col.name + "': vector cell has " +
                                         std::to_string(parts.size()) +
                                         " components, expected " +
                                         std::to_string(schema.columns[c].dim));
                    for (std::size_t d = 0; d < parts.size(); ++d)
                        (*numeric[c])(static_cast<Eigen::Index>(r),
                                      static_cast<Eigen::Index>(d)) =
                            parse_double(parts[d], r + 1, col.name);
                    break;
                }
                case ColumnType::Categorical:
                    std::get<CategoricalData>(col.payload).labels[r] = cell;
                    break;
                case ColumnType::String:
                    std::get<StringData>(col.payload).values[r] = cell;
                    break;
            }
        }
    }
    return dataset;
}

Dataset load_dataset(const std::string& csv_path, const std::string& schema_path) {
    return load_dataset(csv_path, load_schema(schema_path));
}

void write_dataset_csv(const Dataset& dataset, const std::string& csv_path) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw data_error("cannot write file: " + csv_path);

    const Eigen::Index n = dataset.n_rows();
    for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
        if (c) out << ',';
        out << quote_csv(dataset.columns[c].name);
    }
    out << '\n';

    for (Eigen::Index r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
            if (c) out << ',';
            const Column& col = dataset.columns[c];
            if (col.missing[static_cast<std::size_t>(r)]) continue;  // empty field
            if (col.is_numeric()) {
                const auto& m = std::get<Eigen::MatrixXd>(col.payload);
                std::string cell;
                for (Eigen::Index d = 0; d < m.cols(); ++d) {
                    if (d) cell.push_back(';');
                    cell += format_double(m(r, d));
                }
                out << quote_csv(cell);
            } else if (col.is_categorical()) {
                out << quote_csv(
                    std::get<CategoricalData>(col.payload).labels[static_cast<std::size_t>(r)]);
            } else {
                out << quote_csv(
                    std::get<StringData>(col.payload).values[static_cast<std::size_t>(r)]);
            }
        }
        out << '\n';
    }
    if (!out) throw data_error("error writing file: " + csv_path);
}

std::string schema_to_json(const Schema& schema) {
    nlohmann::ordered_json root;
    root["columns"] = nlohmann::ordered_json::array();
    for (const auto& col : schema.columns) {
        nlohmann::ordered_json item;
        item["name"] = col.name;
        item["type"] = type_name(col.type);
        if (col.type == ColumnType::NumericVector) item["dim"] = col.dim;
        if (col.kernel.kernel != KernelChoice::Auto)
            item["kernel"] = kernel_name(col.kernel.kernel);
        if (col.kernel.lengthscale) item["lengthscale"] = *col.kernel.lengthscale;
        root["columns"].push_back(std::move(item));
    }
    return root.dump(2);
}

void write_schema(const Schema& schema, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write file: " + path);
    out << schema_to_json(schema) << '\n';
    if (!out) throw data_error("error writing file: " + path);
}

}  // namespace bkr
