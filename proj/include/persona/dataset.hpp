#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "persona/common.hpp"

namespace persona {

enum class FeatureKind { Numeric, Categorical };

inline const char* feature_kind_name(FeatureKind k) {
    return k == FeatureKind::Numeric ? "numeric" : "categorical";
}

inline FeatureKind feature_kind_from_name(const std::string& s) {
    if (s == "numeric") return FeatureKind::Numeric;
    if (s == "categorical") return FeatureKind::Categorical;
    detail::fail("unknown feature kind: '" + s + "'");
}

struct ColumnSpec {
    std::string name;
    FeatureKind kind;

    bool operator==(const ColumnSpec& o) const { return name == o.name && kind == o.kind; }
};

/// One cell: a numeric value or a category token.
using Value = std::variant<double, std::string>;

inline bool is_numeric(const Value& v) { return std::holds_alternative<double>(v); }
inline double num(const Value& v) { return std::get<double>(v); }
inline const std::string& cat(const Value& v) { return std::get<std::string>(v); }

/// Rectangular labeled table: rows in schema column order plus a class id
/// per row. Class ids index class_names; tie-breaking everywhere follows
/// that order.
struct Dataset {
    std::vector<ColumnSpec> columns;
    std::vector<std::vector<Value>> rows;
    std::vector<int> labels;
    std::vector<std::string> class_names;

    size_t n_rows() const { return rows.size(); }
    size_t n_cols() const { return columns.size(); }
    int n_classes() const { return static_cast<int>(class_names.size()); }

    void validate() const {
        require(labels.size() == rows.size(), "dataset: labels/rows length mismatch");
        require(!class_names.empty(), "dataset: no classes");
        for (size_t r = 0; r < rows.size(); ++r) {
            require(rows[r].size() == columns.size(),
                    "dataset: row " + std::to_string(r) + " has " +
                        std::to_string(rows[r].size()) + " cells, expected " +
                        std::to_string(columns.size()));
            require(labels[r] >= 0 && labels[r] < n_classes(),
                    "dataset: row " + std::to_string(r) + " label out of range");
            for (size_t c = 0; c < columns.size(); ++c) {
                const Value& v = rows[r][c];
                if (columns[c].kind == FeatureKind::Numeric) {
                    require(is_numeric(v), "dataset: row " + std::to_string(r) + " column '" +
                                               columns[c].name + "' should be numeric");
                    require(!std::isnan(num(v)), "dataset: NaN in row " + std::to_string(r) +
                                                     " column '" + columns[c].name + "'");
                } else {
                    require(!is_numeric(v), "dataset: row " + std::to_string(r) + " column '" +
                                                columns[c].name + "' should be categorical");
                }
            }
        }
    }

    std::vector<long long> class_counts(const std::vector<int>& row_ids) const {
        std::vector<long long> counts(class_names.size(), 0);
        for (int r : row_ids) ++counts[static_cast<size_t>(labels[static_cast<size_t>(r)])];
        return counts;
    }

    std::vector<int> all_rows() const {
        std::vector<int> ids(rows.size());
        for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
        return ids;
    }
};

} // namespace persona
