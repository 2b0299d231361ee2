#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace flatlab::cli {

inline constexpr int kSchemaVersion = 1;

struct Null {};
using Scalar = std::variant<Null, bool, std::int64_t, double, std::string>;
using Value = std::variant<Null, bool, std::int64_t, double, std::string, std::vector<std::int64_t>,
                           std::vector<double>>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Scalar>> rows;
};

/// Ordered fields plus at most one table; rendered as JSON, CSV or text.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, Value>> fields;
  std::optional<Table> table;

  void set(std::string key, Value v) { fields.emplace_back(std::move(key), std::move(v)); }
};

enum class Format { Json, Csv, Text };

std::string render(const Report& report, Format format);

/// %.17g.
std::string format_double(double x);

}  // namespace flatlab::cli
