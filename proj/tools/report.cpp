#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace flatlab::cli {

namespace {

using Json = nlohmann::ordered_json;

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

Json to_json(const Value& v) {
  return std::visit(Overload{[](Null) { return Json(nullptr); },
                             [](bool b) { return Json(b); },
                             [](std::int64_t i) { return Json(i); },
                             [](double d) { return std::isfinite(d) ? Json(d) : Json(nullptr); },
                             [](const std::string& s) { return Json(s); },
                             [](const std::vector<std::int64_t>& xs) { return Json(xs); },
                             [](const std::vector<double>& xs) {
                               Json a = Json::array();
                               for (double d : xs) a.push_back(std::isfinite(d) ? Json(d) : Json(nullptr));
                               return a;
                             }},
                    v);
}

Json to_json(const Scalar& s) {
  return std::visit([](const auto& x) { return to_json(Value(x)); }, s);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string plain(const Scalar& s) {
  return std::visit(Overload{[](Null) { return std::string(); },
                             [](bool b) { return std::string(b ? "true" : "false"); },
                             [](std::int64_t i) { return std::to_string(i); },
                             [](double d) { return format_double(d); },
                             [](const std::string& x) { return x; }},
                    s);
}

std::string plain(const Value& v) {
  return std::visit(Overload{[](const std::vector<std::int64_t>& xs) {
                               std::string out;
                               for (auto x : xs) out += (out.empty() ? "" : " ") + std::to_string(x);
                               return out;
                             },
                             [](const std::vector<double>& xs) {
                               std::string out;
                               for (auto x : xs) out += (out.empty() ? "" : " ") + format_double(x);
                               return out;
                             },
                             [](const auto& x) { return plain(Scalar(x)); }},
                    v);
}

std::string render_json(const Report& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = r.command;
  for (const auto& [k, v] : r.fields) j[k] = to_json(v);
  if (r.table) {
    Json rows = Json::array();
    for (const auto& row : r.table->rows) {
      Json o;
      for (std::size_t c = 0; c < row.size(); ++c) o[r.table->columns[c]] = to_json(row[c]);
      rows.push_back(std::move(o));
    }
    j[r.table->name] = std::move(rows);
  }
  return j.dump(2) + "\n";
}

std::string render_csv(const Report& r) {
  std::ostringstream out;
  out << "# flatlab " << r.command << " csv schema_version=" << kSchemaVersion << "\n";
  if (r.table) {
    for (std::size_t c = 0; c < r.table->columns.size(); ++c) out << (c ? "," : "") << r.table->columns[c];
    out << "\n";
    for (const auto& row : r.table->rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(plain(row[c]));
      out << "\n";
    }
  } else {
    out << "key,value\n";
    for (const auto& [k, v] : r.fields) out << k << "," << csv_escape(plain(v)) << "\n";
  }
  return out.str();
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << r.command << "\n";
  for (const auto& [k, v] : r.fields) out << "  " << k << ": " << plain(v) << "\n";
  if (r.table) {
    std::vector<std::size_t> width(r.table->columns.size());
    for (std::size_t c = 0; c < width.size(); ++c) width[c] = r.table->columns[c].size();
    for (const auto& row : r.table->rows) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], plain(row[c]).size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      out << " ";
      for (std::size_t c = 0; c < cells.size(); ++c) {
        out << " " << cells[c];
        if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size(), ' ');
      }
      out << "\n";
    };
    out << r.table->name << ":\n";
    line(r.table->columns);
    for (const auto& row : r.table->rows) {
      std::vector<std::string> cells;
      for (const auto& s : row) cells.push_back(plain(s));
      line(cells);
    }
  }
  return out.str();
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string render(const Report& report, Format format) {
  switch (format) {
    case Format::Json:
      return render_json(report);
    case Format::Csv:
      return render_csv(report);
    case Format::Text:
      return render_text(report);
  }
  return {};
}

}  // namespace flatlab::cli
