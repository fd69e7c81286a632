#include "geodepth/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geodepth/error.hpp"

namespace geodepth {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw Error(Errc::InvalidArgument, "row has " + std::to_string(row.size()) + " cells, table has " +
                                           std::to_string(columns_.size()) + " columns");
  }
  rows_.push_back(std::move(row));
}

std::vector<double> Table::numeric_column(const std::string& name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw Error(Errc::InvalidArgument, "no column '" + name + "'");
  const auto col = static_cast<std::size_t>(it - columns_.begin());
  std::vector<double> out;
  for (const auto& row : rows_) {
    if (const auto* d = std::get_if<double>(&row[col])) {
      out.push_back(*d);
    } else if (const auto* i = std::get_if<std::int64_t>(&row[col])) {
      out.push_back(static_cast<double>(*i));
    } else {
      throw Error(Errc::InvalidArgument, "column '" + name + "' is not numeric");
    }
  }
  return out;
}

std::string to_csv(const Table& table, const TableMetadata& meta) {
  std::ostringstream out;
  out << "# command: " << meta.command << '\n';
  out << "# seed: " << (meta.seed ? std::to_string(*meta.seed) : std::string("none")) << '\n';
  out << "# version: " << meta.version << '\n';
  out << "# manifold: " << meta.manifold << '\n';
  for (const auto& [k, v] : meta.extra) out << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < table.columns().size(); ++i) out << (i ? "," : "") << table.columns()[i];
  out << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Table& table, const TableMetadata& meta) {
  nlohmann::ordered_json doc;
  doc["metadata"]["command"] = meta.command;
  doc["metadata"]["seed"] = meta.seed ? nlohmann::ordered_json(*meta.seed) : nlohmann::ordered_json(nullptr);
  doc["metadata"]["version"] = meta.version;
  doc["metadata"]["manifold"] = meta.manifold;
  for (const auto& [k, v] : meta.extra) doc["metadata"][k] = v;
  doc["columns"] = table.columns();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows()) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) std::visit([&](const auto& v) { r.push_back(v); }, c);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string to_svg(const std::vector<SvgSeries>& series, const std::string& title, const std::string& x_label,
                   const std::string& y_label) {
  constexpr double width = 640, height = 420, left = 70, right = 150, top = 40, bottom = 55;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    for (double v : s.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
    for (double v : s.y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double v) { return left + (v - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double v) { return top + ph - (v - ymin) / (ymax - ymin) * ph; };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title)
      << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << left << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << num(xmin) << "</text>\n";
  out << "<text x=\"" << left + pw << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << num(xmax)
      << "</text>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << top + ph << "\" text-anchor=\"end\">" << num(ymin) << "</text>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << num(ymax) << "</text>\n";
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
      << xml_escape(x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << xml_escape(y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const SvgSeries& ser = series[s];
    const std::size_t m = std::min(ser.x.size(), ser.y.size());
    if (ser.line) {
      out << "<polyline fill=\"none\" stroke=\"" << ser.color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < m; ++i) out << (i ? " " : "") << num(sx(ser.x[i])) << ',' << num(sy(ser.y[i]));
      out << "\"/>\n";
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        out << "<circle cx=\"" << num(sx(ser.x[i])) << "\" cy=\"" << num(sy(ser.y[i])) << "\" r=\"3\" fill=\""
            << ser.color << "\" fill-opacity=\"0.7\"/>\n";
      }
    }
    const double ly = top + 14 + 18 * static_cast<double>(s);
    out << "<rect x=\"" << left + pw + 12 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\""
        << ser.color << "\"/>\n";
    out << "<text x=\"" << left + pw + 28 << "\" y=\"" << ly << "\">" << xml_escape(ser.name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

Dataset read_dataset_csv(const std::string& path, const ManifoldSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
  std::vector<Point> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      const std::string token = trim(std::string_view(body).substr(start, comma - start));
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw Error(Errc::InvalidArgument, where + "'" + token + "' is not a number");
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    try {
      points.push_back(validate(spec, row));
    } catch (const Error& e) {
      throw Error(e.code(), where + e.detail());
    }
  }
  if (points.empty()) throw Error(Errc::DegenerateSample, "'" + path + "' holds no data rows");
  return Dataset(spec, points);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(Errc::InvalidArgument, "failed writing '" + path + "'");
}

}  // namespace geodepth
