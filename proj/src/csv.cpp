#include "pendkit/csv.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "pendkit/errors.hpp"

namespace pendkit {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(fields[i]);
  }
  os << '\n';
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& path, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0'))
    throw ParseError(path + ":" + std::to_string(line) + ": not a number: '" + s + "'");
  return v;
}

}  // namespace

NumericTable read_numeric_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  NumericTable tab;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line);
    if (tab.header.empty()) {
      tab.header = fields;
      continue;
    }
    if (fields.size() != tab.header.size())
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(tab.header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f, path, lineno));
    tab.rows.push_back(std::move(row));
  }
  if (tab.header.empty()) throw ParseError(path + ": missing header line");
  return tab;
}

ModelManifold tabulated_from_csv(const std::string& path) {
  NumericTable tab = read_numeric_csv(path);
  if (tab.header.size() != 2)
    throw ParseError(path + ":1: expected two columns `r,A`");
  std::vector<double> r, a;
  int lineno = 1;
  for (const auto& row : tab.rows) {
    ++lineno;
    if (!r.empty() && !(row[0] > r.back()))
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": r values must be strictly increasing");
    if (!(row[1] > 0.0))
      throw ParseError(path + ":" + std::to_string(lineno) + ": A must be positive");
    r.push_back(row[0]);
    a.push_back(row[1]);
  }
  if (r.size() < 4)
    throw ParseError(path + ": need at least 4 data rows");
  return ModelManifold::tabulated(std::move(r), std::move(a), path);
}

ProfileData profile_from_csv(const std::string& path) {
  NumericTable tab = read_numeric_csv(path);
  if (tab.header.size() != 2 && tab.header.size() != 3)
    throw ParseError(path + ":1: expected columns `r,A[,H]`");
  std::vector<double> r, a, hh;
  int lineno = 1;
  for (const auto& row : tab.rows) {
    ++lineno;
    if (!r.empty() && !(row[0] > r.back()))
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": r values must be strictly increasing");
    if (!(row[1] > 0.0))
      throw ParseError(path + ":" + std::to_string(lineno) + ": A must be positive");
    double h = row.size() == 3 ? row[2] : 0.0;
    if (h < 0.0)
      throw ParseError(path + ":" + std::to_string(lineno) + ": H must be >= 0");
    r.push_back(row[0]);
    a.push_back(row[1]);
    hh.push_back(h);
  }
  if (r.size() < 4) throw ParseError(path + ": need at least 4 data rows");
  ProfileData out{ModelManifold::tabulated(r, a, path), nullptr};
  auto rs = std::make_shared<std::vector<double>>(std::move(r));
  auto hs = std::make_shared<std::vector<double>>(std::move(hh));
  out.mean_curvature = [rs, hs](double t) {
    const auto& x = *rs;
    if (t <= x.front()) return hs->front();
    if (t >= x.back()) return hs->back();
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    double u = (t - x[i]) / (x[i + 1] - x[i]);
    return (1.0 - u) * (*hs)[i] + u * (*hs)[i + 1];
  };
  return out;
}

}  // namespace pendkit
