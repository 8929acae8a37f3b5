#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "pendkit/model.hpp"

namespace pendkit {

/// RFC-4180-style field quoting: quotes only when the field needs it.
std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

/// Numeric table read: header line plus rows of comma-separated doubles.
/// Malformed input raises ParseError with the offending line number.
struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
NumericTable read_numeric_csv(const std::string& path);

/// Two-column `r,A` ingestion for tabulated geometries: strictly
/// increasing r, positive A, errors reported with line numbers.
ModelManifold tabulated_from_csv(const std::string& path);

/// Three-column `r,A,H` profile ingestion (H optional, defaults to 0).
/// Returns the geometry and a linear interpolant of |H|(r).
struct ProfileData {
  ModelManifold model;
  std::function<double(double)> mean_curvature;
};
ProfileData profile_from_csv(const std::string& path);

}  // namespace pendkit
