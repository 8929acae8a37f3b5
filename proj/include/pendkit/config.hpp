#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pendkit {

/// One batch run: a command plus everything it needs.  Populated from a
/// flat key=value config file (section headers allowed) and overridden by
/// CLI flags; identical configs produce byte-identical output.
struct ExperimentConfig {
  std::string command;  // classify | capacity | eigen | bounds | verify | table

  // model selection
  std::string kind = "euclidean";  // euclidean|hyperbolic|ch|qh|poly|csv
  int dim = 3;
  int m = 1;
  double k = 2.0;
  double r_min = 0.0;
  std::string csv_path;

  // operation parameters
  double p = 2.0;
  double q = 2.0;
  double r0 = 1.0;
  double r1 = 2.0;
  double R = 2.0;  // +inf allowed ("inf" in configs)
  std::vector<double> R_list = {10.0, 20.0, 40.0};
  double r_max = 40.0;
  std::vector<double> r_list;
  int m_sub = 3;
  double S = 1.0;
  std::uint64_t seed = 0;
  int family_size = 16;

  // sweep selection
  std::string suite = "caccioppoli";  // caccioppoli|exhaustion|sobolev|immersed
  std::string profile = "minimal";    // minimal|cone|cylinder|csv
  std::string family = "both";        // ch|qh|both
  std::vector<int> m_list = {1, 2, 3};
  std::vector<double> p_list = {1.5, 2.0, 3.0};

  std::string output;  // empty = stdout
  int threads = 0;     // 0 = PENDKIT_THREADS or hardware
};

/// Reads `key = value` lines; `[section]` headers group keys cosmetically;
/// `#` starts a comment.  Unknown keys and bad values raise ParseError
/// with file:line.
ExperimentConfig parse_config_file(const std::string& path);

/// Applies one key=value pair; `where` prefixes error messages.
void apply_config_value(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value, const std::string& where);

/// Deterministic serialization of every field, for provenance headers.
std::string canonical_config(const ExperimentConfig& cfg);

std::uint64_t fnv1a64(const std::string& s);

}  // namespace pendkit
