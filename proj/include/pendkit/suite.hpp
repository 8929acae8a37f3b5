#pragma once

#include <vector>

#include "pendkit/model.hpp"

namespace pendkit {

/// The canonical built-in model suite used by verification sweeps:
/// Euclidean n in 2..5, hyperbolic n in 2..4, the Kaehler families with
/// small m, and power-law ends k in 0..3.
std::vector<ModelManifold> builtin_suite();

/// The hyperbolic-type members only (exponential volume growth).
std::vector<ModelManifold> hyperbolic_suite();

}  // namespace pendkit
