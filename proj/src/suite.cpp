#include "pendkit/suite.hpp"

namespace pendkit {

std::vector<ModelManifold> builtin_suite() {
  std::vector<ModelManifold> s;
  for (int n = 2; n <= 5; ++n) s.push_back(ModelManifold::euclidean(n));
  for (int n = 2; n <= 4; ++n) s.push_back(ModelManifold::hyperbolic(n));
  for (int m = 1; m <= 2; ++m) s.push_back(ModelManifold::complex_hyperbolic(m));
  for (int m = 1; m <= 2; ++m) s.push_back(ModelManifold::quaternionic_hyperbolic(m));
  for (int k = 0; k <= 3; ++k) s.push_back(ModelManifold::polynomial(k));
  return s;
}

std::vector<ModelManifold> hyperbolic_suite() {
  std::vector<ModelManifold> s;
  for (int n = 2; n <= 4; ++n) s.push_back(ModelManifold::hyperbolic(n));
  for (int m = 1; m <= 2; ++m) s.push_back(ModelManifold::complex_hyperbolic(m));
  for (int m = 1; m <= 2; ++m) s.push_back(ModelManifold::quaternionic_hyperbolic(m));
  return s;
}

}  // namespace pendkit
