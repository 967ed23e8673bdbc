#include "qcduality/operator.hpp"

namespace qcd {

Basis::Basis(int rank, int num_sites) : n(rank), sites(num_sites), dim(1) {
  if (rank < 1 || num_sites < 1) throw error("basis needs n >= 1 and N >= 1");
  for (int j = 0; j < num_sites; ++j) {
    stride.push_back(dim);
    dim *= static_cast<std::size_t>(rank);
  }
}

std::vector<int> Basis::weights(std::size_t state) const {
  std::vector<int> m(n, 0);
  for (int j = 0; j < sites; ++j) ++m[digit(state, j)];
  return m;
}

}  // namespace qcd
