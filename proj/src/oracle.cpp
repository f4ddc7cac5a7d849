#include "equiweyl/oracle.hpp"

#include <cmath>
#include <numbers>

#include "equiweyl/errors.hpp"

namespace equiweyl {

namespace {

/// Signed action of g on a sine-product mode (j, k) about the square center:
/// a reflected coordinate sends psi_m to (-1)^{m+1} psi_m, a swap exchanges
/// the indices.  Returns false unless g fixes the index pair.
bool mode_fixed_sign(const OrthogonalElement& g, int j, int k, int& sign) {
  const Eigen::MatrixXi inv = g.matrix.transpose();  // matrix of g^{-1}
  int m[2] = {j, k};
  int out[2] = {0, 0};
  sign = 1;
  for (int i = 0; i < 2; ++i) {
    for (int l = 0; l < 2; ++l) {
      int s = inv(i, l);
      if (s != 0) {
        out[l] = m[i];
        if (s < 0 && m[i] % 2 == 0) sign = -sign;  // (-1)^{m+1}
      }
    }
  }
  return out[0] == j && out[1] == k;
}

}  // namespace

ContinuumSquareCounts continuum_square_counts(const FiniteGroup& group,
                                              const CharacterTable& table, double side,
                                              double lambda) {
  using std::numbers::pi;
  if (group.dim() != 2) throw OracleUnavailable("continuum square oracle needs dimension 2");
  if (side <= 0.0) throw OracleUnavailable("square side must be positive");

  const double unit = pi * pi / (side * side);
  const int jmax = lambda > unit ? static_cast<int>(std::floor(std::sqrt(lambda / unit))) : 0;
  const int order = group.size();

  ContinuumSquareCounts counts;
  counts.per_chi.assign(table.num_irreps(), 0.0);

  for (int j = 1; j <= jmax; ++j) {
    for (int k = 1; k <= jmax; ++k) {
      if (unit * (j * j + k * k) > lambda) break;
      counts.total += 1.0;
      for (int g = 0; g < order; ++g) {
        int sign = 0;
        if (!mode_fixed_sign(group.elements[g], j, k, sign)) continue;
        for (int chi = 0; chi < table.num_irreps(); ++chi) {
          double w = (std::conj(table.value(chi, g)) * static_cast<double>(sign)).real();
          counts.per_chi[chi] += table.dims[chi] * w / order;
        }
      }
    }
  }
  return counts;
}

}  // namespace equiweyl
