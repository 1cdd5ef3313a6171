#include "qss/sym3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qss/numeric.hpp"

namespace qss {

std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& m,
                                       const NumericPolicy& policy) {
  const double sym_tol = policy.symmetry;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(m[i][j] - m[j][i]) > sym_tol)
        throw std::invalid_argument("sym3_eigenvalues expects a symmetric matrix");

  std::array<std::array<double, 3>, 3> a = m;
  // Symmetrize exactly so the sweeps operate on one consistent off-diagonal.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double avg = 0.5 * (a[i][j] + a[j][i]);
      a[i][j] = a[j][i] = avg;
    }

  const double conv = policy.jacobi_convergence;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) off += a[i][j] * a[i][j];
    if (std::sqrt(off) < conv) break;

    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a[p][p], aqq = a[q][q], apq = a[p][q];
        a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        a[p][q] = a[q][p] = 0.0;
        for (int k = 0; k < 3; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = a[p][k] = c * akp - s * akq;
          a[k][q] = a[q][k] = s * akp + c * akq;
        }
      }
    }
  }

  std::array<double, 3> eig{a[0][0], a[1][1], a[2][2]};
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

}  // namespace qss
