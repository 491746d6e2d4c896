#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "protfeat/cluster_tree.h"
#include "protfeat/structure.h"

namespace protfeat {

// Coulomb constant in kcal/mol * Angstrom / e^2.
inline constexpr double kCoulombKcalPerMol = 332.0716;

struct TreecodeParams {
  int order = 4;       // Taylor order p
  int levels = 4;      // octree depth L
  double theta = 0.5;  // accept when half-diagonal / distance <= theta
  // Clusters holding at most this many atoms are always summed directly.
  std::size_t direct_max = 8;
  unsigned threads = 1;
};

// Taylor coefficients b^k of 1/|R + h| in powers of h, for all slots of
// `terms`, where R = cluster center - target.
void taylor_coefficients(const Vec3 &R, const MultiIndexTable &terms,
                         std::vector<double> &out);

// phi_i = sum_{j != i} q_j / r_ij (no dielectric, no unit constant).
std::vector<double> coulomb_potentials_direct(std::span<const Vec3> positions,
                                              std::span<const double> charges);

std::vector<double> coulomb_potentials_treecode(const ClusterTree &tree,
                                                const TreecodeParams &params);

// C_e / eps1 * sum_{j<k} q_j q_k / r_jk.
double coulomb_energy_direct(std::span<const Vec3> positions,
                             std::span<const double> charges, double eps1,
                             double unit_constant = 1.0);
double coulomb_energy_direct(std::span<const Atom> atoms, double eps1,
                             double unit_constant = 1.0);

double coulomb_energy_treecode(std::span<const Vec3> positions,
                               std::span<const double> charges, double eps1,
                               const TreecodeParams &params,
                               double unit_constant = 1.0);
double coulomb_energy_treecode(std::span<const Atom> atoms, double eps1,
                               const TreecodeParams &params,
                               double unit_constant = 1.0);

}  // namespace protfeat
