#pragma once

#include <span>
#include <vector>

#include "protfeat/structure.h"

namespace protfeat {

// Solute/solvent dielectrics, effective Born radii (one per atom, Angstrom)
// and the energy unit constant.
struct GBContext {
  double eps1 = 1.0;
  double eps2 = 80.0;
  std::vector<double> born_radii;
  double unit_constant = 1.0;

  void validate() const;
};

// Born energy of a charge q centered in a sphere of radius a:
// C_e (1/eps2 - 1/eps1) q^2 / (2a).
double born_sphere_energy(double q, double a, double eps1, double eps2,
                          double unit_constant = 1.0);

// Effective GB interaction distance sqrt(r^2 + Ri Rj exp(-r^2 / (4 Ri Rj))).
double f_gb(double r, double Ri, double Rj);

// (C_e / 2)(1/eps2 - 1/eps1) sum_i sum_j q_i q_j / f_ij over all ordered
// pairs, diagonal included (f_ii = R_i).
double gb_solvation_energy(std::span<const Atom> atoms, const GBContext &ctx);

// Diagonal (self) terms of gb_solvation_energy, one per atom.
std::vector<double> gb_self_energies(std::span<const Atom> atoms, const GBContext &ctx);

// Radius for which born_sphere_energy reproduces `single_energy`.
double perfect_born_radius(double q, double single_energy, double eps1,
                           double eps2, double unit_constant = 1.0);

// One radius per non-blank line.
std::vector<double> read_born_radii(std::istream &is);

}  // namespace protfeat
