#include "protfeat/treecode.h"

#include <algorithm>
#include <cmath>

#include "protfeat/errors.h"
#include "protfeat/parallel.h"

namespace protfeat {
namespace {

void check_eps(double eps1) {
  if (!(eps1 > 0.0)) throw InvalidArgument("eps1 must be > 0");
}

void check_sizes(std::span<const Vec3> positions, std::span<const double> charges) {
  if (positions.size() != charges.size())
    throw InvalidArgument("positions and charges differ in length");
}

void split_atoms(std::span<const Atom> atoms, std::vector<Vec3> &pos,
                 std::vector<double> &q) {
  pos.reserve(atoms.size());
  q.reserve(atoms.size());
  for (const Atom &a : atoms) {
    pos.push_back(a.position);
    q.push_back(a.charge);
  }
}

double energy_from_potentials(std::span<const double> charges,
                              const std::vector<double> &phi) {
  double e = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) e += charges[i] * phi[i];
  return 0.5 * e;
}

}  // namespace

void taylor_coefficients(const Vec3 &R, const MultiIndexTable &terms,
                         std::vector<double> &out) {
  out.assign(terms.size(), 0.0);
  const double r2 = R.squaredNorm();
  out[0] = 1.0 / std::sqrt(r2);
  // n |R|^2 b_k = -(2n - 1) sum_i R_i b_{k - e_i} - (n - 1) sum_i b_{k - 2 e_i}
  for (std::size_t s = 1; s < terms.size(); ++s) {
    const auto &k = terms[s].k;
    const int n = k[0] + k[1] + k[2];
    double first = 0.0, second = 0.0;
    for (int d = 0; d < 3; ++d) {
      int km[3] = {k[0], k[1], k[2]};
      km[d] -= 1;
      const int s1 = terms.slot(km[0], km[1], km[2]);
      if (s1 >= 0) first += R[d] * out[static_cast<std::size_t>(s1)];
      km[d] -= 1;
      const int s2 = terms.slot(km[0], km[1], km[2]);
      if (s2 >= 0) second += out[static_cast<std::size_t>(s2)];
    }
    out[s] = -((2 * n - 1) * first + (n - 1) * second) / (n * r2);
  }
}

std::vector<double> coulomb_potentials_direct(std::span<const Vec3> positions,
                                              std::span<const double> charges) {
  check_sizes(positions, charges);
  const std::size_t n = positions.size();
  std::vector<double> phi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = (positions[i] - positions[j]).norm();
      if (r == 0.0) throw SingularityError(i, j);
      phi[i] += charges[j] / r;
      phi[j] += charges[i] / r;
    }
  }
  return phi;
}

std::vector<double> coulomb_potentials_treecode(const ClusterTree &tree,
                                                const TreecodeParams &params) {
  if (!(params.theta > 0.0 && params.theta < 1.0))
    throw InvalidArgument("theta must lie in (0, 1)");

  const auto &pos = tree.positions();
  const auto &q = tree.charges();
  const std::size_t n = pos.size();
  std::vector<double> phi(n, 0.0);

  parallel_for(n, params.threads, [&](std::size_t target) {
    const Vec3 &x = pos[target];
    std::vector<double> coeff;
    std::vector<std::size_t> stack{0};
    double acc = 0.0;

    auto direct = [&](const Cluster &c) {
      for (std::uint32_t j : c.members) {
        if (j == target) continue;
        const double r = (x - pos[j]).norm();
        if (r == 0.0)
          throw SingularityError(std::min<std::size_t>(j, target),
                                 std::max<std::size_t>(j, target));
        acc += q[j] / r;
      }
    };

    while (!stack.empty()) {
      const std::size_t flat = stack.back();
      stack.pop_back();
      const Cluster &c = tree[flat];
      if (c.empty()) continue;
      if (c.members.size() <= params.direct_max) {
        direct(c);
        continue;
      }
      const Vec3 R = c.center - x;
      const double dist = R.norm();
      if (c.half_diagonal() <= params.theta * dist) {
        taylor_coefficients(R, tree.terms(), coeff);
        double s = 0.0;
        for (std::size_t k = 0; k < coeff.size(); ++k) s += coeff[k] * c.moments[k];
        acc += s;
      } else if (tree.is_leaf(flat)) {
        direct(c);
      } else {
        for (unsigned o = 8; o-- > 0;) stack.push_back(tree.child(flat, o));
      }
    }
    phi[target] = acc;
  });
  return phi;
}

double coulomb_energy_direct(std::span<const Vec3> positions,
                             std::span<const double> charges, double eps1,
                             double unit_constant) {
  check_eps(eps1);
  const auto phi = coulomb_potentials_direct(positions, charges);
  return unit_constant / eps1 * energy_from_potentials(charges, phi);
}

double coulomb_energy_direct(std::span<const Atom> atoms, double eps1,
                             double unit_constant) {
  std::vector<Vec3> pos;
  std::vector<double> q;
  split_atoms(atoms, pos, q);
  return coulomb_energy_direct(pos, q, eps1, unit_constant);
}

double coulomb_energy_treecode(std::span<const Vec3> positions,
                               std::span<const double> charges, double eps1,
                               const TreecodeParams &params,
                               double unit_constant) {
  check_eps(eps1);
  check_sizes(positions, charges);
  if (!(params.theta > 0.0 && params.theta < 1.0))
    throw InvalidArgument("theta must lie in (0, 1)");
  const ClusterTree tree =
      ClusterTree::build(positions, charges, params.levels, params.order);
  const auto phi = coulomb_potentials_treecode(tree, params);
  return unit_constant / eps1 * energy_from_potentials(charges, phi);
}

double coulomb_energy_treecode(std::span<const Atom> atoms, double eps1,
                               const TreecodeParams &params,
                               double unit_constant) {
  std::vector<Vec3> pos;
  std::vector<double> q;
  split_atoms(atoms, pos, q);
  return coulomb_energy_treecode(pos, q, eps1, params, unit_constant);
}

}  // namespace protfeat
