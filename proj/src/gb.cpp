#include "protfeat/gb.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <string>

#include "protfeat/errors.h"

namespace protfeat {
namespace {

void check_dielectrics(double eps1, double eps2) {
  if (!(eps1 > 0.0) || !(eps2 > 0.0))
    throw InvalidArgument("dielectric constants must be > 0");
}

}  // namespace

void GBContext::validate() const {
  check_dielectrics(eps1, eps2);
  for (std::size_t i = 0; i < born_radii.size(); ++i) {
    if (!(born_radii[i] > 0.0))
      throw InvalidArgument("Born radius " + std::to_string(i) + " must be > 0");
  }
}

double born_sphere_energy(double q, double a, double eps1, double eps2,
                          double unit_constant) {
  if (!(a > 0.0)) throw InvalidArgument("sphere radius must be > 0");
  check_dielectrics(eps1, eps2);
  return unit_constant * (1.0 / eps2 - 1.0 / eps1) * q * q / (2.0 * a);
}

double f_gb(double r, double Ri, double Rj) {
  if (!(Ri > 0.0) || !(Rj > 0.0)) throw InvalidArgument("Born radii must be > 0");
  if (!(r >= 0.0)) throw InvalidArgument("distance must be >= 0");
  const double rr = Ri * Rj;
  return std::sqrt(r * r + rr * std::exp(-r * r / (4.0 * rr)));
}

double gb_solvation_energy(std::span<const Atom> atoms, const GBContext &ctx) {
  ctx.validate();
  if (ctx.born_radii.size() != atoms.size()) {
    throw InvalidArgument("got " + std::to_string(ctx.born_radii.size())
                          + " Born radii for " + std::to_string(atoms.size())
                          + " atoms");
  }
  const auto &R = ctx.born_radii;
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    sum += atoms[i].charge * atoms[i].charge / R[i];
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const double r = (atoms[i].position - atoms[j].position).norm();
      sum += 2.0 * atoms[i].charge * atoms[j].charge / f_gb(r, R[i], R[j]);
    }
  }
  return 0.5 * ctx.unit_constant * (1.0 / ctx.eps2 - 1.0 / ctx.eps1) * sum;
}

std::vector<double> gb_self_energies(std::span<const Atom> atoms,
                                     const GBContext &ctx) {
  ctx.validate();
  if (ctx.born_radii.size() != atoms.size())
    throw InvalidArgument("Born radius count does not match atom count");
  std::vector<double> out(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i)
    out[i] = born_sphere_energy(atoms[i].charge, ctx.born_radii[i], ctx.eps1,
                                ctx.eps2, ctx.unit_constant);
  return out;
}

double perfect_born_radius(double q, double single_energy, double eps1,
                           double eps2, double unit_constant) {
  check_dielectrics(eps1, eps2);
  if (single_energy == 0.0)
    throw InvalidArgument("single-charge solvation energy must be nonzero");
  return unit_constant * (1.0 / eps2 - 1.0 / eps1) * q * q / (2.0 * single_energy);
}

std::vector<double> read_born_radii(std::istream &is) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e + 1, v);
    if (ec != std::errc() || ptr != line.data() + e + 1)
      throw ParseError(lineno, "malformed Born radius '" + line + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace protfeat
