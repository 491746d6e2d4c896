#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace protfeat {

using Vec3 = Eigen::Vector3d;

enum class Element : std::uint8_t { C, N, O, S, H, Other };

std::string_view element_symbol(Element e);

// Element of a PQR atom name: leading digits are skipped and the first
// alphabetic character decides. Anything outside {C, N, O, S, H} is Other.
Element infer_element(std::string_view atom_name);

struct Atom {
  int serial = 0;
  std::string name;
  std::string residue_name;
  int residue_seq = 0;
  Vec3 position = Vec3::Zero();
  double charge = 0.0;  // e
  double radius = 0.0;  // Angstrom
  Element element = Element::Other;
};

struct ProteinStructure {
  std::vector<Atom> atoms;
  std::string source_path;
  std::string id;
};

ProteinStructure parse_pqr(std::istream &is, std::string id = {},
                           std::string source_path = {});
ProteinStructure parse_pqr_text(std::string_view text, std::string id = {});

// Reads a file; the id defaults to the file stem.
ProteinStructure read_pqr_file(const std::string &path);

// Writes ATOM records (coordinates with 3 decimals, charge and radius with 4).
void write_pqr(std::ostream &os, const ProteinStructure &s);

enum class AtomSelector { AllCarbon, AllHeavy, All };

std::string_view selector_name(AtomSelector sel);
AtomSelector parse_selector(std::string_view name);

bool selector_accepts(AtomSelector sel, Element e);

// Positions of the selected atoms in file order. Throws EmptySelectionError
// when nothing matches.
std::vector<Vec3> select_atoms(const ProteinStructure &s, AtomSelector sel);

}  // namespace protfeat
