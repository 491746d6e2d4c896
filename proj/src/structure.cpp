#include "protfeat/structure.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "protfeat/errors.h"

namespace protfeat {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line, const char *field) {
  T value{};
  const char *first = tok.data();
  const char *last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, std::string("malformed ") + field + " '"
                               + std::string(tok) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value))
      throw ParseError(line, std::string("non-finite ") + field);
  }
  return value;
}

bool is_record(std::string_view tag) {
  return tag == "ATOM" || tag == "HETATM";
}

}  // namespace

std::string_view element_symbol(Element e) {
  switch (e) {
    case Element::C: return "C";
    case Element::N: return "N";
    case Element::O: return "O";
    case Element::S: return "S";
    case Element::H: return "H";
    case Element::Other: break;
  }
  return "X";
}

Element infer_element(std::string_view atom_name) {
  for (char c : atom_name) {
    if (std::isdigit(static_cast<unsigned char>(c))) continue;
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'C': return Element::C;
      case 'N': return Element::N;
      case 'O': return Element::O;
      case 'S': return Element::S;
      case 'H': return Element::H;
      default: return Element::Other;
    }
  }
  return Element::Other;
}

ProteinStructure parse_pqr(std::istream &is, std::string id,
                           std::string source_path) {
  ProteinStructure s;
  s.id = std::move(id);
  s.source_path = std::move(source_path);

  std::unordered_set<int> serials;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty() || !is_record(tok[0])) continue;
    if (tok.size() != 10 && tok.size() != 11) {
      throw ParseError(lineno, "expected 10 or 11 fields, got "
                                   + std::to_string(tok.size()));
    }
    // 11 fields: chain id between residue name and residue number.
    const std::size_t off = tok.size() == 11 ? 1 : 0;

    Atom a;
    a.serial = parse_number<int>(tok[1], lineno, "serial");
    a.name = std::string(tok[2]);
    a.residue_name = std::string(tok[3]);
    a.residue_seq = parse_number<int>(tok[4 + off], lineno, "residue number");
    a.position = Vec3(parse_number<double>(tok[5 + off], lineno, "x"),
                      parse_number<double>(tok[6 + off], lineno, "y"),
                      parse_number<double>(tok[7 + off], lineno, "z"));
    a.charge = parse_number<double>(tok[8 + off], lineno, "charge");
    a.radius = parse_number<double>(tok[9 + off], lineno, "radius");
    if (a.radius < 0.0) throw ParseError(lineno, "negative radius");
    a.element = infer_element(a.name);

    if (!serials.insert(a.serial).second) {
      throw DuplicateIdError("line " + std::to_string(lineno)
                             + ": duplicate atom serial "
                             + std::to_string(a.serial));
    }
    s.atoms.push_back(std::move(a));
  }

  if (s.atoms.empty()) {
    throw EmptyStructureError("no ATOM/HETATM records"
                              + (s.source_path.empty()
                                     ? std::string()
                                     : " in " + s.source_path));
  }
  return s;
}

ProteinStructure parse_pqr_text(std::string_view text, std::string id) {
  std::istringstream is{std::string(text)};
  return parse_pqr(is, std::move(id));
}

ProteinStructure read_pqr_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_pqr(in, std::filesystem::path(path).stem().string(), path);
}

void write_pqr(std::ostream &os, const ProteinStructure &s) {
  char buf[160];
  for (const Atom &a : s.atoms) {
    std::snprintf(buf, sizeof buf, "ATOM %6d %-4s %-4s %5d %9.3f %9.3f %9.3f %8.4f %7.4f\n",
                  a.serial, a.name.c_str(), a.residue_name.c_str(),
                  a.residue_seq, a.position.x(), a.position.y(),
                  a.position.z(), a.charge, a.radius);
    os << buf;
  }
  os << "END\n";
}

std::string_view selector_name(AtomSelector sel) {
  switch (sel) {
    case AtomSelector::AllCarbon: return "carbon";
    case AtomSelector::AllHeavy: return "heavy";
    case AtomSelector::All: return "all";
  }
  return "?";
}

AtomSelector parse_selector(std::string_view name) {
  if (name == "carbon") return AtomSelector::AllCarbon;
  if (name == "heavy") return AtomSelector::AllHeavy;
  if (name == "all") return AtomSelector::All;
  throw InvalidArgument("unknown atom selector '" + std::string(name) + "'");
}

bool selector_accepts(AtomSelector sel, Element e) {
  switch (sel) {
    case AtomSelector::AllCarbon: return e == Element::C;
    case AtomSelector::AllHeavy:
      return e == Element::C || e == Element::N || e == Element::O
             || e == Element::S;
    case AtomSelector::All: return true;
  }
  return false;
}

std::vector<Vec3> select_atoms(const ProteinStructure &s, AtomSelector sel) {
  std::vector<Vec3> out;
  for (const Atom &a : s.atoms)
    if (selector_accepts(sel, a.element)) out.push_back(a.position);
  if (out.empty()) {
    throw EmptySelectionError("selection '" + std::string(selector_name(sel))
                              + "' is empty for structure '" + s.id + "'");
  }
  return out;
}

}  // namespace protfeat
