#include "smigan/smiles.hpp"

#include "smigan/valence.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace smigan {

namespace {

const std::unordered_set<std::string>& element_table() {
  static const std::unordered_set<std::string> table = {
      "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
      "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
      "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
      "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
      "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
      "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
      "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
      "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu"};
  return table;
}

struct RingOpening {
  int atom = -1;
  std::optional<BondOrder> order;
  BondDir dir = BondDir::None;
  std::size_t offset = 0;
};

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  MolGraph mol;
  std::optional<Diagnostic> error;

  // parse state
  int prev_atom = -1;
  std::optional<BondOrder> pending_order;
  BondDir pending_dir = BondDir::None;
  std::size_t pending_bond_offset = 0;
  std::vector<std::pair<int, std::size_t>> branch_stack;  // (prev atom, '(' offset)
  std::map<int, RingOpening> open_rings;
  std::set<std::pair<int, int>> bond_keys;

  bool fail(std::size_t offset, std::string message) {
    if (!error) error = Diagnostic{offset, std::move(message)};
    return false;
  }

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  bool at_end() const { return pos >= text.size(); }

  bool add_bond(int a, int b, BondOrder order, BondDir dir, std::size_t offset) {
    if (a == b) return fail(offset, "ring closure bonds an atom to itself");
    auto key = std::minmax(a, b);
    if (!bond_keys.insert({key.first, key.second}).second)
      return fail(offset, "duplicate bond between the same atom pair");
    mol.bonds.push_back(Bond{a, b, order, dir});
    return true;
  }

  BondOrder default_order(int a, int b) const {
    return (mol.atoms[a].aromatic && mol.atoms[b].aromatic) ? BondOrder::Aromatic
                                                            : BondOrder::Single;
  }

  bool attach_atom(int idx, std::size_t offset) {
    if (prev_atom >= 0) {
      BondOrder order = pending_order ? *pending_order : default_order(prev_atom, idx);
      if (!add_bond(prev_atom, idx, order, pending_dir, offset)) return false;
    } else if (pending_order || pending_dir != BondDir::None) {
      return fail(pending_bond_offset, "bond symbol with no preceding atom");
    }
    pending_order.reset();
    pending_dir = BondDir::None;
    prev_atom = idx;
    return true;
  }

  bool parse_ring_closure(int digit, std::size_t offset) {
    if (prev_atom < 0) return fail(offset, "ring closure before any atom");
    auto it = open_rings.find(digit);
    if (it == open_rings.end()) {
      open_rings[digit] = RingOpening{prev_atom, pending_order, pending_dir, offset};
    } else {
      RingOpening open = it->second;
      open_rings.erase(it);
      std::optional<BondOrder> order;
      if (open.order && pending_order) {
        if (*open.order != *pending_order)
          return fail(offset, "conflicting bond orders on ring closure");
        order = *open.order;
      } else if (open.order) {
        order = *open.order;
      } else if (pending_order) {
        order = *pending_order;
      }
      BondDir dir = pending_dir != BondDir::None ? pending_dir : open.dir;
      BondOrder o = order ? *order : default_order(open.atom, prev_atom);
      if (!add_bond(open.atom, prev_atom, o, dir, offset)) return false;
    }
    pending_order.reset();
    pending_dir = BondDir::None;
    return true;
  }

  // Organic-subset atom outside brackets. Two-letter Cl/Br take priority.
  bool parse_organic_atom(std::size_t offset) {
    char c = text[pos];
    std::string element;
    bool aromatic = false;
    if (c == 'C' && pos + 1 < text.size() && text[pos + 1] == 'l') {
      element = "Cl";
      pos += 2;
    } else if (c == 'B' && pos + 1 < text.size() && text[pos + 1] == 'r') {
      element = "Br";
      pos += 2;
    } else if (c == 'B' || c == 'C' || c == 'N' || c == 'O' || c == 'P' || c == 'S' ||
               c == 'F' || c == 'I') {
      element = std::string(1, c);
      ++pos;
    } else if (c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's') {
      element = std::string(1, static_cast<char>(std::toupper(c)));
      aromatic = true;
      ++pos;
    } else {
      return fail(offset, std::string("unexpected character '") + c + "'");
    }
    Atom atom;
    atom.element = element;
    atom.aromatic = aromatic;
    atom.src_offset = offset;
    mol.atoms.push_back(atom);
    return attach_atom(static_cast<int>(mol.atoms.size()) - 1, offset);
  }

  bool parse_unsigned(int& out) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) return false;
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 999) v = 999;
      ++pos;
    }
    out = static_cast<int>(v);
    return true;
  }

  bool parse_bracket_atom(std::size_t offset) {
    ++pos;  // consume '['
    Atom atom;
    atom.src_offset = offset;
    atom.explicit_h = 0;  // brackets always pin the hydrogen count

    int isotope = 0;
    if (parse_unsigned(isotope)) {
      if (isotope <= 0) return fail(offset, "malformed bracket atom: isotope must be positive");
      atom.isotope = isotope;
    }

    char c = peek();
    if (c == '\0') return fail(offset, "malformed bracket atom: unterminated '['");
    bool aromatic = false;
    std::string element;
    if (std::islower(static_cast<unsigned char>(c))) {
      element = std::string(1, static_cast<char>(std::toupper(c)));
      aromatic = true;
      ++pos;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      element = std::string(1, c);
      ++pos;
      if (std::islower(static_cast<unsigned char>(peek()))) {
        std::string two = element + text[pos];
        if (element_table().count(two)) {
          element = two;
          ++pos;
        }
      }
    } else {
      return fail(pos, "malformed bracket atom: expected element symbol");
    }
    if (!element_table().count(element))
      return fail(offset, "unknown element '" + element + "'");
    if (aromatic && !is_aromatic_capable(element))
      return fail(offset, "element '" + element + "' cannot be aromatic");
    atom.element = element;
    atom.aromatic = aromatic;

    if (peek() == '@') {
      ++pos;
      if (peek() == '@') {
        atom.chirality = Chirality::Clockwise;
        ++pos;
      } else {
        atom.chirality = Chirality::Anticlockwise;
      }
    }
    if (peek() == 'H') {
      ++pos;
      int count = 1;
      parse_unsigned(count);
      atom.explicit_h = count;
    }
    if (peek() == '+' || peek() == '-') {
      int sign = peek() == '+' ? 1 : -1;
      ++pos;
      int magnitude = 1;
      if (!parse_unsigned(magnitude)) {
        magnitude = 1;
        while (peek() == (sign > 0 ? '+' : '-')) {
          ++magnitude;
          ++pos;
        }
      }
      atom.charge = sign * magnitude;
    }
    if (peek() != ']')
      return fail(pos, at_end() ? "malformed bracket atom: unterminated '['"
                                : "malformed bracket atom: unexpected content");
    ++pos;
    mol.atoms.push_back(atom);
    return attach_atom(static_cast<int>(mol.atoms.size()) - 1, offset);
  }

  bool run() {
    if (text.empty()) return fail(0, "empty input");
    while (!at_end()) {
      std::size_t offset = pos;
      char c = text[pos];
      if (c == '(') {
        if (prev_atom < 0) return fail(offset, "branch with no preceding atom");
        if (pending_order || pending_dir != BondDir::None)
          return fail(pending_bond_offset, "bond symbol before '('");
        branch_stack.emplace_back(prev_atom, offset);
        ++pos;
      } else if (c == ')') {
        if (branch_stack.empty()) return fail(offset, "unmatched ')'");
        if (pending_order || pending_dir != BondDir::None)
          return fail(pending_bond_offset, "dangling bond symbol");
        prev_atom = branch_stack.back().first;
        branch_stack.pop_back();
        ++pos;
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\') {
        if (pending_order || pending_dir != BondDir::None)
          return fail(offset, "two bond symbols in a row");
        pending_bond_offset = offset;
        switch (c) {
          case '-': pending_order = BondOrder::Single; break;
          case '=': pending_order = BondOrder::Double; break;
          case '#': pending_order = BondOrder::Triple; break;
          case ':': pending_order = BondOrder::Aromatic; break;
          case '/':
            pending_order = BondOrder::Single;
            pending_dir = BondDir::Up;
            break;
          case '\\':
            pending_order = BondOrder::Single;
            pending_dir = BondDir::Down;
            break;
        }
        ++pos;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos;
        if (!parse_ring_closure(c - '0', offset)) return false;
      } else if (c == '%') {
        // %nn requires exactly two digits
        if (pos + 2 < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[pos + 1])) &&
            std::isdigit(static_cast<unsigned char>(text[pos + 2]))) {
          int digit = (text[pos + 1] - '0') * 10 + (text[pos + 2] - '0');
          pos += 3;
          if (!parse_ring_closure(digit, offset)) return false;
        } else {
          return fail(offset, "'%' must be followed by two digits");
        }
      } else if (c == '.') {
        if (pending_order || pending_dir != BondDir::None)
          return fail(pending_bond_offset, "dangling bond symbol before '.'");
        if (prev_atom < 0) return fail(offset, "'.' with no preceding atom");
        if (!branch_stack.empty()) return fail(offset, "'.' inside a branch");
        prev_atom = -1;
        ++pos;
      } else if (c == '[') {
        if (!parse_bracket_atom(offset)) return false;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        return fail(offset, "whitespace inside SMILES");
      } else {
        if (!parse_organic_atom(offset)) return false;
      }
    }
    if (!branch_stack.empty())
      return fail(branch_stack.back().second, "unclosed branch");
    if (!open_rings.empty())
      return fail(open_rings.begin()->second.offset, "unmatched ring-closure digit");
    if (pending_order || pending_dir != BondDir::None)
      return fail(pending_bond_offset, "dangling bond symbol at end of input");
    if (mol.atoms.empty()) return fail(0, "no atoms");
    return true;
  }
};

}  // namespace

int MolGraph::heavy_atom_count() const {
  int n = 0;
  for (const auto& a : atoms)
    if (a.element != "H") ++n;
  return n;
}

Adjacency build_adjacency(const MolGraph& g) {
  Adjacency adj(g.atoms.size());
  for (int i = 0; i < static_cast<int>(g.bonds.size()); ++i) {
    adj[g.bonds[i].a].emplace_back(g.bonds[i].b, i);
    adj[g.bonds[i].b].emplace_back(g.bonds[i].a, i);
  }
  return adj;
}

bool is_organic_subset_element(std::string_view element) {
  return element == "B" || element == "C" || element == "N" || element == "O" ||
         element == "P" || element == "S" || element == "F" || element == "Cl" ||
         element == "Br" || element == "I";
}

bool is_aromatic_capable(std::string_view element) {
  return element == "B" || element == "C" || element == "N" || element == "O" ||
         element == "P" || element == "S";
}

bool is_known_element(std::string_view element) {
  return element_table().count(std::string(element)) > 0;
}

ParseResult parse_smiles(std::string_view text) {
  Parser parser;
  parser.text = text;
  parser.mol.source_text = std::string(text);
  if (!parser.run()) return *parser.error;
  return std::move(parser.mol);
}

bool is_valid(std::string_view text) {
  auto result = parse_smiles(text);
  const auto* mol = std::get_if<MolGraph>(&result);
  if (!mol) return false;
  return check_valence(*mol).empty();
}

}  // namespace smigan
