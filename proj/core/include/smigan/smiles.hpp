#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace smigan {

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

// Directional single bonds ('/' and '\') are recorded but do not affect
// validity or canonical output.
enum class BondDir : std::uint8_t { None, Up, Down };

enum class Chirality : std::uint8_t { None, Anticlockwise, Clockwise };

struct Atom {
  std::string element;              // "C", "Cl", "Br", ...
  int charge = 0;
  std::optional<int> explicit_h;    // always set for bracket atoms (0 when omitted)
  std::optional<int> isotope;
  bool aromatic = false;
  Chirality chirality = Chirality::None;
  std::size_t src_offset = 0;       // byte offset of the atom in the source text
};

struct Bond {
  int a = 0;
  int b = 0;                        // a != b, both valid atom indices
  BondOrder order = BondOrder::Single;
  BondDir dir = BondDir::None;
};

struct MolGraph {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::string source_text;

  int heavy_atom_count() const;
};

struct Diagnostic {
  std::size_t offset = 0;           // byte offset within the input string
  std::string message;
};

// (neighbor atom index, bond index) lists per atom.
using Adjacency = std::vector<std::vector<std::pair<int, int>>>;
Adjacency build_adjacency(const MolGraph& g);

using ParseResult = std::variant<MolGraph, Diagnostic>;

/// Parses a SMILES string into a molecular graph. Supports branches,
/// ring-closure digits (incl. %nn), bond symbols, bracket atoms with
/// isotope/chirality/H-count/charge, and '.'-separated components.
ParseResult parse_smiles(std::string_view text);

/// True iff the string parses and passes all valence checks.
bool is_valid(std::string_view text);

/// Emits the graph as SMILES in input atom order. For a unique spelling
/// use canonicalize().
std::string write_smiles(const MolGraph& g);

bool is_organic_subset_element(std::string_view element);
bool is_aromatic_capable(std::string_view element);
bool is_known_element(std::string_view element);

}  // namespace smigan
