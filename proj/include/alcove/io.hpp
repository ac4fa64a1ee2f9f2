#ifndef ALCOVE_IO_HPP
#define ALCOVE_IO_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alcove/descent.hpp"

namespace alcove {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutFormat { table, csv, json };
OutFormat parse_format(const std::string& s);  // throws IoError on unknown names

// A flat report: named scalars in a fixed order plus one rectangular table.
// Rendering is canonical in every format, so identical reports are
// byte-identical.
struct Report {
    std::vector<std::pair<std::string, std::string>> scalars;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};
std::string render_report(const Report& r, OutFormat f);

// Reduced words over the finite simple reflections: "e" or "s1 s2 s1".
int parse_weyl_word(const RootDatum& d, const std::string& word);
std::string weyl_word_str(const RootDatum& d, int w);

// Equivariant module files. Schema: name, nvars, generator_degrees, action
// as a list of {word, matrix} entries covering W, optional resolution with
// terms (nested modules) and differentials. Polynomials are sparse term
// lists [[exponents...], "coefficient"]. Errors carry line or field paths.
EquivariantModule load_module_json(const std::string& path, const RootDatum& d);
void save_module_json(const EquivariantModule& m, const RootDatum& d, const std::string& path);

// Lattice basis files: {"basis": [[rationals...], ...]}, rows in root
// coordinates.
RatMat load_lattice_json(const std::string& path);

}  // namespace alcove

#endif
