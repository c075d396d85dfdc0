#ifndef STRATAL_SPACEFILE_HPP
#define STRATAL_SPACEFILE_HPP

#include <map>
#include <string>

#include "stratal/perverse.hpp"

namespace stratal {

/// A sheaf read from a space file, tagged with the stratum it lives on
/// ("X", "X0" or "S").
struct ParsedSheaf {
    std::string carrier;
    Sheaf sheaf;
};

/// Contents of a space file: the stratified poset, named closed-set
/// candidates, and named sheaves. All invariants are validated at load time.
struct ParsedSpace {
    StratifiedSpace strat;
    std::map<std::string, Subspace> closed_sets;
    std::map<std::string, ParsedSheaf> sheaves;
    std::string digest;  // content hash, stable across runs
};

/// Line-oriented format:
///   [poset]           elements: ... / relations: x<y ...
///   [strata]          S: ... / d: 0 / c: 1
///   [closed NAME]     members: ...
///   [sheaf NAME]      on: X0 / stalks: a=1 ... / map x<y: [[..],[..]]
/// '#' starts a comment. Relations are closed transitively by the loader.
ParsedSpace parse_space_file(const std::string& text);

ParsedSpace load_space_file(const std::string& path);

/// The built-in two-strata disk model, equal to fixtures/disk.space.
ParsedSpace builtin_disk_space();

Matrix parse_matrix_literal(const std::string& text, int rows, int cols);
std::string matrix_to_string(const Matrix& m);

uint64_t fnv1a(const std::string& data);

}  // namespace stratal

#endif
