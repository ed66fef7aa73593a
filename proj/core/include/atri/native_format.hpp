#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atri/angles.hpp"
#include "atri/triangulation.hpp"

namespace atri
{

/** @brief A parsed input file: the triangulation plus any peripheral curves it names */
struct NativeDocument {
    Triangulation triangulation;
    /** Indexed by cusp; empty entries mean no curves were supplied */
    std::vector<std::optional<PeripheralPair>> peripheral;
};

/**
 * @brief Parse a line-oriented triangulation document
 *
 * Grammar:
 *
 *     atri 1
 *     name <label>                     (optional)
 *     tetrahedra <n>
 *     tet <i>: <nbr> <perm> x4
 *     peripheral <c> meridian|longitude: (<tet>,<v>,<enter>,<exit>) ...
 *
 * '#' starts a comment. Throws SyntaxError for grammar violations and the
 * triangulation or curve errors for invalid content.
 */
NativeDocument parse_document(std::string_view text);

Triangulation parse_triangulation(std::string_view text);

NativeDocument read_document(const std::string& path);

}  // namespace atri
