#pragma once

#include <string>
#include <string_view>

#include "hpa/quiver.hpp"

namespace hpa {

/// A parsed quiver document.
///
/// Grammar (line oriented, `#` starts a comment):
///
///     vertices: v0 v1 v2
///     arrows:
///       x: v0 -> v1
///       y: v0 -> v1
///     relations:
///       x y' = y x'
///
/// Section bodies may start on the header line. Each relation line is one
/// group `word = word (= word)*`; words are whitespace-separated arrow labels
/// in concatenation order.
struct QuiverDocument {
    Quiver quiver;
    RelationSet relations;
};

/// Throws ParseError (with line/column) on malformed input, unknown vertices
/// or arrows, non-composable words, mismatched endpoints, and words shared
/// between groups.
QuiverDocument parse_quiver(std::string_view text);

/// Inverse of parse_quiver: parse_quiver(emit_quiver(q, r)) reproduces q, r.
std::string emit_quiver(const Quiver& q, const RelationSet& relations);

/// Reads a file and parses it; I/O failures raise hpa::Error.
QuiverDocument load_quiver_file(const std::string& path);

}  // namespace hpa
