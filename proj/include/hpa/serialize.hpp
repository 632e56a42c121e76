#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hpa/algebra.hpp"
#include "hpa/invariants.hpp"
#include "hpa/morse.hpp"
#include "hpa/realization.hpp"
#include "hpa/resolution.hpp"
#include "hpa/toric.hpp"

namespace hpa {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits are numbers, larger ones decimal strings.
Json to_json(const BigInt& n);

Json quiver_json(const Quiver& q);

/// Class table: canonical word, endpoints, length and member words.
Json algebra_json(const Hpa& a);

Json check_json(const Hpa& a, const HpaReport& r);

/// {"H0": [rank, [torsion...]], ...}
Json homology_json(const std::vector<HomologyGroup>& groups);

/// Counts, χ, boundary matrices as sparse (row, col, value) triples and
/// optionally the cell list.
Json realization_json(const CellComplex& x, const ChainComplex& chains, bool with_cells);

/// Generators and differential terms, restricted to one degree when
/// `degree` >= 0.
Json bimodule_json(const BimoduleComplex& c, int degree = -1);

Json matching_json(const Matching& m);

/// Gradient paths from every critical cell, one entry per path.
Json gradient_audit_json(const BimoduleComplex& c, const Matching& m);

Json betti_json(const Hpa& a, const BettiTable& t);
std::string betti_csv(const Hpa& a, const BettiTable& t);

Json koszul_json(const KoszulVerdict& v);

Json degree_json(const Degree& d);
Json toric_json(const ToricHpa& t);

/// {"free": [[...]], "torsion": [{"mod": m, "row": [...]}]}; a bare array
/// is read as the free part alone.
WeightData weight_data_from_json(const Json& j);

/// Degrees as arrays of free coordinates or {"free": [...], "torsion": [...]}.
std::vector<Degree> degrees_from_json(const Json& j, const WeightData& w);

/// Pairs from {"pairs": [{"top": [...], "bottom": [...]}, ...]} or a bare
/// list of [top, bottom] arrays; chains are lists of words.
std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> matching_pairs_from_json(const Json& j);

/// Parses a JSON file; I/O and syntax failures raise hpa::Error.
Json load_json_file(const std::string& path);

}  // namespace hpa
