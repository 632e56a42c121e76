#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hpa/realization.hpp"
#include "hpa/report.hpp"
#include "hpa/resolution.hpp"

namespace hpa {

struct CellRef {
    std::size_t dim = 0;
    std::size_t index = 0;
    friend auto operator<=>(const CellRef&, const CellRef&) = default;
    friend bool operator==(const CellRef&, const CellRef&) = default;
};

/// A pair (top k-cell, bottom (k-1)-cell).
struct MatchedPair {
    std::size_t dim = 0;  ///< dimension of the top cell
    std::size_t top = 0;
    std::size_t bottom = 0;
};

/// A matching on the cells of a complex: a set of disjoint face pairs.
class Matching {
public:
    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    Matching() = default;
    explicit Matching(const CellComplex& x);

    /// Throws Error if bottom is not a face of top or either cell is taken.
    void add(std::size_t dim, std::size_t top, std::size_t bottom);

    const std::vector<MatchedPair>& pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }

    /// The matched coface of a cell, or none.
    std::size_t up(std::size_t dim, std::size_t index) const;
    /// The matched face of a cell, or none.
    std::size_t down(std::size_t dim, std::size_t index) const;
    bool critical(std::size_t dim, std::size_t index) const {
        return up(dim, index) == none && down(dim, index) == none;
    }
    std::vector<std::size_t> critical_counts() const;

    const CellComplex& complex() const { return *complex_; }

private:
    const CellComplex* complex_ = nullptr;
    std::vector<MatchedPair> pairs_;
    std::vector<std::vector<std::size_t>> up_;
    std::vector<std::vector<std::size_t>> down_;
};

/// Vertex and arrow cells unmatched; every pair shares tail and head.
CheckReport check_internal(const Matching& m);

struct AcyclicReport {
    bool acyclic = true;
    std::vector<CellRef> cycle;  ///< closed walk, first cell repeated at the end
};

/// Cycle search in the Hasse digraph oriented by the matching (matched
/// edges upward, all others downward).
AcyclicReport check_acyclic(const Matching& m);

/// Morse complex of projective bimodules: generators are critical cells.
struct MorseComplex {
    BimoduleComplex complex;                      ///< generators = critical cells
    std::vector<std::vector<std::size_t>> critical;  ///< per degree, index in the full complex
    std::vector<std::size_t> counts() const { return complex.counts(); }
};

/// Requires c = cellular_resolution(m.complex()) and m internal and
/// acyclic; throws PreconditionError otherwise. Coefficients are summed
/// over gradient paths via a memoized flow.
MorseComplex morse_complex(const BimoduleComplex& c, const Matching& m);

struct GradientPath {
    std::vector<CellRef> cells;  ///< σ, τ_0, σ_1, τ_1, ..., τ_last
    long long coeff = 0;
    ClassId left = no_class;
    ClassId right = no_class;
};

/// Every gradient path from a critical k-cell to critical (k-1)-cells, by
/// explicit enumeration (for audits; exponential in general). Throws when
/// more than `limit` paths exist.
std::vector<GradientPath> gradient_paths(const BimoduleComplex& c, const Matching& m, std::size_t k,
                                         std::size_t index, std::size_t limit = 100000);

/// Per interval (e, p): lexicographic shelling order on maximal chains,
/// Boolean-interval matching per facet, with coreduction as the fallback
/// for intervals where the order is not a shelling. Classes whose interval
/// fell back are appended to `fallback` when given.
Matching babson_hersh_matching(const CellComplex& x, std::vector<ClassId>* fallback = nullptr);

/// Coreduction inside each (tail, head) stratum with vertex and arrow cells
/// held critical.
Matching greedy_internal_matching(const CellComplex& x);

/// No collected differential term with both coefficients trivial.
CheckReport check_minimal(const MorseComplex& mc);

/// Every term has len(left) + len(right) = 1. Refuses ungraded algebras.
CheckReport check_linear(const MorseComplex& mc);

/// A cell given as a chain of words, possibly starting at a nontrivial
/// path (which is divided out). Words are space-separated arrow labels or
/// "e_<vertex>".
Cell parse_cell(const Hpa& a, const std::vector<std::string>& chain);

/// Matching from (top, bottom) chains; duplicate pairs are merged,
/// conflicting ones rejected.
Matching matching_from_chains(const CellComplex& x,
                              const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs);

}  // namespace hpa
