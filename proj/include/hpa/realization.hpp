#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpa/algebra.hpp"
#include "hpa/linalg.hpp"

namespace hpa {

/// A cell [e_v < p_1 < ... < p_k] of the realization. `chain` holds the
/// nontrivial classes p_1..p_k; the dimension is chain.size().
struct Cell {
    VertexId tail = 0;
    std::vector<ClassId> chain;

    std::size_t dim() const noexcept { return chain.size(); }
    friend auto operator<=>(const Cell&, const Cell&) = default;
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Face i of a k-cell. Left is p_1 for i = 0, right is p_{k-1} \ p_k for
/// i = k; all other coefficients are trivial classes.
struct Face {
    std::size_t cell = 0;  ///< index among the (k-1)-cells
    int index = 0;
    int sign = 1;          ///< (-1)^index
    ClassId left = no_class;
    ClassId right = no_class;
};

/// The realization X_A as a regular semi-simplicial complex. Holds a
/// reference to its algebra, which must outlive it.
class CellComplex {
public:
    CellComplex(const Hpa& a, std::vector<std::vector<Cell>> cells);

    const Hpa& algebra() const noexcept { return *hpa_; }
    /// Number of dimensions with at least one cell (0 for the empty complex).
    std::size_t dimensions() const noexcept { return cells_.size(); }
    const std::vector<Cell>& cells(std::size_t dim) const { return cells_.at(dim); }
    const Cell& cell(std::size_t dim, std::size_t index) const { return cells_.at(dim).at(index); }
    std::size_t count(std::size_t dim) const { return dim < cells_.size() ? cells_[dim].size() : 0; }
    std::vector<std::size_t> counts() const;

    /// Faces of a cell of positive dimension, ordered by face index.
    const std::vector<Face>& faces(std::size_t dim, std::size_t index) const { return faces_.at(dim).at(index); }

    std::optional<std::size_t> find(const Cell& c) const;
    VertexId head(const Cell& c) const;
    VertexId head(std::size_t dim, std::size_t index) const { return head(cell(dim, index)); }

    std::string describe(const Cell& c) const;
    std::string describe(std::size_t dim, std::size_t index) const { return describe(cell(dim, index)); }

private:
    const Hpa* hpa_;
    std::vector<std::vector<Cell>> cells_;
    std::vector<std::vector<std::vector<Face>>> faces_;
    std::map<Cell, std::size_t> index_;
};

/// Every canonical chain, capped at max_dim when given. Cells of each
/// dimension are sorted by (tail, chain).
CellComplex build_realization(const Hpa& a, std::optional<std::size_t> max_dim = std::nullopt);

/// Face i of a cell as a cell (before lookup).
Cell face_cell(const Hpa& a, const Cell& c, std::size_t i);

/// Cellular chains with d = Σ (-1)^i ∂_i, entries reduced mod p over F_p.
ChainComplex cw_chain_complex(const CellComplex& c, const Ring& ring);

long long euler_characteristic(const CellComplex& c);
long long euler_characteristic(const std::vector<std::size_t>& counts);

/// The vertex whose stratum contains the cell: the chain's tail.
inline VertexId tree_stratum(const Cell& c) { return c.tail; }

/// First violation of ∂_i∂_j = ∂_{j-1}∂_i (i < j), if any.
std::optional<std::string> check_simplicial_identities(const CellComplex& c);

/// Face poset as a Graphviz digraph (cell -> face).
std::string face_poset_dot(const CellComplex& c);

}  // namespace hpa
