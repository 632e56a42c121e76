#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "hpa/realization.hpp"
#include "hpa/report.hpp"

namespace hpa {

/// coeff · left ⊗ [target] ⊗ right
struct Term {
    long long coeff = 0;
    ClassId left = no_class;
    std::size_t target = 0;  ///< generator index one degree down
    ClassId right = no_class;
    int face = -1;           ///< originating face index, -1 when not a single face
};

/// A complex of free bimodules ⊕ P_{t(η)} ⊠ P^op_{h(η)}, one summand per
/// generator cell. differential[k][g] lists the terms of d(1⊗g⊗1); it is
/// empty for k = 0, where the augmentation is multiplication.
struct BimoduleComplex {
    const Hpa* algebra = nullptr;
    const CellComplex* cells = nullptr;
    std::vector<std::vector<Cell>> generators;
    std::vector<std::vector<std::vector<Term>>> differential;

    std::size_t degrees() const { return generators.size(); }
    std::size_t count(std::size_t k) const { return k < generators.size() ? generators[k].size() : 0; }
    std::vector<std::size_t> counts() const;
    VertexId tail(std::size_t k, std::size_t g) const { return generators[k][g].tail; }
    VertexId head(std::size_t k, std::size_t g) const { return cells->head(generators[k][g]); }
    std::string describe(std::size_t k, std::size_t g) const { return cells->describe(generators[k][g]); }
};

/// Linear combination of basis elements a ⊗ g ⊗ b within one degree.
using BimoduleElement = std::map<std::tuple<ClassId, std::size_t, ClassId>, long long>;

/// d applied to a ⊗ g ⊗ b, collected. k is the degree of g, k >= 1.
BimoduleElement apply_differential(const BimoduleComplex& c, std::size_t k, ClassId a, std::size_t g, ClassId b);

/// Generators are the cells of x; faces contribute (-1)^i with the face
/// coefficients. x and its algebra must outlive the result.
BimoduleComplex cellular_resolution(const CellComplex& x);

/// d∘d = 0 in every degree and m∘d_1 = 0; witnesses name the first
/// surviving term per failing generator.
CheckReport verify_d_squared(const BimoduleComplex& c);

/// Exhaustive check of d h + h d = id on every basis element a ⊗ η ⊗ b and
/// of m h_{-1} = id. c must be cellular_resolution of a full realization.
CheckReport contracting_homotopy_check(const BimoduleComplex& c);

/// h_k(a ⊗ η ⊗ b) as (generator index in degree k+1); nullopt when it
/// vanishes. Throws when the cell needed lies outside the complex.
std::optional<std::size_t> homotopy_target(const BimoduleComplex& c, std::size_t k, ClassId a, std::size_t g);

/// S_v ⊗_A C ⊗_A S_w: generators from v to w, terms with trivial
/// coefficients on both sides.
ChainComplex tensor_simples(const BimoduleComplex& c, VertexId v, VertexId w);

}  // namespace hpa
