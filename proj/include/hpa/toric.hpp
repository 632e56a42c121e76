#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "hpa/algebra.hpp"
#include "hpa/dsl.hpp"
#include "hpa/linalg.hpp"

namespace hpa {

struct TorsionRow {
    long long modulus = 2;
    std::vector<long long> row;
};

/// μ: Z^N -> Z^r ⊕ ⊕_j Z/m_j, given by an r x N integer matrix and one
/// row per cyclic factor.
struct WeightData {
    IntegerMatrix free;
    std::vector<TorsionRow> torsion;

    std::size_t columns() const { return static_cast<std::size_t>(free.cols()); }
    std::size_t rank() const { return static_cast<std::size_t>(free.rows()); }
};

/// Validates shapes and moduli; throws Error.
WeightData make_weight_data(IntegerMatrix free, std::vector<TorsionRow> torsion = {});

/// A character: free coordinates plus residues in [0, m_j).
struct Degree {
    std::vector<long long> free;
    std::vector<long long> torsion;

    friend auto operator<=>(const Degree&, const Degree&) = default;
    friend bool operator==(const Degree&, const Degree&) = default;
};

using Exponent = std::vector<long long>;

Degree degree_of(const WeightData& w, const Exponent& m);
Degree difference(const WeightData& w, const Degree& e, const Degree& d);  ///< e - d
std::string to_string(const Degree& d);

/// The image of the positive orthant under μ_free is strongly convex.
bool check_cohomologically_proper(const WeightData& w);

/// Lattice points of the half-open zonotope μ([0,1)^N), with torsion
/// saturated over ker μ_free. Sorted.
std::vector<Degree> image_phi(const WeightData& w);

/// All m >= 0 with μ(m) = e - d, sorted. Requires properness.
std::vector<Exponent> hom_monomials(const WeightData& w, const Degree& d, const Degree& e);

/// "1", "x1", "x1^2*x3", ... (variables x1..xN).
std::string monomial_string(const Exponent& m);

struct ToricHpa {
    WeightData weights;
    std::vector<Degree> degrees;             ///< vertex i has degree degrees[i]
    QuiverDocument presentation;
    std::vector<Exponent> arrow_monomials;   ///< per arrow id
    Hpa algebra;
};

/// Vertices v0, v1, ... in the given degree order; arrows are monomials not
/// factoring through another listed degree, labelled "<monomial>.<tail>";
/// relations identify paths with equal endpoints and total monomial, kept
/// to a generating set.
ToricHpa build_toric_hpa(const WeightData& w, const std::vector<Degree>& degrees);

struct Directability {
    bool directable = false;
    std::vector<std::string> order;  ///< variables, least first, when directable
    /// Required strict inequalities "a<b" forced by compositions lacking a swap.
    std::vector<std::string> constraints;
};

/// Variable orders under which every out-of-order composition of two
/// arrows has a swapped partner in the same class. Decided exactly: the
/// forced inequalities must be acyclic. Throws PreconditionError when an
/// arrow is not a single variable.
Directability check_directable(const ToricHpa& t);

/// Same, reading the variable of an arrow from its label: the prefix
/// before the first "'" or ".".
Directability check_directable(const Hpa& a);

/// Variable named by an arrow label; throws PreconditionError for labels
/// that name a product.
std::string variable_of(const std::string& label);

/// Classes are exactly (endpoints, variable multiset) under label
/// variables: the algebra is presented by monomials.
bool has_monomial_presentation(const Hpa& a);

}  // namespace hpa
