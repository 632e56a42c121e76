#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hpa/algebra.hpp"
#include "hpa/linalg.hpp"
#include "hpa/resolution.hpp"

namespace hpa {

/// Order complex of the open interval (e_{t(p)}, p): simplices are chains
/// of proper nontrivial subpaths, listed bottom-up.
struct OrderComplex {
    ClassId top = no_class;
    std::vector<ClassId> points;
    std::vector<std::vector<std::vector<ClassId>>> simplices;  ///< by dimension, 0 = points

    bool empty() const { return points.empty(); }
};

OrderComplex interval_order_complex(const Hpa& a, ClassId p);

/// Augmented simplicial chains; lowest degree -1 is the empty simplex.
ChainComplex reduced_chain_complex(const OrderComplex& k);

std::vector<HomologyGroup> reduced_homology(const OrderComplex& k, const Ring& ring);

/// Tor_i(S_v, S_w) for i = 0, 1, ...: Tor_0 = [v = w], otherwise the sum
/// over classes p from v to w of H̃_{i-2} of the interval of p.
std::vector<HomologyGroup> tor_via_intervals(const Hpa& a, VertexId v, VertexId w, const Ring& ring);

/// Homology of S_v ⊗ c ⊗ S_w.
std::vector<HomologyGroup> tor_via_resolution(const BimoduleComplex& c, VertexId v, VertexId w, const Ring& ring);

/// Degrees with nonzero rank or torsion, for comparing Tor tables of
/// different lengths.
std::vector<HomologyGroup> nonzero(std::vector<HomologyGroup> groups);

struct BettiTable {
    std::map<std::tuple<int, VertexId, VertexId>, std::size_t> ranks;  ///< (degree, v, w) -> rank, nonzero only
    bool torsion = false;
    std::vector<std::string> warnings;

    std::vector<std::size_t> totals() const;
};

/// Integral Tor ranks over every vertex pair; torsion in any interval is
/// reported as a warning (no minimal resolution over Z).
BettiTable betti_table(const Hpa& a);

struct ElCertificate {
    enum class Status { certified, point_set, unknown };
    Status status = Status::unknown;
    std::string detail;
};

/// EL test on [e_{t(p)}, p] with cover labels rank[arrow]: every
/// subinterval has a unique weakly increasing maximal chain and it is
/// lexicographically first. Throws PreconditionError if some cover is not a
/// single arrow.
ElCertificate el_shellability_certificate(const Hpa& a, ClassId p, const std::vector<int>& rank);

struct KoszulVerdict {
    enum class Kind { certified, not_koszul, unknown };
    Kind kind = Kind::unknown;
    std::string method;                 ///< "directable", "interval-shellability", "linear-minimal-resolution"
    std::vector<std::string> order;     ///< variable order for "directable"
    std::vector<std::string> witnesses;
};

std::string to_string(KoszulVerdict::Kind k);

/// Sufficient criteria in turn: directability of a monomial presentation,
/// shellability certificates for every interval, then a minimal
/// Babson-Hersh Morse complex that is linear (or a non-linear witness).
/// Refuses ungraded algebras.
KoszulVerdict koszul_check(const Hpa& a);

}  // namespace hpa
