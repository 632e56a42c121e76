#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hpa {

using VertexId = std::uint32_t;
using ArrowId = std::uint32_t;

struct Arrow {
    std::string label;
    VertexId tail = 0;
    VertexId head = 0;
};

/// Finite directed multigraph with uniquely labelled arrows.
///
/// Cycles are representable so that a document can be parsed and the cycle
/// reported; every algebraic construction rejects them.
class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t arrow_count() const noexcept { return arrows_.size(); }

    const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
    const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }

    std::optional<VertexId> find_vertex(std::string_view name) const;
    std::optional<ArrowId> find_arrow(std::string_view label) const;

    const std::vector<ArrowId>& out_arrows(VertexId v) const { return out_.at(v); }
    const std::vector<ArrowId>& in_arrows(VertexId v) const { return in_.at(v); }

    /// Arrows of some oriented cycle, empty when the quiver is acyclic.
    std::vector<ArrowId> find_cycle() const;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::unordered_map<std::string, VertexId> vertex_index_;
    std::unordered_map<std::string, ArrowId> arrow_index_;
    std::vector<std::vector<ArrowId>> out_;
    std::vector<std::vector<ArrowId>> in_;
};

/// A path: a tail vertex and a composable arrow sequence, read left to right
/// in concatenation order. The empty sequence is the trivial path e_tail.
struct PathWord {
    VertexId tail = 0;
    std::vector<ArrowId> arrows;

    bool trivial() const noexcept { return arrows.empty(); }
    std::size_t length() const noexcept { return arrows.size(); }

    friend auto operator<=>(const PathWord&, const PathWord&) = default;
    friend bool operator==(const PathWord&, const PathWord&) = default;
};

struct PathWordHash {
    std::size_t operator()(const PathWord& w) const noexcept;
};

VertexId head(const Quiver& q, const PathWord& w);
bool composable(const Quiver& q, const PathWord& w);

/// Concatenation p·r; requires head(p) == tail(r).
PathWord concat(const Quiver& q, const PathWord& p, const PathWord& r);

/// Space-separated arrow labels, or "e_<vertex>" for a trivial path.
std::string to_string(const Quiver& q, const PathWord& w);

/// Lexicographic comparison by arrow label strings.
bool label_less(const Quiver& q, const PathWord& a, const PathWord& b);

using RelationGroup = std::vector<PathWord>;

/// Groups of parallel paths to be identified.
struct RelationSet {
    std::vector<RelationGroup> groups;
};

/// Every composable word of q, trivial paths included; throws CycleError on
/// an oriented cycle. Words are grouped by tail vertex and listed
/// depth-first in arrow order.
std::vector<PathWord> enumerate_paths(const Quiver& q);

}  // namespace hpa
