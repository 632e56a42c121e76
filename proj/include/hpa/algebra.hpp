#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hpa/dsl.hpp"
#include "hpa/quiver.hpp"

namespace hpa {

using ClassId = std::uint32_t;
inline constexpr ClassId no_class = std::numeric_limits<ClassId>::max();

/// An equivalence class of paths under the relation congruence.
struct PathClass {
    PathWord canonical;                 ///< lexicographically least member (by arrow label)
    VertexId tail = 0;
    VertexId head = 0;
    std::size_t length = 0;             ///< length of the canonical word
    std::vector<std::size_t> members;   ///< indices into Hpa::words()

    bool trivial() const noexcept { return canonical.trivial(); }
};

/// The path algebra kQ/I_S presented by its basis of path classes.
///
/// Class ids are ordered by (tail vertex, length, canonical word); the
/// trivial class of a vertex is the first class with that tail. Composition
/// and right division are tabulated at construction.
class Hpa {
public:
    const Quiver& quiver() const noexcept { return quiver_; }
    const RelationSet& relations() const noexcept { return relations_; }

    const std::vector<PathWord>& words() const noexcept { return words_; }
    ClassId class_of_word(std::size_t word) const { return word_class_.at(word); }
    /// Class of an arbitrary composable word, or no_class if it is not a path.
    ClassId class_of(const PathWord& w) const;

    const std::vector<PathClass>& classes() const noexcept { return classes_; }
    std::size_t class_count() const noexcept { return classes_.size(); }
    const PathClass& path_class(ClassId c) const { return classes_.at(c); }
    VertexId tail(ClassId c) const { return classes_[c].tail; }
    VertexId head(ClassId c) const { return classes_[c].head; }
    std::size_t length(ClassId c) const { return classes_[c].length; }
    bool trivial(ClassId c) const { return classes_[c].trivial(); }

    ClassId trivial_class(VertexId v) const { return trivial_.at(v); }
    ClassId arrow_class(ArrowId a) const { return arrow_class_.at(a); }

    /// p·q, or no_class when head(p) != tail(q).
    ClassId compose(ClassId p, ClassId q) const { return compose_[static_cast<std::size_t>(p) * classes_.size() + q]; }

    /// The r with p·r = q, or no_class when p does not divide q. For
    /// non-cancellative congruences the first witness is kept.
    ClassId divide(ClassId p, ClassId q) const { return divide_[static_cast<std::size_t>(p) * classes_.size() + q]; }

    /// All relation classes have members of a single length.
    bool graded() const noexcept { return graded_; }

    std::string describe(ClassId c) const { return to_string(quiver_, classes_[c].canonical); }

private:
    friend Hpa congruence_closure(const Quiver&, const std::vector<PathWord>&, const RelationSet&);

    Quiver quiver_;
    RelationSet relations_;
    std::vector<PathWord> words_;
    std::unordered_map<PathWord, std::size_t, PathWordHash> word_index_;
    std::vector<ClassId> word_class_;
    std::vector<PathClass> classes_;
    std::vector<ClassId> trivial_;
    std::vector<ClassId> arrow_class_;
    std::vector<ClassId> compose_;
    std::vector<ClassId> divide_;
    bool graded_ = true;
};

/// Smallest congruence on `paths` containing the relation groups; `paths`
/// must be enumerate_paths(q).
Hpa congruence_closure(const Quiver& q, const std::vector<PathWord>& paths, const RelationSet& relations);

/// enumerate_paths followed by congruence_closure.
Hpa make_hpa(const Quiver& q, const RelationSet& relations);

struct CancellationViolation {
    int condition = 1;      ///< 1: r·p ~ r·p', 2: p·r ~ p'·r
    PathWord factor;        ///< the common factor r
    PathWord first;         ///< p
    PathWord second;        ///< p'
};

struct HpaReport {
    bool valid = true;
    bool graded = true;
    std::vector<CancellationViolation> violations;
};

/// Left and right cancellation of the congruence; lists every violating
/// (r; p, p') with p, p' canonical words of distinct classes.
HpaReport check_hpa(const Hpa& a);

/// Throws PreconditionError unless check_hpa(a) passes.
void require_valid(const Hpa& a);

/// Divisibility order on path classes: p < q iff q = p·r with r nontrivial.
class PathPoset {
public:
    explicit PathPoset(const Hpa& a);

    const Hpa& algebra() const noexcept { return *hpa_; }
    std::size_t size() const noexcept { return hpa_->class_count(); }

    bool less(ClassId p, ClassId q) const;
    bool less_equal(ClassId p, ClassId q) const { return hpa_->divide(p, q) != no_class; }

    /// r with q = p·r; throws NotSubpathError when p does not divide q.
    ClassId divide(ClassId p, ClassId q) const;

    /// Classes strictly above p, in class order.
    const std::vector<ClassId>& above(ClassId p) const { return above_.at(p); }

private:
    const Hpa* hpa_;
    std::vector<std::vector<ClassId>> above_;
};

/// Validates a and returns its path poset.
PathPoset path_poset(const Hpa& a);

/// Tensor product over the base ring: product quiver with the relations of
/// both factors and all commuting squares. Vertices are named "(v,w)";
/// arrows "(a,w)" and "(v,b)".
Hpa tensor(const Hpa& a, const Hpa& b);

/// The quiver with relations underlying tensor(a, b).
QuiverDocument tensor_presentation(const Hpa& a, const Hpa& b);

}  // namespace hpa
