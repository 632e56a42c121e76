#include "hpa/quiver.hpp"

#include <algorithm>
#include <functional>

#include "hpa/errors.hpp"

namespace hpa {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (VertexId v = 0; v < vertices_.size(); ++v) {
        if (!vertex_index_.emplace(vertices_[v], v).second)
            throw Error("duplicate vertex '" + vertices_[v] + "'");
    }
    out_.resize(vertices_.size());
    in_.resize(vertices_.size());
    for (ArrowId a = 0; a < arrows_.size(); ++a) {
        const Arrow& arr = arrows_[a];
        if (arr.tail >= vertices_.size() || arr.head >= vertices_.size())
            throw Error("arrow '" + arr.label + "' references an unknown vertex");
        if (!arrow_index_.emplace(arr.label, a).second)
            throw Error("duplicate arrow label '" + arr.label + "'");
        out_[arr.tail].push_back(a);
        in_[arr.head].push_back(a);
    }
}

std::optional<VertexId> Quiver::find_vertex(std::string_view name) const {
    auto it = vertex_index_.find(std::string(name));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ArrowId> Quiver::find_arrow(std::string_view label) const {
    auto it = arrow_index_.find(std::string(label));
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<ArrowId> Quiver::find_cycle() const {
    enum class Mark { fresh, active, done };
    std::vector<Mark> mark(vertices_.size(), Mark::fresh);
    std::vector<ArrowId> stack;
    std::vector<ArrowId> cycle;

    std::function<bool(VertexId)> visit = [&](VertexId v) {
        mark[v] = Mark::active;
        for (ArrowId a : out_[v]) {
            VertexId w = arrows_[a].head;
            stack.push_back(a);
            if (mark[w] == Mark::active) {
                auto start = std::find_if(stack.begin(), stack.end(),
                                          [&](ArrowId b) { return arrows_[b].tail == w; });
                cycle.assign(start, stack.end());
                return true;
            }
            if (mark[w] == Mark::fresh && visit(w)) return true;
            stack.pop_back();
        }
        mark[v] = Mark::done;
        return false;
    };
    for (VertexId v = 0; v < vertices_.size(); ++v)
        if (mark[v] == Mark::fresh && visit(v)) break;
    return cycle;
}

std::size_t PathWordHash::operator()(const PathWord& w) const noexcept {
    std::size_t h = std::hash<std::uint32_t>{}(w.tail) * 0x9e3779b97f4a7c15ULL;
    for (ArrowId a : w.arrows) h = (h ^ (a + 0x9e3779b9 + (h << 6) + (h >> 2)));
    return h;
}

VertexId head(const Quiver& q, const PathWord& w) {
    return w.arrows.empty() ? w.tail : q.arrow(w.arrows.back()).head;
}

bool composable(const Quiver& q, const PathWord& w) {
    if (w.tail >= q.vertex_count()) return false;
    VertexId at = w.tail;
    for (ArrowId a : w.arrows) {
        if (a >= q.arrow_count() || q.arrow(a).tail != at) return false;
        at = q.arrow(a).head;
    }
    return true;
}

PathWord concat(const Quiver& q, const PathWord& p, const PathWord& r) {
    if (head(q, p) != r.tail) throw Error("concatenation of non-composable paths");
    PathWord out = p;
    out.arrows.insert(out.arrows.end(), r.arrows.begin(), r.arrows.end());
    return out;
}

std::string to_string(const Quiver& q, const PathWord& w) {
    if (w.trivial()) return "e_" + q.vertex_name(w.tail);
    std::string s;
    for (ArrowId a : w.arrows) {
        if (!s.empty()) s += ' ';
        s += q.arrow(a).label;
    }
    return s;
}

bool label_less(const Quiver& q, const PathWord& a, const PathWord& b) {
    return std::lexicographical_compare(
        a.arrows.begin(), a.arrows.end(), b.arrows.begin(), b.arrows.end(),
        [&](ArrowId x, ArrowId y) { return q.arrow(x).label < q.arrow(y).label; });
}

std::vector<PathWord> enumerate_paths(const Quiver& q) {
    if (auto cycle = q.find_cycle(); !cycle.empty()) {
        std::vector<std::string> labels;
        for (ArrowId a : cycle) labels.push_back(q.arrow(a).label);
        throw CycleError(std::move(labels));
    }
    std::vector<PathWord> out;
    for (VertexId v = 0; v < q.vertex_count(); ++v) {
        PathWord w{v, {}};
        std::function<void(VertexId)> extend = [&](VertexId at) {
            out.push_back(w);
            for (ArrowId a : q.out_arrows(at)) {
                w.arrows.push_back(a);
                extend(q.arrow(a).head);
                w.arrows.pop_back();
            }
        };
        extend(v);
    }
    return out;
}

}  // namespace hpa
