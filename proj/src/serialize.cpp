#include "hpa/serialize.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace hpa {
namespace {

Json word_list(const Hpa& a, const std::vector<std::size_t>& members) {
    Json out = Json::array();
    for (std::size_t w : members) out.push_back(to_string(a.quiver(), a.words()[w]));
    return out;
}

Json terms_json(const std::vector<Term>& terms, const Hpa& a) {
    Json out = Json::array();
    for (const Term& t : terms)
        out.push_back({{"coeff", t.coeff}, {"left", a.describe(t.left)}, {"target", t.target}, {"right", a.describe(t.right)}});
    return out;
}

long long as_integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw Error(std::string("expected an integer in ") + what);
    return j.get<long long>();
}

}  // namespace

Json to_json(const BigInt& n) {
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
        return Json(static_cast<long long>(n));
    return Json(n.str());
}

Json quiver_json(const Quiver& q) {
    Json arrows = Json::array();
    for (const Arrow& x : q.arrows())
        arrows.push_back({{"label", x.label}, {"tail", q.vertex_name(x.tail)}, {"head", q.vertex_name(x.head)}});
    return {{"vertices", q.vertices()}, {"arrows", arrows}};
}

Json algebra_json(const Hpa& a) {
    const Quiver& q = a.quiver();
    Json classes = Json::array();
    for (ClassId c = 0; c < a.class_count(); ++c) {
        const PathClass& p = a.path_class(c);
        classes.push_back({{"id", c},
                           {"canonical", a.describe(c)},
                           {"tail", q.vertex_name(p.tail)},
                           {"head", q.vertex_name(p.head)},
                           {"length", p.length},
                           {"members", word_list(a, p.members)}});
    }
    Json out = quiver_json(q);
    out["graded"] = a.graded();
    out["words"] = a.words().size();
    out["classes"] = classes;
    return out;
}

Json check_json(const Hpa& a, const HpaReport& r) {
    Json violations = Json::array();
    for (const CancellationViolation& v : r.violations)
        violations.push_back({{"condition", v.condition == 1 ? "first" : "second"},
                              {"factor", to_string(a.quiver(), v.factor)},
                              {"first", to_string(a.quiver(), v.first)},
                              {"second", to_string(a.quiver(), v.second)}});
    return {{"valid", r.valid}, {"graded", r.graded}, {"classes", a.class_count()}, {"violations", violations}};
}

Json homology_json(const std::vector<HomologyGroup>& groups) {
    Json out = Json::object();
    for (const HomologyGroup& h : groups) {
        Json torsion = Json::array();
        for (const BigInt& t : h.torsion) torsion.push_back(to_json(t));
        out["H" + std::to_string(h.degree)] = Json::array({h.rank, torsion});
    }
    return out;
}

Json realization_json(const CellComplex& x, const ChainComplex& chains, bool with_cells) {
    Json out;
    out["counts"] = x.counts();
    out["euler"] = euler_characteristic(x);
    Json boundaries = Json::array();
    for (std::size_t k = 1; k < chains.differentials.size(); ++k) {
        const IntegerMatrix& d = chains.differentials[k];
        Json entries = Json::array();
        for (Eigen::Index j = 0; j < d.cols(); ++j)
            for (Eigen::Index i = 0; i < d.rows(); ++i)
                if (d(i, j) != 0) entries.push_back({i, j, d(i, j)});
        boundaries.push_back({{"degree", k}, {"rows", d.rows()}, {"cols", d.cols()}, {"entries", entries}});
    }
    out["boundaries"] = boundaries;
    if (with_cells) {
        Json cells = Json::array();
        for (std::size_t k = 0; k < x.dimensions(); ++k) {
            Json level = Json::array();
            for (std::size_t i = 0; i < x.count(k); ++i) level.push_back(x.describe(k, i));
            cells.push_back(level);
        }
        out["cells"] = cells;
    }
    return out;
}

Json bimodule_json(const BimoduleComplex& c, int degree) {
    const Hpa& a = *c.algebra;
    Json gens = Json::array();
    for (std::size_t k = 0; k < c.degrees(); ++k) {
        if (degree >= 0 && static_cast<std::size_t>(degree) != k) continue;
        for (std::size_t g = 0; g < c.count(k); ++g)
            gens.push_back({{"degree", k},
                            {"index", g},
                            {"cell", c.describe(k, g)},
                            {"tail", a.quiver().vertex_name(c.tail(k, g))},
                            {"head", a.quiver().vertex_name(c.head(k, g))},
                            {"differential", terms_json(c.differential[k][g], a)}});
    }
    return {{"counts", c.counts()}, {"generators", gens}};
}

Json matching_json(const Matching& m) {
    const CellComplex& x = m.complex();
    Json pairs = Json::array();
    for (const MatchedPair& p : m.pairs())
        pairs.push_back({{"top", x.describe(p.dim, p.top)}, {"bottom", x.describe(p.dim - 1, p.bottom)}});
    return {{"size", m.size()}, {"pairs", pairs}};
}

Json gradient_audit_json(const BimoduleComplex& c, const Matching& m) {
    const Hpa& a = *c.algebra;
    const CellComplex& x = m.complex();
    Json out = Json::array();
    for (std::size_t k = 1; k < x.dimensions(); ++k)
        for (std::size_t i = 0; i < x.count(k); ++i) {
            if (!m.critical(k, i)) continue;
            for (const GradientPath& p : gradient_paths(c, m, k, i)) {
                Json cells = Json::array();
                for (const CellRef& r : p.cells) cells.push_back(x.describe(r.dim, r.index));
                out.push_back({{"from", x.describe(k, i)},
                               {"path", cells},
                               {"coeff", p.coeff},
                               {"left", a.describe(p.left)},
                               {"right", a.describe(p.right)}});
            }
        }
    return out;
}

Json betti_json(const Hpa& a, const BettiTable& t) {
    const Quiver& q = a.quiver();
    Json entries = Json::array();
    for (const auto& [key, rank] : t.ranks) {
        const auto& [degree, v, w] = key;
        entries.push_back({{"degree", degree}, {"from", q.vertex_name(v)}, {"to", q.vertex_name(w)}, {"rank", rank}});
    }
    return {{"totals", t.totals()}, {"torsion", t.torsion}, {"warnings", t.warnings}, {"entries", entries}};
}

std::string betti_csv(const Hpa& a, const BettiTable& t) {
    std::ostringstream out;
    out << "degree,from,to,rank\n";
    for (const auto& [key, rank] : t.ranks) {
        const auto& [degree, v, w] = key;
        out << degree << ',' << a.quiver().vertex_name(v) << ',' << a.quiver().vertex_name(w) << ',' << rank << '\n';
    }
    return out.str();
}

Json koszul_json(const KoszulVerdict& v) {
    Json out{{"verdict", to_string(v.kind)}, {"method", v.method}};
    if (!v.order.empty()) out["order"] = v.order;
    out["witnesses"] = v.witnesses;
    return out;
}

Json degree_json(const Degree& d) {
    Json out{{"free", d.free}};
    if (!d.torsion.empty()) out["torsion"] = d.torsion;
    return out;
}

Json toric_json(const ToricHpa& t) {
    const Quiver& q = t.presentation.quiver;
    Json vertices = Json::array();
    for (std::size_t i = 0; i < t.degrees.size(); ++i)
        vertices.push_back({{"name", q.vertex_name(static_cast<VertexId>(i))}, {"degree", degree_json(t.degrees[i])}});
    Json arrows = Json::array();
    for (ArrowId x = 0; x < q.arrow_count(); ++x)
        arrows.push_back({{"label", q.arrow(x).label},
                          {"tail", q.vertex_name(q.arrow(x).tail)},
                          {"head", q.vertex_name(q.arrow(x).head)},
                          {"monomial", monomial_string(t.arrow_monomials[x])}});
    return {{"vertices", vertices},
            {"arrows", arrows},
            {"relations", t.presentation.relations.groups.size()},
            {"classes", t.algebra.class_count()},
            {"quiver", emit_quiver(q, t.presentation.relations)}};
}

WeightData weight_data_from_json(const Json& j) {
    const Json& free = j.is_array() ? j : j.at("free");
    if (!free.is_array() || free.empty()) throw Error("weights: \"free\" must be a nonempty list of rows");
    const std::size_t cols = free[0].size();
    IntegerMatrix m(static_cast<Eigen::Index>(free.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < free.size(); ++r) {
        if (!free[r].is_array() || free[r].size() != cols) throw Error("weights: rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = as_integer(free[r][c], "weights");
    }
    std::vector<TorsionRow> torsion;
    if (j.is_object() && j.contains("torsion"))
        for (const Json& t : j.at("torsion")) {
            TorsionRow row;
            row.modulus = as_integer(t.at("mod"), "torsion modulus");
            for (const Json& x : t.at("row")) row.row.push_back(as_integer(x, "torsion row"));
            torsion.push_back(std::move(row));
        }
    return make_weight_data(std::move(m), std::move(torsion));
}

std::vector<Degree> degrees_from_json(const Json& j, const WeightData& w) {
    if (!j.is_array()) throw Error("degrees must be a list");
    std::vector<Degree> out;
    for (const Json& d : j) {
        Degree deg;
        const Json& free = d.is_array() ? d : d.at("free");
        for (const Json& x : free) deg.free.push_back(as_integer(x, "degree"));
        if (d.is_object() && d.contains("torsion"))
            for (const Json& x : d.at("torsion")) deg.torsion.push_back(as_integer(x, "degree"));
        if (deg.free.size() != w.rank() || deg.torsion.size() != w.torsion.size())
            throw Error("degree has the wrong number of coordinates");
        for (std::size_t i = 0; i < deg.torsion.size(); ++i) {
            long long m = w.torsion[i].modulus;
            deg.torsion[i] = ((deg.torsion[i] % m) + m) % m;
        }
        out.push_back(std::move(deg));
    }
    return out;
}

std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> matching_pairs_from_json(const Json& j) {
    const Json& list = j.is_object() ? j.at("pairs") : j;
    if (!list.is_array()) throw Error("matching: expected a list of pairs");
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
    for (const Json& p : list) {
        const Json& top = p.is_object() ? p.at("top") : p.at(0);
        const Json& bottom = p.is_object() ? p.at("bottom") : p.at(1);
        out.emplace_back(top.get<std::vector<std::string>>(), bottom.get<std::vector<std::string>>());
    }
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(path + ": " + e.what());
    }
}

}  // namespace hpa
