#include "hpa/dsl.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "hpa/errors.hpp"

namespace hpa {
namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Splits [begin, end) of line into whitespace separated tokens.
std::vector<Token> tokenize(const std::string& line, std::size_t begin, std::size_t end) {
    std::vector<Token> out;
    std::size_t i = begin;
    while (i < end) {
        while (i < end && is_space(line[i])) ++i;
        if (i >= end) break;
        std::size_t j = i;
        while (j < end && !is_space(line[j])) ++j;
        out.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return out;
}

void check_identifier(const Token& t, std::size_t line_no, const char* what) {
    for (char c : t.text) {
        if (c == ':' || c == '=' || c == '#')
            throw ParseError(line_no, t.column, std::string("invalid character in ") + what + " '" + t.text + "'");
    }
    if (t.text.find("->") != std::string::npos)
        throw ParseError(line_no, t.column, std::string("invalid ") + what + " '" + t.text + "'");
}

enum class Section { none, vertices, arrows, relations };

struct PendingArrow {
    Token label, tail, head;
    std::size_t line;
};

struct PendingRelation {
    std::vector<std::vector<Token>> words;
    std::size_t line;
};

}  // namespace

QuiverDocument parse_quiver(std::string_view text) {
    std::vector<Token> vertex_tokens;
    std::vector<std::size_t> vertex_lines;
    std::vector<PendingArrow> arrows;
    std::vector<PendingRelation> relations;

    Section section = Section::none;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t end = line.find('#');
        if (end == std::string::npos) end = line.size();
        std::size_t begin = 0;
        while (begin < end && is_space(line[begin])) ++begin;
        if (begin == end) continue;

        for (auto [keyword, sec] : {std::pair{"vertices:", Section::vertices},
                                    std::pair{"arrows:", Section::arrows},
                                    std::pair{"relations:", Section::relations}}) {
            std::string_view kw(keyword);
            if (line.compare(begin, kw.size(), kw) == 0) {
                section = sec;
                begin += kw.size();
                while (begin < end && is_space(line[begin])) ++begin;
                break;
            }
        }
        if (begin == end) continue;

        switch (section) {
        case Section::none:
            throw ParseError(line_no, begin + 1, "expected 'vertices:', 'arrows:' or 'relations:'");
        case Section::vertices:
            for (auto& t : tokenize(line, begin, end)) {
                check_identifier(t, line_no, "vertex");
                vertex_tokens.push_back(t);
                vertex_lines.push_back(line_no);
            }
            break;
        case Section::arrows: {
            std::size_t colon = line.find(':', begin);
            if (colon == std::string::npos || colon >= end)
                throw ParseError(line_no, begin + 1, "expected '<label>: <tail> -> <head>'");
            auto label = tokenize(line, begin, colon);
            if (label.size() != 1)
                throw ParseError(line_no, begin + 1, "arrow label must be a single token");
            std::size_t arrow = line.find("->", colon + 1);
            if (arrow == std::string::npos || arrow >= end)
                throw ParseError(line_no, colon + 2, "expected '->'");
            auto tail = tokenize(line, colon + 1, arrow);
            auto head = tokenize(line, arrow + 2, end);
            if (tail.size() != 1) throw ParseError(line_no, colon + 2, "expected one tail vertex");
            if (head.size() != 1) throw ParseError(line_no, arrow + 3, "expected one head vertex");
            check_identifier(label[0], line_no, "arrow label");
            arrows.push_back({label[0], tail[0], head[0], line_no});
            break;
        }
        case Section::relations: {
            PendingRelation rel{{}, line_no};
            std::size_t start = begin;
            while (true) {
                std::size_t eq = line.find('=', start);
                std::size_t stop = (eq == std::string::npos || eq >= end) ? end : eq;
                auto word = tokenize(line, start, stop);
                if (word.empty()) throw ParseError(line_no, start + 1, "empty word in relation");
                rel.words.push_back(std::move(word));
                if (stop == end) break;
                start = stop + 1;
            }
            if (rel.words.size() < 2)
                throw ParseError(line_no, begin + 1, "relation needs at least two words separated by '='");
            relations.push_back(std::move(rel));
            break;
        }
        }
    }

    std::vector<std::string> vertex_names;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < vertex_tokens.size(); ++i) {
        if (!seen.insert(vertex_tokens[i].text).second)
            throw ParseError(vertex_lines[i], vertex_tokens[i].column, "duplicate vertex '" + vertex_tokens[i].text + "'");
        vertex_names.push_back(vertex_tokens[i].text);
    }
    auto vertex_of = [&](const Token& t, std::size_t line_no) -> VertexId {
        for (VertexId v = 0; v < vertex_names.size(); ++v)
            if (vertex_names[v] == t.text) return v;
        throw ParseError(line_no, t.column, "unknown vertex '" + t.text + "'");
    };

    std::vector<Arrow> arrow_list;
    std::set<std::string> labels;
    for (const auto& a : arrows) {
        if (!labels.insert(a.label.text).second)
            throw ParseError(a.line, a.label.column, "duplicate arrow label '" + a.label.text + "'");
        arrow_list.push_back({a.label.text, vertex_of(a.tail, a.line), vertex_of(a.head, a.line)});
    }
    Quiver quiver(std::move(vertex_names), std::move(arrow_list));

    RelationSet rels;
    std::set<PathWord> used;
    for (const auto& r : relations) {
        RelationGroup group;
        std::optional<std::pair<VertexId, VertexId>> ends;
        for (const auto& word_tokens : r.words) {
            PathWord w;
            for (const auto& t : word_tokens) {
                auto a = quiver.find_arrow(t.text);
                if (!a) throw ParseError(r.line, t.column, "unknown arrow '" + t.text + "'");
                if (w.arrows.empty()) w.tail = quiver.arrow(*a).tail;
                w.arrows.push_back(*a);
            }
            if (!composable(quiver, w))
                throw ParseError(r.line, word_tokens.front().column, "non-composable word '" + to_string(quiver, w) + "'");
            std::pair<VertexId, VertexId> e{w.tail, head(quiver, w)};
            if (ends && *ends != e)
                throw ParseError(r.line, word_tokens.front().column, "relation endpoints mismatch at '" + to_string(quiver, w) + "'");
            ends = e;
            if (std::find(group.begin(), group.end(), w) != group.end()) continue;
            if (used.count(w))
                throw ParseError(r.line, word_tokens.front().column, "word '" + to_string(quiver, w) + "' appears in two relation groups");
            group.push_back(w);
        }
        for (const auto& w : group) used.insert(w);
        rels.groups.push_back(std::move(group));
    }
    return {std::move(quiver), std::move(rels)};
}

std::string emit_quiver(const Quiver& q, const RelationSet& relations) {
    std::ostringstream out;
    out << "vertices:";
    for (const auto& v : q.vertices()) out << ' ' << v;
    out << "\narrows:\n";
    for (const auto& a : q.arrows())
        out << "  " << a.label << ": " << q.vertex_name(a.tail) << " -> " << q.vertex_name(a.head) << '\n';
    if (!relations.groups.empty()) {
        out << "relations:\n";
        for (const auto& g : relations.groups) {
            out << ' ';
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (i) out << " =";
                out << ' ' << to_string(q, g[i]);
            }
            out << '\n';
        }
    }
    return out.str();
}

QuiverDocument load_quiver_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_quiver(buf.str());
}

}  // namespace hpa
