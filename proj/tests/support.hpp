#pragma once

#include <string>

#include "hpa/algebra.hpp"
#include "hpa/dsl.hpp"

namespace test {

inline std::string fixture(const std::string& name) { return std::string(HPA_FIXTURE_DIR) + "/" + name; }

inline hpa::Hpa load(const std::string& name) {
    hpa::QuiverDocument d = hpa::load_quiver_file(fixture(name));
    return hpa::make_hpa(d.quiver, d.relations);
}

inline hpa::Hpa parse(const std::string& text) {
    hpa::QuiverDocument d = hpa::parse_quiver(text);
    return hpa::make_hpa(d.quiver, d.relations);
}

// Linear quiver 1 -> 2 -> ... -> n with arrows a1, a2, ...
inline hpa::Hpa linear(int n) {
    std::string text = "vertices:";
    for (int i = 1; i <= n; ++i) text += " " + std::to_string(i);
    text += "\narrows:\n";
    for (int i = 1; i < n; ++i)
        text += "  a" + std::to_string(i) + ": " + std::to_string(i) + " -> " + std::to_string(i + 1) + "\n";
    return parse(text);
}

}  // namespace test
