#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "qra/algebra.hpp"
#include "qra/structure.hpp"

namespace qra {

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

/// Hasse diagram, bottom to top. The unit is drawn as a double circle.
inline std::string emit_dot(const FiniteDqRA& A) {
    std::ostringstream os;
    os << "digraph " << detail::dot_quote(A.name().empty() ? "algebra" : A.name()) << " {\n";
    os << "  rankdir=BT;\n  node [shape=circle];\n  edge [arrowhead=none];\n";
    for (auto a : A.elements()) {
        os << "  n" << a.index() << " [label=" << detail::dot_quote(A.label(a));
        if (a == A.unit()) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (auto a : A.elements()) {
        for (auto b : A.elements()) {
            if (!A.less(a, b)) continue;
            bool cover = true;
            for (auto c : A.elements()) {
                if (A.less(a, c) && A.less(c, b)) cover = false;
            }
            if (cover) os << "  n" << a.index() << " -> n" << b.index() << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

/// (X, ≤) as a Hasse diagram with ≤ solid, α dashed, β dotted, and each
/// E-block as a cluster. Fixed points of α and β show up as self-loops.
inline std::string emit_dot(const RelStructure& S) {
    std::ostringstream os;
    const auto n = S.points();
    os << "digraph " << detail::dot_quote(S.name.empty() ? "structure" : S.name) << " {\n";
    os << "  rankdir=BT;\n  node [shape=point, xlabel=\"\"];\n";
    std::vector<bool> placed(n, false);
    std::size_t block = 0;
    for (Point x = 0; x < n; ++x) {
        if (placed[x]) continue;
        os << "  subgraph cluster_" << block++ << " {\n    style=rounded;\n";
        for (Point y = x; y < n; ++y) {
            if (!placed[y] && S.equiv.contains(x, y)) {
                placed[y] = true;
                os << "    p" << y << " [shape=circle, label=" << detail::dot_quote(S.label(y)) << "];\n";
            }
        }
        os << "  }\n";
    }
    for (Point x = 0; x < n; ++x) {
        for (Point y = 0; y < n; ++y) {
            if (x == y || !S.leq.contains(x, y)) continue;
            bool cover = true;
            for (Point z = 0; z < n; ++z) {
                if (z != x && z != y && S.leq.contains(x, z) && S.leq.contains(z, y)) cover = false;
            }
            if (cover) os << "  p" << x << " -> p" << y << " [style=solid, arrowhead=none];\n";
        }
    }
    for (Point x = 0; x < n; ++x) os << "  p" << x << " -> p" << S.alpha[x] << " [style=dashed, label=\"α\"];\n";
    for (Point x = 0; x < n; ++x) {
        // β is an involution: one undirected edge per orbit
        if (S.beta[x] >= x) os << "  p" << x << " -> p" << S.beta[x] << " [style=dotted, dir=both, label=\"β\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace qra
