#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lcw/combinatory.hpp"
#include "lcw/reduction_graph.hpp"
#include "lcw/systemf.hpp"
#include "lcw/typed_term.hpp"
#include "lcw/types.hpp"
#include "lcw/untyped.hpp"

namespace lcw::exporter {

using json = nlohmann::json;

/// `0.1.1`, or `root` for the empty path.
std::string path_label(const Path& p);
std::string dot_escape(std::string_view s);

/// DOT multigraph: nodes `n0, n1, ...` in BFS discovery order labelled by
/// `label(vertex)`, one edge per reduction edge labelled by its redex path.
/// Normal forms get a double border.
template <class T, class LabelFn>
std::string export_dot(const ReductionGraph<T>& g, LabelFn&& label, std::string_view name = "G") {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    if (g.truncated) {
        out << "  // truncated\n";
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        out << "  n" << i << " [label=\"" << dot_escape(label(g.vertices[i])) << "\"";
        if (g.normal[i]) {
            out << ", peripheries=2";
        }
        out << "];\n";
    }
    for (const auto& e : g.edges) {
        out << "  n" << e.source << " -> n" << e.target << " [label=\"" << path_label(e.position)
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

/// AST as nested `{"kind": ..., "children": [...]}` objects; names and
/// annotations are extra fields.
json to_json(const untyped::Term& m);
json to_json(const combinatory::CTerm& a);
json to_json(const types::Type& a);
json to_json(const typed::TypedTerm& m);
json to_json(const systemf::FType& a);
json to_json(const systemf::FTerm& m);

}  // namespace lcw::exporter
