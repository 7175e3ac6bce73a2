#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lcw {

/// Redex position: the sequence of child indices from the root.
using Path = std::vector<int>;

struct GraphEdge {
    std::size_t source;
    std::size_t target;
    Path position;
};

/// Multigraph of single-step reductions, vertices in BFS discovery order and
/// identified by a canonical (alpha-invariant) key.
template <class T>
struct ReductionGraph {
    std::vector<T> vertices;
    std::vector<std::string> keys;
    std::vector<std::size_t> depth;
    std::vector<bool> expanded;
    std::vector<bool> normal;
    std::vector<GraphEdge> edges;
    bool truncated = false;

    std::size_t size() const { return vertices.size(); }

    const std::size_t* find(const std::string& key) const {
        auto it = index_.find(key);
        return it == index_.end() ? nullptr : &it->second;
    }

    /// Indices of vertices known to be normal (expanded, no outgoing edge).
    std::vector<std::size_t> normal_forms() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (normal[i]) {
                out.push_back(i);
            }
        }
        return out;
    }

    bool acyclic() const {
        std::vector<std::vector<std::size_t>> succ(vertices.size());
        for (const auto& e : edges) {
            succ[e.source].push_back(e.target);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        std::vector<int> color(vertices.size(), 0);
        for (std::size_t start = 0; start < vertices.size(); ++start) {
            if (color[start] != 0) {
                continue;
            }
            std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
            color[start] = 1;
            while (!stack.empty()) {
                auto& [v, next] = stack.back();
                if (next < succ[v].size()) {
                    std::size_t w = succ[v][next++];
                    if (color[w] == 1) {
                        return false;
                    }
                    if (color[w] == 0) {
                        color[w] = 1;
                        stack.emplace_back(w, 0);
                    }
                } else {
                    color[v] = 2;
                    stack.pop_back();
                }
            }
        }
        return true;
    }

    std::size_t add_vertex(T term, std::string key, std::size_t d) {
        std::size_t id = vertices.size();
        index_.emplace(key, id);
        vertices.push_back(std::move(term));
        keys.push_back(std::move(key));
        depth.push_back(d);
        expanded.push_back(false);
        normal.push_back(false);
        return id;
    }

  private:
    std::unordered_map<std::string, std::size_t> index_;
};

/// Breadth-first closure of `root` under `step`, which must return a list of
/// (reduct, redex position) pairs. `key` maps a term to its canonical form.
/// Vertices at depth `max_depth` are not expanded; no more than
/// `max_vertices` vertices are created. Hitting either budget sets
/// `truncated`.
template <class T, class StepFn, class KeyFn>
ReductionGraph<T> explore_reductions(const T& root, StepFn&& step, KeyFn&& key,
                                     std::size_t max_vertices, std::size_t max_depth) {
    ReductionGraph<T> g;
    g.add_vertex(root, key(root), 0);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        auto reducts = step(g.vertices[v]);
        if (reducts.empty()) {
            g.expanded[v] = true;
            g.normal[v] = true;
            continue;
        }
        if (g.depth[v] >= max_depth) {
            g.truncated = true;
            continue;
        }
        g.expanded[v] = true;
        for (auto& [term, position] : reducts) {
            std::string k = key(term);
            std::size_t target;
            if (const std::size_t* found = g.find(k)) {
                target = *found;
            } else if (g.size() >= max_vertices) {
                g.truncated = true;
                continue;
            } else {
                target = g.add_vertex(std::move(term), std::move(k), g.depth[v] + 1);
                queue.push_back(target);
            }
            g.edges.push_back(GraphEdge{v, target, std::move(position)});
        }
    }
    return g;
}

}  // namespace lcw
