#include "steklov/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace steklov {

GraphWithBoundary GraphWithBoundary::make(
    std::vector<Vertex> vertices, std::vector<std::pair<int, int>> edges,
    std::optional<GroupDescriptor> host) {
    const int n = static_cast<int>(vertices.size());
    if (n == 0) {
        throw InvalidInput("graph has no vertices");
    }
    for (auto& [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw InvalidInput("edge endpoint out of range: (" +
                               std::to_string(a) + "," + std::to_string(b) +
                               ") with " + std::to_string(n) + " vertices");
        }
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());

    GraphWithBoundary g;
    g.vertices_ = std::move(vertices);
    g.edges_ = std::move(edges);
    g.host_ = std::move(host);
    g.adjacency_.assign(static_cast<std::size_t>(n), {});
    for (const auto& [a, b] : g.edges_) {
        g.adjacency_[static_cast<std::size_t>(a)].push_back(b);
        if (a != b) g.adjacency_[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
    for (int v = 0; v < n; ++v) {
        (g.vertices_[static_cast<std::size_t>(v)].boundary ? g.boundary_
                                                           : g.interior_)
            .push_back(v);
    }
    return g;
}

const std::vector<int>& GraphWithBoundary::neighbors(int v) const {
    return adjacency_.at(static_cast<std::size_t>(v));
}

bool GraphWithBoundary::is_boundary(int v) const {
    return vertices_.at(static_cast<std::size_t>(v)).boundary;
}

const std::optional<GroupElement>& GraphWithBoundary::label(int v) const {
    return vertices_.at(static_cast<std::size_t>(v)).label;
}

int GraphWithBoundary::degree(int v) const {
    return static_cast<int>(neighbors(v).size());
}

int GraphWithBoundary::max_degree() const {
    int best = 0;
    for (const auto& adj : adjacency_) {
        best = std::max(best, static_cast<int>(adj.size()));
    }
    return best;
}

bool GraphWithBoundary::fully_labeled() const {
    return std::all_of(vertices_.begin(), vertices_.end(),
                       [](const Vertex& v) { return v.label.has_value(); });
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Loop: return "loop";
        case ViolationKind::DuplicateEdge: return "duplicate edge";
        case ViolationKind::EmptyBoundary: return "empty boundary";
        case ViolationKind::BoundaryEdge: return "boundary-boundary edge";
        case ViolationKind::Disconnected: return "disconnected";
        case ViolationKind::DuplicateLabel: return "duplicate label";
        case ViolationKind::HostEdgeMismatch: return "edge not in host graph";
    }
    return "unknown";
}

std::vector<Violation> validate(const GraphWithBoundary& g) {
    std::vector<Violation> out;
    auto edge_name = [](const std::pair<int, int>& e) {
        return "(" + std::to_string(e.first) + "," + std::to_string(e.second) +
               ")";
    };
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].first == edges[i].second) {
            out.push_back({ViolationKind::Loop, edge_name(edges[i])});
        }
        if (i > 0 && edges[i] == edges[i - 1]) {
            out.push_back({ViolationKind::DuplicateEdge, edge_name(edges[i])});
        }
        if (g.is_boundary(edges[i].first) && g.is_boundary(edges[i].second) &&
            edges[i].first != edges[i].second) {
            out.push_back({ViolationKind::BoundaryEdge, edge_name(edges[i])});
        }
    }
    if (g.boundary_vertices().empty()) {
        out.push_back({ViolationKind::EmptyBoundary, ""});
    }
    // Connectivity of the graph as a whole.
    {
        std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
        std::deque<int> work{0};
        seen[0] = 1;
        int reached = 1;
        while (!work.empty()) {
            int v = work.front();
            work.pop_front();
            for (int u : g.neighbors(v)) {
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    ++reached;
                    work.push_back(u);
                }
            }
        }
        if (reached != g.vertex_count()) {
            out.push_back({ViolationKind::Disconnected,
                           std::to_string(g.vertex_count() - reached) +
                               " vertices unreachable from vertex 0"});
        }
    }
    // Label checks apply only where labels exist.
    {
        std::map<GroupElement, int> first_owner;
        for (int v = 0; v < g.vertex_count(); ++v) {
            const auto& lbl = g.label(v);
            if (!lbl) continue;
            auto [it, inserted] = first_owner.emplace(*lbl, v);
            if (!inserted) {
                out.push_back({ViolationKind::DuplicateLabel,
                               "vertices " + std::to_string(it->second) +
                                   " and " + std::to_string(v)});
            }
        }
    }
    if (g.host()) {
        const GroupDescriptor& desc = *g.host();
        for (const auto& e : edges) {
            const auto& la = g.label(e.first);
            const auto& lb = g.label(e.second);
            if (!la || !lb) continue;
            bool adjacent = false;
            for (const auto& s : desc.generators()) {
                if (multiply(desc, *la, s) == *lb) {
                    adjacent = true;
                    break;
                }
            }
            if (!adjacent) {
                out.push_back(
                    {ViolationKind::HostEdgeMismatch, edge_name(e)});
            }
        }
    }
    return out;
}

void require_valid(const GraphWithBoundary& g) {
    auto violations = validate(g);
    if (violations.empty()) return;
    std::string msg = "graph fails validation:";
    for (const auto& v : violations) {
        msg += " [" + to_string(v.kind);
        if (!v.detail.empty()) msg += " " + v.detail;
        msg += "]";
    }
    if (violations.size() == 1 &&
        violations[0].kind == ViolationKind::Disconnected) {
        throw DisconnectedInput(msg);
    }
    throw InvalidInput(msg);
}

namespace {

std::vector<GroupElement> sorted_unique(std::vector<GroupElement> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

std::vector<GroupElement> vertex_boundary(const InducedSubsetSpec& spec) {
    if (spec.omega.empty()) {
        throw InvalidInput("induced subset is empty");
    }
    auto omega = sorted_unique(spec.omega);
    ElementSet inside(omega.begin(), omega.end());
    ElementSet outside;
    std::vector<GroupElement> out;
    for (const auto& x : omega) {
        for (const auto& s : spec.host.generators()) {
            GroupElement n = multiply(spec.host, x, s);
            if (!inside.count(n) && outside.insert(n).second) {
                out.push_back(std::move(n));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GraphWithBoundary induce(const InducedSubsetSpec& spec) {
    auto omega = sorted_unique(spec.omega);
    auto delta = vertex_boundary(spec);

    std::vector<Vertex> vertices;
    vertices.reserve(omega.size() + delta.size());
    ElementMap<int> index;
    for (const auto& x : omega) {
        index.emplace(x, static_cast<int>(vertices.size()));
        vertices.push_back({x, false});
    }
    for (const auto& x : delta) {
        index.emplace(x, static_cast<int>(vertices.size()));
        vertices.push_back({x, true});
    }

    // Every host edge with at least one endpoint in omega.
    std::set<std::pair<int, int>> edges;
    for (const auto& x : omega) {
        const int i = index.at(x);
        for (const auto& s : spec.host.generators()) {
            auto it = index.find(multiply(spec.host, x, s));
            if (it == index.end()) continue;
            const int j = it->second;
            edges.emplace(std::min(i, j), std::max(i, j));
        }
    }

    auto g = GraphWithBoundary::make(
        std::move(vertices),
        std::vector<std::pair<int, int>>(edges.begin(), edges.end()),
        spec.host);
    require_valid(g);
    return g;
}

GraphWithBoundary example_family_g(int n) {
    if (n < 1) {
        throw InvalidInput("family parameter must be >= 1, got " +
                           std::to_string(n));
    }
    // Interior vertices 0..n-1, boundary vertices n and n+1.
    std::vector<Vertex> vertices(static_cast<std::size_t>(n) + 2);
    vertices[static_cast<std::size_t>(n)].boundary = true;
    vertices[static_cast<std::size_t>(n) + 1].boundary = true;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        edges.emplace_back(i, n);
        edges.emplace_back(i, n + 1);
    }
    return GraphWithBoundary::make(std::move(vertices), std::move(edges));
}

} // namespace steklov
