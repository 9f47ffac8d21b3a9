#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steklov/group.hpp"

namespace steklov {

struct Vertex {
    /// Host group element this vertex sits on, when the graph is embedded.
    std::optional<GroupElement> label;
    bool boundary = false;
};

/// Finite graph with a distinguished nonempty boundary set, optionally
/// embedded in the Cayley graph of a host group. Construction normalizes
/// edge endpoint order and sorts the edge list but deliberately keeps loops
/// and duplicates, so validate() can report them.
class GraphWithBoundary {
public:
    static GraphWithBoundary make(std::vector<Vertex> vertices,
                                  std::vector<std::pair<int, int>> edges,
                                  std::optional<GroupDescriptor> host = {});

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const;
    bool is_boundary(int v) const;
    const std::optional<GroupElement>& label(int v) const;
    const std::optional<GroupDescriptor>& host() const { return host_; }

    /// Boundary vertex indices, ascending.
    const std::vector<int>& boundary_vertices() const { return boundary_; }
    /// Interior vertex indices, ascending.
    const std::vector<int>& interior_vertices() const { return interior_; }
    int boundary_count() const { return static_cast<int>(boundary_.size()); }
    int interior_count() const { return static_cast<int>(interior_.size()); }

    int degree(int v) const;
    int max_degree() const;
    /// True when every vertex carries a host label.
    bool fully_labeled() const;

private:
    GraphWithBoundary() = default;

    std::vector<Vertex> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> boundary_;
    std::vector<int> interior_;
    std::optional<GroupDescriptor> host_;
};

enum class ViolationKind {
    Loop,
    DuplicateEdge,
    EmptyBoundary,
    BoundaryEdge,
    Disconnected,
    DuplicateLabel,
    HostEdgeMismatch,
};

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string detail;
};

/// Structural checks: simplicity, nonempty boundary, no boundary-boundary
/// edges, connectivity, and (when host labels are present) distinct labels
/// with every edge realized by a generator.
std::vector<Violation> validate(const GraphWithBoundary& g);

/// Throws InvalidInput listing all violations, if any.
void require_valid(const GraphWithBoundary& g);

/// A finite subset of a host Cayley graph, inducing a graph with boundary.
struct InducedSubsetSpec {
    GroupDescriptor host;
    std::vector<GroupElement> omega;
};

/// Elements adjacent to omega but outside it, sorted lexicographically.
std::vector<GroupElement> vertex_boundary(const InducedSubsetSpec& spec);

/// Graph on omega and its vertex boundary with every edge of the host that
/// touches omega. Interior vertices come first, then boundary vertices,
/// each block in lexicographic label order. Throws DisconnectedInput when
/// omega is not connected in the host graph.
GraphWithBoundary induce(const InducedSubsetSpec& spec);

/// Two boundary vertices joined by n parallel interior paths of length 2.
/// Its first nonzero Steklov eigenvalue is exactly n.
GraphWithBoundary example_family_g(int n);

} // namespace steklov
