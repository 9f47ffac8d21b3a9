#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

enum class GroupKind { FreeAbelian, Heisenberg };

/// Element of a supported group in coordinate normal form: (x_1, ..., x_r)
/// for Z^r, (x, y, z) for the discrete Heisenberg group. Comparison is
/// coordinate-wise lexicographic, which fixes every ordering in this library.
struct GroupElement {
    std::vector<std::int64_t> coords;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& g) const noexcept;
};

template <typename T>
using ElementMap = std::unordered_map<GroupElement, T, GroupElementHash>;
using ElementSet = std::unordered_set<GroupElement, GroupElementHash>;

/// Identifies a group together with a finite symmetric generating set.
/// The generating set never contains the identity and is closed under
/// inversion, so the Cayley graph is simple and undirected.
class GroupDescriptor {
public:
    /// Z^rank with the standard generators {+-e_i}.
    static GroupDescriptor free_abelian(int rank);

    /// Discrete Heisenberg group with generators {(+-1,0,0), (0,+-1,0)}.
    /// Multiplication is (x,y,z)*(x',y',z') = (x+x', y+y', z+z'+x*y').
    static GroupDescriptor heisenberg();

    /// Same groups with a caller-chosen symmetric generating set.
    static GroupDescriptor with_generators(GroupKind kind, int rank,
                                           std::vector<GroupElement> generators);

    GroupKind kind() const { return kind_; }
    /// Polynomial growth order D: rank for Z^rank, 4 for Heisenberg.
    int growth_order() const { return growth_order_; }
    /// Number of coordinates in an element's normal form.
    int coord_size() const { return coord_size_; }
    /// Degree of the Cayley graph, |S|.
    int degree() const { return static_cast<int>(generators_.size()); }
    const std::vector<GroupElement>& generators() const { return generators_; }
    GroupElement identity() const;
    /// Rank of the abelian part (rank for Z^rank, 0 for Heisenberg).
    int rank() const { return rank_; }

private:
    GroupDescriptor(GroupKind kind, int rank, int coord_size, int growth_order,
                    std::vector<GroupElement> generators);

    GroupKind kind_;
    int rank_;
    int coord_size_;
    int growth_order_;
    std::vector<GroupElement> generators_;
};

GroupElement multiply(const GroupDescriptor& desc, const GroupElement& g,
                      const GroupElement& h);
GroupElement inverse(const GroupDescriptor& desc, const GroupElement& g);

struct BallOptions {
    /// Hard limit on enumerated elements; exceeding it throws ResourceLimit.
    std::size_t cap = 1'000'000;
};

/// Closed word-metric ball around `center`, sorted lexicographically.
std::vector<GroupElement> ball(const GroupDescriptor& desc,
                               const GroupElement& center, int radius,
                               const BallOptions& opts = {});

/// Word distances from `center` for every element within `radius`.
ElementMap<int> ball_distances(const GroupDescriptor& desc,
                               const GroupElement& center, int radius,
                               const BallOptions& opts = {});

/// Word distances to the nearest element of `sources`, up to `radius`.
ElementMap<int> distances_from_set(const GroupDescriptor& desc,
                                   const std::vector<GroupElement>& sources,
                                   int radius, const BallOptions& opts = {});

struct GrowthEstimate {
    /// (n, |B(n)|) for n = 1..n_max. Strictly increasing in the second slot.
    std::vector<std::pair<int, std::int64_t>> samples;
    /// Smallest C >= 1 with C^-1 n^D <= |B(n)| <= C n^D on the samples.
    double growth_constant = 1.0;
    int n_max = 0;
};

GrowthEstimate growth_function(const GroupDescriptor& desc, int n_max,
                               const BallOptions& opts = {});

/// ceil(C^2 * ((2a + b) / b)^D): the number of radius-(b*R) balls that
/// suffice to cover a radius-(a*R) ball in a group with growth constant C
/// and growth order D. Near-integer values are snapped before the ceiling
/// so exact products do not round up spuriously.
std::int64_t covering_count(double growth_constant, double a, double b,
                            int order);

/// BFS word distance from g to h, or nullopt if it exceeds `cap`.
std::optional<int> word_distance(const GroupDescriptor& desc,
                                 const GroupElement& g, const GroupElement& h,
                                 int cap, const BallOptions& opts = {});

/// Greedy maximal `separation`-separated subset of ball(center, radius),
/// scanned in lexicographic order. Maximality makes the separation-radius
/// balls around the returned points cover the whole input ball.
std::vector<GroupElement> separated_net(const GroupDescriptor& desc,
                                        const GroupElement& center, int radius,
                                        int separation,
                                        const BallOptions& opts = {});

/// Deterministic random connected subset of the Cayley graph containing the
/// identity, grown one frontier vertex at a time. Sorted lexicographically.
std::vector<GroupElement> random_connected_subset(const GroupDescriptor& desc,
                                                  int size, std::uint64_t seed,
                                                  const BallOptions& opts = {});

} // namespace steklov
