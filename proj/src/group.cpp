#include "steklov/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <string>

namespace steklov {

namespace {

std::string coords_to_string(const GroupElement& g) {
    std::string out = "(";
    for (std::size_t i = 0; i < g.coords.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(g.coords[i]);
    }
    return out + ")";
}

void check_element(const GroupDescriptor& desc, const GroupElement& g,
                   const char* role) {
    if (static_cast<int>(g.coords.size()) != desc.coord_size()) {
        throw InvalidInput(std::string(role) + " has " +
                           std::to_string(g.coords.size()) +
                           " coordinates, descriptor expects " +
                           std::to_string(desc.coord_size()));
    }
}

} // namespace

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
    // FNV-1a over the coordinate bytes; stable across platforms.
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t c : g.coords) {
        auto u = static_cast<std::uint64_t>(c);
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (u >> (8 * byte)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    return static_cast<std::size_t>(h);
}

GroupDescriptor::GroupDescriptor(GroupKind kind, int rank, int coord_size,
                                 int growth_order,
                                 std::vector<GroupElement> generators)
    : kind_(kind),
      rank_(rank),
      coord_size_(coord_size),
      growth_order_(growth_order),
      generators_(std::move(generators)) {
    if (generators_.empty()) {
        throw InvalidInput("generating set is empty");
    }
    GroupElement id;
    id.coords.assign(coord_size_, 0);
    std::set<GroupElement> seen;
    for (const auto& s : generators_) {
        check_element(*this, s, "generator");
        if (s == id) {
            throw InvalidInput("generating set contains the identity");
        }
        if (!seen.insert(s).second) {
            throw InvalidInput("generating set contains a duplicate " +
                               coords_to_string(s));
        }
    }
    for (const auto& s : generators_) {
        if (!seen.count(inverse(*this, s))) {
            throw InvalidInput("generating set is not symmetric: missing "
                               "inverse of " + coords_to_string(s));
        }
    }
    std::sort(generators_.begin(), generators_.end());
}

GroupDescriptor GroupDescriptor::free_abelian(int rank) {
    if (rank < 1) {
        throw InvalidInput("free abelian rank must be >= 1, got " +
                           std::to_string(rank));
    }
    std::vector<GroupElement> gens;
    for (int i = 0; i < rank; ++i) {
        for (int sign : {-1, 1}) {
            GroupElement e;
            e.coords.assign(rank, 0);
            e.coords[i] = sign;
            gens.push_back(std::move(e));
        }
    }
    return GroupDescriptor(GroupKind::FreeAbelian, rank, rank, rank,
                           std::move(gens));
}

GroupDescriptor GroupDescriptor::heisenberg() {
    std::vector<GroupElement> gens;
    for (int axis = 0; axis < 2; ++axis) {
        for (int sign : {-1, 1}) {
            GroupElement e;
            e.coords.assign(3, 0);
            e.coords[axis] = sign;
            gens.push_back(std::move(e));
        }
    }
    return GroupDescriptor(GroupKind::Heisenberg, 0, 3, 4, std::move(gens));
}

GroupDescriptor GroupDescriptor::with_generators(
    GroupKind kind, int rank, std::vector<GroupElement> generators) {
    if (kind == GroupKind::Heisenberg) {
        return GroupDescriptor(kind, 0, 3, 4, std::move(generators));
    }
    if (rank < 1) {
        throw InvalidInput("free abelian rank must be >= 1, got " +
                           std::to_string(rank));
    }
    return GroupDescriptor(kind, rank, rank, rank, std::move(generators));
}

GroupElement GroupDescriptor::identity() const {
    GroupElement e;
    e.coords.assign(coord_size_, 0);
    return e;
}

GroupElement multiply(const GroupDescriptor& desc, const GroupElement& g,
                      const GroupElement& h) {
    check_element(desc, g, "left factor");
    check_element(desc, h, "right factor");
    GroupElement out;
    out.coords.resize(g.coords.size());
    switch (desc.kind()) {
        case GroupKind::FreeAbelian:
            for (std::size_t i = 0; i < g.coords.size(); ++i) {
                out.coords[i] = g.coords[i] + h.coords[i];
            }
            break;
        case GroupKind::Heisenberg:
            out.coords[0] = g.coords[0] + h.coords[0];
            out.coords[1] = g.coords[1] + h.coords[1];
            out.coords[2] = g.coords[2] + h.coords[2] +
                            g.coords[0] * h.coords[1];
            break;
    }
    return out;
}

GroupElement inverse(const GroupDescriptor& desc, const GroupElement& g) {
    check_element(desc, g, "element");
    GroupElement out;
    out.coords.resize(g.coords.size());
    switch (desc.kind()) {
        case GroupKind::FreeAbelian:
            for (std::size_t i = 0; i < g.coords.size(); ++i) {
                out.coords[i] = -g.coords[i];
            }
            break;
        case GroupKind::Heisenberg:
            out.coords[0] = -g.coords[0];
            out.coords[1] = -g.coords[1];
            out.coords[2] = g.coords[0] * g.coords[1] - g.coords[2];
            break;
    }
    return out;
}

namespace {

/// Layered BFS over the Cayley graph from `sources` (distance 0) out to
/// `radius`. Calls visit(element, distance) once per discovered element.
template <typename Visit>
void bfs_layers(const GroupDescriptor& desc,
                const std::vector<GroupElement>& sources, int radius,
                const BallOptions& opts, Visit&& visit) {
    if (radius < 0) {
        throw InvalidInput("radius must be >= 0, got " +
                           std::to_string(radius));
    }
    ElementSet seen;
    std::deque<GroupElement> frontier;
    for (const auto& s : sources) {
        check_element(desc, s, "source");
        if (seen.insert(s).second) {
            frontier.push_back(s);
            visit(s, 0);
        }
    }
    for (int dist = 1; dist <= radius && !frontier.empty(); ++dist) {
        std::deque<GroupElement> next;
        for (const auto& g : frontier) {
            for (const auto& s : desc.generators()) {
                GroupElement n = multiply(desc, g, s);
                if (seen.insert(n).second) {
                    if (seen.size() > opts.cap) {
                        throw ResourceLimit(
                            "ball enumeration exceeded cap of " +
                            std::to_string(opts.cap) + " elements");
                    }
                    visit(n, dist);
                    next.push_back(std::move(n));
                }
            }
        }
        frontier.swap(next);
    }
}

} // namespace

std::vector<GroupElement> ball(const GroupDescriptor& desc,
                               const GroupElement& center, int radius,
                               const BallOptions& opts) {
    std::vector<GroupElement> out;
    bfs_layers(desc, {center}, radius, opts,
               [&](const GroupElement& g, int) { out.push_back(g); });
    std::sort(out.begin(), out.end());
    return out;
}

ElementMap<int> ball_distances(const GroupDescriptor& desc,
                               const GroupElement& center, int radius,
                               const BallOptions& opts) {
    ElementMap<int> out;
    bfs_layers(desc, {center}, radius, opts,
               [&](const GroupElement& g, int dist) { out.emplace(g, dist); });
    return out;
}

ElementMap<int> distances_from_set(const GroupDescriptor& desc,
                                   const std::vector<GroupElement>& sources,
                                   int radius, const BallOptions& opts) {
    if (sources.empty()) {
        throw InvalidInput("distances_from_set needs at least one source");
    }
    ElementMap<int> out;
    bfs_layers(desc, sources, radius, opts,
               [&](const GroupElement& g, int dist) { out.emplace(g, dist); });
    return out;
}

GrowthEstimate growth_function(const GroupDescriptor& desc, int n_max,
                               const BallOptions& opts) {
    if (n_max < 1) {
        throw InvalidInput("growth horizon must be >= 1, got " +
                           std::to_string(n_max));
    }
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n_max) + 1, 0);
    bfs_layers(desc, {desc.identity()}, n_max, opts,
               [&](const GroupElement&, int dist) { ++counts[dist]; });
    GrowthEstimate est;
    est.n_max = n_max;
    const int order = desc.growth_order();
    std::int64_t cumulative = 0;
    std::int64_t previous = 0;
    double c = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        cumulative += counts[n];
        if (n == 0) {
            previous = cumulative;
            continue;
        }
        if (cumulative <= previous) {
            throw InvariantViolation("ball sizes are not strictly increasing "
                                     "at radius " + std::to_string(n));
        }
        previous = cumulative;
        est.samples.emplace_back(n, cumulative);
        const double poly = std::pow(static_cast<double>(n), order);
        const double v = static_cast<double>(cumulative);
        c = std::max({c, v / poly, poly / v});
    }
    est.growth_constant = c;
    return est;
}

std::int64_t covering_count(double growth_constant, double a, double b,
                            int order) {
    if (!(growth_constant >= 1.0)) {
        throw InvalidInput("growth constant must be >= 1");
    }
    if (!(a > 0.0) || !(b > 0.0)) {
        throw InvalidInput("covering radii fractions must be positive");
    }
    if (order < 1) {
        throw InvalidInput("growth order must be >= 1");
    }
    const double value = growth_constant * growth_constant *
                         std::pow((2.0 * a + b) / b, order);
    // Snap values within relative 1e-9 of an integer before the ceiling, so
    // exact products like 9 * 13 do not become 118 through rounding noise.
    const double nearest = std::round(value);
    double ceiled;
    if (std::abs(value - nearest) <= 1e-9 * std::max(1.0, std::abs(value))) {
        ceiled = nearest;
    } else {
        ceiled = std::ceil(value);
    }
    if (ceiled > 9.0e18) {
        throw ResourceLimit("covering count overflows a 64-bit integer");
    }
    return static_cast<std::int64_t>(ceiled);
}

std::optional<int> word_distance(const GroupDescriptor& desc,
                                 const GroupElement& g, const GroupElement& h,
                                 int cap, const BallOptions& opts) {
    if (cap < 0) {
        throw InvalidInput("distance cap must be >= 0, got " +
                           std::to_string(cap));
    }
    check_element(desc, g, "element");
    check_element(desc, h, "element");
    std::optional<int> found;
    bfs_layers(desc, {g}, cap, opts, [&](const GroupElement& e, int dist) {
        if (!found && e == h) found = dist;
    });
    return found;
}

std::vector<GroupElement> separated_net(const GroupDescriptor& desc,
                                        const GroupElement& center, int radius,
                                        int separation,
                                        const BallOptions& opts) {
    if (separation < 1) {
        throw InvalidInput("separation must be >= 1, got " +
                           std::to_string(separation));
    }
    const std::vector<GroupElement> candidates =
        ball(desc, center, radius, opts);
    // Maximal greedy selection: a candidate joins the net unless it lies
    // within separation-1 of an already chosen point. Tracking the union of
    // those small balls keeps the scan linear in |candidates|.
    ElementSet blocked;
    std::vector<GroupElement> net;
    for (const auto& x : candidates) {
        if (blocked.count(x)) continue;
        net.push_back(x);
        bfs_layers(desc, {x}, separation - 1, opts,
                   [&](const GroupElement& g, int) { blocked.insert(g); });
    }
    return net;
}

std::vector<GroupElement> random_connected_subset(const GroupDescriptor& desc,
                                                  int size, std::uint64_t seed,
                                                  const BallOptions& opts) {
    if (size < 1) {
        throw InvalidInput("subset size must be >= 1, got " +
                           std::to_string(size));
    }
    if (static_cast<std::size_t>(size) > opts.cap) {
        throw ResourceLimit("subset size exceeds enumeration cap");
    }
    // mt19937_64 with modulo reduction is fully specified by the standard,
    // so the same seed yields the same subset on every platform.
    std::mt19937_64 rng(seed);
    std::set<GroupElement> chosen;
    chosen.insert(desc.identity());
    std::set<GroupElement> frontier;
    for (const auto& s : desc.generators()) {
        frontier.insert(multiply(desc, desc.identity(), s));
    }
    while (static_cast<int>(chosen.size()) < size) {
        auto it = frontier.begin();
        std::advance(it, static_cast<long>(rng() % frontier.size()));
        GroupElement pick = *it;
        frontier.erase(it);
        chosen.insert(pick);
        for (const auto& s : desc.generators()) {
            GroupElement n = multiply(desc, pick, s);
            if (!chosen.count(n)) frontier.insert(n);
        }
    }
    return std::vector<GroupElement>(chosen.begin(), chosen.end());
}

} // namespace steklov
