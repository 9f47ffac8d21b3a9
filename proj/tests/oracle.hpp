#pragma once

// Reference implementations used only by tests. These deliberately take a
// different route from the library (std::map traversal, DP counting, full
// quadratic forms) so that agreement is evidence rather than tautology.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "steklov/group.hpp"

namespace oracle {

/// Plain BFS over the Cayley graph using an ordered map and an explicit
/// work list. Returns element -> distance for the closed ball.
inline std::map<steklov::GroupElement, int> bfs_ball(
    const steklov::GroupDescriptor& desc, const steklov::GroupElement& center,
    int radius) {
    std::map<steklov::GroupElement, int> dist;
    dist[center] = 0;
    std::vector<steklov::GroupElement> work{center};
    std::size_t head = 0;
    while (head < work.size()) {
        steklov::GroupElement g = work[head++];
        int d = dist.at(g);
        if (d == radius) continue;
        for (const auto& s : desc.generators()) {
            steklov::GroupElement n = steklov::multiply(desc, g, s);
            if (!dist.count(n)) {
                dist[n] = d + 1;
                work.push_back(n);
            }
        }
    }
    return dist;
}

/// Number of points of Z^rank with l1 norm <= n, by dynamic programming
/// over the coordinates. No graph search involved.
inline std::int64_t zd_ball_size(int rank, int n) {
    if (rank < 1 || n < 0) throw std::invalid_argument("bad zd_ball_size args");
    // exact[m] = number of tuples with l1 norm exactly m.
    std::vector<std::int64_t> exact(static_cast<std::size_t>(n) + 1, 0);
    exact[0] = 1;
    for (int d = 0; d < rank; ++d) {
        std::vector<std::int64_t> next(exact.size(), 0);
        for (int m = 0; m <= n; ++m) {
            if (exact[m] == 0) continue;
            next[m] += exact[m];
            for (int t = 1; m + t <= n; ++t) {
                next[m + t] += 2 * exact[m];
            }
        }
        exact.swap(next);
    }
    std::int64_t total = 0;
    for (std::int64_t v : exact) total += v;
    return total;
}

} // namespace oracle
