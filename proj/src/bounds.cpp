#include "steklov/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "steklov/spectrum.hpp"

namespace steklov {

ConstantChain constant_chain(const GroupDescriptor& desc,
                             const GrowthEstimate& growth) {
    if (!(growth.growth_constant >= 1.0)) {
        throw InvalidInput("growth constant must be >= 1");
    }
    ConstantChain chain;
    chain.growth_constant = growth.growth_constant;
    chain.growth_n_max = growth.n_max;
    chain.order = desc.growth_order();
    chain.degree = desc.degree();
    const double c = growth.growth_constant;
    const int d = chain.order;
    chain.c1 = covering_count(c, 3.0, 0.5, d);
    const double c1p1 = static_cast<double>(chain.c1) + 1.0;
    chain.c2 = static_cast<double>(chain.degree) * c1p1;
    chain.c3 = std::max(c, static_cast<double>(chain.degree));
    chain.c4 = chain.c3 * chain.c3 * std::pow(3.0, d) / 2.0;
    chain.c5 = c1p1 * chain.c4;
    chain.c6 = std::pow(chain.c4, 2.0 / d);
    chain.c7 = chain.c6 * std::pow(chain.c3 / 2.0,
                                   static_cast<double>(d - 2) / d);
    chain.c8 = c1p1 * chain.c7;
    chain.c_final =
        d <= 2 ? std::max(chain.c5, chain.c2) : std::max(chain.c8, chain.c2);
    return chain;
}

namespace {

void check_order(const ConstantChain& chain, int order) {
    if (order != chain.order) {
        throw InvalidInput("growth order " + std::to_string(order) +
                           " does not match the constant chain's order " +
                           std::to_string(chain.order));
    }
    if (order < 1) {
        throw InvalidInput("growth order must be >= 1");
    }
}

} // namespace

double theorem1_bound(const GraphWithBoundary& g, const ConstantChain& chain,
                      int order) {
    check_order(chain, order);
    const double b = static_cast<double>(g.boundary_count());
    if (g.boundary_count() < 2) {
        throw SigmaOneUndefined("bound needs at least two boundary vertices");
    }
    if (order <= 2) {
        return chain.c_final / b;
    }
    const double n = static_cast<double>(g.vertex_count());
    return chain.c_final *
           std::pow(n, static_cast<double>(order - 2) / order) / b;
}

CorollaryBounds corollary_bounds(const GraphWithBoundary& g,
                                 const ConstantChain& chain, int order) {
    check_order(chain, order);
    if (g.boundary_count() < 2) {
        throw SigmaOneUndefined("bound needs at least two boundary vertices");
    }
    const double b = static_cast<double>(g.boundary_count());
    const double n = static_cast<double>(g.vertex_count());
    CorollaryBounds out;
    const double iso =
        std::pow(n, static_cast<double>(order - 1) / order) / b;
    // Clamping at 1 only weakens the bounds, keeping them valid for graphs
    // with unusually large boundaries.
    out.iso_constant = std::max(1.0, iso);
    if (order == 1) {
        out.corollary1 = chain.c_final / b;
    } else {
        out.corollary1 =
            chain.c_final *
            std::pow(out.iso_constant,
                     static_cast<double>(order - 2) / (order - 1)) /
            std::pow(b, 1.0 / (order - 1));
    }
    out.corollary2 =
        chain.c_final * out.iso_constant / std::pow(n, 1.0 / order);
    return out;
}

IsoperimetricReport isoperimetric_ratio(const InducedSubsetSpec& spec) {
    IsoperimetricReport out;
    auto delta = vertex_boundary(spec);
    std::vector<GroupElement> omega = spec.omega;
    std::sort(omega.begin(), omega.end());
    omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
    out.omega_size = static_cast<std::int64_t>(omega.size());
    out.boundary_size = static_cast<std::int64_t>(delta.size());
    out.closure_size = out.omega_size + out.boundary_size;
    const int order = spec.host.growth_order();
    out.ratio = std::pow(static_cast<double>(out.closure_size),
                         static_cast<double>(order - 1) / order) /
                static_cast<double>(out.boundary_size);
    return out;
}

std::string to_string(CertificateBranch branch) {
    switch (branch) {
        case CertificateBranch::SmallBoundary: return "small_boundary";
        case CertificateBranch::TestFunctions: return "test_functions";
    }
    return "unknown";
}

namespace {

/// Smallest r with |B(x, r) and targets| >= num/den, scanning outward by
/// BFS. Gives up and returns limit + 1 once r would exceed `limit`.
int mass_radius(const GroupDescriptor& desc, const GroupElement& x,
                const ElementSet& targets, std::int64_t num, std::int64_t den,
                int limit, const BallOptions& opts) {
    ElementSet seen{x};
    std::deque<GroupElement> frontier{x};
    std::int64_t count = targets.count(x) ? 1 : 0;
    if (count * den >= num) return 0;
    for (int r = 1; r <= limit; ++r) {
        std::deque<GroupElement> next;
        for (const auto& g : frontier) {
            for (const auto& s : desc.generators()) {
                GroupElement n = multiply(desc, g, s);
                if (!seen.insert(n).second) continue;
                if (seen.size() > opts.cap) {
                    throw ResourceLimit(
                        "certificate radius search exceeded the element cap");
                }
                if (targets.count(n)) ++count;
                next.push_back(std::move(n));
            }
        }
        if (count * den >= num) return r;
        frontier.swap(next);
    }
    return limit + 1;
}

BoundCertificate small_boundary_certificate(std::int64_t alpha_num,
                                            std::int64_t alpha_den,
                                            const ConstantChain& chain,
                                            std::string reason) {
    BoundCertificate cert;
    cert.branch = CertificateBranch::SmallBoundary;
    cert.alpha_num = alpha_num;
    cert.alpha_den = alpha_den;
    cert.certified_bound = static_cast<double>(chain.degree);
    cert.fallback_reason = std::move(reason);
    return cert;
}

} // namespace

BoundCertificate certify_sigma1(const GraphWithBoundary& g,
                                const GroupDescriptor& desc,
                                const ConstantChain& chain,
                                const BallOptions& opts) {
    require_valid(g);
    if (g.boundary_count() < 2) {
        throw SigmaOneUndefined(
            "certificate needs at least two boundary vertices");
    }
    if (!g.fully_labeled()) {
        throw MissingHostLabels(
            "certificate needs host labels on every vertex");
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (static_cast<int>(g.label(v)->coords.size()) != desc.coord_size()) {
            throw InvalidInput("vertex label width does not match the host");
        }
    }
    // Degree and distance arguments below need every edge of the graph to
    // be an edge of the host Cayley graph.
    for (const auto& [a, b] : g.edges()) {
        bool realized = false;
        for (const auto& s : desc.generators()) {
            if (multiply(desc, *g.label(a), s) == *g.label(b)) {
                realized = true;
                break;
            }
        }
        if (!realized) {
            throw InvalidInput("edge (" + std::to_string(a) + "," +
                               std::to_string(b) +
                               ") is not an edge of the host graph");
        }
    }

    const std::int64_t b = g.boundary_count();
    const std::int64_t alpha_den = chain.c1 + 1;
    if (b <= alpha_den) {
        return small_boundary_certificate(b, alpha_den, chain, "");
    }

    // Boundary label set.
    ElementSet boundary_labels;
    for (int v : g.boundary_vertices()) {
        boundary_labels.insert(*g.label(v));
    }

    // Search set: all vertex labels, later widened by balls around boundary
    // labels. Any element outside the widened set is at host distance at
    // least the first-pass radius from every boundary label, so it cannot
    // do better than the minimum found inside.
    std::vector<GroupElement> first_pass;
    first_pass.reserve(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) {
        first_pass.push_back(*g.label(v));
    }
    std::sort(first_pass.begin(), first_pass.end());

    const int hard_limit = 1 << 20;
    int best = hard_limit;
    for (const auto& x : first_pass) {
        const int r = mass_radius(desc, x, boundary_labels, b, alpha_den,
                                  std::min(best, hard_limit - 1), opts);
        best = std::min(best, r);
    }
    if (best >= hard_limit) {
        throw InvariantViolation("certificate radius search did not settle");
    }

    ElementSet widened(first_pass.begin(), first_pass.end());
    if (best > 1) {
        for (int v : g.boundary_vertices()) {
            for (const auto& e : ball(desc, *g.label(v), best - 1, opts)) {
                widened.insert(e);
            }
        }
    }
    std::vector<GroupElement> search_set(widened.begin(), widened.end());
    std::sort(search_set.begin(), search_set.end());

    int radius = best;
    const GroupElement* center = nullptr;
    for (const auto& x : search_set) {
        const int r =
            mass_radius(desc, x, boundary_labels, b, alpha_den, radius, opts);
        if (r < radius || (r == radius && center == nullptr)) {
            radius = r;
            center = &x;
        }
    }
    if (center == nullptr) {
        throw InvariantViolation("certificate radius search lost its center");
    }

    BoundCertificate cert;
    cert.branch = CertificateBranch::TestFunctions;
    cert.alpha_num = b;
    cert.alpha_den = alpha_den;
    cert.radius = radius;
    cert.center = *center;

    // Host distances from the center out to the far sphere.
    const auto dist = ball_distances(desc, *center, 3 * radius + 1, opts);
    std::int64_t ball_count = 0;
    std::int64_t complement_count = 0;
    for (int v : g.boundary_vertices()) {
        auto it = dist.find(*g.label(v));
        if (it != dist.end() && it->second <= radius) ++ball_count;
        if (it == dist.end() || it->second > 3 * radius) ++complement_count;
    }
    cert.ball_boundary_count = ball_count;
    cert.complement_boundary_count = complement_count;
    if (ball_count * alpha_den < b) {
        throw InvariantViolation(
            "radius search returned a ball with too little boundary mass");
    }
    // The covering argument guarantees mass alpha beyond the 3R ball only
    // when the chain's c1 is honest; a synthetic chain can land here.
    if (complement_count * alpha_den < b) {
        auto fallback = small_boundary_certificate(b, alpha_den, chain,
                                                   "complement_mass");
        fallback.radius = radius;
        fallback.center = *center;
        fallback.ball_boundary_count = ball_count;
        fallback.complement_boundary_count = complement_count;
        return fallback;
    }

    // Distance to the sphere at 3R + 1, for the inner taper of f2. BFS from
    // the whole sphere keeps this correct in hosts where radial geodesics
    // do not extend.
    std::vector<GroupElement> sphere;
    for (const auto& [e, d] : dist) {
        if (d == 3 * radius + 1) sphere.push_back(e);
    }
    ElementMap<int> sphere_dist;
    if (!sphere.empty()) {
        sphere_dist = distances_from_set(desc, sphere, radius, opts);
    }

    const double r_double = static_cast<double>(radius);
    cert.f1 = Eigen::VectorXd::Zero(g.vertex_count());
    cert.f2 = Eigen::VectorXd::Zero(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& label = *g.label(v);
        auto it = dist.find(label);
        const bool far = (it == dist.end()) || (it->second > 3 * radius);
        if (!far) {
            const int d = it->second;
            if (d <= radius) {
                cert.f1(v) = 1.0;
            } else if (d < 2 * radius) {
                cert.f1(v) = static_cast<double>(2 * radius - d) / r_double;
            }
            auto kt = sphere_dist.find(label);
            if (kt != sphere_dist.end() && kt->second < radius) {
                cert.f2(v) =
                    static_cast<double>(radius - kt->second) / r_double;
            }
        } else {
            cert.f2(v) = 1.0;
        }
    }

    // Support gap: no vertex, and no edge, joins the two supports.
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (cert.f1(v) != 0.0 && cert.f2(v) != 0.0) {
            throw InvariantViolation("test function supports overlap");
        }
    }
    for (const auto& [u, w] : g.edges()) {
        const bool in1 = cert.f1(u) != 0.0 || cert.f1(w) != 0.0;
        const bool in2 = cert.f2(u) != 0.0 || cert.f2(w) != 0.0;
        if (in1 && in2) {
            throw InvariantViolation("test function supports share an edge");
        }
    }

    double mass2 = 0.0;
    for (int v : g.boundary_vertices()) {
        mass2 += cert.f2(v) * cert.f2(v);
    }
    if (mass2 == 0.0) {
        auto fallback = small_boundary_certificate(b, alpha_den, chain,
                                                   "zero_denominator");
        fallback.radius = radius;
        fallback.center = *center;
        fallback.ball_boundary_count = ball_count;
        fallback.complement_boundary_count = complement_count;
        return fallback;
    }

    cert.rayleigh1 = rayleigh(g, cert.f1);
    cert.rayleigh2 = rayleigh(g, cert.f2);
    cert.certified_bound = std::max(*cert.rayleigh1, *cert.rayleigh2);
    return cert;
}

} // namespace steklov
