#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

#include "steklov/graph.hpp"

namespace steklov {

/// Constants derived from a growth estimate of the host group. Every bound
/// and certificate in this module is a deterministic function of this chain
/// and the instance, so reports always carry the growth horizon used.
struct ConstantChain {
    double growth_constant = 1.0;  // C
    int growth_n_max = 0;
    int order = 0;   // polynomial growth order D
    int degree = 0;  // Cayley graph degree d = |S|
    std::int64_t c1 = 0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
    double c5 = 0.0;
    double c6 = 0.0;
    double c7 = 0.0;
    double c8 = 0.0;
    double c_final = 0.0;
};

ConstantChain constant_chain(const GroupDescriptor& desc,
                             const GrowthEstimate& growth);

/// Upper bound on sigma_1 for a graph embedded in a host with the chain's
/// growth order: c_final / |B| when the order is at most 2, otherwise
/// c_final |V'|^((D-2)/D) / |B|.
double theorem1_bound(const GraphWithBoundary& g, const ConstantChain& chain,
                      int order);

struct CorollaryBounds {
    double corollary1 = 0.0;  // decays in the boundary size
    double corollary2 = 0.0;  // decays in the total size
    /// Isoperimetric constant used: max(1, |V'|^((D-1)/D) / |B|).
    double iso_constant = 1.0;
};

CorollaryBounds corollary_bounds(const GraphWithBoundary& g,
                                 const ConstantChain& chain, int order);

struct IsoperimetricReport {
    std::int64_t omega_size = 0;
    std::int64_t boundary_size = 0;
    std::int64_t closure_size = 0;
    /// |closure|^((D-1)/D) / |vertex boundary|.
    double ratio = 0.0;
};

IsoperimetricReport isoperimetric_ratio(const InducedSubsetSpec& spec);

enum class CertificateBranch { SmallBoundary, TestFunctions };

std::string to_string(CertificateBranch branch);

/// Constructive witness that sigma_1 <= certified_bound.
///
/// SmallBoundary: |B| <= c1 + 1; the bound is the host degree, which always
/// dominates sigma_1 for subgraphs of the Cayley graph.
///
/// TestFunctions: two explicitly built functions with disjoint supports
/// separated by a gap of host distance at least two, each supported on a
/// boundary mass of at least alpha = |B| / (c1 + 1); the certified bound is
/// the larger of their two Rayleigh quotients.
struct BoundCertificate {
    CertificateBranch branch = CertificateBranch::SmallBoundary;
    std::int64_t alpha_num = 0;  // alpha = |B| / (c1 + 1), kept exact
    std::int64_t alpha_den = 1;
    /// Smallest radius whose host ball captures boundary mass alpha,
    /// minimized over the search set; 0 on the SmallBoundary branch.
    int radius = 0;
    /// Lexicographically smallest minimizer of the radius.
    std::optional<GroupElement> center;
    std::optional<double> rayleigh1;
    std::optional<double> rayleigh2;
    double certified_bound = 0.0;
    /// |B(center, radius) boundary labels| and |B \ B(center, 3 radius)|.
    std::int64_t ball_boundary_count = 0;
    std::int64_t complement_boundary_count = 0;
    /// Vertex values of the two test functions (empty on SmallBoundary).
    Eigen::VectorXd f1;
    Eigen::VectorXd f2;
    /// Why a TestFunctions attempt fell back to SmallBoundary, if it did.
    std::string fallback_reason;

    double alpha() const {
        return static_cast<double>(alpha_num) / static_cast<double>(alpha_den);
    }
};

/// Builds the certificate for a fully labeled graph embedded in desc's
/// Cayley graph. Requires at least two boundary vertices, labels on every
/// vertex, and every edge realized by a host generator.
BoundCertificate certify_sigma1(const GraphWithBoundary& g,
                                const GroupDescriptor& desc,
                                const ConstantChain& chain,
                                const BallOptions& opts = {});

} // namespace steklov
