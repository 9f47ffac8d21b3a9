// Acceptance gate: runs every advertised guarantee end to end and prints one
// pass/fail line per criterion. Exits nonzero if any line fails. The CLI
// binary path must be passed as argv[1] (used by the determinism criterion).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "steklov/bounds.hpp"
#include "steklov/graph.hpp"
#include "steklov/group.hpp"
#include "steklov/spectrum.hpp"

namespace {

using namespace steklov;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

/// Structural facts recorded for every spectrum computed anywhere in the
/// gate; the DtN-structure and degree-bound criteria range over all of them.
struct SuiteEntry {
    std::string name;
    double asymmetry = 0.0;
    double row_sum = 0.0;
    double min_eigenvalue = 0.0;
    double sigma1 = 0.0;
    double max_degree = 0.0;
};

std::vector<SuiteEntry> g_suite;

SteklovSpectrum checked_spectrum(const GraphWithBoundary& g,
                                 const std::string& name) {
    auto s = spectrum(g);
    SuiteEntry e;
    e.name = name;
    e.asymmetry = s.diagnostics.max_asymmetry;
    e.row_sum = s.diagnostics.max_row_sum;
    e.min_eigenvalue = s.eigenvalues.front();
    e.sigma1 = g.boundary_count() >= 2 ? s.eigenvalues[1] : 0.0;
    e.max_degree = static_cast<double>(g.max_degree());
    g_suite.push_back(std::move(e));
    return s;
}

std::vector<GroupElement> box_subset(int rank,
                                     const std::vector<std::int64_t>& sides) {
    std::vector<GroupElement> omega;
    std::int64_t cells = 1;
    for (std::int64_t s : sides) cells *= s;
    std::vector<std::int64_t> coords(static_cast<std::size_t>(rank), 0);
    for (std::int64_t c = 0; c < cells; ++c) {
        std::int64_t rest = c;
        for (int i = 0; i < rank; ++i) {
            coords[static_cast<std::size_t>(i)] =
                rest % sides[static_cast<std::size_t>(i)];
            rest /= sides[static_cast<std::size_t>(i)];
        }
        omega.push_back(GroupElement{coords});
    }
    return omega;
}

/// Alternating interval in Z: Omega = {0, 2, ..., 2(k-1)}, so every other
/// host vertex is boundary and |B| = k + 1 grows without bound.
std::vector<GroupElement> z1_comb(int k) {
    std::vector<GroupElement> omega;
    for (int i = 0; i < k; ++i) omega.push_back(GroupElement{{2 * i}});
    return omega;
}

struct Line {
    bool ok = false;
    std::string text;
};

template <typename F>
Line guard(F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return {false, std::string("unexpected exception: ") + e.what()};
    }
}

Line criterion_example_family() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (int n = 1; n <= 30; ++n) {
        auto g = example_family_g(n);
        auto s = checked_spectrum(g, "example1 " + std::to_string(n));
        worst = std::max(worst, std::abs(s.sigma1() - static_cast<double>(n)));
    }
    const double secs = seconds_since(start);
    const bool ok = worst <= 1e-9 && secs < 5.0;
    return {ok, "parallel-path family sigma1 equals n for n = 1..30 (max "
                "error " + fmt(worst) + ", " + fmt(secs) + "s)"};
}

Line criterion_kernel() {
    auto z2 = GroupDescriptor::free_abelian(2);
    double worst_sigma0 = 0.0;
    double worst_dev = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int size = 3 + i % 18;
        auto omega = random_connected_subset(z2, size, 101 + i);
        auto g = induce({z2, omega});
        auto s = checked_spectrum(g, "kernel rand " + std::to_string(i));
        worst_sigma0 = std::max(worst_sigma0, std::abs(s.eigenvalues.front()));
        Eigen::VectorXd v = s.eigenvectors.col(0);
        const double dev = (v.array() - v.mean()).abs().maxCoeff();
        worst_dev = std::max(worst_dev, dev);
    }
    const bool ok = worst_sigma0 <= 1e-9 && worst_dev <= 1e-8;
    return {ok, "sigma0 vanishes with constant eigenvector on 100 random "
                "Z^2 subsets (|sigma0| <= " + fmt(worst_sigma0) +
                ", deviation <= " + fmt(worst_dev) + ")"};
}

Line criterion_oracle_agreement() {
    auto z2 = GroupDescriptor::free_abelian(2);
    double worst = 0.0;
    int comparisons = 0;
    for (int i = 0; i < 100; ++i) {
        const int size = 1 + i % 8;
        auto omega = random_connected_subset(z2, size, 211 + i);
        auto g = induce({z2, omega});
        auto s = checked_spectrum(g, "oracle rand " + std::to_string(i));
        for (int j = 0; j < g.boundary_count(); ++j) {
            worst = std::max(worst,
                             std::abs(s.eigenvalues[static_cast<std::size_t>(
                                          j)] -
                                      minmax_oracle(g, j)));
            ++comparisons;
        }
    }
    const bool ok = worst <= 1e-8;
    return {ok, "Schur spectrum matches the min-max oracle on 100 random "
                "Z^2 subsets, " + std::to_string(comparisons) +
                " eigenvalues (max gap " + fmt(worst) + ")"};
}

Line criterion_dtn_structure() {
    double asym = 0.0, row = 0.0, min_ev = 0.0;
    for (const auto& e : g_suite) {
        asym = std::max(asym, e.asymmetry);
        row = std::max(row, e.row_sum);
        min_ev = std::min(min_ev, e.min_eigenvalue);
    }
    const bool ok = asym <= 1e-12 && min_ev >= -1e-9 && row <= 1e-10;
    return {ok, "DtN symmetric/PSD/zero-row-sum on all " +
                std::to_string(g_suite.size()) + " suite instances "
                "(asymmetry " + fmt(asym) + ", min eigenvalue " + fmt(min_ev) +
                ", row sum " + fmt(row) + ")"};
}

Line criterion_degree_bound() {
    double worst_excess = -1e300;
    std::string worst_name = "-";
    for (const auto& e : g_suite) {
        const double excess = e.sigma1 - e.max_degree;
        if (excess > worst_excess) {
            worst_excess = excess;
            worst_name = e.name;
        }
    }
    const bool ok = worst_excess <= 1e-9;
    return {ok, "sigma1 <= max degree on all " +
                std::to_string(g_suite.size()) + " suite instances (tightest "
                "slack " + fmt(-worst_excess) + " at " + worst_name + ")"};
}

Line criterion_certificates() {
    struct Family {
        std::string name;
        GroupDescriptor desc;
        std::vector<GroupElement> omega;
    };
    std::vector<Family> cases;
    auto z1 = GroupDescriptor::free_abelian(1);
    auto z2 = GroupDescriptor::free_abelian(2);
    auto z3 = GroupDescriptor::free_abelian(3);
    auto heis = GroupDescriptor::heisenberg();
    for (int r = 1; r <= 8; ++r) {
        cases.push_back({"z1 ball " + std::to_string(r), z1,
                         ball(z1, z1.identity(), r)});
    }
    for (int k : {120, 125, 130}) {
        cases.push_back({"z1 comb " + std::to_string(k), z1, z1_comb(k)});
    }
    for (int r = 1; r <= 6; ++r) {
        cases.push_back({"z2 ball " + std::to_string(r), z2,
                         ball(z2, z2.identity(), r)});
    }
    for (int k = 1; k <= 6; ++k) {
        cases.push_back({"z2 box " + std::to_string(k), z2,
                         box_subset(2, {k, k})});
    }
    for (int l = 1; l <= 4; ++l) {
        cases.push_back({"z2 rect " + std::to_string(l), z2,
                         box_subset(2, {2, l})});
    }
    for (int i = 0; i < 10; ++i) {
        const int size = 5 + (3 * i) % 16;
        cases.push_back({"z2 rand " + std::to_string(i), z2,
                         random_connected_subset(z2, size, 301 + i)});
    }
    for (int k = 2; k <= 5; ++k) {
        cases.push_back({"z3 box " + std::to_string(k), z3,
                         box_subset(3, {k, k, k})});
    }
    for (int r = 1; r <= 3; ++r) {
        cases.push_back({"z3 ball " + std::to_string(r), z3,
                         ball(z3, z3.identity(), r)});
    }
    for (int r = 1; r <= 2; ++r) {
        cases.push_back({"heis ball " + std::to_string(r), heis,
                         ball(heis, heis.identity(), r)});
    }
    for (int i = 0; i < 5; ++i) {
        cases.push_back({"heis rand " + std::to_string(i), heis,
                         random_connected_subset(heis, 8 + i, 401 + i)});
    }

    std::map<int, ConstantChain> chains;  // keyed by coord_size x kind mix
    auto chain_for = [&](const GroupDescriptor& d) -> const ConstantChain& {
        const int key =
            d.coord_size() * 2 + (d.kind() == GroupKind::Heisenberg ? 1 : 0);
        auto it = chains.find(key);
        if (it == chains.end()) {
            it = chains.emplace(key, constant_chain(d, growth_function(d, 12)))
                     .first;
        }
        return it->second;
    };

    int sound = 0, unsound = 0, small = 0, constructed = 0;
    std::string first_bad;
    for (const auto& c : cases) {
        auto g = induce({c.desc, c.omega});
        auto cert = certify_sigma1(g, c.desc, chain_for(c.desc));
        auto s = checked_spectrum(g, "cert " + c.name);
        if (s.sigma1() <= cert.certified_bound + 1e-9) {
            ++sound;
        } else {
            ++unsound;
            if (first_bad.empty()) first_bad = c.name;
        }
        if (cert.branch == CertificateBranch::SmallBoundary) ++small;
        else ++constructed;
    }
    const bool ok = unsound == 0 && sound >= 50 && constructed >= 1;
    std::string text = std::to_string(sound) + "/" +
                       std::to_string(cases.size()) +
                       " certificates dominate sigma1 (" +
                       std::to_string(small) + " small-boundary, " +
                       std::to_string(constructed) + " test-function)";
    if (!first_bad.empty()) text += "; first unsound: " + first_bad;
    return {ok, text};
}

Line criterion_decay() {
    auto z2 = GroupDescriptor::free_abelian(2);
    auto z3 = GroupDescriptor::free_abelian(3);
    double first2 = 0, last2 = 0, norm2 = 0;
    bool positive = true;
    for (int r = 1; r <= 20; ++r) {
        auto g = induce({z2, ball(z2, z2.identity(), r)});
        auto s = checked_spectrum(g, "z2 ball " + std::to_string(r));
        const double sig = s.sigma1();
        positive = positive && sig > 0.0;
        if (r == 1) first2 = sig;
        if (r == 20) last2 = sig;
        norm2 = std::max(norm2,
                         sig * std::sqrt(static_cast<double>(g.vertex_count())));
    }
    double first3 = 0, last3 = 0, norm3 = 0;
    for (int k = 2; k <= 8; ++k) {
        auto g = induce({z3, box_subset(3, {k, k, k})});
        auto s = checked_spectrum(g, "z3 box " + std::to_string(k));
        const double sig = s.sigma1();
        positive = positive && sig > 0.0;
        if (k == 2) first3 = sig;
        if (k == 8) last3 = sig;
        norm3 = std::max(norm3,
                         sig * std::cbrt(static_cast<double>(g.vertex_count())));
    }
    const bool ok = positive && last2 < first2 && last3 < first3 &&
                    std::isfinite(norm2) && std::isfinite(norm3);
    return {ok, "sigma1 positive and decaying on Z^2 balls r <= 20 (" +
                fmt(first2) + " -> " + fmt(last2) + ", max sigma1*|V'|^(1/2) = " +
                fmt(norm2) + ") and Z^3 boxes k <= 8 (" + fmt(first3) +
                " -> " + fmt(last3) + ", max sigma1*|V'|^(1/3) = " +
                fmt(norm3) + ")"};
}

Line criterion_growth() {
    const auto start = Clock::now();
    auto z1 = GroupDescriptor::free_abelian(1);
    auto z2 = GroupDescriptor::free_abelian(2);
    auto heis = GroupDescriptor::heisenberg();
    bool exact = true;
    for (const auto& [n, v] : growth_function(z1, 50).samples) {
        exact = exact && v == 2 * static_cast<std::int64_t>(n) + 1;
    }
    for (const auto& [n, v] : growth_function(z2, 20).samples) {
        const std::int64_t n64 = n;
        exact = exact && v == 2 * n64 * n64 + 2 * n64 + 1;
        exact = exact &&
                v == static_cast<std::int64_t>(
                         oracle::bfs_ball(z2, z2.identity(), n).size());
    }
    auto hsamples = growth_function(heis, 10).samples;
    std::map<int, std::int64_t> hv;
    for (const auto& [n, v] : hsamples) hv[n] = v;
    bool window = true;
    for (int n : {3, 4, 5}) {
        const double ratio = static_cast<double>(hv.at(2 * n)) /
                             static_cast<double>(hv.at(n));
        window = window && ratio >= 8.0 && ratio <= 32.0;
    }
    const double secs = seconds_since(start);
    const bool ok = exact && window && secs < 30.0;
    return {ok, std::string("ball growth exact on Z (n <= 50, 2n+1) and Z^2 "
                "(n <= 20, 2n^2+2n+1, BFS oracle), Heisenberg doubling in "
                "[8,32] (") + (window ? "yes" : "no") + ", " + fmt(secs) +
                "s)"};
}

Line criterion_covering() {
    bool ok = true;
    std::ostringstream detail;
    for (const auto& desc : {GroupDescriptor::free_abelian(1),
                             GroupDescriptor::free_abelian(2)}) {
        const auto est = growth_function(desc, 10);
        for (int r : {2, 3, 4}) {
            const int sep = (r + 1) / 2;
            auto net = separated_net(desc, desc.identity(), 3 * r, sep);
            const auto bound = covering_count(est.growth_constant, 3.0, 0.5,
                                              desc.growth_order());
            ElementSet covered;
            for (const auto& y : net) {
                for (const auto& g : ball(desc, y, sep)) covered.insert(g);
            }
            bool covers = true;
            for (const auto& g : ball(desc, desc.identity(), 3 * r)) {
                covers = covers && covered.count(g) == 1;
            }
            ok = ok && covers &&
                 static_cast<std::int64_t>(net.size()) <= bound;
            detail << " Z^" << desc.growth_order() << " R=" << r << ": "
                   << net.size() << "<=" << bound
                   << (covers ? "" : " UNCOVERED");
        }
    }
    return {ok, "greedy nets cover B(3R) within ceil(R/2) using at most the "
                "covering-count centers:" + detail.str()};
}

Line criterion_isoperimetry() {
    auto z2 = GroupDescriptor::free_abelian(2);
    double worst = 0.0;
    std::string worst_name;
    auto consider = [&](const std::string& name,
                        const InducedSubsetSpec& spec) {
        const double ratio = isoperimetric_ratio(spec).ratio;
        if (ratio > worst) {
            worst = ratio;
            worst_name = name;
        }
    };
    for (int k = 1; k <= 30; ++k) {
        consider("square " + std::to_string(k),
                 {z2, box_subset(2, {k, k})});
    }
    for (int r = 1; r <= 20; ++r) {
        consider("ball " + std::to_string(r),
                 {z2, ball(z2, z2.identity(), r)});
    }
    const bool ok = worst <= 1.5;
    return {ok, "|closure|^(1/2)/|vertex boundary| <= 1.5 on Z^2 squares "
                "k <= 30 and balls r <= 20 (max " + fmt(worst) + " at " +
                worst_name + ")"};
}

Line criterion_determinism(const std::string& cli) {
    const fs::path dir = fs::temp_directory_path() / "steklov_acceptance";
    fs::create_directories(dir);

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    };
    auto shell = [&](const std::string& args, const fs::path& out) {
        const std::string cmd = "\"" + cli + "\" " + args + " --output \"" +
                                out.string() + "\"";
        return std::system(cmd.c_str()) == 0;
    };

    const fs::path input = dir / "input.json";
    if (!shell("gen zd_ball 2 2", input)) {
        return {false, "could not generate the shared input file"};
    }
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"gen_example", "gen example1 5"},
        {"gen_ball", "gen zd_ball 2 2"},
        {"spectrum", "spectrum \"" + input.string() + "\""},
        {"spectrum_csv", "spectrum \"" + input.string() + "\" --csv"},
        {"certify", "certify \"" + input.string() + "\""},
        {"sweep", "sweep zd_ball --dim 2 --from 1 --to 4"},
        {"sweep_rand", "sweep zd_rand --dim 2 --from 4 --to 6 --seed 7"},
        {"growth_z", "growth z 2 8"},
        {"growth_heis", "growth heis 6"},
    };
    bool ok = true;
    std::string bad;
    for (const auto& [name, args] : commands) {
        const fs::path a = dir / (name + "_a.out");
        const fs::path b = dir / (name + "_b.out");
        const bool ran = shell(args, a) && shell(args, b);
        const bool same = ran && !slurp(a).empty() && slurp(a) == slurp(b);
        if (!same) {
            ok = false;
            if (bad.empty()) bad = name;
        }
    }
    std::string text = "double runs of " + std::to_string(commands.size()) +
                       " CLI commands are byte-identical";
    if (!bad.empty()) text += "; first mismatch: " + bad;
    return {ok, text};
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli-binary>\n";
        return 2;
    }
    const std::string cli = argv[1];

    std::map<int, Line> lines;
    lines[1] = guard(criterion_example_family);
    lines[2] = guard(criterion_kernel);
    lines[3] = guard(criterion_oracle_agreement);
    lines[6] = guard(criterion_certificates);
    lines[7] = guard(criterion_decay);
    // 4 and 5 range over every spectrum the phases above computed.
    lines[4] = guard(criterion_dtn_structure);
    lines[5] = guard(criterion_degree_bound);
    lines[8] = guard(criterion_growth);
    lines[9] = guard(criterion_covering);
    lines[10] = guard(criterion_isoperimetry);
    lines[11] = guard([&] { return criterion_determinism(cli); });

    bool all_ok = true;
    for (const auto& [index, line] : lines) {
        std::cout << (line.ok ? "[PASS] " : "[FAIL] ") << index << ". "
                  << line.text << "\n";
        all_ok = all_ok && line.ok;
    }
    std::cout << (all_ok ? "acceptance: all criteria hold\n"
                         : "acceptance: FAILURES present\n");
    return all_ok ? 0 : 1;
}
