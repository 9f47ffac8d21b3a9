#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "steklov/graph.hpp"
#include "steklov/serialize.hpp"

using namespace steklov;

namespace {

GroupElement el(std::vector<std::int64_t> c) { return GroupElement{std::move(c)}; }

bool has_violation(const std::vector<Violation>& vs, ViolationKind kind) {
    return std::any_of(vs.begin(), vs.end(),
                       [&](const Violation& v) { return v.kind == kind; });
}

GraphWithBoundary path3() {
    // boundary - interior - boundary
    return GraphWithBoundary::make(
        {{{}, true}, {{}, false}, {{}, true}}, {{0, 1}, {1, 2}});
}

} // namespace

TEST_CASE("construction normalizes and sorts edges") {
    auto g = GraphWithBoundary::make({{{}, true}, {{}, false}, {{}, false}},
                                     {{2, 1}, {1, 0}});
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK(g.neighbors(1) == std::vector<int>{0, 2});
    CHECK(g.degree(1) == 2);
    CHECK(g.max_degree() == 2);
    CHECK(g.boundary_vertices() == std::vector<int>{0});
    CHECK(g.interior_vertices() == std::vector<int>{1, 2});
    CHECK_THROWS_AS(GraphWithBoundary::make({{{}, true}}, {{0, 1}}),
                    InvalidInput);
}

TEST_CASE("validate passes a clean path") {
    CHECK(validate(path3()).empty());
}

TEST_CASE("validate flags loops, duplicates, and boundary edges") {
    auto g = GraphWithBoundary::make(
        {{{}, true}, {{}, true}, {{}, false}},
        {{0, 1}, {1, 0}, {2, 2}, {1, 2}});
    auto vs = validate(g);
    CHECK(has_violation(vs, ViolationKind::Loop));
    CHECK(has_violation(vs, ViolationKind::DuplicateEdge));
    CHECK(has_violation(vs, ViolationKind::BoundaryEdge));
    CHECK_THROWS_AS(require_valid(g), InvalidInput);
}

TEST_CASE("validate flags empty boundary and disconnection") {
    auto no_boundary =
        GraphWithBoundary::make({{{}, false}, {{}, false}}, {{0, 1}});
    CHECK(has_violation(validate(no_boundary), ViolationKind::EmptyBoundary));

    auto split = GraphWithBoundary::make(
        {{{}, true}, {{}, false}, {{}, false}, {{}, true}}, {{0, 1}, {2, 3}});
    auto vs = validate(split);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].kind == ViolationKind::Disconnected);
    CHECK_THROWS_AS(require_valid(split), DisconnectedInput);
}

TEST_CASE("validate checks labels against the host graph") {
    auto z2 = GroupDescriptor::free_abelian(2);
    auto good = GraphWithBoundary::make(
        {{el({0, 0}), false}, {el({1, 0}), true}}, {{0, 1}}, z2);
    CHECK(validate(good).empty());

    auto far = GraphWithBoundary::make(
        {{el({0, 0}), false}, {el({2, 2}), true}}, {{0, 1}}, z2);
    CHECK(has_violation(validate(far), ViolationKind::HostEdgeMismatch));

    auto twice = GraphWithBoundary::make(
        {{el({0, 0}), false}, {el({0, 0}), true}, {el({0, 1}), true}},
        {{0, 1}, {0, 2}}, z2);
    CHECK(has_violation(validate(twice), ViolationKind::DuplicateLabel));
    CHECK(has_violation(validate(twice), ViolationKind::HostEdgeMismatch));
}

TEST_CASE("vertex boundary of an interval is its two ends") {
    auto z1 = GroupDescriptor::free_abelian(1);
    auto delta = vertex_boundary({z1, {el({0}), el({1}), el({2})}});
    CHECK(delta == std::vector<GroupElement>{el({-1}), el({3})});
    CHECK_THROWS_AS(vertex_boundary({z1, {}}), InvalidInput);
}

TEST_CASE("inducing a single origin in Z^2 gives the 4-star") {
    auto z2 = GroupDescriptor::free_abelian(2);
    auto g = induce({z2, {el({0, 0})}});
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 4);
    CHECK(g.interior_vertices() == std::vector<int>{0});
    CHECK(g.boundary_count() == 4);
    CHECK(g.label(0) == el({0, 0}));
    for (int v = 1; v < 5; ++v) CHECK(g.degree(v) == 1);
    CHECK(validate(g).empty());
}

TEST_CASE("inducing a 2x3 box in Z^2 gives the expected counts") {
    auto z2 = GroupDescriptor::free_abelian(2);
    std::vector<GroupElement> omega;
    for (std::int64_t x = 0; x < 2; ++x) {
        for (std::int64_t y = 0; y < 3; ++y) omega.push_back(el({x, y}));
    }
    auto g = induce({z2, omega});
    CHECK(g.interior_count() == 6);
    CHECK(g.boundary_count() == 10);
    CHECK(g.vertex_count() == 16);
    CHECK(g.edge_count() == 17);
}

TEST_CASE("inducing a pentomino reproduces a hand-worked example") {
    auto z2 = GroupDescriptor::free_abelian(2);
    std::vector<GroupElement> omega = {el({4, 2}), el({5, 2}), el({6, 2}),
                                       el({5, 3}), el({6, 3})};
    auto g = induce({z2, omega});
    CHECK(g.interior_count() == 5);
    CHECK(g.boundary_count() == 9);
    CHECK(g.edge_count() == 15);
    // Interior block precedes boundary block, each sorted by label.
    for (int v = 0; v < 5; ++v) CHECK(!g.is_boundary(v));
    for (int v = 5; v < 14; ++v) CHECK(g.is_boundary(v));
    CHECK(g.label(0) == el({4, 2}));
    CHECK(g.label(5) == el({3, 2}));
}

TEST_CASE("inducing a disconnected subset is rejected") {
    auto z2 = GroupDescriptor::free_abelian(2);
    CHECK_THROWS_AS(induce({z2, {el({0, 0}), el({3, 0})}}), DisconnectedInput);
}

TEST_CASE("induced graphs satisfy their structural contract") {
    auto z2 = GroupDescriptor::free_abelian(2);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto omega = random_connected_subset(z2, 3 + seed % 14, seed);
        auto spec = InducedSubsetSpec{z2, omega};
        auto g = induce(spec);
        CHECK(validate(g).empty());
        CHECK(g.vertex_count() ==
              static_cast<int>(omega.size() + vertex_boundary(spec).size()));
        for (int v : g.boundary_vertices()) {
            REQUIRE(g.degree(v) >= 1);
            for (int u : g.neighbors(v)) CHECK(!g.is_boundary(u));
        }
    }
}

TEST_CASE("parallel-path family has the documented shape") {
    auto g1 = example_family_g(1);
    CHECK(g1.vertex_count() == 3);
    CHECK(g1.edge_count() == 2);
    auto g4 = example_family_g(4);
    CHECK(g4.vertex_count() == 6);
    CHECK(g4.edge_count() == 8);
    CHECK(g4.boundary_count() == 2);
    CHECK(validate(g4).empty());
    auto big = example_family_g(1000);
    CHECK(big.vertex_count() == 1002);
    CHECK(big.edge_count() == 2000);
    CHECK_THROWS_AS(example_family_g(0), InvalidInput);
}

TEST_CASE("graph JSON round-trips the parallel-path family") {
    auto g = example_family_g(3);
    auto j = graph_to_json(g);
    CHECK(j["vertices"].size() == 5);
    CHECK(j["edges"].size() == 6);
    auto back = graph_from_json(j);
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edges() == g.edges());
    CHECK(back.boundary_vertices() == g.boundary_vertices());
}

TEST_CASE("graph JSON round-trips random induced graphs exactly") {
    auto z2 = GroupDescriptor::free_abelian(2);
    auto heis = GroupDescriptor::heisenberg();
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const GroupDescriptor& desc = (seed % 2 == 0) ? z2 : heis;
        auto g = induce({desc, random_connected_subset(desc, 4 + seed % 9,
                                                       seed * 31)});
        auto back = graph_from_json(graph_to_json(g));
        REQUIRE(back.vertex_count() == g.vertex_count());
        CHECK(back.edges() == g.edges());
        for (int v = 0; v < g.vertex_count(); ++v) {
            CHECK(back.is_boundary(v) == g.is_boundary(v));
            CHECK(back.label(v) == g.label(v));
        }
        REQUIRE(back.host().has_value());
        CHECK(back.host()->kind() == desc.kind());
        CHECK(back.host()->generators() == desc.generators());
    }
}

TEST_CASE("graph JSON parsing rejects malformed input") {
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse("{}")),
                    InvalidInput);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(
                        R"({"vertices":[{"id":0,"boundary":true}],
                            "edges":[[0,3]]})")),
                    InvalidInput);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(
                        R"({"vertices":[{"id":0,"boundary":true},
                                        {"id":0,"boundary":false}],
                            "edges":[]})")),
                    InvalidInput);
    // Structurally sound JSON still fails when validation does.
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(
                        R"({"vertices":[{"id":0,"boundary":true},
                                        {"id":1,"boundary":true}],
                            "edges":[[0,1]]})")),
                    InvalidInput);
}

TEST_CASE("descriptor JSON round-trips all kinds") {
    for (const auto& desc :
         {GroupDescriptor::free_abelian(3), GroupDescriptor::heisenberg(),
          GroupDescriptor::with_generators(
              GroupKind::FreeAbelian, 1,
              {el({2}), el({-2}), el({1}), el({-1})})}) {
        auto back = descriptor_from_json(descriptor_to_json(desc));
        CHECK(back.kind() == desc.kind());
        CHECK(back.rank() == desc.rank());
        CHECK(back.generators() == desc.generators());
        CHECK(back.growth_order() == desc.growth_order());
    }
    CHECK_THROWS_AS(descriptor_from_json(nlohmann::json::parse(
                        R"({"kind":"dihedral"})")),
                    InvalidInput);
}

TEST_CASE("significant-digit rounding is stable") {
    CHECK(round_sig(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-12));
    CHECK(round_sig(0.1) == 0.1);
    CHECK(round_sig(round_sig(1.0 / 7.0)) == round_sig(1.0 / 7.0));
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
}
