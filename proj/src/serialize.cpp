#include "steklov/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace steklov {

double round_sig(double x, int digits) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {

nlohmann::ordered_json element_to_json(const GroupElement& g) {
    return nlohmann::ordered_json(g.coords);
}

GroupElement element_from_json(const nlohmann::json& j) {
    if (!j.is_array()) {
        throw InvalidInput("group element must be an array of integers");
    }
    GroupElement g;
    for (const auto& c : j) {
        if (!c.is_number_integer()) {
            throw InvalidInput("group element coordinates must be integers");
        }
        g.coords.push_back(c.get<std::int64_t>());
    }
    return g;
}

bool has_standard_generators(const GroupDescriptor& desc) {
    return desc.generators() ==
           (desc.kind() == GroupKind::FreeAbelian
                ? GroupDescriptor::free_abelian(desc.rank()).generators()
                : GroupDescriptor::heisenberg().generators());
}

} // namespace

nlohmann::ordered_json descriptor_to_json(const GroupDescriptor& desc) {
    nlohmann::ordered_json j;
    switch (desc.kind()) {
        case GroupKind::FreeAbelian:
            j["kind"] = "free_abelian";
            j["rank"] = desc.rank();
            break;
        case GroupKind::Heisenberg:
            j["kind"] = "heisenberg";
            break;
    }
    if (!has_standard_generators(desc)) {
        auto gens = nlohmann::ordered_json::array();
        for (const auto& s : desc.generators()) {
            gens.push_back(element_to_json(s));
        }
        j["generators"] = std::move(gens);
    }
    return j;
}

GroupDescriptor descriptor_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw InvalidInput("host descriptor needs a string \"kind\" field");
    }
    const std::string kind = j["kind"].get<std::string>();
    GroupKind gk;
    int rank = 0;
    if (kind == "free_abelian") {
        gk = GroupKind::FreeAbelian;
        if (!j.contains("rank") || !j["rank"].is_number_integer()) {
            throw InvalidInput("free_abelian descriptor needs integer rank");
        }
        rank = j["rank"].get<int>();
    } else if (kind == "heisenberg") {
        gk = GroupKind::Heisenberg;
    } else {
        throw InvalidInput("unknown group kind \"" + kind + "\"");
    }
    if (!j.contains("generators")) {
        return gk == GroupKind::FreeAbelian ? GroupDescriptor::free_abelian(rank)
                                            : GroupDescriptor::heisenberg();
    }
    if (!j["generators"].is_array()) {
        throw InvalidInput("generators must be an array");
    }
    std::vector<GroupElement> gens;
    for (const auto& g : j["generators"]) gens.push_back(element_from_json(g));
    return GroupDescriptor::with_generators(gk, rank, std::move(gens));
}

nlohmann::ordered_json graph_to_json(const GraphWithBoundary& g) {
    nlohmann::ordered_json j;
    auto vertices = nlohmann::ordered_json::array();
    for (int v = 0; v < g.vertex_count(); ++v) {
        nlohmann::ordered_json vj;
        vj["id"] = v;
        vj["boundary"] = g.is_boundary(v);
        if (g.label(v)) vj["label"] = element_to_json(*g.label(v));
        vertices.push_back(std::move(vj));
    }
    j["vertices"] = std::move(vertices);
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [a, b] : g.edges()) {
        edges.push_back(nlohmann::ordered_json::array({a, b}));
    }
    j["edges"] = std::move(edges);
    if (g.host()) j["host"] = descriptor_to_json(*g.host());
    return j;
}

GraphWithBoundary graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") ||
        !j["vertices"].is_array() || !j["edges"].is_array()) {
        throw InvalidInput(
            "graph JSON needs \"vertices\" and \"edges\" arrays");
    }
    const auto& vj = j["vertices"];
    const int n = static_cast<int>(vj.size());
    std::vector<Vertex> vertices(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& v : vj) {
        if (!v.is_object() || !v.contains("id") ||
            !v["id"].is_number_integer() || !v.contains("boundary") ||
            !v["boundary"].is_boolean()) {
            throw InvalidInput(
                "vertex entries need integer \"id\" and boolean \"boundary\"");
        }
        const int id = v["id"].get<int>();
        if (id < 0 || id >= n || seen[static_cast<std::size_t>(id)]) {
            throw InvalidInput("vertex ids must be 0..n-1 without repeats");
        }
        seen[static_cast<std::size_t>(id)] = 1;
        Vertex& out = vertices[static_cast<std::size_t>(id)];
        out.boundary = v["boundary"].get<bool>();
        if (v.contains("label") && !v["label"].is_null()) {
            out.label = element_from_json(v["label"]);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
            throw InvalidInput("edges must be two-element integer arrays");
        }
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::optional<GroupDescriptor> host;
    if (j.contains("host") && !j["host"].is_null()) {
        host = descriptor_from_json(j["host"]);
    }
    if (host) {
        const int width = host->coord_size();
        for (const auto& v : vertices) {
            if (v.label &&
                static_cast<int>(v.label->coords.size()) != width) {
                throw InvalidInput("vertex label width does not match host");
            }
        }
    }
    auto g = GraphWithBoundary::make(std::move(vertices), std::move(edges),
                                     std::move(host));
    require_valid(g);
    return g;
}

GraphWithBoundary load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open graph file \"" + path + "\"");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("graph file \"" + path +
                           "\" is not valid JSON: " + e.what());
    }
    return graph_from_json(j);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInput("cannot open output file \"" + path + "\"");
    }
    out << content;
    if (!out) {
        throw InvalidInput("failed writing output file \"" + path + "\"");
    }
}

} // namespace steklov
