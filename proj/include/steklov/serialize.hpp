#pragma once

#include <string>

#include "json.hpp"
#include "steklov/graph.hpp"

namespace steklov {

/// Round to `digits` significant decimal digits. All floating-point values
/// in files produced by this library pass through here, so re-running a
/// command yields byte-identical output.
double round_sig(double x, int digits = 12);

/// Shortest %.12g rendering, used for CSV cells.
std::string format_double(double x);

nlohmann::ordered_json descriptor_to_json(const GroupDescriptor& desc);
GroupDescriptor descriptor_from_json(const nlohmann::json& j);

nlohmann::ordered_json graph_to_json(const GraphWithBoundary& g);

/// Parses and validates; throws InvalidInput on schema errors or when
/// validate() reports violations.
GraphWithBoundary graph_from_json(const nlohmann::json& j);

GraphWithBoundary load_graph_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace steklov
