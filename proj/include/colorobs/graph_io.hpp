#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "colorobs/graph.hpp"

namespace colorobs {

enum class Format { Json, Dot };

Format parse_format(const std::string& name);

using AnyGraph = std::variant<ColoredGraph, EdgeColoredGraph>;

// A JSON document is edge-colored when any edge carries a "colors" field.
// In DOT the same holds for edge attributes.
AnyGraph load(std::istream& in, Format format);
AnyGraph load_file(const std::string& path, Format format);
AnyGraph load_string(const std::string& text, Format format);

// Loads and insists on a node-colored graph.
ColoredGraph load_colored(const std::string& text, Format format);
ColoredGraph load_colored_file(const std::string& path);

// Format from the extension: ".dot"/".gv" are DOT, everything else JSON.
Format format_for_path(const std::string& path);

std::string save(const ColoredGraph& graph, Format format);
std::string save(const EdgeColoredGraph& graph, Format format);

// Fill color used by DOT export for a palette entry.
std::string x11_color(const std::string& color, ColorIndex index);

}  // namespace colorobs
