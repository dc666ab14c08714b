#pragma once

#include <string>

#include "colorobs/graph.hpp"
#include "colorobs/graph_io.hpp"

namespace testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(COLOROBS_DATA_DIR) + "/fixtures/" + name + ".json";
}

inline std::string instance_path(const std::string& name) {
  return std::string(COLOROBS_DATA_DIR) + "/instances/" + name + ".json";
}

inline colorobs::ColoredGraph fixture(const std::string& name) {
  return colorobs::load_colored_file(fixture_path(name));
}

}  // namespace testing
