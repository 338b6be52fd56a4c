#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fdplan/pddl.hpp"

namespace fdplan::testing {

inline std::string data_path(std::string_view name) {
  return std::string(FDPLAN_DATA_DIR) + "/" + std::string(name);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Problem load_problem(std::string_view fixture) {
  auto parsed = pddl::parse_problem(read_file(data_path(fixture)));
  if (!parsed.ok()) throw std::runtime_error(parsed.diagnostics.front().str());
  return pddl::to_problem(parsed.ast);
}

inline Problem coffee() { return load_problem("coffee.pddl"); }
inline Problem siege() { return load_problem("siege.pddl"); }

}  // namespace fdplan::testing
