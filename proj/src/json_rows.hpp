#pragma once

#include <algorithm>
#include <string>

#include "json.hpp"

namespace fdplan::detail {

// Two-level layout: one top-level key per line, and one compact element per
// line for arrays of objects or arrays.
inline std::string dump_rows(const nlohmann::ordered_json& doc) {
  std::string out = "{\n";
  std::size_t k = 0;
  for (auto it = doc.begin(); it != doc.end(); ++it, ++k) {
    out += "  " + nlohmann::ordered_json(it.key()).dump() + ": ";
    const bool nested = std::any_of(it->begin(), it->end(),
                                    [](const auto& v) { return v.is_structured(); });
    if (it->is_array() && nested) {
      out += "[\n";
      for (std::size_t i = 0; i < it->size(); ++i) {
        out += "    " + (*it)[i].dump() + (i + 1 < it->size() ? ",\n" : "\n");
      }
      out += "  ]";
    } else {
      out += it->dump();
    }
    out += k + 1 < doc.size() ? ",\n" : "\n";
  }
  return out + "}\n";
}

}  // namespace fdplan::detail
