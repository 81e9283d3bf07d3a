#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "irg/kernel.hpp"

namespace irg {

// Kernel document: {"space": {"labels": [...], "weights": [...]},
//                   "kernel": {"builder": ..., ...params}}
inline Kernel parse_kernel_doc(const nlohmann::json& doc) {
  if (!doc.contains("space") || !doc.contains("kernel"))
    throw ConfigError("kernel document needs \"space\" and \"kernel\"");
  const auto& sp = doc.at("space");
  if (!sp.contains("labels") || !sp.contains("weights"))
    throw ConfigError("space needs \"labels\" and \"weights\"");
  TypeSpace space(sp.at("labels").get<std::vector<int>>(),
                  sp.at("weights").get<std::vector<double>>());

  const auto& kj = doc.at("kernel");
  const std::string builder = kj.value("builder", "");
  if (builder == "constant") {
    if (!kj.contains("c")) throw ConfigError("constant builder needs \"c\"");
    return constant_kernel(std::move(space), kj.at("c").get<double>());
  }
  if (builder == "rank1") {
    if (!kj.contains("phi")) throw ConfigError("rank1 builder needs \"phi\"");
    return rank1_kernel(std::move(space), kj.at("phi").get<std::vector<double>>());
  }
  if (builder == "max") {
    if (!kj.contains("ktilde")) throw ConfigError("max builder needs \"ktilde\"");
    return max_kernel(std::move(space), kj.at("ktilde").get<std::vector<double>>());
  }
  if (builder == "explicit") {
    if (!kj.contains("matrix")) throw ConfigError("explicit builder needs \"matrix\"");
    const auto rows = kj.at("matrix").get<std::vector<std::vector<double>>>();
    const std::size_t d = space.size();
    if (rows.size() != d) throw ConfigError("explicit matrix row count mismatch");
    std::vector<double> m;
    m.reserve(d * d);
    for (const auto& row : rows) {
      if (row.size() != d) throw ConfigError("explicit matrix column count mismatch");
      m.insert(m.end(), row.begin(), row.end());
    }
    return explicit_kernel(std::move(space), std::move(m));
  }
  throw ConfigError("unknown kernel builder \"" + builder + "\"");
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
  return doc;
}

}  // namespace irg
