#pragma once

// Desk-scale limits shared by every module. The defaults below are the single
// source of truth; a JSON override file (path given by PTOP_CONFIG or the
// CLI's --config flag) may replace any subset of them.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "ptop/error.hpp"

namespace ptop {

struct Limits {
  // order-core: posets/lattices fed to full-enumeration operations.
  std::size_t max_poset_elements = 16;
  // Largest lattice/frame that is materialized with meet/join tables.
  std::size_t max_lattice_elements = 1024;
  // frame-engine: generators of a presentation (formal meets = 2^n).
  std::size_t max_generators = 8;
  // Exhaustive-subset positivity scan applies up to this frame size.
  std::size_t positivity_scan_cap = 12;
  // Exhaustive directed-subset scan in the compactness verification pass.
  std::size_t compact_scan_cap = 16;
  // Exhaustive subset scan when checking join preservation of u -> nabla_u.
  std::size_t join_scan_cap = 8;
  // localic-reals: branch-and-bound node budget and locate evaluation cap.
  std::uint64_t evt_node_budget = 1'000'000;
  std::uint64_t locate_max_budget = 1u << 22;
};

inline void to_json(nlohmann::json& j, const Limits& l) {
  j = nlohmann::json{{"max_poset_elements", l.max_poset_elements},
                     {"max_lattice_elements", l.max_lattice_elements},
                     {"max_generators", l.max_generators},
                     {"positivity_scan_cap", l.positivity_scan_cap},
                     {"compact_scan_cap", l.compact_scan_cap},
                     {"join_scan_cap", l.join_scan_cap},
                     {"evt_node_budget", l.evt_node_budget},
                     {"locate_max_budget", l.locate_max_budget}};
}

inline void from_json(const nlohmann::json& j, Limits& l) {
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  take("max_poset_elements", l.max_poset_elements);
  take("max_lattice_elements", l.max_lattice_elements);
  take("max_generators", l.max_generators);
  take("positivity_scan_cap", l.positivity_scan_cap);
  take("compact_scan_cap", l.compact_scan_cap);
  take("join_scan_cap", l.join_scan_cap);
  take("evt_node_budget", l.evt_node_budget);
  take("locate_max_budget", l.locate_max_budget);
}

inline Limits load_limits(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  Limits l;
  try {
    nlohmann::json::parse(in).get_to(l);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("bad config file '" + path + "': " + e.what());
  }
  return l;
}

/// Defaults, overridden by the file named in $PTOP_CONFIG when set.
inline Limits limits_from_env() {
  if (const char* p = std::getenv("PTOP_CONFIG"); p != nullptr && *p != '\0')
    return load_limits(p);
  return Limits{};
}

}  // namespace ptop
