#pragma once

#include <string>

#include <json.hpp>

#include "cobweb/tree.hpp"

namespace cobweb {

// Optional provenance carried by every exported artifact.
struct SnapshotMeta {
    std::string config_hash;
    std::uint64_t seed = 0;
};

// Serializes the full hierarchy — config, schema, instances, insertion log,
// grids, and the node tree with cached statistics — as JSON. Doubles survive
// the round trip bit-exactly, so a reloaded hierarchy reproduces utilities
// byte-for-byte.
nlohmann::ordered_json tree_to_json(const Hierarchy& h, const SnapshotMeta& meta = {});

// Rebuilds a hierarchy from tree_to_json output. Throws std::invalid_argument
// on malformed or version-incompatible input.
Hierarchy tree_from_json(const nlohmann::ordered_json& j);

// Graphviz rendering of the tree shape (node sizes, leaf member ids).
std::string tree_to_dot(const Hierarchy& h, const SnapshotMeta& meta = {});

// File helpers (two-space-indented JSON plus trailing newline).
void save_tree(const std::string& path, const Hierarchy& h, const SnapshotMeta& meta = {});
Hierarchy load_tree(const std::string& path);

}  // namespace cobweb
