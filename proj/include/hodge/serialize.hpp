// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// JSON dialect for module descriptors. Output is canonical: keys in a fixed
// order, degrees ascending, blocks in BlockOrder, zero entries dropped.

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hodge/core.hpp"

namespace hodge {

using Json = nlohmann::ordered_json;

ModuleData parse_module(std::string_view document);
ModuleData module_from_json(const Json& doc);

Json module_to_json(const ModuleData& m);
std::string serialize_module(const ModuleData& m);
// serialize(parse(doc)).
std::string normalize_document(std::string_view document);

Json graded_to_json(const GradedVector& g);
GradedVector graded_from_json(const Json& j, const std::string& where);
Json blocks_to_json(const BlockSet& b);
BlockSet blocks_from_json(const Json& j, const std::string& where);
Json aggregate_to_json(const Aggregate& a);
Json residue_table_to_json(const ResidueTable& t);
Json local_to_json(const Point& x, const LocalData& d);

ModuleData read_module_file(const std::string& path);

}  // namespace hodge
