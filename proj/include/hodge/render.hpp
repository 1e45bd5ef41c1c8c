// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// JSON and plain-text renderings of derived objects.

#pragma once

#include <string>

#include "hodge/convolution.hpp"
#include "hodge/invariants.hpp"
#include "hodge/serialize.hpp"
#include "hodge/tensor.hpp"

namespace hodge {

Json validation_to_json(const ValidationReport& r);
Json tables_to_json(const InvariantTables& t);
Json tensor_to_json(const TensorGlobal& g, const BlockSet* infinity);
Json skyscraper_to_json(const Skyscraper& s);
Json report_to_json(const ConvolutionReport& r);
Json kunneth_to_json(const KunnethVerdict& k);

std::string validation_to_text(const ValidationReport& r);
std::string module_to_text(const ModuleData& m);
std::string tables_to_text(const InvariantTables& t);
std::string tensor_to_text(const TensorGlobal& g, const BlockSet* infinity);
std::string report_to_text(const ConvolutionReport& r);

}  // namespace hodge
