// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "hpcalc/corpus.hpp"
#include "hpcalc/spectral.hpp"

namespace hpcalc::io {

using nlohmann::json;

json space_to_json(const SpaceDescriptor& s);
SpaceDescriptor space_from_json(const json& j);

// {"dim": n, "space": {...}, "entries": [[[re,im], ...], ...]} row-major
json matrix_to_json(const MatrixOperator& A);
MatrixOperator matrix_from_json(const json& j);
MatrixOperator read_matrix(const std::string& path);
void write_matrix(const MatrixOperator& A, const std::string& path);

// variant-tagged coefficient arrays as [re, im] pairs
json function_to_json(const HalfPlaneFunction& f);
HalfPlaneFunction function_from_json(const json& j);
HalfPlaneFunction read_function(const std::string& path);

// {"quantity", "estimate", "ci": [lo, hi], "exact", "seed", "samples"}
json estimate_to_json(const std::string& quantity, const Estimate& e);

json condition_report_to_json(const ConditionReport& rep);
json witness_to_json(const ConditionWitness& w);
ConditionWitness witness_from_json(const json& j);

json bounds_report_to_json(const BoundsReport& rep);

// JSON-lines witness store; one instance per line
void append_witness_line(const std::string& path, const std::string& condition,
                         double omega, int m, const ConditionWitness& w);
std::vector<std::pair<ConditionReport, ConditionWitness>> read_witness_store(
    const std::string& path);

void write_json(const json& j, const std::string& path);
json read_json(const std::string& path);

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace hpcalc::io
