/*
Copyright 2026 The qcfold Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <filesystem>
#include <string>

#include "qcfold/assembly.hpp"
#include "qcfold/foldconfig.hpp"
#include "qcfold/reinforce.hpp"
#include "qcfold/solver.hpp"

namespace qcfold
{

/// Version written into every JSON document.
inline constexpr int kFormatVersion = 1;

// Pins: [{"vertex": 0, "x": 0.0, "y": 0.0}, ...], 0-based vertices.
// A {"format": 1, "pins": [...]} wrapper is also accepted on input.
PinSet parse_pins(const std::string& json);
std::string pins_to_json(const PinSet& pins);

// {"format": 1, "faces": [{"face": 3, "mu": [re, im]} | {"face": 4, "mu": "inf"}]}
// Faces not listed default to mu = 0.
BeltramiField parse_field(const std::string& json, int num_faces);
std::string field_to_json(const BeltramiField& field);

// {"format": 1, "faces": [1, -1, ...]}
std::vector<int> parse_labels(const std::string& json);
std::string labels_to_json(const std::vector<int>& labels);

/** iter,energy,loss,max_distortion,seconds */
std::string log_to_csv(const IterationLog& log);

/** {"format", "residual", "energy", "mu": {...}} for a solve */
std::string solve_report_json(const TriMesh& mesh, const BeltramiField& field, const SolveResult& result);

/** Per-vertex classification, Kawasaki defects and (optionally) fold distortion */
std::string check_report_json(const TriMesh& mesh, const FoldColoring& coloring, const Points* image);

std::string read_text(const std::filesystem::path& path);

}  // namespace qcfold
