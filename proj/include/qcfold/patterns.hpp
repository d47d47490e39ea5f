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

#include <complex>
#include <utility>
#include <vector>

#include "qcfold/foldconfig.hpp"
#include "qcfold/reinforce.hpp"

namespace qcfold
{

/**
 * Classical Miura-ori layout. A cell is the 2 x 2 block of parallelogram
 * panels that repeats across the pattern, so a 1 x 1 pattern already has
 * one interior crease vertex.
 */
struct MiuraSpec
{
    int rows{1};
    int cols{1};
    double panel_width{1};
    double panel_height{1};
    /** Angle between the straight creases and the zigzag creases, in (0, pi/2) */
    double shear_angle{1.0471975511965976};
};

struct MiuraPattern
{
    TriMesh mesh;
    FoldColoring coloring;
};

/**
 * @brief Triangulated Miura-ori crease pattern
 *
 * Horizontal creases are straight, vertical ones zigzag; every panel is
 * split into two triangles and panels are colored like a checkerboard, so
 * the singular set is exactly the crease grid.
 */
MiuraPattern miura_pattern(const MiuraSpec& spec);

/** Evaluate the polynomial sum_k coeffs[k] z^k */
std::complex<double> eval_polynomial(const std::vector<std::complex<double>>& coeffs, std::complex<double> z);

/**
 * Replace every vertex z by Phi(z) for the polynomial Phi; throws
 * InputError listing faces that lose positive orientation.
 */
TriMesh compose_conformal(const TriMesh& mesh, const std::vector<std::complex<double>>& coeffs);

/**
 * @brief Fold-unfold iteration towards a flat-foldable domain
 *
 * Each round folds with two far-apart boundary pins, stops once the fold's
 * maximal distortion is at most tol, and otherwise unfolds with the whole
 * boundary pinned to its current positions.
 */
std::pair<TriMesh, IterationLog>
repair_flat_foldability(const TriMesh& mesh, const FoldColoring& coloring, double tol, int max_iterations);

}  // namespace qcfold
