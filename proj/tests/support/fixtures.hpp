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

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qcfold/foldconfig.hpp"
#include "qcfold/mesh.hpp"
#include "qcfold/reinforce.hpp"

namespace qcfold::testing
{

/** Unit square split along the (0,0)-(1,1) diagonal: 4 vertices, 2 faces */
TriMesh unit_square();

/** Axis-aligned rectangle on an nx x ny grid, each cell split into two triangles */
TriMesh grid_mesh(int nx, int ny, double x0 = 0, double x1 = 1, double y0 = 0, double y1 = 1);

/**
 * Random triangulated disk built from jittered concentric rings; at most
 * max_faces faces (at least 6)
 */
TriMesh random_disk(std::mt19937_64& rng, int max_faces);

/** Random coefficient with |mu| in [lo, hi] (hi may be inf for the point at infinity) */
ExtComplexd random_mu(std::mt19937_64& rng, double lo, double hi);

/** Random admissible field: |mu| < 0.9 or, when allow_outside, also |mu| in (1.1, 20) and inf */
BeltramiField random_field(std::mt19937_64& rng, int num_faces, bool allow_outside);

/** +1 for faces whose centroid satisfies the predicate, -1 otherwise */
std::vector<int> labels_by_centroid(const TriMesh& mesh, const std::function<bool(double, double)>& plus);

/**
 * Reference energy computed face by face with dense 2 x 2 algebra:
 * 1/2 |T| (|P grad u|^2 + |P grad v|^2) minus s_T times the signed image area
 */
double dense_energy(const TriMesh& mesh, const BeltramiField& field, AreaMode mode, const Points& image);

/**
 * Synthetic fold problem with known ground truth. Pick n so that the
 * folding lines fall on grid lines, otherwise the coloring is a staircase.
 */
struct FoldFixture
{
    std::string name;
    /** True unfolded domain and its fold */
    TriMesh truth;
    Points folded;
    FoldColoring coloring;
    /** Perturbed initial domain with the same connectivity */
    TriMesh initial;
    PinSet visible;
    PinSet shape;
    /** Fraction of the domain area hidden under other layers */
    double occluded_fraction;
};

/** Unit square folded once along x = 0.6, flap on top, curved initial fold line; n a multiple of 5 */
FoldFixture one_fold_fixture(int n = 30);
/** Z-fold along x = 1/3 and x = 0.7; n a multiple of 30 */
FoldFixture two_fold_fixture(int n = 30);
/** Folded in half twice; the folding lines cross at a cusp; n even */
FoldFixture cusp_fixture(int n = 30);

}  // namespace qcfold::testing
