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

#include <optional>
#include <vector>

#include "qcfold/assembly.hpp"

namespace qcfold
{

/** Relative residual accepted after every solve */
inline constexpr double kSolveTolerance = 1e-10;

struct SolveResult
{
    /** Image position of every vertex */
    Points image;
    /** ||M_ff x_f + M_fp x_p|| / max(1, ||M_fp x_p||) */
    double residual{0};
    /** 1/2 x^T M x of the solution */
    double energy{0};
    /** Coefficient of the image per face; empty where an image face collapsed to a point */
    std::vector<std::optional<ExtComplexd>> recovered_mu;
};

/**
 * @brief Solve M x = 0 with pinned vertices
 *
 * Pinned unknowns are eliminated (their rows and columns removed, the
 * coupling moved to the right-hand side), the free block is factorized
 * with a sparse LU, and the residual is checked.
 *
 * The mesh may be any embedding of a valid connectivity; folded images
 * with reversed faces are accepted as domains.
 */
SolveResult lsqc_solve(
    const TriMesh& mesh, const BeltramiField& field, const PinSet& pins, AreaMode mode,
    double tolerance = kSolveTolerance);

/** Beltrami coefficient of each face of an image; empty for collapsed faces */
std::vector<std::optional<ExtComplexd>> recovered_coefficients(const TriMesh& mesh, const Points& image);

/**
 * @brief Fold energy of an image against a two-coloring
 *
 * Area-weighted sum of |f_zbar|^2 over faces labelled +1 and |f_z|^2 over
 * faces labelled -1, with the Wirtinger derivatives of each face's affine
 * map (f_z = 1 for the identity).
 */
double energy(const TriMesh& mesh, const Points& image, const std::vector<int>& labels);

/** Labels +1 where |mu| < 1 and -1 elsewhere */
std::vector<int> labels_of(const BeltramiField& field);

/**
 * @brief Scale-invariant distortion loss
 *
 * Sum of |mu_T|^2 over +1 faces and 1/|mu_T|^2 over -1 faces. Infinite when
 * some face has the wrong orientation class entirely (see divergent_faces);
 * throws InputError naming a face whose image collapsed to a point.
 */
double loss(const TriMesh& mesh, const Points& image, const std::vector<int>& labels);

/** Faces whose loss term is infinite: conformal on -1 or anti-conformal on +1 */
std::vector<int> divergent_faces(const TriMesh& mesh, const Points& image, const std::vector<int>& labels);

}  // namespace qcfold
