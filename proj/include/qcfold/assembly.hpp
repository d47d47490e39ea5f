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
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "qcfold/coeff.hpp"
#include "qcfold/mesh.hpp"

namespace qcfold
{

/** Piecewise-constant Beltrami coefficient, one value per face */
struct BeltramiField
{
    std::vector<ExtComplexd> mu;
};

inline BeltramiField constant_field(int num_faces, ExtComplexd mu)
{
    return {std::vector<ExtComplexd>(num_faces, mu)};
}

/** Throws InputError naming the first inadmissible face */
void check_field(const TriMesh& mesh, const BeltramiField& field);

/**
 * How the area term treats orientation-reversing faces.
 *
 * Signed: the area of every image face counts with its sign.
 * Generalized: faces with |mu| > 1 count their image area negated, so a
 * reflected face of a fold contributes positively.
 */
enum class AreaMode
{
    Signed,
    Generalized
};

using SparseMatrix = Eigen::SparseMatrix<double>;

template <typename Scalar> struct TransformedTriangle
{
    Triangle2<Scalar> triangle;
    bool reversed{false};
};

/**
 * @brief Apply P^{-1} of the reduced coefficient to each vertex
 *
 * det P = 1, so area and orientation are preserved. Cotangent weights of
 * the result discretize div(A grad).
 */
template <typename Scalar>
TransformedTriangle<Scalar> transformed_triangle(const Triangle2<Scalar>& tri, const ExtComplex<Scalar>& mu)
{
    if (is_degenerate(tri)) {
        throw InputError("degenerate triangle");
    }
    const auto red = reduce_coefficient(mu);
    // P^{-1} = adj(P) since det P = 1
    const Matrix2<Scalar> P = mu_to_P(ExtComplex<Scalar>(red.mu));
    Matrix2<Scalar> Pinv;
    Pinv << P(1, 1), -P(0, 1), -P(1, 0), P(0, 0);
    TransformedTriangle<Scalar> out{Pinv * tri, red.reversed};
    if (is_degenerate(out.triangle)) {
        throw NumericError("transformed triangle is degenerate");
    }
    return out;
}

/**
 * @brief Element stiffness matrix of a triangle
 *
 * K_ij = (e_i . e_j) / (4 |Area|), e_i the edge opposite vertex i. Equal to
 * the cotangent weights; phi^T K phi is the Dirichlet energy of the linear
 * interpolant of phi, for either orientation.
 */
template <typename Scalar> Eigen::Matrix<Scalar, 3, 3> cotangent_weights(const Triangle2<Scalar>& tri)
{
    if (is_degenerate(tri)) {
        throw InputError("degenerate triangle");
    }
    Triangle2<Scalar> e;
    for (int i = 0; i < 3; ++i) {
        e.col(i) = tri.col((i + 2) % 3) - tri.col((i + 1) % 3);
    }
    const Scalar area = std::abs(double_area(tri)) / 2;
    return (e.transpose() * e) / (4 * area);
}

/**
 * Sign of each face's image area in the area matrix: +1 in signed mode,
 * -1 for |mu| > 1 in generalized mode, times the orientation of the domain
 * face (folded meshes used as domains carry reversed faces).
 */
std::vector<int> area_signs(const TriMesh& mesh, const BeltramiField& field, AreaMode mode);

/** |V| x |V| cotangent matrix of div(A grad), always built from reduced coefficients */
SparseMatrix assemble_laplacian(const TriMesh& mesh, const BeltramiField& field);

/**
 * 2|V| x 2|V| symmetric area matrix over x = (u; v):
 * x^T Area x = sum_T s_T * signedArea(image of T).
 */
SparseMatrix assemble_area_matrix(const TriMesh& mesh, const BeltramiField& field, AreaMode mode);

struct SparseSymmetricSystem
{
    /** M = diag(L, L) - 2 Area */
    SparseMatrix matrix;
    AreaMode mode{AreaMode::Signed};
    int num_vertices{0};
    /** Per-face area signs used in assembly */
    std::vector<int> face_signs;
};

/**
 * @brief Assemble M = diag(L_mu, L_mu) - 2 Area
 *
 * 1/2 x^T M x = sum_T 1/2 int_T |P grad u + s_T J P grad v|^2, with J the
 * 90 degree rotation and P from the reduced coefficient. Faces are
 * accumulated in index order, so the matrix is bit-reproducible.
 */
SparseSymmetricSystem assemble_system(const TriMesh& mesh, const BeltramiField& field, AreaMode mode);

/** Stack an embedding as x = (u; v) */
Eigen::VectorXd stack(const Points& embedding);
Points unstack(const Eigen::VectorXd& x);

/** Dump a matrix in MatrixMarket coordinate format */
void save_matrix_market(const SparseMatrix& matrix, const std::filesystem::path& path);

}  // namespace qcfold
