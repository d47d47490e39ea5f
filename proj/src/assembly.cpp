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
#include "qcfold/assembly.hpp"

#include <string>

#include <unsupported/Eigen/SparseExtra>

namespace qcfold
{

namespace
{

using Triplet = Eigen::Triplet<double>;

[[noreturn]] void rethrow_for_face(int f, const std::exception& e, bool numeric)
{
    const auto msg = "face " + std::to_string(f) + ": " + e.what();
    if (numeric) {
        throw NumericError(msg);
    }
    throw InputError(msg);
}

}  // namespace

void check_field(const TriMesh& mesh, const BeltramiField& field)
{
    if (static_cast<int>(field.mu.size()) != mesh.num_faces()) {
        throw InputError(
            "Beltrami field has " + std::to_string(field.mu.size()) + " values for a mesh with " +
            std::to_string(mesh.num_faces()) + " faces");
    }
    for (int f = 0; f < mesh.num_faces(); ++f) {
        try {
            check_admissible(field.mu[f]);
        } catch (const InputError& e) {
            rethrow_for_face(f, e, false);
        }
    }
}

std::vector<int> area_signs(const TriMesh& mesh, const BeltramiField& field, AreaMode mode)
{
    check_field(mesh, field);
    std::vector<int> signs(mesh.num_faces(), 1);
    for (int f = 0; f < mesh.num_faces(); ++f) {
        int s = 1;
        if (mode == AreaMode::Generalized && field.mu[f].modulus() > 1) {
            s = -1;
        }
        if (double_area(mesh.triangle(f)) < 0) {
            s = -s;
        }
        signs[f] = s;
    }
    return signs;
}

SparseMatrix assemble_laplacian(const TriMesh& mesh, const BeltramiField& field)
{
    check_field(mesh, field);
    const auto& F = mesh.faces();
    std::vector<Triplet> triplets;
    triplets.reserve(9 * mesh.num_faces());
    for (int f = 0; f < mesh.num_faces(); ++f) {
        Eigen::Matrix3d K;
        try {
            K = cotangent_weights(transformed_triangle(mesh.triangle(f), field.mu[f]).triangle);
        } catch (const NumericError& e) {
            rethrow_for_face(f, e, true);
        } catch (const InputError& e) {
            rethrow_for_face(f, e, false);
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                triplets.emplace_back(F(f, i), F(f, j), K(i, j));
            }
        }
    }
    SparseMatrix L(mesh.num_vertices(), mesh.num_vertices());
    L.setFromTriplets(triplets.begin(), triplets.end());
    return L;
}

namespace
{

void push_area_terms(std::vector<Triplet>& triplets, const Faces& F, int f, int n, double sign)
{
    // Each oriented edge a -> b contributes sign/2 (u_a v_b - u_b v_a),
    // split symmetrically over the (u, v) and (v, u) blocks.
    const double w = sign / 4;
    for (int e = 0; e < 3; ++e) {
        const int a = F(f, e), b = F(f, (e + 1) % 3);
        triplets.emplace_back(a, n + b, w);
        triplets.emplace_back(n + b, a, w);
        triplets.emplace_back(b, n + a, -w);
        triplets.emplace_back(n + a, b, -w);
    }
}

}  // namespace

SparseMatrix assemble_area_matrix(const TriMesh& mesh, const BeltramiField& field, AreaMode mode)
{
    const auto signs = area_signs(mesh, field, mode);
    const int n = mesh.num_vertices();
    std::vector<Triplet> triplets;
    triplets.reserve(12 * mesh.num_faces());
    for (int f = 0; f < mesh.num_faces(); ++f) {
        push_area_terms(triplets, mesh.faces(), f, n, signs[f]);
    }
    SparseMatrix A(2 * n, 2 * n);
    A.setFromTriplets(triplets.begin(), triplets.end());
    return A;
}

SparseSymmetricSystem assemble_system(const TriMesh& mesh, const BeltramiField& field, AreaMode mode)
{
    const auto signs = area_signs(mesh, field, mode);
    const int n = mesh.num_vertices();
    const auto& F = mesh.faces();
    std::vector<Triplet> triplets;
    triplets.reserve(30 * mesh.num_faces());
    for (int f = 0; f < mesh.num_faces(); ++f) {
        Eigen::Matrix3d K;
        try {
            K = cotangent_weights(transformed_triangle(mesh.triangle(f), field.mu[f]).triangle);
        } catch (const NumericError& e) {
            rethrow_for_face(f, e, true);
        } catch (const InputError& e) {
            rethrow_for_face(f, e, false);
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                triplets.emplace_back(F(f, i), F(f, j), K(i, j));
                triplets.emplace_back(n + F(f, i), n + F(f, j), K(i, j));
            }
        }
        push_area_terms(triplets, F, f, n, -2.0 * signs[f]);
    }
    SparseSymmetricSystem sys;
    sys.matrix.resize(2 * n, 2 * n);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sys.matrix.makeCompressed();
    sys.mode = mode;
    sys.num_vertices = n;
    sys.face_signs = signs;
    return sys;
}

Eigen::VectorXd stack(const Points& embedding)
{
    Eigen::VectorXd x(2 * embedding.rows());
    x << embedding.col(0), embedding.col(1);
    return x;
}

Points unstack(const Eigen::VectorXd& x)
{
    const Eigen::Index n = x.size() / 2;
    Points p(n, 2);
    p.col(0) = x.head(n);
    p.col(1) = x.tail(n);
    return p;
}

void save_matrix_market(const SparseMatrix& matrix, const std::filesystem::path& path)
{
    if (!Eigen::saveMarket(matrix, path.string())) {
        throw InputError("cannot write " + path.string());
    }
}

}  // namespace qcfold
