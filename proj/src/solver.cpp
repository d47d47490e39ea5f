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
#include "qcfold/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

namespace qcfold
{

SolveResult lsqc_solve(
    const TriMesh& mesh, const BeltramiField& field, const PinSet& pins, AreaMode mode, double tolerance)
{
    check_pins(mesh, pins);
    const auto sys = assemble_system(mesh, field, mode);
    const int n = mesh.num_vertices();
    const int dim = 2 * n;

    // Unknown k is vertex k % n, coordinate k / n
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    std::vector<int> free_index(dim, -1);
    int nfree = 0;
    for (int k = 0; k < dim; ++k) {
        auto it = pins.find(k % n);
        if (it != pins.end()) {
            x[k] = it->second[k / n];
        } else {
            free_index[k] = nfree++;
        }
    }

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(sys.matrix.nonZeros());
    Eigen::VectorXd coupling = Eigen::VectorXd::Zero(nfree);
    for (int col = 0; col < sys.matrix.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(sys.matrix, col); it; ++it) {
            const int r = free_index[it.row()];
            if (r < 0) {
                continue;
            }
            const int c = free_index[col];
            if (c >= 0) {
                triplets.emplace_back(r, c, it.value());
            } else {
                coupling[r] += it.value() * x[col];
            }
        }
    }

    if (nfree > 0) {
        SparseMatrix Mff(nfree, nfree);
        Mff.setFromTriplets(triplets.begin(), triplets.end());
        Mff.makeCompressed();

        Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(Mff);
        if (lu.info() != Eigen::Success) {
            throw NumericError(
                "factorization of the pinned system failed (" + lu.lastErrorMessage() +
                "); suspected cause: fewer than 2 effective pins or a disconnected mesh");
        }
        Eigen::VectorXd xf = lu.solve(-coupling);
        if (lu.info() != Eigen::Success || !xf.allFinite()) {
            throw NumericError("back substitution failed; the pinned system is singular");
        }
        // a few rounds of iterative refinement for badly shaped meshes
        const double scale = std::max(1.0, coupling.norm());
        for (int round = 0; round < 3; ++round) {
            const Eigen::VectorXd r = -coupling - Mff * xf;
            if (r.norm() <= 0.01 * tolerance * scale) {
                break;
            }
            xf += lu.solve(r);
        }
        for (int k = 0; k < dim; ++k) {
            if (free_index[k] >= 0) {
                x[k] = xf[free_index[k]];
            }
        }
    }

    // Residual over the free rows of M x
    const Eigen::VectorXd Mx = sys.matrix * x;
    double res2 = 0;
    for (int k = 0; k < dim; ++k) {
        if (free_index[k] >= 0) {
            res2 += Mx[k] * Mx[k];
        }
    }
    SolveResult result;
    result.residual = std::sqrt(res2) / std::max(1.0, coupling.norm());
    if (!(result.residual <= tolerance)) {
        std::ostringstream msg;
        msg << "solve residual " << result.residual << " exceeds tolerance " << tolerance
            << "; the mesh is probably too badly shaped";
        throw NumericError(msg.str());
    }
    result.image = unstack(x);
    result.energy = 0.5 * x.dot(Mx);
    result.recovered_mu = recovered_coefficients(mesh, result.image);
    return result;
}

std::vector<std::optional<ExtComplexd>> recovered_coefficients(const TriMesh& mesh, const Points& image)
{
    std::vector<std::optional<ExtComplexd>> mu(mesh.num_faces());
    for (int f = 0; f < mesh.num_faces(); ++f) {
        try {
            mu[f] = mu_of_map(mesh.triangle(f), mesh.triangle(f, image));
        } catch (const InputError&) {
            mu[f].reset();
        }
    }
    return mu;
}

namespace
{

void check_labels(const TriMesh& mesh, const Points& image, const std::vector<int>& labels)
{
    if (image.rows() != mesh.num_vertices()) {
        throw InputError("image size does not match the mesh vertex count");
    }
    if (static_cast<int>(labels.size()) != mesh.num_faces()) {
        throw InputError(
            "coloring has " + std::to_string(labels.size()) + " labels for " +
            std::to_string(mesh.num_faces()) + " faces");
    }
}

ExtComplexd face_mu(const TriMesh& mesh, const Points& image, int f)
{
    try {
        return mu_of_map(mesh.triangle(f), mesh.triangle(f, image));
    } catch (const InputError& e) {
        throw InputError("face " + std::to_string(f) + ": " + e.what());
    }
}

// 1/|mu|^2 for -1 faces, |mu|^2 for +1 faces
double loss_term(const ExtComplexd& mu, int label)
{
    const double inf = std::numeric_limits<double>::infinity();
    if (label > 0) {
        return mu.is_infinite() ? inf : std::norm(mu.value());
    }
    if (mu.is_infinite()) {
        return 0;
    }
    const double m2 = std::norm(mu.value());
    return m2 > 0 ? 1 / m2 : inf;
}

}  // namespace

double energy(const TriMesh& mesh, const Points& image, const std::vector<int>& labels)
{
    check_labels(mesh, image, labels);
    double e = 0;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const auto domain = mesh.triangle(f);
        const auto d = complex_derivatives<double>(affine_jacobian(domain, mesh.triangle(f, image)));
        const double area = std::abs(double_area(domain)) / 2;
        // Wirtinger derivatives carry a factor 1/2
        e += area * 0.25 * (labels[f] > 0 ? std::norm(d.fzbar) : std::norm(d.fz));
    }
    return e;
}

std::vector<int> labels_of(const BeltramiField& field)
{
    std::vector<int> labels(field.mu.size());
    for (std::size_t f = 0; f < field.mu.size(); ++f) {
        labels[f] = field.mu[f].modulus() < 1 ? 1 : -1;
    }
    return labels;
}

double loss(const TriMesh& mesh, const Points& image, const std::vector<int>& labels)
{
    check_labels(mesh, image, labels);
    double total = 0;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        total += loss_term(face_mu(mesh, image, f), labels[f]);
    }
    return total;
}

std::vector<int> divergent_faces(const TriMesh& mesh, const Points& image, const std::vector<int>& labels)
{
    check_labels(mesh, image, labels);
    std::vector<int> out;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        if (std::isinf(loss_term(face_mu(mesh, image, f), labels[f]))) {
            out.push_back(f);
        }
    }
    return out;
}

}  // namespace qcfold
