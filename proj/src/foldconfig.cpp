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
#include "qcfold/foldconfig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcfold/solver.hpp"

namespace qcfold
{

namespace
{

// Fan positions i whose spoke separates two faces of different color
std::vector<int> singular_spokes(const VertexStar& star, const FoldColoring& coloring)
{
    std::vector<int> out;
    const int k = static_cast<int>(star.faces.size());
    if (star.closed) {
        for (int i = 0; i < k; ++i) {
            if (coloring.label(star.faces[(i + k - 1) % k]) != coloring.label(star.faces[i])) {
                out.push_back(i);
            }
        }
    } else {
        for (int i = 1; i < k; ++i) {
            if (coloring.label(star.faces[i - 1]) != coloring.label(star.faces[i])) {
                out.push_back(i);
            }
        }
    }
    return out;
}

double corner_angle(const Points& V, int v, int a, int b)
{
    const Eigen::Vector2d p = V.row(a) - V.row(v);
    const Eigen::Vector2d q = V.row(b) - V.row(v);
    return std::atan2(p.x() * q.y() - p.y() * q.x(), p.dot(q));
}

double polar_angle(const Points& V, int v, int a)
{
    const Eigen::Vector2d d = V.row(a) - V.row(v);
    double t = std::atan2(d.y(), d.x());
    return t < 0 ? t + 2 * std::numbers::pi : t;
}

}  // namespace

FoldColoring::FoldColoring(const TriMesh& mesh, std::vector<int> labels) : labels_{std::move(labels)}
{
    if (static_cast<int>(labels_.size()) != mesh.num_faces()) {
        throw InputError(
            "coloring has " + std::to_string(labels_.size()) + " labels for " +
            std::to_string(mesh.num_faces()) + " faces");
    }
    for (std::size_t f = 0; f < labels_.size(); ++f) {
        if (labels_[f] != 1 && labels_[f] != -1) {
            throw InputError("coloring label of face " + std::to_string(f) + " must be +1 or -1");
        }
    }
    for (const auto& e : mesh.interior_edges()) {
        if (labels_[e.left] != labels_[e.right]) {
            singular_.push_back(e);
            singular_vertices_.push_back(e.v0);
            singular_vertices_.push_back(e.v1);
        }
    }
    std::sort(singular_vertices_.begin(), singular_vertices_.end());
    singular_vertices_.erase(
        std::unique(singular_vertices_.begin(), singular_vertices_.end()), singular_vertices_.end());
}

FoldColoring coloring_from_field(const TriMesh& mesh, const BeltramiField& field)
{
    check_field(mesh, field);
    return FoldColoring(mesh, labels_of(field));
}

BeltramiField field_from_coloring(const FoldColoring& coloring)
{
    BeltramiField field;
    field.mu.reserve(coloring.num_faces());
    for (int f = 0; f < coloring.num_faces(); ++f) {
        field.mu.push_back(coloring.label(f) > 0 ? ExtComplexd(0.0) : ExtComplexd::infinity());
    }
    return field;
}

std::vector<SingularVertex> classify_singular_vertices(const TriMesh& mesh, const FoldColoring& coloring)
{
    std::vector<SingularVertex> out;
    for (int v : coloring.singular_vertices()) {
        const auto& star = mesh.star(v);
        const int count = static_cast<int>(singular_spokes(star, coloring).size());
        if (!star.closed) {
            out.push_back({v, VertexKind::BoundaryEndpoint, count});
            continue;
        }
        if (count % 2 != 0) {
            throw InputError(
                "invalid two-coloring: vertex " + std::to_string(v) + " has " + std::to_string(count) +
                " sectors");
        }
        out.push_back({v, count == 2 ? VertexKind::Folding : VertexKind::Cusp, count});
    }
    return out;
}

std::vector<double> sector_angles(const TriMesh& mesh, const FoldColoring& coloring, int vertex)
{
    if (vertex < 0 || vertex >= mesh.num_vertices()) {
        throw InputError("invalid vertex " + std::to_string(vertex));
    }
    const auto& star = mesh.star(vertex);
    const auto spokes = singular_spokes(star, coloring);
    if (!star.closed || spokes.empty()) {
        throw InputError("vertex " + std::to_string(vertex) + " is not an interior singular vertex");
    }
    const auto& V = mesh.vertices();
    const int k = static_cast<int>(star.faces.size());

    // Rotate so the first sector starts at the singular edge of smallest polar angle
    std::size_t first = 0;
    for (std::size_t j = 1; j < spokes.size(); ++j) {
        if (polar_angle(V, vertex, star.spokes[spokes[j]]) <
            polar_angle(V, vertex, star.spokes[spokes[first]])) {
            first = j;
        }
    }
    std::vector<double> angles;
    const std::size_t m = spokes.size();
    for (std::size_t j = 0; j < m; ++j) {
        const int begin = spokes[(first + j) % m];
        const int end = spokes[(first + j + 1) % m];
        double sum = 0;
        int i = begin;
        do {
            sum += corner_angle(V, vertex, star.spokes[i], star.spokes[(i + 1) % k]);
            i = (i + 1) % k;
        } while (i != end);
        angles.push_back(sum);
    }
    return angles;
}

double kawasaki_defect(const TriMesh& mesh, const FoldColoring& coloring, int vertex)
{
    const auto angles = sector_angles(mesh, coloring, vertex);
    double d = 0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        d += (i % 2 == 0 ? -angles[i] : angles[i]);
    }
    return d;
}

double max_distortion(const TriMesh& mesh, const Points& image, const FoldColoring& coloring)
{
    if (coloring.num_faces() != mesh.num_faces() || image.rows() != mesh.num_vertices()) {
        throw InputError("coloring or image does not match the mesh");
    }
    double worst = 0;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        ExtComplexd mu;
        try {
            mu = mu_of_map(mesh.triangle(f), mesh.triangle(f, image));
        } catch (const InputError& e) {
            throw InputError("face " + std::to_string(f) + ": " + e.what());
        }
        double d;
        if (coloring.label(f) > 0) {
            d = mu.modulus();
        } else {
            d = mu.is_infinite() ? 0.0 : 1.0 / std::abs(mu.value());
        }
        worst = std::max(worst, d);
    }
    return worst;
}

StraightenResult straighten_folding_lines(const TriMesh& mesh, const FoldColoring& coloring)
{
    if (coloring.num_faces() != mesh.num_faces()) {
        throw InputError("coloring does not match the mesh");
    }
    const int n = mesh.num_vertices();
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : coloring.singular_edges()) {
        adj[e.v0].push_back(e.v1);
        adj[e.v1].push_back(e.v0);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
    }
    auto is_chain_interior = [&](int v) { return adj[v].size() == 2 && !mesh.is_boundary_vertex(v); };

    const Points& V = mesh.vertices();
    Points target = V;
    std::vector<char> visited(n, 0);
    int chains = 0;
    for (int start = 0; start < n; ++start) {
        if (adj[start].empty() || is_chain_interior(start)) {
            continue;
        }
        for (int first : adj[start]) {
            if (!is_chain_interior(first) || visited[first]) {
                continue;
            }
            std::vector<int> chain;
            int prev = start, cur = first;
            while (is_chain_interior(cur)) {
                chain.push_back(cur);
                visited[cur] = 1;
                const int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = next;
            }
            const Eigen::Vector2d a = V.row(start).transpose();
            const Eigen::Vector2d b = V.row(cur).transpose();
            const Eigen::Vector2d d = b - a;
            const double len2 = d.squaredNorm();
            if (len2 == 0) {
                continue;
            }
            ++chains;
            for (int v : chain) {
                const Eigen::Vector2d p = V.row(v).transpose();
                const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
                target.row(v) = (a + t * d).transpose();
            }
        }
    }

    auto valid = [&](const Points& P) {
        for (int f = 0; f < mesh.num_faces(); ++f) {
            const auto t = mesh.triangle(f, P);
            if (!(double_area(t) > 0) || is_degenerate(t)) {
                return false;
            }
        }
        return true;
    };
    double damping = 1;
    Points moved = target;
    for (int attempt = 0; attempt < 50 && !valid(moved); ++attempt) {
        damping *= 0.5;
        moved = V + damping * (target - V);
    }
    if (!valid(moved)) {
        damping = 0;
        moved = V;
    }
    return {mesh.with_vertices(std::move(moved)), damping, chains};
}

}  // namespace qcfold
