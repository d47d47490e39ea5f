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

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qcfold/coeff.hpp"

namespace qcfold
{

/** Per-vertex planar positions, one row per vertex */
using Points = Eigen::MatrixX2d;
/** Oriented vertex-index triples, one row per face */
using Faces = Eigen::MatrixX3i;
using Triangle2d = Triangle2<double>;

/** Result of mesh validation: empty means ok */
struct ValidationReport
{
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
    /** "ok" or one failure per line */
    std::string str() const;
};

/** One interior edge and its two incident faces */
struct InteriorEdge
{
    int v0;
    int v1;
    /** Face traversing v0 -> v1 */
    int left;
    /** Face traversing v1 -> v0 */
    int right;
};

/** Faces around a vertex, counterclockwise */
struct VertexStar
{
    /** Incident faces in CCW order */
    std::vector<int> faces;
    /**
     * Neighbours bounding the sectors: sector i spans from
     * spokes[i] to spokes[i + 1] (cyclically for interior vertices)
     */
    std::vector<int> spokes;
    bool closed{false};
};

class Topology;

/**
 * @brief Planar triangle mesh
 *
 * The connectivity is validated on construction: indices are in range,
 * faces are consistently oriented, the mesh is connected and no two faces
 * touch at a vertex only. Derived structures are shared between meshes
 * created through with_vertices().
 */
class TriMesh
{
public:
    /** Builds and validates; throws InputError listing every failure */
    TriMesh(Points vertices, Faces faces);

    /**
     * Same connectivity, new embedding. Face positivity is not required:
     * folded images of a mesh are valid inputs to the solvers.
     */
    TriMesh with_vertices(Points vertices) const;

    const Points& vertices() const { return vertices_; }
    const Faces& faces() const { return faces_; }
    int num_vertices() const { return static_cast<int>(vertices_.rows()); }
    int num_faces() const { return static_cast<int>(faces_.rows()); }

    Triangle2d triangle(int f) const { return triangle(f, vertices_); }
    Triangle2d triangle(int f, const Points& embedding) const;

    /** Boundary loops with the domain on the left */
    const std::vector<std::vector<int>>& boundary_loops() const;
    bool is_boundary_vertex(int v) const;
    /** Face on the other side of local edge e = (f[e], f[e+1]), or -1 */
    int face_across(int f, int e) const;
    const std::vector<InteriorEdge>& interior_edges() const;
    const VertexStar& star(int v) const;

private:
    TriMesh(Points vertices, Faces faces, std::shared_ptr<const Topology> topo);

    Points vertices_;
    Faces faces_;
    std::shared_ptr<const Topology> topo_;
};

/** Check every mesh invariant on raw arrays */
ValidationReport validate(const Points& vertices, const Faces& faces);
/** Re-check a mesh, including face positivity of its current embedding */
ValidationReport validate(const TriMesh& mesh);

/** Sum of signed face areas of an embedding indexed like the vertices */
double signed_area(const TriMesh& mesh, const Points& embedding);

/** Shoelace area enclosed by a closed vertex loop */
double loop_area(const Points& embedding, const std::vector<int>& loop);

/** Pin constraints: vertex index -> target position */
using PinSet = std::map<int, Eigen::Vector2d>;

/** Throws InputError unless pins has at least two valid entries for the mesh */
void check_pins(const TriMesh& mesh, const PinSet& pins);

/**
 * Two boundary vertices at maximal pairwise distance, pinned to their
 * positions in targets (rows indexed like the mesh vertices)
 */
PinSet farthest_boundary_pins(const TriMesh& mesh, const Points& targets);

}  // namespace qcfold
