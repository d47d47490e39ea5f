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

#include <vector>

#include "qcfold/assembly.hpp"
#include "qcfold/mesh.hpp"

namespace qcfold
{

/**
 * @brief Two-coloring of the faces into orientation-preserving (+1) and
 * orientation-reversing (-1) regions
 *
 * The singular set is the set of interior edges whose two faces carry
 * different labels.
 */
class FoldColoring
{
public:
    FoldColoring(const TriMesh& mesh, std::vector<int> labels);

    const std::vector<int>& labels() const { return labels_; }
    int label(int f) const { return labels_[f]; }
    int num_faces() const { return static_cast<int>(labels_.size()); }
    /** Bichromatic interior edges, sorted by (v0, v1) */
    const std::vector<InteriorEdge>& singular_edges() const { return singular_; }
    /** Vertices touching the singular set, ascending */
    const std::vector<int>& singular_vertices() const { return singular_vertices_; }

private:
    std::vector<int> labels_;
    std::vector<InteriorEdge> singular_;
    std::vector<int> singular_vertices_;
};

/** +1 where |mu| < 1, -1 where |mu| > 1 or mu = inf */
FoldColoring coloring_from_field(const TriMesh& mesh, const BeltramiField& field);

/** mu = 0 on +1 faces and inf on -1 faces */
BeltramiField field_from_coloring(const FoldColoring& coloring);

enum class VertexKind
{
    /** Star split into two sectors */
    Folding,
    /** Star split into 2n > 2 sectors */
    Cusp,
    /** Boundary vertex touched by the singular set */
    BoundaryEndpoint,
};

struct SingularVertex
{
    int vertex;
    VertexKind kind;
    /** Number of singular edges at the vertex; 2n for cusp(n) */
    int sectors;
};

/** Classify every singular vertex; throws on an odd sector count */
std::vector<SingularVertex> classify_singular_vertices(const TriMesh& mesh, const FoldColoring& coloring);

/**
 * Sector angles at an interior singular vertex, counterclockwise, starting
 * from the singular edge with the smallest polar angle in [0, 2pi)
 */
std::vector<double> sector_angles(const TriMesh& mesh, const FoldColoring& coloring, int vertex);

/** Alternating sum -a1 + a2 - a3 + ... of the sector angles, in radians */
double kawasaki_defect(const TriMesh& mesh, const FoldColoring& coloring, int vertex);

/**
 * max{ max |mu_T| over +1 faces, max 1/|mu_T| over -1 faces } of the map
 * from the mesh to image; 0 for an exact fold
 */
double max_distortion(const TriMesh& mesh, const Points& image, const FoldColoring& coloring);

struct StraightenResult
{
    TriMesh mesh;
    /** Fraction of the full projection applied; 1 unless a face would invert */
    double damping{1};
    /** Number of open folding-line chains processed */
    int chains{0};
};

/**
 * @brief Project folding lines onto straight segments
 *
 * Folding lines are maximal chains of interior folding points; their
 * endpoints (cusps or boundary vertices) stay fixed and interior vertices
 * move to their perpendicular foot on the endpoint segment. If any face
 * would lose positive area the move is halved until it does not.
 */
StraightenResult straighten_folding_lines(const TriMesh& mesh, const FoldColoring& coloring);

}  // namespace qcfold
