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
#include "qcfold/mesh.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace qcfold
{

namespace
{

std::uint64_t edge_key(int a, int b)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

struct HalfEdge
{
    int face;
    int local;
};

using HalfEdgeMap = std::unordered_map<std::uint64_t, HalfEdge>;

// Union-find over face indices
class Components
{
public:
    explicit Components(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x)
    {
        while (parent_[x] != x) {
            x = parent_[x] = parent_[parent_[x]];
        }
        return x;
    }
    void join(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

}  // namespace

class Topology
{
public:
    Topology(const Faces& faces, int nv);

    HalfEdgeMap half_edges;
    std::vector<std::vector<int>> loops;
    std::vector<char> on_boundary;
    std::vector<std::array<int, 3>> across;
    std::vector<InteriorEdge> interior;
    std::vector<VertexStar> stars;
};

Topology::Topology(const Faces& F, int nv)
{
    const int nf = static_cast<int>(F.rows());
    half_edges.reserve(3 * nf);
    for (int f = 0; f < nf; ++f) {
        for (int e = 0; e < 3; ++e) {
            half_edges.emplace(edge_key(F(f, e), F(f, (e + 1) % 3)), HalfEdge{f, e});
        }
    }

    across.assign(nf, {-1, -1, -1});
    for (int f = 0; f < nf; ++f) {
        for (int e = 0; e < 3; ++e) {
            const int a = F(f, e), b = F(f, (e + 1) % 3);
            auto it = half_edges.find(edge_key(b, a));
            if (it != half_edges.end()) {
                across[f][e] = it->second.face;
                if (a < b) {
                    interior.push_back({a, b, f, it->second.face});
                }
            }
        }
    }
    std::sort(interior.begin(), interior.end(), [](const auto& x, const auto& y) {
        return std::pair(x.v0, x.v1) < std::pair(y.v0, y.v1);
    });

    // Boundary half-edges: a -> b with no twin. Each boundary vertex has
    // exactly one outgoing boundary half-edge on a validated mesh.
    std::vector<int> next(nv, -1);
    on_boundary.assign(nv, 0);
    for (int f = 0; f < nf; ++f) {
        for (int e = 0; e < 3; ++e) {
            if (across[f][e] < 0) {
                const int a = F(f, e), b = F(f, (e + 1) % 3);
                next[a] = b;
                on_boundary[a] = 1;
            }
        }
    }
    std::vector<char> seen(nv, 0);
    for (int v = 0; v < nv; ++v) {
        if (next[v] < 0 || seen[v]) {
            continue;
        }
        std::vector<int> loop;
        int cur = v;
        while (cur >= 0 && !seen[cur]) {
            seen[cur] = 1;
            loop.push_back(cur);
            cur = next[cur];
        }
        loops.push_back(std::move(loop));
    }

    // Vertex stars
    std::vector<std::vector<HalfEdge>> corners(nv);
    for (int f = 0; f < nf; ++f) {
        for (int e = 0; e < 3; ++e) {
            corners[F(f, e)].push_back({f, e});
        }
    }
    stars.resize(nv);
    for (int v = 0; v < nv; ++v) {
        if (corners[v].empty()) {
            continue;
        }
        // Start at the face whose incoming edge b -> v is missing, if any
        HalfEdge start = corners[v].front();
        bool closed = true;
        for (const auto& c : corners[v]) {
            const int b = F(c.face, (c.local + 1) % 3);
            if (!half_edges.count(edge_key(b, v))) {
                start = c;
                closed = false;
                break;
            }
        }
        auto& star = stars[v];
        star.closed = closed;
        HalfEdge cur = start;
        for (std::size_t guard = 0; guard <= corners[v].size(); ++guard) {
            const int b = F(cur.face, (cur.local + 1) % 3);
            const int c = F(cur.face, (cur.local + 2) % 3);
            star.faces.push_back(cur.face);
            star.spokes.push_back(b);
            auto it = half_edges.find(edge_key(v, c));
            if (it == half_edges.end()) {
                star.spokes.push_back(c);
                break;
            }
            if (it->second.face == start.face) {
                break;
            }
            cur = it->second;
        }
    }
}

std::string ValidationReport::str() const
{
    if (ok()) {
        return "ok";
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < failures.size(); ++i) {
        out << (i ? "\n" : "") << failures[i];
    }
    return out.str();
}

ValidationReport validate(const Points& V, const Faces& F)
{
    ValidationReport report;
    auto fail = [&](const std::string& s) { report.failures.push_back(s); };
    const int nv = static_cast<int>(V.rows());
    const int nf = static_cast<int>(F.rows());

    if (nf == 0) {
        fail("mesh has no faces");
        return report;
    }
    for (int f = 0; f < nf; ++f) {
        for (int e = 0; e < 3; ++e) {
            if (F(f, e) < 0 || F(f, e) >= nv) {
                std::ostringstream s;
                s << "index: face " << f << " references invalid vertex " << F(f, e);
                fail(s.str());
            }
        }
        if (F(f, 0) == F(f, 1) || F(f, 1) == F(f, 2) || F(f, 0) == F(f, 2)) {
            std::ostringstream s;
            s << "index: face " << f << " repeats a vertex";
            fail(s.str());
        }
    }
    if (!report.ok()) {
        return report;
    }

    // Orientation: each directed edge used at most once
    HalfEdgeMap owner;
    for (int f = 0; f < nf; ++f) {
        for (int e = 0; e < 3; ++e) {
            const int a = F(f, e), b = F(f, (e + 1) % 3);
            auto [it, inserted] = owner.emplace(edge_key(a, b), HalfEdge{f, e});
            if (!inserted) {
                std::ostringstream s;
                s << "orientation: edge (" << a << ", " << b << ") traversed in the same"
                  << " direction by faces " << it->second.face << " and " << f;
                fail(s.str());
            }
        }
    }

    std::vector<int> valence(nv, 0);
    for (int f = 0; f < nf; ++f) {
        for (int e = 0; e < 3; ++e) {
            ++valence[F(f, e)];
        }
    }
    for (int v = 0; v < nv; ++v) {
        if (valence[v] == 0) {
            std::ostringstream s;
            s << "connectivity: vertex " << v << " is not used by any face";
            fail(s.str());
        }
    }

    // Edge connectivity of faces
    Components comp(nf);
    for (int f = 0; f < nf; ++f) {
        for (int e = 0; e < 3; ++e) {
            const int a = F(f, e), b = F(f, (e + 1) % 3);
            auto it = owner.find(edge_key(b, a));
            if (it != owner.end()) {
                comp.join(f, it->second.face);
            }
        }
    }
    int ncomp = 0;
    for (int f = 0; f < nf; ++f) {
        ncomp += comp.find(f) == f;
    }
    if (ncomp > 1) {
        std::ostringstream s;
        s << "connectivity: mesh has " << ncomp << " edge-connected components";
        fail(s.str());
    }

    // Dangling triangles: the faces around each vertex must be edge-connected
    // through edges incident to that vertex.
    std::vector<std::vector<int>> incident(nv);
    for (int f = 0; f < nf; ++f) {
        for (int e = 0; e < 3; ++e) {
            incident[F(f, e)].push_back(f);
        }
    }
    for (int v = 0; v < nv; ++v) {
        const auto& fs = incident[v];
        if (fs.size() < 2) {
            continue;
        }
        std::unordered_map<int, int> local;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            local[fs[i]] = static_cast<int>(i);
        }
        Components star(static_cast<int>(fs.size()));
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const int f = fs[i];
            for (int e = 0; e < 3; ++e) {
                const int a = F(f, e), b = F(f, (e + 1) % 3);
                if (a != v && b != v) {
                    continue;
                }
                auto it = owner.find(edge_key(b, a));
                if (it != owner.end() && local.count(it->second.face)) {
                    star.join(static_cast<int>(i), local[it->second.face]);
                }
            }
        }
        int parts = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            parts += star.find(static_cast<int>(i)) == static_cast<int>(i);
        }
        if (parts > 1) {
            std::ostringstream s;
            s << "dangling: faces around vertex " << v << " split into " << parts
              << " groups sharing only the vertex";
            fail(s.str());
        }
    }

    for (int f = 0; f < nf; ++f) {
        Triangle2d t;
        for (int i = 0; i < 3; ++i) {
            t.col(i) = V.row(F(f, i)).transpose();
        }
        if (!(double_area(t) > 0) || is_degenerate(t)) {
            std::ostringstream s;
            s << "positivity: face " << f << " has non-positive or negligible area " << 0.5 * double_area(t);
            fail(s.str());
        }
    }
    return report;
}

ValidationReport validate(const TriMesh& mesh)
{
    return validate(mesh.vertices(), mesh.faces());
}

TriMesh::TriMesh(Points vertices, Faces faces) : vertices_{std::move(vertices)}, faces_{std::move(faces)}
{
    auto report = validate(vertices_, faces_);
    if (!report.ok()) {
        throw InputError("invalid mesh:\n" + report.str());
    }
    topo_ = std::make_shared<const Topology>(faces_, static_cast<int>(vertices_.rows()));
}

TriMesh::TriMesh(Points vertices, Faces faces, std::shared_ptr<const Topology> topo)
    : vertices_{std::move(vertices)}, faces_{std::move(faces)}, topo_{std::move(topo)}
{}

TriMesh TriMesh::with_vertices(Points vertices) const
{
    if (vertices.rows() != vertices_.rows()) {
        throw InputError("embedding size does not match the mesh vertex count");
    }
    return TriMesh(std::move(vertices), faces_, topo_);
}

Triangle2d TriMesh::triangle(int f, const Points& embedding) const
{
    Triangle2d t;
    for (int i = 0; i < 3; ++i) {
        t.col(i) = embedding.row(faces_(f, i)).transpose();
    }
    return t;
}

const std::vector<std::vector<int>>& TriMesh::boundary_loops() const
{
    return topo_->loops;
}

bool TriMesh::is_boundary_vertex(int v) const
{
    return topo_->on_boundary[v] != 0;
}

int TriMesh::face_across(int f, int e) const
{
    return topo_->across[f][e];
}

const std::vector<InteriorEdge>& TriMesh::interior_edges() const
{
    return topo_->interior;
}

const VertexStar& TriMesh::star(int v) const
{
    return topo_->stars[v];
}

double signed_area(const TriMesh& mesh, const Points& embedding)
{
    if (embedding.rows() != mesh.num_vertices()) {
        throw InputError("embedding size does not match the mesh vertex count");
    }
    double area = 0;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        area += 0.5 * double_area(mesh.triangle(f, embedding));
    }
    return area;
}

double loop_area(const Points& embedding, const std::vector<int>& loop)
{
    double twice = 0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const auto p = embedding.row(loop[i]);
        const auto q = embedding.row(loop[(i + 1) % loop.size()]);
        twice += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * twice;
}

void check_pins(const TriMesh& mesh, const PinSet& pins)
{
    if (pins.size() < 2) {
        throw InputError("at least 2 pins are required, got " + std::to_string(pins.size()));
    }
    for (const auto& [v, p] : pins) {
        if (v < 0 || v >= mesh.num_vertices()) {
            throw InputError("pin references invalid vertex " + std::to_string(v));
        }
        if (!p.allFinite()) {
            throw InputError("pin target of vertex " + std::to_string(v) + " is not finite");
        }
    }
}

PinSet farthest_boundary_pins(const TriMesh& mesh, const Points& targets)
{
    std::vector<int> boundary;
    for (const auto& loop : mesh.boundary_loops()) {
        boundary.insert(boundary.end(), loop.begin(), loop.end());
    }
    std::sort(boundary.begin(), boundary.end());
    if (boundary.size() < 2) {
        throw InputError("mesh has fewer than two boundary vertices");
    }
    const auto& V = mesh.vertices();
    int best_a = boundary[0], best_b = boundary[1];
    double best = -1;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        for (std::size_t j = i + 1; j < boundary.size(); ++j) {
            const double d = (V.row(boundary[i]) - V.row(boundary[j])).squaredNorm();
            if (d > best) {
                best = d;
                best_a = boundary[i];
                best_b = boundary[j];
            }
        }
    }
    return {{best_a, targets.row(best_a).transpose()}, {best_b, targets.row(best_b).transpose()}};
}

}  // namespace qcfold
