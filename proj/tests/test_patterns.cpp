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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "qcfold/patterns.hpp"

using namespace qcfold;

namespace
{

const std::vector<MiuraSpec> kBattery{
    {1, 1, 1, 1, std::numbers::pi / 3},
    {4, 5, 1, 1, std::numbers::pi / 3},
    {2, 3, 0.5, 1.5, std::numbers::pi / 4},
    {3, 2, 2, 0.7, 1.2},
    {1, 4, 1, 1, 0.4},
};

SolveResult fold_of(const TriMesh& mesh, const FoldColoring& coloring)
{
    return fold_step(mesh, coloring, farthest_boundary_pins(mesh, mesh.vertices()));
}

// Extents of the image across and along the image of the slanted crease at vertex 0
Eigen::Vector2d strip_extents(const Points& image, int up)
{
    const Eigen::Vector2d along = (image.row(up) - image.row(0)).transpose().normalized();
    Eigen::Matrix2d frame;
    frame << -along.y(), along.x(), along.x(), along.y();
    const Points coords = image * frame;
    return (coords.colwise().maxCoeff() - coords.colwise().minCoeff()).transpose();
}

std::vector<std::complex<double>> kWarp{{10, 0}, {0.1, 0}, {0.4, 0}};

}  // namespace

TEST_CASE("Miura layout")
{
    for (const auto& spec : kBattery) {
        CAPTURE(spec.rows);
        CAPTURE(spec.cols);
        const auto p = miura_pattern(spec);
        const int nx = 2 * spec.cols, ny = 2 * spec.rows;
        CHECK(p.mesh.num_vertices() == (nx + 1) * (ny + 1));
        CHECK(p.mesh.num_faces() == 2 * nx * ny);
        // singular set is the crease grid: every interior panel edge, no diagonal
        CHECK(p.coloring.singular_edges().size() == static_cast<std::size_t>((nx - 1) * ny + (ny - 1) * nx));
        for (const auto& e : p.coloring.singular_edges()) {
            const int di = std::abs(e.v0 % (nx + 1) - e.v1 % (nx + 1));
            const int dj = std::abs(e.v0 / (nx + 1) - e.v1 / (nx + 1));
            CHECK(di + dj == 1);
        }
        const auto kinds = classify_singular_vertices(p.mesh, p.coloring);
        int cusps = 0;
        for (const auto& k : kinds) {
            if (k.kind == VertexKind::Cusp) {
                ++cusps;
                CHECK(k.sectors == 4);
                CHECK(std::abs(kawasaki_defect(p.mesh, p.coloring, k.vertex)) < 1e-12);
            } else {
                CHECK(k.kind == VertexKind::BoundaryEndpoint);
            }
        }
        CHECK(cusps == (nx - 1) * (ny - 1));
        CHECK(
            signed_area(p.mesh, p.mesh.vertices()) ==
            doctest::Approx(nx * ny * spec.panel_width * spec.panel_height));
    }
}

TEST_CASE("Miura folds flat")
{
    for (const auto& spec : kBattery) {
        const auto p = miura_pattern(spec);
        const auto fold = fold_of(p.mesh, p.coloring);
        CHECK(max_distortion(p.mesh, fold.image, p.coloring) < 1e-8);
        CHECK(loss(p.mesh, fold.image, p.coloring.labels()) < 1e-12);
    }
}

TEST_CASE("Miura rows stack into a strip")
{
    // The flat fold is a strip one slanted panel width across. Rows land on
    // top of each other and each column lengthens the strip.
    for (const auto& base : kBattery) {
        std::vector<Eigen::Vector2d> by_cols;
        for (int cols : {1, 2, 3}) {
            Eigen::Vector2d first;
            for (int rows : {1, 2}) {
                MiuraSpec spec = base;
                spec.rows = rows;
                spec.cols = cols;
                const auto p = miura_pattern(spec);
                const Points image = fold_of(p.mesh, p.coloring).image;
                // undo the similarity fixed by the pins
                const double scale = spec.panel_width / (image.row(1) - image.row(0)).norm();
                const Eigen::Vector2d ext = scale * strip_extents(image, 2 * cols + 1);
                CHECK(ext[0] == doctest::Approx(spec.panel_width * std::sin(spec.shear_angle)).epsilon(1e-9));
                if (rows == 1) {
                    first = ext;
                } else {
                    CHECK(ext[1] == doctest::Approx(first[1]).epsilon(1e-9));
                }
            }
            by_cols.push_back(first);
        }
        CHECK(by_cols[1][1] > by_cols[0][1]);
        CHECK(by_cols[2][1] - by_cols[1][1] == doctest::Approx(by_cols[1][1] - by_cols[0][1]).epsilon(1e-9));
    }
}

TEST_CASE("conformal composition")
{
    const TriMesh g = testing::grid_mesh(3, 3, -1, 1, -1, 1);
    CHECK(compose_conformal(g, {{0, 0}, {1, 0}}).vertices() == g.vertices());
    const TriMesh h = compose_conformal(g, {{1, 0}, {2, 0}});
    CHECK(
        (h.vertices().col(0) - (2 * g.vertices().col(0).array() + 1).matrix()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((h.vertices().col(1) - 2 * g.vertices().col(1)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(eval_polynomial({{1, 0}, {0, 1}, {2, 0}}, {0, 1}) == std::complex<double>(-2, 0));
    // z^2 has a critical point at the origin, inside the middle cell
    CHECK_THROWS_WITH_AS(
        compose_conformal(g, {{0, 0}, {0, 0}, {1, 0}}), doctest::Contains("face"), InputError);
    CHECK_THROWS_AS(compose_conformal(g, {}), InputError);
    // conformal maps keep the coefficient zero
    const auto p = miura_pattern(kBattery[0]);
    const TriMesh w = compose_conformal(p.mesh, kWarp);
    CHECK(w.faces() == p.mesh.faces());
}

TEST_CASE("repair")
{
    SUBCASE("flat-foldable input returns at once")
    {
        const auto p = miura_pattern(kBattery[1]);
        const auto [domain, log] = repair_flat_foldability(p.mesh, p.coloring, 1e-6, 50);
        CHECK(log.size() == 1);
        CHECK(domain.vertices() == p.mesh.vertices());
    }
    SUBCASE("warped pattern improves")
    {
        const auto p = miura_pattern({2, 2, 1, 1, std::numbers::pi / 3});
        const TriMesh warped = compose_conformal(p.mesh, kWarp);
        const auto before = classify_singular_vertices(warped, p.coloring);
        double worst_before = 0;
        for (const auto& k : before) {
            if (k.kind == VertexKind::Cusp) {
                worst_before =
                    std::max(worst_before, std::abs(kawasaki_defect(warped, p.coloring, k.vertex)));
            }
        }
        CHECK(worst_before > 1e-3);

        const auto [domain, log] = repair_flat_foldability(warped, p.coloring, 0, 20);
        CHECK(log.size() == 20);
        CHECK(log.back().max_distortion < 0.1 * log.front().max_distortion);
        double worst_after = 0;
        for (const auto& k : before) {
            if (k.kind == VertexKind::Cusp) {
                worst_after = std::max(worst_after, std::abs(kawasaki_defect(domain, p.coloring, k.vertex)));
            }
        }
        CHECK(worst_after < 0.1 * worst_before);
        CHECK(validate(domain).ok());
        // the boundary stays put
        for (const auto& loop : warped.boundary_loops()) {
            for (int v : loop) {
                CHECK((domain.vertices().row(v) - warped.vertices().row(v)).norm() < 1e-9);
            }
        }
    }
    SUBCASE("bad arguments")
    {
        const auto p = miura_pattern(kBattery[0]);
        CHECK_THROWS_AS(repair_flat_foldability(p.mesh, p.coloring, -1, 5), InputError);
        CHECK_THROWS_AS(miura_pattern({0, 1}), InputError);
        CHECK_THROWS_AS(miura_pattern({1, 1, 1, 1, std::numbers::pi / 2}), InputError);
    }
}
