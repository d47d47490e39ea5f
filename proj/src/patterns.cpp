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
#include "qcfold/patterns.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qcfold
{

MiuraPattern miura_pattern(const MiuraSpec& spec)
{
    if (spec.rows < 1 || spec.cols < 1) {
        throw InputError("Miura pattern needs at least 1 x 1 cells");
    }
    if (!(spec.panel_width > 0) || !(spec.panel_height > 0)) {
        throw InputError("Miura panel size must be positive");
    }
    if (!(spec.shear_angle > 0) || !(spec.shear_angle < std::numbers::pi / 2)) {
        throw InputError("Miura shear angle must lie in (0, pi/2)");
    }
    const int nx = 2 * spec.cols;
    const int ny = 2 * spec.rows;
    const double shift = spec.panel_height / std::tan(spec.shear_angle);
    auto id = [&](int i, int j) { return j * (nx + 1) + i; };

    Points V((nx + 1) * (ny + 1), 2);
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            V(id(i, j), 0) = i * spec.panel_width + (j % 2) * shift;
            V(id(i, j), 1) = j * spec.panel_height;
        }
    }
    Faces F(2 * nx * ny, 3);
    std::vector<int> labels(2 * nx * ny);
    int f = 0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            const int label = (i + j) % 2 == 0 ? 1 : -1;
            F.row(f) << a, b, c;
            labels[f++] = label;
            F.row(f) << a, c, d;
            labels[f++] = label;
        }
    }
    TriMesh mesh(std::move(V), std::move(F));
    FoldColoring coloring(mesh, std::move(labels));
    return {std::move(mesh), std::move(coloring)};
}

std::complex<double> eval_polynomial(const std::vector<std::complex<double>>& coeffs, std::complex<double> z)
{
    std::complex<double> acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

TriMesh compose_conformal(const TriMesh& mesh, const std::vector<std::complex<double>>& coeffs)
{
    if (coeffs.empty()) {
        throw InputError("empty polynomial");
    }
    Points W(mesh.num_vertices(), 2);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const auto w = eval_polynomial(coeffs, {mesh.vertices()(v, 0), mesh.vertices()(v, 1)});
        W(v, 0) = w.real();
        W(v, 1) = w.imag();
    }
    std::vector<int> bad;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const auto t = mesh.triangle(f, W);
        if (!(double_area(t) > 0) || is_degenerate(t)) {
            bad.push_back(f);
        }
    }
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "composition inverts " << bad.size() << " face(s):";
        for (std::size_t i = 0; i < bad.size() && i < 20; ++i) {
            msg << ' ' << bad[i];
        }
        throw InputError(msg.str());
    }
    return mesh.with_vertices(std::move(W));
}

std::pair<TriMesh, IterationLog>
repair_flat_foldability(const TriMesh& mesh, const FoldColoring& coloring, double tol, int max_iterations)
{
    if (!(tol >= 0) || max_iterations < 0) {
        throw InputError("tolerance and iteration limit must be non-negative");
    }
    if (coloring.num_faces() != mesh.num_faces()) {
        throw InputError("coloring does not match the mesh");
    }
    using Clock = std::chrono::steady_clock;
    TriMesh domain = mesh;
    IterationLog log;
    for (int n = 1; n <= max_iterations; ++n) {
        const auto t0 = Clock::now();
        const auto pins = farthest_boundary_pins(domain, domain.vertices());
        const auto fold = fold_step(domain, coloring, pins);
        IterationRecord rec;
        rec.iteration = n;
        rec.energy = energy(domain, fold.image, coloring.labels());
        rec.loss = loss(domain, fold.image, coloring.labels());
        rec.max_distortion = max_distortion(domain, fold.image, coloring);
        const bool done = rec.max_distortion <= tol;
        // The returned domain is always the one whose fold was measured last
        if (!done && n < max_iterations) {
            PinSet boundary;
            for (const auto& loop : domain.boundary_loops()) {
                for (int v : loop) {
                    boundary[v] = domain.vertices().row(v).transpose();
                }
            }
            auto unfolded = unfold_step(domain.with_vertices(fold.image), coloring, boundary);
            domain = domain.with_vertices(std::move(unfolded.image));
        }
        rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        log.push_back(rec);
        if (done) {
            break;
        }
    }
    return {std::move(domain), std::move(log)};
}

}  // namespace qcfold
