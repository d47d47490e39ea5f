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
#include "fixtures.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace qcfold::testing
{

TriMesh unit_square()
{
    Points V(4, 2);
    V << 0, 0, 1, 0, 1, 1, 0, 1;
    Faces F(2, 3);
    F << 0, 1, 2, 0, 2, 3;
    return TriMesh(V, F);
}

TriMesh grid_mesh(int nx, int ny, double x0, double x1, double y0, double y1)
{
    Points V((nx + 1) * (ny + 1), 2);
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            V.row(j * (nx + 1) + i) << x0 + (x1 - x0) * i / nx, y0 + (y1 - y0) * j / ny;
        }
    }
    Faces F(2 * nx * ny, 3);
    int f = 0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int a = j * (nx + 1) + i;
            const int b = a + 1;
            const int c = b + nx + 1;
            const int d = a + nx + 1;
            F.row(f++) << a, b, c;
            F.row(f++) << a, c, d;
        }
    }
    return TriMesh(V, F);
}

namespace
{

/** Faces joining two concentric rings, walking both by angle */
void stitch(
    const std::vector<int>& inner, const std::vector<int>& outer, const Points& V,
    std::vector<Eigen::Vector3i>& faces)
{
    const auto angle = [&](int v) { return std::atan2(V(v, 1), V(v, 0)); };
    const int na = static_cast<int>(inner.size());
    const int nb = static_cast<int>(outer.size());
    const double base = angle(inner[0]);
    const auto unwrap = [&](double a) {
        while (a < base - 1e-12) {
            a += 2 * std::numbers::pi;
        }
        while (a >= base + 2 * std::numbers::pi) {
            a -= 2 * std::numbers::pi;
        }
        return a;
    };
    // outer vertex closest in angle to inner[0], measured both ways
    int j0 = 0;
    double best = 1e9;
    for (int j = 0; j < nb; ++j) {
        double d = std::abs(std::remainder(angle(outer[j]) - base, 2 * std::numbers::pi));
        if (d < best) {
            best = d;
            j0 = j;
        }
    }
    const auto in_angle = [&](int i) {
        return unwrap(angle(inner[i % na])) + (i >= na ? 2 * std::numbers::pi : 0);
    };
    const double ob = angle(outer[j0]);
    const auto out_angle = [&](int j) {
        double a = angle(outer[(j0 + j) % nb]) - ob;
        a = std::remainder(a, 2 * std::numbers::pi);
        if (j > 0 && a <= 0) {
            a += 2 * std::numbers::pi;
        }
        if (j == nb) {
            a = 2 * std::numbers::pi;
        }
        return base + (ob - base) + a;
    };
    int i = 0, j = 0;
    while (i < na || j < nb) {
        const bool advance_inner = j == nb || (i < na && in_angle(i + 1) < out_angle(j + 1));
        const int a = inner[i % na];
        const int b = outer[(j0 + j) % nb];
        if (advance_inner) {
            faces.emplace_back(a, b, inner[(i + 1) % na]);
            ++i;
        } else {
            faces.emplace_back(a, b, outer[(j0 + j + 1) % nb]);
            ++j;
        }
    }
}

}  // namespace

TriMesh random_disk(std::mt19937_64& rng, int max_faces)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> extra(4, 7);
    for (int attempt = 0;; ++attempt) {
        std::vector<int> sizes{1, std::uniform_int_distribution<int>(5, 7)(rng)};
        int faces = sizes[1];
        while (true) {
            const int next = sizes.back() + extra(rng);
            if (faces + sizes.back() + next > max_faces) {
                break;
            }
            faces += sizes.back() + next;
            sizes.push_back(next);
        }
        int nv = 0;
        for (int s : sizes) {
            nv += s;
        }
        Points V(nv, 2);
        std::vector<std::vector<int>> rings;
        int v = 0;
        const double scale = 0.5 + 2 * unit(rng);
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            std::vector<int> ring;
            const double offset = 2 * std::numbers::pi * unit(rng);
            for (int s = 0; s < sizes[k]; ++s, ++v) {
                if (k == 0) {
                    V.row(v) << 0.1 * (unit(rng) - 0.5) * scale, 0.1 * (unit(rng) - 0.5) * scale;
                } else {
                    const double r = (static_cast<double>(k) + 0.3 * (unit(rng) - 0.5)) * scale;
                    const double t = offset + 2 * std::numbers::pi * (s + 0.4 * (unit(rng) - 0.5)) / sizes[k];
                    V.row(v) << r * std::cos(t), r * std::sin(t);
                }
                ring.push_back(v);
            }
            rings.push_back(ring);
        }
        std::vector<Eigen::Vector3i> tris;
        for (std::size_t s = 0; s < rings[1].size(); ++s) {
            tris.emplace_back(0, rings[1][s], rings[1][(s + 1) % rings[1].size()]);
        }
        for (std::size_t k = 2; k < rings.size(); ++k) {
            stitch(rings[k - 1], rings[k], V, tris);
        }
        Faces F(static_cast<int>(tris.size()), 3);
        for (std::size_t f = 0; f < tris.size(); ++f) {
            F.row(static_cast<int>(f)) = tris[f].transpose();
        }
        if (validate(V, F).ok()) {
            return TriMesh(V, F);
        }
        if (attempt > 100) {
            throw std::runtime_error("random_disk: no valid mesh");
        }
    }
}

// gradients of the linear interpolant from a 2x2 solve, P written out from rho and tau
double dense_energy(const TriMesh& mesh, const BeltramiField& field, AreaMode mode, const Points& img)
{
    double total = 0;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const Triangle2d t = mesh.triangle(f);
        const Triangle2d w = mesh.triangle(f, img);
        Eigen::Matrix2d E;
        E << t.col(1) - t.col(0), t.col(2) - t.col(0);
        const double dom = E.determinant() / 2;
        // grad u solves E^T g = (u1 - u0, u2 - u0)
        const Eigen::Vector2d gu =
            E.transpose().fullPivLu().solve(Eigen::Vector2d(w(0, 1) - w(0, 0), w(0, 2) - w(0, 0)));
        const Eigen::Vector2d gv =
            E.transpose().fullPivLu().solve(Eigen::Vector2d(w(1, 1) - w(1, 0), w(1, 2) - w(1, 0)));
        std::complex<double> m(0, 0);
        bool outside = false;
        if (field.mu[f].is_infinite()) {
            outside = true;
        } else if (std::abs(field.mu[f].value()) > 1) {
            outside = true;
            m = 1.0 / std::conj(field.mu[f].value());
        } else {
            m = field.mu[f].value();
        }
        const double rho = m.real(), tau = m.imag();
        Eigen::Matrix2d P;
        P << 1 - rho, -tau, -tau, 1 + rho;
        P /= std::sqrt(1 - std::norm(m));
        const double s = (mode == AreaMode::Generalized && outside) ? -1 : 1;
        const double image_area =
            (w(0, 1) - w(0, 0)) * (w(1, 2) - w(1, 0)) / 2 - (w(0, 2) - w(0, 0)) * (w(1, 1) - w(1, 0)) / 2;
        total += 0.5 * std::abs(dom) * ((P * gu).squaredNorm() + (P * gv).squaredNorm()) -
                 s * (dom > 0 ? 1 : -1) * image_area;
    }
    return total;
}

ExtComplexd random_mu(std::mt19937_64& rng, double lo, double hi)
{
    if (std::isinf(hi)) {
        return ExtComplexd::infinity();
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = lo + (hi - lo) * unit(rng);
    return ExtComplexd(std::polar(r, 2 * std::numbers::pi * unit(rng)));
}

BeltramiField random_field(std::mt19937_64& rng, int num_faces, bool allow_outside)
{
    std::uniform_int_distribution<int> pick(0, 9);
    BeltramiField field;
    for (int f = 0; f < num_faces; ++f) {
        const int k = allow_outside ? pick(rng) : 0;
        if (k < 5) {
            field.mu.push_back(random_mu(rng, 0.0, 0.9));
        } else if (k < 9) {
            field.mu.push_back(random_mu(rng, 1.1, 20.0));
        } else {
            field.mu.push_back(ExtComplexd::infinity());
        }
    }
    return field;
}

std::vector<int> labels_by_centroid(const TriMesh& mesh, const std::function<bool(double, double)>& plus)
{
    std::vector<int> labels;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const Eigen::Vector2d c = mesh.triangle(f).rowwise().mean();
        labels.push_back(plus(c.x(), c.y()) ? 1 : -1);
    }
    return labels;
}

namespace
{

using PlaneMap = std::function<Eigen::Vector2d(double, double)>;

FoldFixture make_fixture(
    std::string name, int n, const std::function<bool(double, double)>& plus, const PlaneMap& fold,
    const std::function<bool(double, double)>& visible, const PlaneMap& displacement, double occluded)
{
    TriMesh truth = grid_mesh(n, n);
    const Points& V = truth.vertices();
    Points folded(V.rows(), 2);
    Points start(V.rows(), 2);
    for (int v = 0; v < V.rows(); ++v) {
        folded.row(v) = fold(V(v, 0), V(v, 1)).transpose();
        start.row(v) = V.row(v) + displacement(V(v, 0), V(v, 1)).transpose();
    }
    FoldColoring coloring(truth, labels_by_centroid(truth, plus));
    PinSet vis;
    PinSet shape;
    for (int v = 0; v < V.rows(); ++v) {
        if (!truth.is_boundary_vertex(v) || !visible(V(v, 0), V(v, 1))) {
            continue;
        }
        shape[v] = V.row(v).transpose();
        vis[v] = folded.row(v).transpose();
    }
    TriMesh initial(start, truth.faces());
    return FoldFixture{std::move(name), truth, folded, coloring, initial, vis, shape, occluded};
}

constexpr double kEps = 1e-12;

}  // namespace

FoldFixture one_fold_fixture(int n)
{
    const double a = 0.6;
    const double c = 2 * a - 1;
    return make_fixture(
        "1-fold", n, [=](double x, double) { return x < a; },
        [=](double x, double y) { return Eigen::Vector2d(x <= a ? x : 2 * a - x, y); },
        // the flap x > a lies on top and hides x in (c, a)
        [=](double x, double) { return x >= a - kEps || x <= c + kEps; },
        [=](double x, double y) {
            // bent fold line, occluded edges pulled inwards
            const double bend = 0.08 * std::sin(std::numbers::pi * y) * x * (1 - x) / (a * (1 - a));
            const double pull =
                0.06 * (1 - 2 * y) * std::max(0.0, (x - c) * (a - x)) / ((a - c) * (a - c) / 4);
            return Eigen::Vector2d(bend, pull);
        },
        a - c);
}

FoldFixture two_fold_fixture(int n)
{
    const double a = 1.0 / 3.0, b = 0.7;
    const double c = 2 * b - 1;
    return make_fixture(
        "2-fold", n, [=](double x, double) { return x < a || x > b; },
        [=](double x, double y) {
            if (x <= a) {
                return Eigen::Vector2d(x, y);
            }
            if (x <= b) {
                return Eigen::Vector2d(2 * a - x, y);
            }
            return Eigen::Vector2d(x - 2 * (b - a), y);
        },
        // right panel on top; the middle one shows for x in (a, c), the left one not at all
        [=](double x, double) { return x >= b - kEps || (x >= a - kEps && x <= c + kEps); },
        [=](double x, double y) {
            const double bend = 0.05 * std::sin(std::numbers::pi * y) *
                                (std::sin(2 * std::numbers::pi * x) + std::max(0.0, 1 - x / a));
            const double hump = std::max(0.0, x * (a - x)) / (a * a / 4) +
                                std::max(0.0, (x - c) * (b - x)) / ((b - c) * (b - c) / 4);
            return Eigen::Vector2d(bend, 0.05 * (1 - 2 * y) * hump);
        },
        a + b - c);
}

FoldFixture cusp_fixture(int n)
{
    return make_fixture(
        "cusp", n, [](double x, double y) { return (x < 0.5) == (y < 0.5); },
        [](double x, double y) { return Eigen::Vector2d(0.5 - std::abs(x - 0.5), 0.5 - std::abs(y - 0.5)); },
        // upper right quadrant on top, plus the two remaining fold-line ends
        [](double x, double y) {
            return (x >= 0.5 - kEps && y >= 0.5 - kEps) || (std::abs(x - 0.5) < kEps && y < kEps) ||
                   (std::abs(y - 0.5) < kEps && x < kEps);
        },
        [](double x, double y) {
            // vanishes on the visible boundary
            const double s =
                0.25 * (1 - x) * (1 - y) * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5) - 0.25);
            return Eigen::Vector2d(s, 0.7 * s);
        },
        0.75);
}

}  // namespace qcfold::testing
