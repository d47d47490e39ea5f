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
/*
 * qcfold command line tool.
 *
 * Exit codes: 0 success, 1 invalid input, 2 numerical failure.
 */
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "qcfold/error.hpp"
#include "qcfold/formats.hpp"
#include "qcfold/mesh_io.hpp"
#include "qcfold/patterns.hpp"
#include "qcfold/reinforce.hpp"
#include "qcfold/solver.hpp"

using namespace qcfold;

namespace
{

const char* kFormats = R"(File formats:
  mesh      Wavefront OBJ with 'v x y [z]' and triangular 'f a b c' lines
            (1-based in the file, 0-based everywhere else); z must be 0.
  pins      JSON array [{"vertex": i, "x": X, "y": Y}, ...]
            (an object {"pins": [...]} is also accepted).
  field     JSON {"format": 1, "faces": [{"face": f, "mu": [re, im] | "inf"}, ...]};
            faces not listed get mu = 0.
  coloring  JSON {"format": 1, "faces": [+1 | -1, ...]}, one label per face.
  log       CSV with header iter,energy,loss,max_distortion,seconds.
  report    JSON object with "format": 1.
Exit codes: 0 success, 1 invalid input, 2 numerical failure.
Environment: QCFOLD_THREADS caps the number of worker threads.)";

void write_text(const std::string& path, const std::string& text)
{
    write_file_atomic(path, text);
}

/** "10,0.1,0.4" or "1:2,0:-1" (re:im) -> coefficient list */
std::vector<std::complex<double>> parse_polynomial(const std::string& text)
{
    std::vector<std::complex<double>> coeffs;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            const auto colon = item.find(':');
            if (colon == std::string::npos) {
                coeffs.emplace_back(std::stod(item), 0.0);
            } else {
                coeffs.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
            }
        } catch (const std::logic_error&) {
            throw InputError("bad polynomial coefficient '" + item + "'");
        }
    }
    if (coeffs.empty()) {
        throw InputError("empty polynomial");
    }
    return coeffs;
}

bool g_in_place = false;

/** Refuse outputs that would overwrite an input (unless --in-place) or each other */
void check_outputs(const std::vector<std::string>& inputs, const std::vector<std::string>& outputs)
{
    namespace fs = std::filesystem;
    auto same = [](const std::string& a, const std::string& b) {
        std::error_code ec;
        return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec) && !ec;
    };
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (outputs[i].empty()) {
            continue;
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!outputs[j].empty() && same(outputs[i], outputs[j])) {
                throw InputError("two outputs share the path " + outputs[i]);
            }
        }
        if (g_in_place) {
            continue;
        }
        for (const auto& in : inputs) {
            if (!in.empty() && same(in, outputs[i])) {
                throw InputError(
                    "output " + outputs[i] + " would overwrite an input; pass --in-place to allow it");
            }
        }
    }
}

FoldColoring load_coloring(const TriMesh& mesh, const std::string& path)
{
    return FoldColoring(mesh, parse_labels(read_text(path)));
}

struct SolveArgs
{
    std::string mesh, mu, pins, mode{"generalized"}, out, report, matrix;
};

int run_solve(const SolveArgs& a)
{
    check_outputs({a.mesh, a.mu, a.pins}, {a.out, a.report, a.matrix});
    const TriMesh mesh = load_mesh(a.mesh);
    const BeltramiField field = a.mu.empty() ? constant_field(mesh.num_faces(), ExtComplexd(0.0))
                                             : parse_field(read_text(a.mu), mesh.num_faces());
    const PinSet pins =
        a.pins.empty() ? farthest_boundary_pins(mesh, mesh.vertices()) : parse_pins(read_text(a.pins));
    const AreaMode mode = a.mode == "signed" ? AreaMode::Signed : AreaMode::Generalized;
    if (!a.matrix.empty()) {
        save_matrix_market(assemble_system(mesh, field, mode).matrix, a.matrix);
    }
    const SolveResult result = lsqc_solve(mesh, field, pins, mode);
    save_mesh(mesh.with_vertices(result.image), a.out);
    const std::string report = solve_report_json(mesh, field, result);
    if (a.report.empty()) {
        std::cout << report;
    } else {
        write_text(a.report, report);
    }
    return 0;
}

struct ReinforceArgs
{
    std::string domain, coloring, visible, shape, prefix;
    double tolerance{1e-8};
    int itermax{200};
    int straighten{25};
    int dump_every{0};
};

std::string dump_name(const std::string& prefix, int iteration)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "_domain_%04d.obj", iteration);
    return prefix + buf;
}

int run_reinforce(const ReinforceArgs& a)
{
    std::vector<std::string> outputs{a.prefix + "_domain.obj", a.prefix + "_fold.obj", a.prefix + "_log.csv"};
    for (int n = a.dump_every; a.dump_every > 0 && n <= a.itermax; n += a.dump_every) {
        outputs.push_back(dump_name(a.prefix, n));
    }
    check_outputs({a.domain, a.coloring, a.visible, a.shape}, outputs);
    const TriMesh domain = load_mesh(a.domain);
    ReinforceProblem problem{
        domain,
        load_coloring(domain, a.coloring),
        parse_pins(read_text(a.visible)),
        parse_pins(read_text(a.shape)),
        a.tolerance,
        a.itermax,
        a.straighten};
    if (a.dump_every > 0) {
        problem.on_iteration = [&](int n, const TriMesh& current) {
            if (n % a.dump_every == 0) {
                save_mesh(current, dump_name(a.prefix, n));
            }
        };
    }
    try {
        const ReinforceResult result = reinforce(problem);
        save_mesh(result.domain, a.prefix + "_domain.obj");
        save_mesh(result.domain.with_vertices(result.fold.image), a.prefix + "_fold.obj");
        write_text(a.prefix + "_log.csv", log_to_csv(result.log));
    } catch (const ReinforceError& e) {
        write_text(a.prefix + "_log.csv", log_to_csv(e.log()));
        throw;
    }
    return 0;
}

struct MiuraArgs
{
    int rows{1}, cols{1};
    double angle{60}, width{1}, height{1};
    std::string phi, prefix;
};

int run_miura(const MiuraArgs& a)
{
    if (a.rows < 1 || a.cols < 1) {
        throw InputError("miura: rows and cols must be positive");
    }
    if (!(a.angle > 0 && a.angle < 90)) {
        throw InputError("miura: angle must lie strictly between 0 and 90 degrees");
    }
    if (!(a.width > 0 && a.height > 0)) {
        throw InputError("miura: panel width and height must be positive");
    }
    check_outputs({}, {a.prefix + ".obj", a.prefix + "_coloring.json"});
    MiuraPattern p = miura_pattern({a.rows, a.cols, a.width, a.height, a.angle * std::numbers::pi / 180});
    TriMesh mesh = a.phi.empty() ? p.mesh : compose_conformal(p.mesh, parse_polynomial(a.phi));
    save_mesh(mesh, a.prefix + ".obj");
    write_text(a.prefix + "_coloring.json", labels_to_json(p.coloring.labels()));
    return 0;
}

struct RepairArgs
{
    std::string mesh, coloring, prefix;
    double tolerance{1e-3};
    int itermax{50};
};

int run_repair(const RepairArgs& a)
{
    if (!(a.tolerance >= 0)) {
        throw InputError("repair: tolerance must be non-negative");
    }
    check_outputs(
        {a.mesh, a.coloring}, {a.prefix + "_domain.obj", a.prefix + "_fold.obj", a.prefix + "_log.csv"});
    const TriMesh mesh = load_mesh(a.mesh);
    const FoldColoring coloring = load_coloring(mesh, a.coloring);
    auto [repaired, log] = repair_flat_foldability(mesh, coloring, a.tolerance, a.itermax);
    save_mesh(repaired, a.prefix + "_domain.obj");
    const SolveResult fold =
        fold_step(repaired, coloring, farthest_boundary_pins(repaired, repaired.vertices()));
    save_mesh(repaired.with_vertices(fold.image), a.prefix + "_fold.obj");
    write_text(a.prefix + "_log.csv", log_to_csv(log));
    return 0;
}

struct CheckArgs
{
    std::string mesh, coloring, image, out;
    bool fold{false};
};

int run_check(const CheckArgs& a)
{
    check_outputs({a.mesh, a.coloring, a.image}, {a.out});
    const TriMesh mesh = load_mesh(a.mesh);
    const FoldColoring coloring = load_coloring(mesh, a.coloring);
    Points image;
    const Points* image_ptr = nullptr;
    if (!a.image.empty()) {
        image = load_image(a.image, mesh);
        image_ptr = &image;
    } else if (a.fold) {
        image = fold_step(mesh, coloring, farthest_boundary_pins(mesh, mesh.vertices())).image;
        image_ptr = &image;
    }
    const std::string report = check_report_json(mesh, coloring, image_ptr);
    if (a.out.empty()) {
        std::cout << report;
    } else {
        write_text(a.out, report);
    }
    return 0;
}

struct MuArgs
{
    std::string mesh, image, out;
};

int run_mu(const MuArgs& a)
{
    check_outputs({a.mesh, a.image}, {a.out});
    const TriMesh mesh = load_mesh(a.mesh);
    const Points image = load_image(a.image, mesh);
    BeltramiField field;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        try {
            field.mu.push_back(mu_of_map(mesh.triangle(f), mesh.triangle(f, image)));
        } catch (const InputError& e) {
            throw InputError("mu: face " + std::to_string(f) + ": " + e.what());
        }
    }
    const std::string text = field_to_json(field);
    if (a.out.empty()) {
        std::cout << text;
    } else {
        write_text(a.out, text);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    if (const char* threads = std::getenv("QCFOLD_THREADS")) {
        const int n = std::atoi(threads);
        if (n > 0) {
            Eigen::setNbThreads(n);
        }
    }

    CLI::App app{"qcfold: folding maps from alternating Beltrami coefficients"};
    app.footer(kFormats);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--in-place", g_in_place, "Allow outputs to overwrite input files");

    SolveArgs solve;
    auto* s =
        app.add_subcommand("solve", "Solve for the map of a mesh with prescribed per-face coefficients");
    s->add_option("mesh", solve.mesh, "Domain mesh (OBJ)")->required()->check(CLI::ExistingFile);
    s->add_option("--mu", solve.mu, "Beltrami field JSON; default mu = 0 everywhere")
        ->check(CLI::ExistingFile);
    s->add_option(
         "--pins", solve.pins,
         "Pins JSON (at least 2); default pins two far-apart boundary vertices in place")
        ->check(CLI::ExistingFile);
    s->add_option("--mode", solve.mode, "Area term: 'signed' or 'generalized'")
        ->check(CLI::IsMember({"signed", "generalized"}))
        ->capture_default_str();
    s->add_option("-o,--output", solve.out, "Image mesh (OBJ)")->required();
    s->add_option("--report", solve.report, "Report JSON; printed to stdout when omitted");
    s->add_option("--dump-matrix", solve.matrix, "Write the assembled matrix in MatrixMarket format");
    s->footer(kFormats);

    ReinforceArgs rf;
    auto* r =
        app.add_subcommand("reinforce", "Recover an unfolded domain from partial data of a folded surface");
    r->add_option("domain", rf.domain, "Initial domain mesh (OBJ)")->required()->check(CLI::ExistingFile);
    r->add_option("--coloring", rf.coloring, "Fold coloring JSON")->required()->check(CLI::ExistingFile);
    r->add_option("--visible", rf.visible, "Visible-data pins JSON (positions on the folded surface)")
        ->required()
        ->check(CLI::ExistingFile);
    r->add_option("--shape", rf.shape, "Shape pins JSON (boundary positions of the domain)")
        ->required()
        ->check(CLI::ExistingFile);
    r->add_option("--eps", rf.tolerance, "Stop once the energy changes by at most this")
        ->capture_default_str();
    r->add_option("--itermax", rf.itermax, "Maximal number of iterations")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    r->add_option("--straighten", rf.straighten, "Straighten folding lines every k iterations; 0 disables")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    r->add_option(
         "--dump-every", rf.dump_every, "Also write PREFIX_domain_NNNN.obj every N iterations; 0 disables")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    r->add_option(
         "-o,--output", rf.prefix, "Output prefix: PREFIX_domain.obj, PREFIX_fold.obj, PREFIX_log.csv")
        ->required();
    r->footer(kFormats);

    MiuraArgs mi;
    auto* m = app.add_subcommand("miura", "Generate a Miura-ori crease pattern");
    m->add_option("rows", mi.rows, "Cells along y (a cell is 2 x 2 panels)")->required();
    m->add_option("cols", mi.cols, "Cells along x")->required();
    m->add_option("--angle", mi.angle, "Angle between the straight and zigzag creases, degrees")
        ->capture_default_str();
    m->add_option("--width", mi.width, "Panel width")->capture_default_str();
    m->add_option("--height", mi.height, "Panel height")->capture_default_str();
    m->add_option(
        "--phi", mi.phi, "Compose with the polynomial c0 + c1 z + ...; comma separated, complex as re:im");
    m->add_option("-o,--output", mi.prefix, "Output prefix: PREFIX.obj and PREFIX_coloring.json")->required();
    m->footer(kFormats);

    RepairArgs rp;
    auto* p = app.add_subcommand("repair", "Fold-unfold a pattern until it becomes flat-foldable");
    p->add_option("mesh", rp.mesh, "Pattern mesh (OBJ)")->required()->check(CLI::ExistingFile);
    p->add_option("--coloring", rp.coloring, "Fold coloring JSON")->required()->check(CLI::ExistingFile);
    p->add_option("--tol", rp.tolerance, "Target maximal distortion")->capture_default_str();
    p->add_option("--itermax", rp.itermax, "Maximal number of fold-unfold rounds")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    p->add_option(
         "-o,--output", rp.prefix, "Output prefix: PREFIX_domain.obj, PREFIX_fold.obj, PREFIX_log.csv")
        ->required();
    p->footer(kFormats);

    CheckArgs ck;
    auto* c = app.add_subcommand("check", "Report Kawasaki defects and fold distortion of a crease pattern");
    c->add_option("mesh", ck.mesh, "Domain mesh (OBJ)")->required()->check(CLI::ExistingFile);
    c->add_option("--coloring", ck.coloring, "Fold coloring JSON")->required()->check(CLI::ExistingFile);
    c->add_option("--image", ck.image, "Folded image (OBJ, same connectivity) to measure")
        ->check(CLI::ExistingFile);
    c->add_flag("--fold", ck.fold, "Fold the pattern with two boundary pins and measure that image");
    c->add_option("-o,--output", ck.out, "Report JSON; printed to stdout when omitted");
    c->footer(kFormats);

    MuArgs mu;
    auto* u = app.add_subcommand("mu", "Per-face Beltrami coefficients of the map between two meshes");
    u->add_option("mesh", mu.mesh, "Domain mesh (OBJ)")->required()->check(CLI::ExistingFile);
    u->add_option("image", mu.image, "Image mesh (OBJ, same connectivity)")
        ->required()
        ->check(CLI::ExistingFile);
    u->add_option("-o,--output", mu.out, "Field JSON; printed to stdout when omitted");
    u->footer(kFormats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*s) {
            return run_solve(solve);
        }
        if (*r) {
            return run_reinforce(rf);
        }
        if (*m) {
            return run_miura(mi);
        }
        if (*p) {
            return run_repair(rp);
        }
        if (*c) {
            return run_check(ck);
        }
        if (*u) {
            return run_mu(mu);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
