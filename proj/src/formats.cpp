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
#include "qcfold/formats.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace qcfold
{

using nlohmann::json;

namespace
{

json parse(const std::string& text, const char* what)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

template <typename T> T get(const json& j, const char* key, const char* what)
{
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string(what) + ": missing \"" + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string(what) + ": bad value for \"" + key + "\"");
    }
}

}  // namespace

PinSet parse_pins(const std::string& text)
{
    auto j = parse(text, "pins");
    if (j.is_object()) {
        if (!j.contains("pins")) {
            throw InputError("pins: expected an array or an object with \"pins\"");
        }
        j = j["pins"];
    }
    if (!j.is_array()) {
        throw InputError("pins: expected an array");
    }
    PinSet pins;
    for (const auto& e : j) {
        const int v = get<int>(e, "vertex", "pin");
        if (pins.count(v)) {
            throw InputError("pins: vertex " + std::to_string(v) + " pinned twice");
        }
        pins[v] = {get<double>(e, "x", "pin"), get<double>(e, "y", "pin")};
    }
    return pins;
}

std::string pins_to_json(const PinSet& pins)
{
    json j = json::array();
    for (const auto& [v, p] : pins) {
        j.push_back({{"vertex", v}, {"x", p.x()}, {"y", p.y()}});
    }
    return j.dump(2) + "\n";
}

BeltramiField parse_field(const std::string& text, int num_faces)
{
    const auto j = parse(text, "Beltrami field");
    if (!j.is_object() || !j.contains("faces") || !j["faces"].is_array()) {
        throw InputError("Beltrami field: expected {\"faces\": [...]}");
    }
    BeltramiField field = constant_field(num_faces, ExtComplexd(0.0));
    for (const auto& e : j["faces"]) {
        const int f = get<int>(e, "face", "Beltrami field entry");
        if (f < 0 || f >= num_faces) {
            throw InputError("Beltrami field: invalid face " + std::to_string(f));
        }
        const auto& mu = e.contains("mu") ? e["mu"] : json();
        if (mu.is_string() && mu.get<std::string>() == "inf") {
            field.mu[f] = ExtComplexd::infinity();
        } else if (mu.is_array() && mu.size() == 2 && mu[0].is_number() && mu[1].is_number()) {
            field.mu[f] = ExtComplexd(mu[0].get<double>(), mu[1].get<double>());
        } else {
            throw InputError(
                "Beltrami field: face " + std::to_string(f) + ": mu must be [re, im] or \"inf\"");
        }
    }
    return field;
}

std::string field_to_json(const BeltramiField& field)
{
    json faces = json::array();
    for (std::size_t f = 0; f < field.mu.size(); ++f) {
        const auto& mu = field.mu[f];
        if (mu.is_infinite()) {
            faces.push_back({{"face", f}, {"mu", "inf"}});
        } else {
            faces.push_back({{"face", f}, {"mu", {mu.real(), mu.imag()}}});
        }
    }
    return json{{"format", kFormatVersion}, {"faces", faces}}.dump(2) + "\n";
}

std::vector<int> parse_labels(const std::string& text)
{
    const auto j = parse(text, "coloring");
    if (!j.is_object() || !j.contains("faces") || !j["faces"].is_array()) {
        throw InputError("coloring: expected {\"faces\": [...]}");
    }
    std::vector<int> labels;
    for (const auto& e : j["faces"]) {
        if (!e.is_number_integer() || (e.get<int>() != 1 && e.get<int>() != -1)) {
            throw InputError("coloring: labels must be +1 or -1");
        }
        labels.push_back(e.get<int>());
    }
    return labels;
}

std::string labels_to_json(const std::vector<int>& labels)
{
    return json{{"format", kFormatVersion}, {"faces", labels}}.dump() + "\n";
}

std::string log_to_csv(const IterationLog& log)
{
    std::ostringstream out;
    out << "iter,energy,loss,max_distortion,seconds\n" << std::setprecision(17);
    for (const auto& r : log) {
        out << r.iteration << ',' << r.energy << ',' << r.loss << ',' << r.max_distortion << ',' << r.seconds
            << '\n';
    }
    return out.str();
}

std::string solve_report_json(const TriMesh& mesh, const BeltramiField& field, const SolveResult& result)
{
    double max_inside = 0, min_outside = std::numeric_limits<double>::infinity();
    double max_error = 0;
    int infinite = 0, collapsed = 0;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const auto& rec = result.recovered_mu[f];
        if (!rec) {
            ++collapsed;
            continue;
        }
        if (rec->is_infinite()) {
            ++infinite;
        } else if (rec->modulus() < 1) {
            max_inside = std::max(max_inside, rec->modulus());
        } else {
            min_outside = std::min(min_outside, rec->modulus());
        }
        // Distance to the prescribed coefficient, measured in the unit disk
        const auto want = reduce_coefficient(field.mu[f]);
        const auto got = reduce_coefficient(*rec);
        double err = std::abs(want.mu - got.mu);
        if (want.reversed != got.reversed) {
            err = std::numeric_limits<double>::infinity();
        }
        max_error = std::max(max_error, err);
    }
    auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json j{
        {"format", kFormatVersion},
        {"residual", result.residual},
        {"energy", result.energy},
        {"mu",
         {{"max_abs_inside_disk", max_inside},
          {"min_abs_outside_disk", finite_or_null(min_outside)},
          {"infinite_faces", infinite},
          {"collapsed_faces", collapsed},
          {"max_reduced_error", finite_or_null(max_error)}}},
    };
    return j.dump(2) + "\n";
}

std::string check_report_json(const TriMesh& mesh, const FoldColoring& coloring, const Points* image)
{
    json vertices = json::array();
    double worst = 0;
    for (const auto& sv : classify_singular_vertices(mesh, coloring)) {
        json e{{"vertex", sv.vertex}, {"sectors", sv.sectors}};
        switch (sv.kind) {
        case VertexKind::Folding:
            e["kind"] = "folding";
            break;
        case VertexKind::Cusp:
            e["kind"] = "cusp";
            e["n"] = sv.sectors / 2;
            break;
        case VertexKind::BoundaryEndpoint:
            e["kind"] = "boundary";
            break;
        }
        if (sv.kind != VertexKind::BoundaryEndpoint) {
            const double d = kawasaki_defect(mesh, coloring, sv.vertex);
            e["kawasaki_defect"] = d;
            worst = std::max(worst, std::abs(d));
        }
        vertices.push_back(e);
    }
    json j{
        {"format", kFormatVersion},
        {"singular_edges", coloring.singular_edges().size()},
        {"vertices", vertices},
        {"max_abs_kawasaki_defect", worst},
    };
    if (image) {
        j["max_distortion"] = max_distortion(mesh, *image, coloring);
    }
    return j.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace qcfold
