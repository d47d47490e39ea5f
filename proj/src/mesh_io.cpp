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
#include "qcfold/mesh_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace qcfold
{

namespace
{

int parse_index(const std::string& token, int nverts, int line)
{
    const auto head = token.substr(0, token.find('/'));
    std::size_t used = 0;
    int idx = 0;
    try {
        idx = std::stoi(head, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != head.size() || head.empty()) {
        throw InputError("OBJ line " + std::to_string(line) + ": bad face index '" + token + "'");
    }
    // Negative indices count back from the most recent vertex
    return idx < 0 ? nverts + idx : idx - 1;
}

struct RawObj
{
    Points vertices;
    Faces faces;
};

RawObj parse_obj(std::istream& in)
{
    std::vector<double> xy;
    std::vector<int> idx;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') {
            continue;
        }
        if (tag == "v") {
            double x, y, z = 0;
            if (!(ls >> x >> y)) {
                throw InputError("OBJ line " + std::to_string(line) + ": malformed vertex");
            }
            if (!(ls >> z)) {
                z = 0;
            }
            if (std::abs(z) > 1e-9) {
                throw InputError(
                    "OBJ line " + std::to_string(line) +
                    ": vertex has nonzero z; only planar meshes are supported");
            }
            xy.push_back(x);
            xy.push_back(y);
        } else if (tag == "f") {
            std::vector<std::string> tokens;
            std::string t;
            while (ls >> t) {
                tokens.push_back(t);
            }
            if (tokens.size() != 3) {
                throw InputError(
                    "OBJ line " + std::to_string(line) + ": face with " + std::to_string(tokens.size()) +
                    " vertices; only triangles are supported");
            }
            const int nverts = static_cast<int>(xy.size() / 2);
            for (const auto& tok : tokens) {
                idx.push_back(parse_index(tok, nverts, line));
            }
        }
    }
    Points V(xy.size() / 2, 2);
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
        V(i, 0) = xy[2 * i];
        V(i, 1) = xy[2 * i + 1];
    }
    Faces F(idx.size() / 3, 3);
    for (Eigen::Index i = 0; i < F.rows(); ++i) {
        for (int k = 0; k < 3; ++k) {
            F(i, k) = idx[3 * i + k];
        }
    }
    return {std::move(V), std::move(F)};
}

std::ifstream open_mesh(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open mesh file " + path.string());
    }
    return in;
}

}  // namespace

TriMesh read_obj(std::istream& in)
{
    auto raw = parse_obj(in);
    return TriMesh(std::move(raw.vertices), std::move(raw.faces));
}

TriMesh load_mesh(const std::filesystem::path& path)
{
    auto in = open_mesh(path);
    return read_obj(in);
}

Points load_image(const std::filesystem::path& path, const TriMesh& domain)
{
    auto in = open_mesh(path);
    auto raw = parse_obj(in);
    if (raw.vertices.rows() != domain.num_vertices() || raw.faces != domain.faces()) {
        throw InputError(path.string() + ": connectivity differs from the domain mesh");
    }
    return std::move(raw.vertices);
}

void write_obj(const TriMesh& mesh, std::ostream& out)
{
    out << std::setprecision(17);
    const auto& V = mesh.vertices();
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
        out << "v " << V(i, 0) << ' ' << V(i, 1) << " 0\n";
    }
    const auto& F = mesh.faces();
    for (Eigen::Index i = 0; i < F.rows(); ++i) {
        out << "f " << F(i, 0) + 1 << ' ' << F(i, 1) + 1 << ' ' << F(i, 2) + 1 << '\n';
    }
}

void save_mesh(const TriMesh& mesh, const std::filesystem::path& path)
{
    std::ostringstream out;
    write_obj(mesh, out);
    write_file_atomic(path, out.str());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw InputError("cannot write " + path.string());
        }
        out << contents;
        out.close();
        if (!out) {
            throw InputError("failed writing " + path.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw InputError("cannot write " + path.string());
    }
}

}  // namespace qcfold
