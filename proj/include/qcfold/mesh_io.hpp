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

#include <filesystem>
#include <iosfwd>

#include "qcfold/mesh.hpp"

namespace qcfold
{

/**
 * Read a planar triangle mesh from ASCII OBJ (`v x y [z]`, `f i j k`,
 * 1-based). z must be 0 within 1e-9. The mesh is validated.
 */
TriMesh load_mesh(const std::filesystem::path& path);
TriMesh read_obj(std::istream& in);

/**
 * Vertex positions of an image mesh, e.g. a fold. Its faces must equal the
 * domain's; orientation is not checked.
 */
Points load_image(const std::filesystem::path& path, const TriMesh& domain);

/** Write OBJ with z = 0 and 17 significant digits; the file is replaced atomically */
void save_mesh(const TriMesh& mesh, const std::filesystem::path& path);
void write_obj(const TriMesh& mesh, std::ostream& out);

/** Write text to path via a temporary file and rename */
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace qcfold
