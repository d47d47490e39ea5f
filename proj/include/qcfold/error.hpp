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

#include <stdexcept>
#include <string>

namespace qcfold
{

/** @brief Malformed or inadmissible input: bad files, invalid meshes, equator coefficients */
class InputError : public std::invalid_argument
{
public:
    explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

/** @brief A numerical step failed: singular factorization, residual above tolerance */
class NumericError : public std::runtime_error
{
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qcfold
