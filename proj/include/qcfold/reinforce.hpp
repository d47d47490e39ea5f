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

#include <functional>
#include <string>
#include <vector>

#include "qcfold/foldconfig.hpp"
#include "qcfold/solver.hpp"

namespace qcfold
{

struct ReinforceProblem
{
    /** Initial domain; its connectivity and coloring never change */
    TriMesh domain;
    FoldColoring coloring;
    /** Visible data: vertex -> position on the observed folded surface */
    PinSet visible;
    /** Shape data: boundary vertex -> position on the domain boundary */
    PinSet shape;
    /** Stop once |E_n - E_{n-1}| <= tolerance */
    double tolerance{1e-8};
    int max_iterations{200};
    /** Straighten folding lines every k iterations; 0 disables */
    int straighten_period{25};
    /** Called with the iteration number and the new domain after every unfold */
    std::function<void(int, const TriMesh&)> on_iteration{};
};

struct IterationRecord
{
    int iteration{0};
    double energy{0};
    double loss{0};
    double max_distortion{0};
    double seconds{0};
};

using IterationLog = std::vector<IterationRecord>;

struct ReinforceResult
{
    TriMesh domain;
    /** Fold of the final domain */
    SolveResult fold;
    IterationLog log;
};

/** A solve failed mid-iteration; carries the log up to the failure */
class ReinforceError : public NumericError
{
public:
    ReinforceError(const std::string& msg, IterationLog log) : NumericError(msg), log_{std::move(log)} {}
    const IterationLog& log() const { return log_; }

private:
    IterationLog log_;
};

/** Throws InputError unless the problem's pins and coloring fit the domain */
void check_problem(const ReinforceProblem& problem);

/**
 * @brief Data-enforcing fold: solve with mu = 0 on +1 faces and inf on -1
 * faces, visible pins fixed (generalized area mode)
 */
SolveResult fold_step(const TriMesh& domain, const FoldColoring& coloring, const PinSet& visible);

/**
 * @brief Shape-enforcing unfold of a folded image
 *
 * The folded mesh is used as the domain of a second alternating solve with
 * the same coefficients; reversed faces flip back to positive orientation.
 */
SolveResult unfold_step(const TriMesh& folded, const FoldColoring& coloring, const PinSet& shape);

/**
 * @brief Alternate fold and unfold solves until the fold energy settles
 *
 * Each unfold output becomes the next fold input, so only vertex
 * positions evolve. With straighten_period k > 0 the folding lines are
 * straightened before every k-th subsequent fold and the energy comparison
 * restarts.
 */
ReinforceResult reinforce(const ReinforceProblem& problem);

}  // namespace qcfold
