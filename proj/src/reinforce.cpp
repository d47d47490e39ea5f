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
#include "qcfold/reinforce.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace qcfold
{

void check_problem(const ReinforceProblem& problem)
{
    if (problem.coloring.num_faces() != problem.domain.num_faces()) {
        throw InputError("coloring does not match the domain mesh");
    }
    try {
        check_pins(problem.domain, problem.visible);
    } catch (const InputError& e) {
        throw InputError(std::string("visible pins: ") + e.what());
    }
    try {
        check_pins(problem.domain, problem.shape);
    } catch (const InputError& e) {
        throw InputError(std::string("shape pins: ") + e.what());
    }
    if (problem.max_iterations < 0 || problem.straighten_period < 0 || !(problem.tolerance >= 0)) {
        throw InputError("iteration limits and tolerance must be non-negative");
    }
}

SolveResult fold_step(const TriMesh& domain, const FoldColoring& coloring, const PinSet& visible)
{
    return lsqc_solve(domain, field_from_coloring(coloring), visible, AreaMode::Generalized);
}

SolveResult unfold_step(const TriMesh& folded, const FoldColoring& coloring, const PinSet& shape)
{
    return lsqc_solve(folded, field_from_coloring(coloring), shape, AreaMode::Generalized);
}

namespace
{

double safe_loss(const TriMesh& domain, const Points& image, const FoldColoring& coloring)
{
    try {
        return loss(domain, image, coloring.labels());
    } catch (const InputError&) {
        return std::numeric_limits<double>::infinity();
    }
}

double safe_distortion(const TriMesh& domain, const Points& image, const FoldColoring& coloring)
{
    try {
        return max_distortion(domain, image, coloring);
    } catch (const InputError&) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace

ReinforceResult reinforce(const ReinforceProblem& problem)
{
    check_problem(problem);
    const auto& coloring = problem.coloring;
    TriMesh domain = problem.domain;
    IterationLog log;

    if (problem.max_iterations == 0) {
        return {domain, fold_step(domain, coloring, problem.visible), log};
    }

    using Clock = std::chrono::steady_clock;
    double previous = 0;
    for (int n = 1; n <= problem.max_iterations; ++n) {
        const auto t0 = Clock::now();
        if (problem.straighten_period > 0 && n > 1 && (n - 1) % problem.straighten_period == 0) {
            domain = straighten_folding_lines(domain, coloring).mesh;
            previous = 0;
        }
        IterationRecord rec;
        rec.iteration = n;
        try {
            const auto fold = fold_step(domain, coloring, problem.visible);
            rec.energy = energy(domain, fold.image, coloring.labels());
            rec.loss = safe_loss(domain, fold.image, coloring);
            rec.max_distortion = safe_distortion(domain, fold.image, coloring);
            auto unfolded = unfold_step(domain.with_vertices(fold.image), coloring, problem.shape);
            domain = domain.with_vertices(std::move(unfolded.image));
        } catch (const std::exception& ex) {
            throw ReinforceError("iteration " + std::to_string(n) + " failed: " + ex.what(), log);
        }
        rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        log.push_back(rec);
        if (problem.on_iteration) {
            problem.on_iteration(n, domain);
        }
        if (std::abs(rec.energy - previous) <= problem.tolerance) {
            break;
        }
        previous = rec.energy;
    }

    SolveResult fold;
    try {
        fold = fold_step(domain, coloring, problem.visible);
    } catch (const std::exception& ex) {
        throw ReinforceError(std::string("final fold failed: ") + ex.what(), log);
    }
    return {domain, std::move(fold), std::move(log)};
}

}  // namespace qcfold
