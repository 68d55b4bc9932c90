#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phantom/rng.hpp"

namespace phantom::efn {

// Integer variable with inclusive domain bounds. Ids are contiguous from 0
// inside a network.
struct Variable {
    int id = 0;
    int lower = 0;
    int upper = 0;
};

// Non-negative error function over a subset of variables. eval returns 0
// exactly on tuples that are valid for this function; positive values grade
// how far an invalid tuple is from validity.
struct ErrorFunction {
    std::vector<int> scope;
    std::function<double(std::span<const int>)> eval;
    std::string name;
};

struct ErrorFunctionNetwork {
    std::vector<Variable> variables;
    std::vector<ErrorFunction> functions;

    // Throws std::invalid_argument on dangling scope ids, empty variable
    // lists, bad bounds, or non-contiguous ids.
    void validate() const;
};

struct Assignment {
    std::vector<int> values;

    bool operator==(const Assignment&) const = default;
};

struct SolveResult {
    Assignment assignment;
    double total_error = 0.0;
    double objective = 0.0;
    bool feasible = false;
    std::uint64_t iterations = 0;
    std::uint64_t objective_evals = 0;
};

// Sum of all function errors on `a`. Throws std::invalid_argument if `a` is
// out of domain or sized wrong.
double total_error(const ErrorFunctionNetwork& network, const Assignment& a);

using Objective = std::function<double(const Assignment&)>;

// Stop conditions for one solve call. Wall-clock deadlines give realistic
// play; iteration caps give runs that are reproducible bit for bit.
struct SolveBudget {
    std::optional<std::chrono::milliseconds> wall_clock;
    std::optional<std::uint64_t> max_iterations;
    std::optional<std::uint64_t> max_objective_evals;

    static SolveBudget from_ms(std::int64_t ms) {
        SolveBudget b;
        b.wall_clock = std::chrono::milliseconds(ms);
        return b;
    }
    static SolveBudget from_iterations(std::uint64_t iters) {
        SolveBudget b;
        b.max_iterations = iters;
        return b;
    }
};

// Local search over the network: first drives total_error to 0, then walks
// feasibility-preserving moves that improve the objective. Returns the best
// feasible assignment found, or the lowest-error assignment seen when no
// feasible one was reached (feasible = false).
//
// Deterministic for a fixed (network, objective, seed, iteration cap) as long
// as no wall-clock deadline is set.
SolveResult solve(const ErrorFunctionNetwork& network, const Objective& objective,
                  const SolveBudget& budget, Rng& rng);

// Convenience wrapper with a plain millisecond deadline.
inline SolveResult solve(const ErrorFunctionNetwork& network, const Objective& objective,
                         std::chrono::milliseconds budget_ms, Rng& rng) {
    SolveBudget b;
    b.wall_clock = budget_ms;
    return solve(network, objective, b, rng);
}

} // namespace phantom::efn
