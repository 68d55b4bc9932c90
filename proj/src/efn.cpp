#include "phantom/efn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace phantom::efn {

namespace {

constexpr double kEps = 1e-12;

// Hash for memoizing objective values per visited assignment.
struct ValuesHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (int x : v) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

void ErrorFunctionNetwork::validate() const {
    if (variables.empty())
        throw std::invalid_argument("network needs at least one variable");
    for (std::size_t i = 0; i < variables.size(); ++i) {
        const Variable& v = variables[i];
        if (v.id != static_cast<int>(i))
            throw std::invalid_argument("variable ids must be contiguous from 0");
        if (v.lower > v.upper)
            throw std::invalid_argument("variable with empty domain");
    }
    for (const ErrorFunction& f : functions) {
        if (!f.eval)
            throw std::invalid_argument("error function without eval");
        for (int id : f.scope)
            if (id < 0 || id >= static_cast<int>(variables.size()))
                throw std::invalid_argument("scope references unknown variable id");
    }
}

double total_error(const ErrorFunctionNetwork& network, const Assignment& a) {
    if (a.values.size() != network.variables.size())
        throw std::invalid_argument("assignment size does not match variable count");
    for (const Variable& v : network.variables) {
        int x = a.values[static_cast<std::size_t>(v.id)];
        if (x < v.lower || x > v.upper)
            throw std::invalid_argument("assignment value out of domain");
    }
    double sum = 0.0;
    std::vector<int> tuple;
    for (const ErrorFunction& f : network.functions) {
        tuple.clear();
        for (int id : f.scope)
            tuple.push_back(a.values[static_cast<std::size_t>(id)]);
        double e = f.eval(tuple);
        if (!(e >= 0.0) || !std::isfinite(e))
            throw std::invalid_argument("error function returned a negative or non-finite value");
        sum += e;
    }
    return sum;
}

namespace {

// Steepest-descent local search with a per-variable tabu list, plateau moves
// and random restarts. Once feasible the walk switches to first-improvement
// moves on the objective among zero-error neighbors.
class Search {
public:
    Search(const ErrorFunctionNetwork& net, const Objective& objective,
           const SolveBudget& budget, Rng& rng)
        : net_(net), objective_(objective), budget_(budget), rng_(rng) {
        n_ = net.variables.size();
        touching_.resize(n_);
        for (std::size_t fi = 0; fi < net.functions.size(); ++fi)
            for (int id : net.functions[fi].scope)
                touching_[static_cast<std::size_t>(id)].push_back(fi);
        tabu_until_.assign(n_, 0);
        if (budget.wall_clock)
            deadline_ = std::chrono::steady_clock::now() + *budget.wall_clock;
    }

    SolveResult run() {
        randomize_current();
        best_error_ = current_error_;
        best_error_values_ = current_;
        while (!exhausted()) {
            ++iterations_;
            if (current_error_ <= kEps)
                feasible_step();
            else
                error_step();
            if (stall_ > kRestartStall) {
                randomize_current();
                stall_ = 0;
                std::fill(tabu_until_.begin(), tabu_until_.end(), 0);
            }
        }
        SolveResult out;
        out.iterations = iterations_;
        out.objective_evals = objective_evals_;
        if (have_feasible_) {
            out.assignment.values = best_feasible_;
            out.total_error = 0.0;
            out.objective = best_feasible_objective_;
            out.feasible = true;
        } else {
            out.assignment.values = best_error_values_;
            out.total_error = best_error_;
            out.objective = evaluate_objective(best_error_values_);
            out.feasible = false;
        }
        return out;
    }

private:
    static constexpr int kRestartStall = 40;
    static constexpr int kTabuTenure = 8;

    bool exhausted() {
        if (budget_.max_iterations && iterations_ >= *budget_.max_iterations)
            return true;
        if (budget_.max_objective_evals && objective_evals_ >= *budget_.max_objective_evals)
            return true;
        if (deadline_ && std::chrono::steady_clock::now() >= *deadline_)
            return true;
        return false;
    }

    void randomize_current() {
        current_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const Variable& v = net_.variables[i];
            current_[i] = v.lower + static_cast<int>(rng_.next_below(
                              static_cast<std::uint64_t>(v.upper - v.lower) + 1));
        }
        current_error_ = full_error(current_);
        note_current();
    }

    double full_error(const std::vector<int>& vals) const {
        double sum = 0.0;
        std::vector<int> tuple;
        for (const ErrorFunction& f : net_.functions) {
            tuple.clear();
            for (int id : f.scope)
                tuple.push_back(vals[static_cast<std::size_t>(id)]);
            sum += f.eval(tuple);
        }
        return sum;
    }

    // Error contributed by the functions touching variable `vi` under `vals`.
    double local_error(const std::vector<int>& vals, std::size_t vi) const {
        double sum = 0.0;
        std::vector<int> tuple;
        for (std::size_t fi : touching_[vi]) {
            const ErrorFunction& f = net_.functions[fi];
            tuple.clear();
            for (int id : f.scope)
                tuple.push_back(vals[static_cast<std::size_t>(id)]);
            sum += f.eval(tuple);
        }
        return sum;
    }

    void note_current() {
        if (current_error_ < best_error_ - kEps) {
            best_error_ = current_error_;
            best_error_values_ = current_;
        }
        if (current_error_ <= kEps) {
            double obj = evaluate_objective(current_);
            if (!have_feasible_ || obj > best_feasible_objective_ + kEps) {
                have_feasible_ = true;
                best_feasible_objective_ = obj;
                best_feasible_ = current_;
            }
        }
    }

    double evaluate_objective(const std::vector<int>& vals) {
        auto it = memo_.find(vals);
        if (it != memo_.end())
            return it->second;
        Assignment a;
        a.values = vals;
        double obj = objective_ ? objective_(a) : 0.0;
        ++objective_evals_;
        memo_.emplace(vals, obj);
        return obj;
    }

    bool is_tabu(std::size_t vi) const { return tabu_until_[vi] > iterations_; }
    void mark_tabu(std::size_t vi) { tabu_until_[vi] = iterations_ + kTabuTenure; }

    // Scan every single-variable change, keep the set of moves reaching the
    // lowest total error, break ties uniformly at random.
    void error_step() {
        double best_new = std::numeric_limits<double>::infinity();
        std::vector<std::pair<std::size_t, int>> best_moves;
        for (std::size_t vi = 0; vi < n_; ++vi) {
            const Variable& v = net_.variables[vi];
            int old = current_[vi];
            double before = local_error(current_, vi);
            for (int x = v.lower; x <= v.upper; ++x) {
                if (x == old)
                    continue;
                current_[vi] = x;
                double after = local_error(current_, vi);
                current_[vi] = old;
                double candidate = current_error_ - before + after;
                bool improving = candidate < current_error_ - kEps;
                if (is_tabu(vi) && !(improving && candidate < best_error_ - kEps))
                    continue;
                if (candidate < best_new - kEps) {
                    best_new = candidate;
                    best_moves.clear();
                    best_moves.emplace_back(vi, x);
                } else if (candidate < best_new + kEps) {
                    best_moves.emplace_back(vi, x);
                }
            }
        }
        if (best_moves.empty() || best_new > current_error_ + kEps) {
            ++stall_;
            return;
        }
        auto [vi, x] = best_moves[rng_.next_below(best_moves.size())];
        bool improved = best_new < current_error_ - kEps;
        current_[vi] = x;
        current_error_ = best_new < kEps ? full_error(current_) : best_new;
        mark_tabu(vi);
        note_current();
        stall_ = improved ? 0 : stall_ + 1;
    }

    // Feasible phase: first zero-error neighbor that improves the objective,
    // scanned in random order. Falls back to a random zero-error plateau move.
    void feasible_step() {
        double current_obj = evaluate_objective(current_);
        std::vector<std::pair<std::size_t, int>> moves;
        for (std::size_t vi = 0; vi < n_; ++vi) {
            const Variable& v = net_.variables[vi];
            int old = current_[vi];
            double before = local_error(current_, vi);
            for (int x = v.lower; x <= v.upper; ++x) {
                if (x == old)
                    continue;
                current_[vi] = x;
                double after = local_error(current_, vi);
                current_[vi] = old;
                if (current_error_ - before + after <= kEps)
                    moves.emplace_back(vi, x);
            }
        }
        // Fisher-Yates with the call's random source keeps runs reproducible.
        for (std::size_t i = moves.size(); i > 1; --i)
            std::swap(moves[i - 1], moves[rng_.next_below(i)]);
        std::vector<int> trial = current_;
        for (auto [vi, x] : moves) {
            if (budget_.max_objective_evals && objective_evals_ >= *budget_.max_objective_evals)
                break;
            trial[vi] = x;
            double obj = evaluate_objective(trial);
            if (obj > current_obj + kEps) {
                current_[vi] = x;
                current_error_ = 0.0;
                mark_tabu(vi);
                note_current();
                stall_ = 0;
                return;
            }
            trial[vi] = current_[vi];
        }
        // No improving neighbor: plateau through a non-tabu move if any.
        std::vector<std::pair<std::size_t, int>> open;
        for (auto [vi, x] : moves)
            if (!is_tabu(vi))
                open.emplace_back(vi, x);
        if (!open.empty()) {
            auto [vi, x] = open[rng_.next_below(open.size())];
            current_[vi] = x;
            current_error_ = 0.0;
            mark_tabu(vi);
            note_current();
        }
        ++stall_;
    }

    const ErrorFunctionNetwork& net_;
    const Objective& objective_;
    const SolveBudget& budget_;
    Rng& rng_;

    std::size_t n_ = 0;
    std::vector<std::vector<std::size_t>> touching_;
    std::vector<int> current_;
    double current_error_ = 0.0;
    std::vector<std::uint64_t> tabu_until_;
    std::uint64_t iterations_ = 0;
    std::uint64_t objective_evals_ = 0;
    int stall_ = 0;

    double best_error_ = std::numeric_limits<double>::infinity();
    std::vector<int> best_error_values_;
    bool have_feasible_ = false;
    double best_feasible_objective_ = 0.0;
    std::vector<int> best_feasible_;

    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::unordered_map<std::vector<int>, double, ValuesHash> memo_;
};

} // namespace

SolveResult solve(const ErrorFunctionNetwork& network, const Objective& objective,
                  const SolveBudget& budget, Rng& rng) {
    network.validate();
    if (!budget.wall_clock && !budget.max_iterations && !budget.max_objective_evals)
        throw std::invalid_argument("solve needs a wall-clock or iteration budget");
    if (budget.wall_clock && budget.wall_clock->count() <= 0)
        throw std::invalid_argument("budget must be positive");
    Search search(network, objective, budget, rng);
    return search.run();
}

} // namespace phantom::efn
