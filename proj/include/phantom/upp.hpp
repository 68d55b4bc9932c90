#pragma once

#include <array>
#include <cstdint>

#include "phantom/efn.hpp"
#include "phantom/rdu.hpp"
#include "phantom/rng.hpp"

namespace phantom::belief {
struct BeliefState;
struct EconParams;
} // namespace phantom::belief

namespace phantom::upp {

// Canonical order (l, h, r) everywhere an index runs over military types.
enum class MilitaryType : int { Light = 0, Heavy = 1, Ranged = 2 };
inline constexpr int kTypes = 3;

const char* military_name(MilitaryType t);

// potency[a][b]: how many units of type b one unit of type a neutralizes.
// Stored in potency form so the coverage sum is a plain multiply-accumulate;
// the "units of a needed to beat one b" reading is the reciprocal.
struct CounterMatrix {
    std::array<std::array<double, 3>, 3> potency;

    double at(MilitaryType a, MilitaryType b) const {
        return potency[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }

    void validate() const; // entries must sit in (0, 5]
    bool has_dominance_cycle() const;

    // Skirmish-calibrated values for the default game config
    // (configs/counters.json is the versioned artifact).
    static CounterMatrix defaults();
};

struct ProductionState {
    int stock = 0;
    int idle_barracks = 0;
    std::array<int, 3> possess{};
    std::array<int, 3> cost{};
    CounterMatrix counters = CounterMatrix::defaults();
    int domain_max = 20;

    void validate() const;
};

inline constexpr int kEnemyCap = 200;

struct EnemyComposition {
    std::array<int, 3> s{};
};

struct ProductionPlan {
    std::array<int, 3> produce{};
    std::array<std::array<int, 3>, 3> assign{};
    double objective_value = 0.0;
    bool feasible = false;
};

// Variable layout inside the production network: 3 produce then 9 assign.
inline int var_produce(int a) { return a; }
inline int var_assign(int a, int b) { return 3 + 3 * a + b; }
inline constexpr int kVarCount = 12;

// Twelve variables over [0, domain_max] with the stock function
// max(0, sum cost*produce - stock), one linking function per type
// |sum_b assign[a][b] - produce[a] - possess[a]|, and the barracks function
// max(0, sum produce - idle_barracks).
efn::ErrorFunctionNetwork build_network(const ProductionState& state);

// min(1, sum_a assign[a][b] * potency[a][b] - s[b]); the clamp forbids
// overkill against a single enemy type.
double aim(MilitaryType b, const std::array<std::array<int, 3>, 3>& assign,
           const CounterMatrix& counters, const EnemyComposition& s);

// Asymmetric regulation: -(x^2 + 1) when x < 0, identity otherwise.
double reg(double x);

double objective(const efn::Assignment& a, const ProductionState& state,
                 const EnemyComposition& s);

ProductionPlan decode_plan(const efn::SolveResult& result, const ProductionState& state);

struct DecideSettings {
    rdu::DeformationKind kind;
    int k = 30;
    efn::SolveBudget budget = efn::SolveBudget::from_iterations(50000);
};

// Full decision pipeline: build the network, score assignments with the
// rank-dependent preference over enemy compositions sampled from the belief,
// solve, decode. Infeasible solves yield a zero plan with feasible = false.
ProductionPlan decide_production(const ProductionState& state, const belief::BeliefState& b,
                                 const belief::EconParams& econ, const DecideSettings& settings,
                                 Rng& rng);

} // namespace phantom::upp
