#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "phantom/rng.hpp"

namespace phantom::rdu {

// Probability deformation selector. Optimistic and pessimistic kernels come
// parameterized; defaults are lambda = 10 and shift = 1.3.
struct DeformationKind {
    enum class Type { Neutral, Optimistic, Pessimistic };

    Type type = Type::Neutral;
    double lambda = 10.0;
    double shift = 1.3;

    static DeformationKind neutral() { return {}; }
    static DeformationKind optimistic(double lambda = 10.0) {
        return {Type::Optimistic, lambda, 0.0};
    }
    static DeformationKind pessimistic(double lambda = 10.0, double shift = 1.3) {
        return {Type::Pessimistic, lambda, shift};
    }

    const char* name() const {
        switch (type) {
        case Type::Optimistic: return "optimistic";
        case Type::Pessimistic: return "pessimistic";
        default: return "neutral";
        }
    }
};

// Deformed probability in [0, 1]. Monotone non-decreasing with exact
// endpoints: deform(0) = 0 and deform(1) = 1.
//
// The pessimistic kernel is the shifted logistic 1/(1+exp(-lambda(2p-shift))),
// normalized by its values at 0 and 1 so the endpoint equalities hold. The
// optimistic kernel is the logit 1 + log(p/(2-p))/lambda, clamped below at 0.
double deform(const DeformationKind& kind, double p);

using DeformFn = std::function<double(double)>;

// Ordered utility/probability pairs. Probabilities must sum to 1 within 1e-9;
// the evaluator sorts entries by utility itself (stable).
struct Lottery {
    std::vector<std::pair<double, double>> entries; // (utility, probability)
};

// k >= 1 raw utility samples, unsorted.
struct SampleSet {
    std::vector<double> utilities;
};

double rdu_lottery(const Lottery& l, const DeformationKind& kind);
double rdu_lottery(const Lottery& l, const DeformFn& phi);

// Uniform-probability form: sorts ascending and applies the rank-dependent
// sum with tail probabilities (k-1)/k, (k-2)/k, ..., 1/k.
double rdu_samples(const SampleSet& s, const DeformationKind& kind);
double rdu_samples(const SampleSet& s, const DeformFn& phi);

// Draws k stochastic tuples, scores each with `utility`, and returns the
// rank-dependent value of the scores. Deterministic given the rng seed.
template <typename Tuple, typename Sampler, typename Utility, typename Decision>
double estimate_preference(const Decision& decision, Sampler&& sampler, Utility&& utility,
                           int k, const DeformationKind& kind, Rng& rng) {
    SampleSet s;
    s.utilities.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        Tuple t = sampler(rng);
        s.utilities.push_back(utility(decision, t));
    }
    return rdu_samples(s, kind);
}

} // namespace phantom::rdu
