#include "phantom/rdu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phantom::rdu {

namespace {

double logistic(double lambda, double shift, double p) {
    return 1.0 / (1.0 + std::exp(-lambda * (2.0 * p - shift)));
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("deform: probability outside [0, 1]");
}

// Shared rank-dependent evaluation over entries sorted by utility.
// Tail probability sums accumulate in long double so the two public forms
// agree to well below 1e-12.
double rdu_sorted(const std::vector<std::pair<double, double>>& sorted, const DeformFn& phi) {
    const std::size_t n = sorted.size();
    std::vector<double> tail(n, 0.0);
    long double acc = 0.0L;
    for (std::size_t j = n; j-- > 0;) {
        acc += sorted[j].second;
        tail[j] = static_cast<double>(acc);
    }
    double value = sorted[0].first;
    for (std::size_t j = 1; j < n; ++j) {
        double gain = sorted[j].first - sorted[j - 1].first;
        value += gain * phi(std::min(1.0, std::max(0.0, tail[j])));
    }
    return value;
}

} // namespace

double deform(const DeformationKind& kind, double p) {
    check_probability(p);
    switch (kind.type) {
    case DeformationKind::Type::Neutral:
        return p;
    case DeformationKind::Type::Pessimistic: {
        double lo = logistic(kind.lambda, kind.shift, 0.0);
        double hi = logistic(kind.lambda, kind.shift, 1.0);
        return (logistic(kind.lambda, kind.shift, p) - lo) / (hi - lo);
    }
    case DeformationKind::Type::Optimistic: {
        if (p == 0.0)
            return 0.0;
        if (p == 1.0)
            return 1.0;
        double raw = 1.0 + std::log(p / (2.0 - p)) / kind.lambda;
        return std::max(0.0, raw);
    }
    }
    return p;
}

double rdu_lottery(const Lottery& l, const DeformFn& phi) {
    if (l.entries.empty())
        throw std::invalid_argument("rdu_lottery: empty lottery");
    long double total = 0.0L;
    for (const auto& [u, p] : l.entries) {
        if (!std::isfinite(u))
            throw std::invalid_argument("rdu_lottery: non-finite utility");
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("rdu_lottery: probability outside [0, 1]");
        total += p;
    }
    if (std::abs(static_cast<double>(total) - 1.0) > 1e-9)
        throw std::invalid_argument("rdu_lottery: probabilities must sum to 1");
    std::vector<std::pair<double, double>> sorted = l.entries;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return rdu_sorted(sorted, phi);
}

double rdu_lottery(const Lottery& l, const DeformationKind& kind) {
    return rdu_lottery(l, [&kind](double p) { return deform(kind, p); });
}

double rdu_samples(const SampleSet& s, const DeformFn& phi) {
    const std::size_t k = s.utilities.size();
    if (k == 0)
        throw std::invalid_argument("rdu_samples: need at least one sample");
    for (double u : s.utilities)
        if (!std::isfinite(u))
            throw std::invalid_argument("rdu_samples: non-finite utility");
    std::vector<double> x = s.utilities;
    std::sort(x.begin(), x.end());
    double value = x[0];
    for (std::size_t j = 1; j < k; ++j) {
        double tail = static_cast<double>(k - j) / static_cast<double>(k);
        value += (x[j] - x[j - 1]) * phi(tail);
    }
    return value;
}

double rdu_samples(const SampleSet& s, const DeformationKind& kind) {
    return rdu_samples(s, [&kind](double p) { return deform(kind, p); });
}

} // namespace phantom::rdu
