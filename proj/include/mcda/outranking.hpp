#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcda/core.hpp"

namespace mcda {

enum class PreferenceKind { Usual, UShape, VShape, Level, Linear, Gaussian };

PreferenceKind parse_preference(const std::string& token);
std::string to_string(PreferenceKind k);

struct Thresholds {
    Vector q;  // indifference
    Vector p;  // preference
    Vector s;  // gaussian shape
};

// Preference degree in [0,1] for a (direction-folded) difference d.
double preference(PreferenceKind kind, double d, double q, double p, double s);

struct PrometheeResult {
    ScoreRanking ranking;  // net flows, higher is better
    Vector phi_plus;
    Vector phi_minus;
};

PrometheeResult promethee_ii(const DecisionProblem& problem, const Thresholds& t,
                             const std::vector<PreferenceKind>& functions);

// Continuous variant: each pairwise degree integrates the preference
// function over [0, d] with a 1000-interval trapezoid rule.
PrometheeResult promethee_iv(const DecisionProblem& problem, const Thresholds& t,
                             const std::vector<PreferenceKind>& functions);

inline constexpr int kQuadratureIntervals = 1000;

struct EcConfig {
    Vector custom_set;
    int iterations = 10000;
    std::uint64_t seed = 42;
};

struct EcResult {
    ScoreRanking ranking;  // scores are mean ranks, lower is better
    std::vector<std::vector<int>> frequency;  // [alternative][rank-1] counts
    std::vector<int> modal_rank;
    std::vector<bool> multimodal;
    Vector mean_rank;
};

// Weight vector drawn for one iteration (exposed for testing).
Vector ec_sample_weights(const EcConfig& config, int iteration);

EcResult ec_promethee(const DecisionProblem& problem, const Thresholds& t,
                      const std::vector<PreferenceKind>& functions, const EcConfig& config);

}  // namespace mcda
