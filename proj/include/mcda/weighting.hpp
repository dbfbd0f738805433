#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcda/core.hpp"

namespace mcda {

enum class WeightingMethod { Bwm, Cilos, Critic, Entropy, Idocriw, Merec };

const std::vector<WeightingMethod>& all_weighting_methods();
std::string token(WeightingMethod m);
std::string display_name(WeightingMethod m);
std::optional<WeightingMethod> parse_weighting_method(const std::string& token);

struct WeightVector {
    Vector weights;
    std::string source;
    std::vector<std::string> warnings;
};

struct BwmComparisons {
    std::vector<int> mic;  // best-to-others
    std::vector<int> lic;  // others-to-worst
};

struct BwmResult {
    WeightVector weights;
    double xi = 0.0;  // consistency indicator
    std::size_t best = 0;
    std::size_t worst = 0;
};

struct IdocriwOptions {
    // Multiply the entropy component by CILOS weights. Off by default: the
    // published IDOCRIW weights equal the entropy component alone.
    bool apply_cilos_correction = false;
};

inline constexpr double kZeroFloor = 1e-9;

WeightVector entropy_weights(const DecisionProblem& problem);
WeightVector critic_weights(const DecisionProblem& problem);
WeightVector cilos_weights(const DecisionProblem& problem);
WeightVector idocriw_weights(const DecisionProblem& problem, const IdocriwOptions& options = {});
WeightVector merec_weights(const DecisionProblem& problem);
BwmResult bwm_weights(std::size_t n_criteria, const BwmComparisons& comparisons);

// Largest |w_B - a_Bj w_j| / |w_j - a_jW w_W| deviation for a weight vector.
double bwm_max_deviation(const Vector& w, const BwmComparisons& comparisons);

}  // namespace mcda
