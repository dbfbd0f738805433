#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcda/core.hpp"

namespace mcda {

enum class ScoringMethod {
    Aras, Cocoso, Codas, Copras, Cradis, Edas, Gra, Mabac, Macbeth, Mairca, Marcos, Maut, Moora, Moosra,
    Multimoora, Ocra, Oreste, Piv, Psi, Rov, Saw, Spotis, Todim, Topsis, Vikor, Wsm, Wpm, Waspas
};

const std::vector<ScoringMethod>& all_scoring_methods();
std::string token(ScoringMethod m);
std::string display_name(ScoringMethod m);
std::optional<ScoringMethod> parse_scoring_method(const std::string& token);

enum class UtilityKind { Exponential, Step, Linear };
UtilityKind parse_utility_kind(const std::string& token);

struct ScoringParams {
    double cocoso_l = 0.5;
    double codas_lambda = 0.02;
    double gra_epsilon = 0.5;
    double oreste_alpha = 0.4;
    double todim_teta = 1.0;
    double vikor_v = 0.5;
    Vector spotis_smin;
    Vector spotis_smax;
    // When set, bounds that do not contain the data are widened to the
    // data range (with a note) instead of rejected.
    bool spotis_expand_bounds = false;
    UtilityKind maut_max_utility = UtilityKind::Exponential;
    UtilityKind maut_min_utility = UtilityKind::Step;
    double maut_step_size = 1.0;
};

// Validates the parameters relevant to `method`; throws MethodError.
void validate_params(ScoringMethod method, const ScoringParams& params, const DecisionProblem& problem);

ScoreRanking rank_scoring(ScoringMethod method, const DecisionProblem& problem, const ScoringParams& params = {});

struct MultimooraResult {
    ScoreRanking ratio_system;      // higher is better
    ScoreRanking reference_point;   // lower is better
    ScoreRanking full_multiplicative;
    ScoreRanking final;             // score = pairwise dominance wins
};
MultimooraResult rank_multimoora(const DecisionProblem& problem);

struct VikorResult {
    Vector s, r, q;
    ScoreRanking ranking;  // by Q, lower is better
    bool acceptable_advantage = false;
    bool acceptable_stability = false;
    std::vector<std::size_t> compromise_set;  // alternative indices
};
VikorResult vikor_details(const DecisionProblem& problem, double v);

}  // namespace mcda
