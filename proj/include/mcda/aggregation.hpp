#pragma once

#include <string>
#include <vector>

#include "mcda/core.hpp"

namespace mcda {

struct RankTable {
    std::vector<std::string> labels;
    std::vector<RankVector> rows;
};

struct ConsensusResult {
    RankVector order;
    Vector scores;                             // rule-specific score per alternative
    std::vector<std::vector<std::size_t>> ties;  // groups of tied alternatives
    std::vector<bool> multimodal;              // mode rule only
};

void validate(const RankTable& table);

ConsensusResult mode_rank(const RankTable& table);
ConsensusResult borda(const RankTable& table);
ConsensusResult copeland(const RankTable& table);

}  // namespace mcda
