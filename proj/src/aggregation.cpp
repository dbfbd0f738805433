#include "mcda/aggregation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace mcda {

namespace {

std::vector<std::vector<std::size_t>> tie_groups(const Vector& key) {
    std::map<double, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < key.size(); ++i) groups[key[i]].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [k, g] : groups)
        if (g.size() > 1) out.push_back(g);
    return out;
}

ConsensusResult from_scores(Vector scores, bool higher_is_better) {
    ConsensusResult r;
    r.order = scores_to_ranks(scores, higher_is_better);
    Vector key(r.order.begin(), r.order.end());
    r.ties = tie_groups(key);
    r.scores = std::move(scores);
    return r;
}

}  // namespace

void validate(const RankTable& table) {
    if (table.rows.empty()) throw DataError("rank table is empty");
    if (table.labels.size() != table.rows.size()) throw DataError("rank table label count does not match rows");
    std::set<std::string> seen;
    for (const auto& l : table.labels)
        if (!seen.insert(l).second) throw DataError("duplicate rank table label '" + l + "'");
    const std::size_t n = table.rows[0].size();
    if (n == 0) throw DataError("rank table rows are empty");
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r].size() != n) throw DataError("rank table row '" + table.labels[r] + "' has the wrong length");
        for (int v : table.rows[r])
            if (v < 1 || v > static_cast<int>(n))
                throw DataError("rank table row '" + table.labels[r] + "' has a rank outside [1, n]");
    }
}

ConsensusResult mode_rank(const RankTable& table) {
    validate(table);
    const std::size_t n = table.rows[0].size();
    std::vector<int> modal(n);
    Vector mean(n, 0.0);
    ConsensusResult res;
    res.multimodal.assign(n, false);
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<int> count(n + 1, 0);
        for (const auto& row : table.rows) {
            ++count[row[a]];
            mean[a] += row[a];
        }
        mean[a] /= static_cast<double>(table.rows.size());
        const int best = *std::max_element(count.begin(), count.end());
        modal[a] = static_cast<int>(std::find(count.begin(), count.end(), best) - count.begin());
        res.multimodal[a] = std::count(count.begin(), count.end(), best) > 1;
    }

    // Alternatives ranked identically by every row are genuinely tied and
    // share a rank; any other collision is repaired by mean rank, then index.
    std::vector<std::size_t> cls(n);
    std::vector<std::size_t> reps;
    for (std::size_t a = 0; a < n; ++a) {
        cls[a] = reps.size();
        for (std::size_t c = 0; c < reps.size(); ++c) {
            const std::size_t b = reps[c];
            const bool same = std::all_of(table.rows.begin(), table.rows.end(),
                                          [&](const RankVector& row) { return row[a] == row[b]; });
            if (same) {
                cls[a] = c;
                break;
            }
        }
        if (cls[a] == reps.size()) reps.push_back(a);
    }
    std::vector<std::size_t> order(reps.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const std::size_t a = reps[x], b = reps[y];
        if (modal[a] != modal[b]) return modal[a] < modal[b];
        if (mean[a] != mean[b]) return mean[a] < mean[b];
        return a < b;
    });
    std::vector<int> class_rank(reps.size());
    int next = 1;
    for (std::size_t c : order) {
        class_rank[c] = next;
        next += static_cast<int>(std::count(cls.begin(), cls.end(), c));
    }
    res.order.resize(n);
    for (std::size_t a = 0; a < n; ++a) res.order[a] = class_rank[cls[a]];
    res.scores.assign(modal.begin(), modal.end());
    res.ties = tie_groups(res.scores);
    return res;
}

ConsensusResult borda(const RankTable& table) {
    validate(table);
    const std::size_t n = table.rows[0].size();
    Vector score(n, 0.0);
    for (const auto& row : table.rows)
        for (std::size_t a = 0; a < n; ++a) score[a] += static_cast<double>(n) - row[a];
    return from_scores(std::move(score), true);
}

ConsensusResult copeland(const RankTable& table) {
    validate(table);
    const std::size_t n = table.rows[0].size();
    Vector score(n, 0.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            int a_better = 0, b_better = 0;
            for (const auto& row : table.rows) {
                if (row[a] < row[b]) ++a_better;
                else if (row[b] < row[a]) ++b_better;
            }
            if (a_better > b_better) {
                score[a] += 1;
                score[b] -= 1;
            } else if (b_better > a_better) {
                score[b] += 1;
                score[a] -= 1;
            }
        }
    return from_scores(std::move(score), true);
}

}  // namespace mcda
