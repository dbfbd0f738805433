#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcda/analysis.hpp"

namespace mcda {

enum class ContextKind { RankTable, RankCorr, WeightTable, WeightCorr };

std::string to_string(ContextKind k);

struct PromptTemplate {
    std::string id;
    std::string question;
    ContextKind context;
};

const std::vector<PromptTemplate>& prompt_catalogue();
const PromptTemplate& find_template(const std::string& id);  // UsageError if unknown

// Kendall matrices feed the rank templates, Pearson matrices the weight ones.
ContextKind context_kind(const ComparisonTable& table);
ContextKind context_kind(const CorrelationMatrix& matrix);

std::string render_grid(const ComparisonTable& table);
std::string render_grid(const CorrelationMatrix& matrix);

std::string render_prompt(const std::string& template_id, const ComparisonTable& table);
std::string render_prompt(const std::string& template_id, const CorrelationMatrix& matrix);

struct PromptContexts {
    std::optional<ComparisonTable> rank_table;
    std::optional<CorrelationMatrix> rank_corr;
    std::optional<ComparisonTable> weight_table;
    std::optional<CorrelationMatrix> weight_corr;
};

std::string render_prompt(const std::string& template_id, const PromptContexts& contexts);

// Writes `<dir>/<template id>.txt` per template; no network access.
std::vector<std::string> dump_prompts(const std::vector<std::string>& template_ids, const PromptContexts& contexts,
                                      const std::string& directory);

struct ChatConfig {
    std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
    std::string model_name = "gpt-4";
    std::string api_key_env = "MCDA_LLM_API_KEY";
    double temperature = 0.0;
    double timeout_seconds = 60.0;
    int max_attempts = 3;
    double backoff_seconds = 1.0;  // doubled after every failed attempt
};

void validate(const ChatConfig& config);

inline constexpr const char* kGeneratedDisclaimer =
    "Generated by an external language model. Verify every statement against the computed tables before relying on it.";

struct Transcript {
    std::string prompt;
    std::string response;
    std::string timestamp;  // UTC, ISO 8601
    // configuration snapshot; holds the variable name, never the key itself
    std::string endpoint_url;
    std::string model_name;
    std::string api_key_env;
    double temperature = 0.0;
    double timeout_seconds = 0.0;
    std::string disclaimer = kGeneratedDisclaimer;
};

std::string transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const std::string& text);

// Posts one chat-completion request. Connection failures, 429 and 5xx are
// retried up to `max_attempts` in total; afterwards a NetworkError carries
// the last status seen.
Transcript ask(const ChatConfig& config, const std::string& prompt);

}  // namespace mcda
