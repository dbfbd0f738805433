#include "mcda/llm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <regex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace mcda {

namespace {

using json = nlohmann::json;

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string grid(const std::string& corner, const std::vector<std::string>& columns,
                 const std::vector<std::string>& labels, const std::vector<std::vector<std::string>>& cells) {
    std::size_t first = corner.size();
    for (const auto& l : labels) first = std::max(first, l.size());
    std::vector<std::size_t> width(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        width[j] = columns[j].size();
        for (const auto& row : cells) width[j] = std::max(width[j], row[j].size());
    }
    std::ostringstream os;
    auto pad_right = [&](const std::string& s, std::size_t w) { os << s << std::string(w - s.size(), ' '); };
    auto pad_left = [&](const std::string& s, std::size_t w) { os << std::string(w - s.size(), ' ') << s; };
    pad_right(corner, first);
    for (std::size_t j = 0; j < columns.size(); ++j) {
        os << "  ";
        pad_left(columns[j], width[j]);
    }
    os << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        pad_right(labels[i], first);
        for (std::size_t j = 0; j < columns.size(); ++j) {
            os << "  ";
            pad_left(cells[i][j], width[j]);
        }
        os << '\n';
    }
    return os.str();
}

std::string assemble(const std::string& heading, const std::string& body, const std::string& question) {
    return heading + "\n\n" + body + "\n" + question;
}

std::string heading(ContextKind k) {
    switch (k) {
    case ContextKind::RankTable: return "Ranks assigned to each alternative (columns) by each method (rows); 1 is best.";
    case ContextKind::RankCorr: return "Kendall tau-b correlation between the rank vectors of each pair of methods.";
    case ContextKind::WeightTable: return "Weight assigned to each criterion (columns) by each method (rows).";
    case ContextKind::WeightCorr: return "Pearson correlation between the weight vectors of each pair of methods.";
    }
    return "";
}

void require_kind(const PromptTemplate& t, ContextKind got) {
    if (t.context != got)
        throw UsageError("template " + t.id + " needs a " + to_string(t.context) + " context, got " + to_string(got));
}

struct Endpoint {
    std::string base;  // scheme://host[:port]
    std::string path;
};

Endpoint split_url(const std::string& url) {
    static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)", std::regex::icase);
    std::smatch m;
    if (!std::regex_match(url, m, re)) throw UsageError("endpoint url must look like http(s)://host[:port]/path");
    return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::chrono::microseconds micros(double seconds) {
    return std::chrono::microseconds(static_cast<long long>(std::llround(seconds * 1e6)));
}

}  // namespace

std::string to_string(ContextKind k) {
    switch (k) {
    case ContextKind::RankTable: return "rank table";
    case ContextKind::RankCorr: return "rank correlation";
    case ContextKind::WeightTable: return "weight table";
    case ContextKind::WeightCorr: return "weight correlation";
    }
    return "";
}

const std::vector<PromptTemplate>& prompt_catalogue() {
    using K = ContextKind;
    static const std::vector<PromptTemplate> catalogue = {
        {"rank_compare.q1", "Which methods are more similar and which ones are more dissimilar?", K::RankTable},
        {"rank_compare.q2", "Which alternative(s) consistently ranks high or low across all the methods??", K::RankTable},
        {"rank_compare.q3",
         "Are there any noticeable differences in rankings across the methods? if so, what could account for these "
         "differences??",
         K::RankTable},
        {"rank_compare.q4", "Is there a consensus among the methods for any specific alternative(s)?", K::RankTable},
        {"rank_compare.q5", "Are there any unexpected rankings for certain alternatives when comparing across methods??",
         K::RankTable},
        {"rank_compare.q6",
         "Are there any methods that consistently rank alternatives differently than most other methods??", K::RankTable},
        {"rank_compare.q7", "What is the most common ranking for each alternative across all methods??", K::RankTable},

        {"rank_corr.q1", "Explain the significance of analyzing the correlation of ranks between different MCDA methods.",
         K::RankCorr},
        {"rank_corr.q2",
         "What are the implications if there is a high correlation between the ranks produced by different MCDA methods?",
         K::RankCorr},
        {"rank_corr.q3", "What might cause a low correlation in rankings between different MCDA methods?", K::RankCorr},
        {"rank_corr.q4",
         "What precautions or considerations should be taken when comparing the rankings of different MCDA methods?",
         K::RankCorr},

        {"weight_compare.q1", "Which methods are more similar and which ones are more dissimilar?", K::WeightTable},
        {"weight_compare.q2",
         "Are there certain criteria that consistently receive high weights across all methods? What might these key "
         "criteria suggest about the decision problem at hand?",
         K::WeightTable},
        {"weight_compare.q3",
         "Conversely, are there criteria that consistently receive low weights across all methods? This could indicate "
         "aspects that are less important to the decision context.",
         K::WeightTable},
        {"weight_compare.q4",
         "How much variability is there in weights assigned to each criterion by different methods? High variability "
         "could suggest that different methods interpret the importance of the criteria differently.",
         K::WeightTable},
        {"weight_compare.q5", "Are there any noticeable correlations between the weights assigned by different methods",
         K::WeightTable},
        {"weight_compare.q6", "Can you identify outlier methods that assign weights significantly different from others?",
         K::WeightTable},
        {"weight_compare.q7",
         "Is there a specific method that consistently assigns higher or lower weights to all criteria? If so, what does "
         "this indicate about the method's evaluation approach?",
         K::WeightTable},
        {"weight_compare.q8",
         "Do the weightings across different methods suggest a consensus on the importance ranking of the criteria?",
         K::WeightTable},

        {"weight_corr.q1",
         "Explain the significance of analyzing the correlation of weights between different MCDA methods.", K::WeightCorr},
        {"weight_corr.q2", "What might cause differences in the weighting of criteria across various MCDA methods?",
         K::WeightCorr},
        {"weight_corr.q3", "How can the correlation of weights between different MCDA methods impact the final decision?",
         K::WeightCorr},
        {"weight_corr.q4",
         "What could be the implications if there is a high correlation of weights across different MCDA methods?",
         K::WeightCorr},
        {"weight_corr.q5",
         "What strategies can be used to address inconsistencies in the weights assigned by different MCDA methods?",
         K::WeightCorr},
    };
    return catalogue;
}

const PromptTemplate& find_template(const std::string& id) {
    for (const auto& t : prompt_catalogue())
        if (t.id == id) return t;
    throw UsageError("unknown prompt template '" + id + "'");
}

ContextKind context_kind(const ComparisonTable& table) {
    return table.kind == TableKind::Ranks ? ContextKind::RankTable : ContextKind::WeightTable;
}

ContextKind context_kind(const CorrelationMatrix& matrix) {
    return matrix.coefficient == Coefficient::KendallTauB ? ContextKind::RankCorr : ContextKind::WeightCorr;
}

std::string render_grid(const ComparisonTable& table) {
    if (table.size() == 0 || table.columns.empty()) throw DataError("cannot render an empty table");
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : table.rows) {
        std::vector<std::string> r;
        for (double v : row) r.push_back(table.kind == TableKind::Ranks ? std::to_string(std::lround(v)) : fixed3(v));
        cells.push_back(std::move(r));
    }
    return grid("method", table.columns, table.labels, cells);
}

std::string render_grid(const CorrelationMatrix& matrix) {
    if (matrix.labels.empty()) throw DataError("cannot render an empty correlation matrix");
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : matrix.values) {
        std::vector<std::string> r;
        for (const auto& v : row) r.push_back(v ? fixed3(*v) : "NA");
        cells.push_back(std::move(r));
    }
    return grid("method", matrix.labels, matrix.labels, cells);
}

std::string render_prompt(const std::string& template_id, const ComparisonTable& table) {
    const PromptTemplate& t = find_template(template_id);
    require_kind(t, context_kind(table));
    return assemble(heading(t.context), render_grid(table), t.question);
}

std::string render_prompt(const std::string& template_id, const CorrelationMatrix& matrix) {
    const PromptTemplate& t = find_template(template_id);
    require_kind(t, context_kind(matrix));
    return assemble(heading(t.context), render_grid(matrix), t.question);
}

std::string render_prompt(const std::string& template_id, const PromptContexts& contexts) {
    const PromptTemplate& t = find_template(template_id);
    auto missing = [&]() -> UsageError {
        return UsageError("template " + t.id + " needs a " + to_string(t.context) + " context, none supplied");
    };
    switch (t.context) {
    case ContextKind::RankTable:
        if (!contexts.rank_table) throw missing();
        return render_prompt(template_id, *contexts.rank_table);
    case ContextKind::WeightTable:
        if (!contexts.weight_table) throw missing();
        return render_prompt(template_id, *contexts.weight_table);
    case ContextKind::RankCorr:
        if (!contexts.rank_corr) throw missing();
        return render_prompt(template_id, *contexts.rank_corr);
    case ContextKind::WeightCorr:
        if (!contexts.weight_corr) throw missing();
        return render_prompt(template_id, *contexts.weight_corr);
    }
    throw missing();
}

std::vector<std::string> dump_prompts(const std::vector<std::string>& template_ids, const PromptContexts& contexts,
                                      const std::string& directory) {
    namespace fs = std::filesystem;
    std::vector<std::pair<std::string, std::string>> rendered;
    for (const auto& id : template_ids) rendered.emplace_back(id, render_prompt(id, contexts));
    if (rendered.empty()) return {};
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec || !fs::is_directory(directory)) throw DataError("cannot create directory " + directory);
    std::vector<std::string> written;
    for (const auto& [id, text] : rendered) {
        const std::string path = (fs::path(directory) / (id + ".txt")).string();
        write_file_atomic(path, text + "\n");
        written.push_back(path);
    }
    return written;
}

void validate(const ChatConfig& c) {
    if (c.endpoint_url.empty()) throw UsageError("chat endpoint url is empty");
    split_url(c.endpoint_url);
    if (c.model_name.empty()) throw UsageError("chat model name is empty");
    if (c.api_key_env.empty()) throw UsageError("api key variable name is empty");
    if (!(c.temperature >= 0.0)) throw UsageError("temperature must be >= 0");
    if (!(c.timeout_seconds > 0.0)) throw UsageError("timeout must be > 0");
    if (c.max_attempts < 1) throw UsageError("max_attempts must be >= 1");
    if (!(c.backoff_seconds >= 0.0)) throw UsageError("backoff must be >= 0");
}

std::string transcript_to_json(const Transcript& t) {
    json j = {{"prompt", t.prompt},
              {"response", t.response},
              {"timestamp", t.timestamp},
              {"config",
               {{"endpoint_url", t.endpoint_url},
                {"model_name", t.model_name},
                {"api_key_env", t.api_key_env},
                {"temperature", t.temperature},
                {"timeout_seconds", t.timeout_seconds}}},
              {"disclaimer", t.disclaimer}};
    return j.dump(2);
}

Transcript transcript_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        Transcript t;
        t.prompt = j.at("prompt").get<std::string>();
        t.response = j.at("response").get<std::string>();
        t.timestamp = j.at("timestamp").get<std::string>();
        const json& c = j.at("config");
        t.endpoint_url = c.at("endpoint_url").get<std::string>();
        t.model_name = c.at("model_name").get<std::string>();
        t.api_key_env = c.at("api_key_env").get<std::string>();
        t.temperature = c.at("temperature").get<double>();
        t.timeout_seconds = c.at("timeout_seconds").get<double>();
        t.disclaimer = j.at("disclaimer").get<std::string>();
        return t;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed transcript: ") + e.what());
    }
}

Transcript ask(const ChatConfig& config, const std::string& prompt) {
    validate(config);
    if (trim(prompt).empty()) throw UsageError("prompt is empty");
    const char* key = std::getenv(config.api_key_env.c_str());
    if (key == nullptr || *key == '\0')
        throw UsageError("missing API key: environment variable " + config.api_key_env + " is not set");

    const Endpoint ep = split_url(config.endpoint_url);
    httplib::Client client(ep.base);
    client.set_connection_timeout(micros(config.timeout_seconds));
    client.set_read_timeout(micros(config.timeout_seconds));
    client.set_write_timeout(micros(config.timeout_seconds));

    const json request = {{"model", config.model_name},
                          {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
                          {"temperature", config.temperature}};
    const std::string body = request.dump();
    const httplib::Headers headers = {{"Authorization", std::string("Bearer ") + key}};

    std::string last = "no response";
    double delay = config.backoff_seconds;
    for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(micros(delay));
            delay *= 2;
        }
        auto res = client.Post(ep.path, headers, body, "application/json");
        if (!res) {
            last = "connection error: " + httplib::to_string(res.error());
            continue;
        }
        const int status = res->status;
        if (status == 429 || status >= 500) {
            last = "status " + std::to_string(status);
            continue;
        }
        if (status < 200 || status >= 300)
            throw NetworkError("chat endpoint returned status " + std::to_string(status));
        std::string content;
        try {
            const json reply = json::parse(res->body);
            content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception&) {
            throw NetworkError("malformed chat-completion response body");
        }
        Transcript t;
        t.prompt = prompt;
        t.response = content;
        t.timestamp = utc_now();
        t.endpoint_url = config.endpoint_url;
        t.model_name = config.model_name;
        t.api_key_env = config.api_key_env;
        t.temperature = config.temperature;
        t.timeout_seconds = config.timeout_seconds;
        return t;
    }
    throw NetworkError("chat request failed after " + std::to_string(config.max_attempts) + " attempts; last " + last);
}

}  // namespace mcda
