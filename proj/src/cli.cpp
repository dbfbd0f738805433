#include "mcda/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mcda/aggregation.hpp"
#include "mcda/analysis.hpp"
#include "mcda/llm.hpp"
#include "mcda/method_spec.hpp"

namespace mcda {

namespace {

struct Globals {
    std::string problem;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string format = "csv";
    std::string config;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string header(const std::string& command, const Globals& g) {
    std::string h = "# tool=mcda " + std::string(kToolVersion) + "\n# command=" + command + "\n";
    if (!g.problem.empty()) h += "# problem=" + g.problem + "\n";
    if (!g.config.empty()) h += "# config=" + g.config + "\n";
    return h;
}

void emit(const Globals& g, const std::string& content, std::ostream& out) {
    if (g.out.empty()) out << content;
    else write_file_atomic(g.out, content);
}

DecisionProblem need_problem(const Globals& g) {
    if (g.problem.empty()) throw UsageError("--problem is required");
    return load_problem(g.problem);
}

std::map<std::string, std::string> config_entries(const Globals& g) {
    if (g.config.empty()) return {};
    return load_spec(g.config).entries;
}

void apply_seed(MethodSpec& spec, const Globals& g) {
    if (g.seed) spec.ec.seed = *g.seed;
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items)
        for (const auto& part : split(item, ','))
            if (!part.empty()) out.push_back(part);
    return out;
}

std::vector<LabeledRow> load_externals(const std::vector<std::string>& paths, TableKind kind) {
    std::vector<LabeledRow> rows;
    for (const auto& p : split_list(paths)) {
        auto r = read_external(p, kind);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    return rows;
}

bool has_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (!t.empty() && t[0] != '#') return true;
    }
    return false;
}

ComparisonTable load_table_for_correlation(const std::string& path) {
    if (!has_rows(path)) throw DataError("cannot correlate a table with fewer than 2 rows (found 0)");
    return read_table(path);
}

void report(const ComparisonTable& t, std::ostream& err) {
    for (const auto& d : t.diagnostics) err << "warning: " << d.label << " failed: " << d.message << '\n';
}

// Tables where every method failed are errors; partial failures are warnings.
int table_status(const ComparisonTable& t) {
    if (t.size() == 0 && !t.diagnostics.empty()) return t.diagnostics.front().exit_code;
    return 0;
}

std::string render_table(const ComparisonTable& t, const std::string& hdr, const Globals& g) {
    if (g.format == "text") return render_grid(t);
    return hdr + format_table(t);
}

// ---- commands -------------------------------------------------------------

int cmd_rank(const Globals& g, const std::string& method, std::ostream& out) {
    const DecisionProblem p = need_problem(g);
    MethodSpec spec = make_spec(method);
    if (is_weighting(spec)) throw UsageError(method + " is a weighting method; use the weights command");
    apply_entries(spec, config_entries(g));
    apply_seed(spec, g);
    const ScoreRanking r = run_ranking(spec, p);

    std::ostringstream os;
    if (g.format == "text") {
        std::vector<std::string> labels = p.alternatives();
        std::size_t w = 11;
        for (const auto& l : labels) w = std::max(w, l.size());
        os << std::string("alternative") + std::string(w - 11, ' ') << "  " << std::setw(16) << "score"
           << "  rank\n";
        for (std::size_t i = 0; i < labels.size(); ++i)
            os << labels[i] << std::string(w - labels[i].size(), ' ') << "  " << std::setw(16) << num(r.scores[i])
               << "  " << std::setw(4) << r.ranks[i] << '\n';
    } else {
        os << header("rank", g);
        for (const auto& d : describe(spec)) os << "# " << d << '\n';
        os << "# seed=" << spec.ec.seed << '\n';
        os << "# score_order=" << (r.higher_is_better ? "higher_is_better" : "lower_is_better") << '\n';
        for (const auto& n : r.notes) os << "# note " << n << '\n';
        os << "alternative,score,rank\n";
        for (std::size_t i = 0; i < p.n_alternatives(); ++i)
            os << p.alternatives()[i] << ',' << num(r.scores[i]) << ',' << r.ranks[i] << '\n';
    }
    emit(g, os.str(), out);
    return 0;
}

int cmd_weights(const Globals& g, const std::vector<std::string>& methods, bool all, const std::string& mic,
                const std::string& lic, const std::vector<std::string>& external, std::ostream& out,
                std::ostream& err) {
    const DecisionProblem p = need_problem(g);
    std::vector<std::string> ids = split_list(methods);
    if (all) {
        if (!ids.empty()) throw UsageError("--all and --method are mutually exclusive");
        for (auto m : {WeightingMethod::Bwm, WeightingMethod::Cilos, WeightingMethod::Critic, WeightingMethod::Entropy,
                       WeightingMethod::Idocriw, WeightingMethod::Merec})
            ids.push_back(token(m));
    }
    if (ids.empty()) throw UsageError("give --method or --all");
    auto entries = config_entries(g);
    if (!mic.empty()) entries["bwm.mic"] = mic;
    if (!lic.empty()) entries["bwm.lic"] = lic;
    std::vector<MethodSpec> specs;
    for (const auto& id : ids) {
        MethodSpec s = make_spec(id);
        if (!is_weighting(s)) throw UsageError(id + " is not a weighting method");
        apply_entries(s, entries);
        specs.push_back(std::move(s));
    }
    const ComparisonTable t = build_comparison(p, specs, load_externals(external, TableKind::Weights));
    report(t, err);
    if (int rc = table_status(t)) {
        err << "error: " << t.diagnostics.front().message << '\n';
        return rc;
    }
    emit(g, render_table(t, header("weights", g), g), out);
    return 0;
}

int cmd_compare(const Globals& g, const std::string& spec_path, const std::vector<std::string>& external,
                std::ostream& out, std::ostream& err) {
    const DecisionProblem p = need_problem(g);
    SpecFile sf = load_spec(spec_path);
    if (sf.methods.empty()) throw UsageError(spec_path + " lists no methods");
    const auto extra = config_entries(g);
    for (auto& s : sf.methods) {
        apply_entries(s, extra);
        apply_seed(s, g);
    }
    const TableKind kind = is_weighting(sf.methods.front()) ? TableKind::Weights : TableKind::Ranks;
    const ComparisonTable t = build_comparison(p, sf.methods, load_externals(external, kind));
    report(t, err);
    if (int rc = table_status(t)) {
        err << "error: " << t.diagnostics.front().message << '\n';
        return rc;
    }
    std::string hdr = header("compare", g) + "# spec=" + spec_path + "\n";
    if (g.seed) hdr += "# seed=" + std::to_string(*g.seed) + "\n";
    emit(g, render_table(t, hdr, g), out);
    return 0;
}

std::string order_string(const std::vector<std::string>& names, const RankVector& ranks) {
    std::vector<std::size_t> idx(ranks.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });
    std::string s;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k) s += (ranks[idx[k]] == ranks[idx[k - 1]]) ? "=" : ",";
        s += names[idx[k]];
    }
    return s;
}

int cmd_aggregate(const Globals& g, const std::string& table_path, const std::string& rule, std::ostream& out) {
    const ComparisonTable t = read_table(table_path);
    const RankTable rt = to_rank_table(t);
    std::vector<std::pair<std::string, ConsensusResult>> results;
    const std::string r = lower(rule);
    if (r == "mode" || r == "all") results.emplace_back("mode", mode_rank(rt));
    if (r == "borda" || r == "all") results.emplace_back("borda", borda(rt));
    if (r == "copeland" || r == "all") results.emplace_back("copeland", copeland(rt));
    if (results.empty()) throw UsageError("unknown rule '" + rule + "' (mode, borda, copeland or all)");

    std::ostringstream os;
    if (g.format == "text") {
        for (const auto& [name, c] : results) os << name << ": " << order_string(t.columns, c.order) << '\n';
    } else {
        os << header("aggregate", g) << "# table=" << table_path << "\n# rows=" << t.size() << '\n';
        for (const auto& [name, c] : results) {
            os << "# consensus." << name << '=' << order_string(t.columns, c.order) << '\n';
            if (!c.multimodal.empty()) {
                std::string m;
                for (std::size_t a = 0; a < c.multimodal.size(); ++a)
                    if (c.multimodal[a]) m += (m.empty() ? "" : " ") + t.columns[a];
                if (!m.empty()) os << "# multimodal." << name << '=' << m << '\n';
            }
            for (const auto& group : c.ties) {
                std::string s;
                for (auto a : group) s += (s.empty() ? "" : " ") + t.columns[a];
                os << "# tie." << name << '=' << s << '\n';
            }
        }
        os << "alternative";
        for (const auto& [name, c] : results) os << ',' << name << "_score," << name << "_rank";
        os << '\n';
        for (std::size_t a = 0; a < t.columns.size(); ++a) {
            os << t.columns[a];
            for (const auto& [name, c] : results) os << ',' << num(c.scores[a]) << ',' << c.order[a];
            os << '\n';
        }
    }
    emit(g, os.str(), out);
    return 0;
}

Coefficient default_coefficient(const ComparisonTable& t, const std::string& requested) {
    if (!requested.empty()) return parse_coefficient(requested);
    return t.kind == TableKind::Ranks ? Coefficient::KendallTauB : Coefficient::Pearson;
}

int cmd_correlate(const Globals& g, const std::string& table_path, const std::string& coefficient,
                  const std::string& heatmap, std::ostream& out, std::ostream& err) {
    const ComparisonTable t = load_table_for_correlation(table_path);
    std::vector<std::string> warnings;
    const CorrelationMatrix m = correlation_matrix(t, default_coefficient(t, coefficient), &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    if (g.format == "text") emit(g, render_grid(m), out);
    else emit(g, header("correlate", g) + "# table=" + table_path + "\n" + correlation_csv(m), out);
    if (!heatmap.empty()) export_heatmap(m, heatmap);
    return 0;
}

int cmd_heatmap(const Globals& g, const std::string& input, const std::string& coefficient, std::ostream& out,
                std::ostream& err) {
    if (g.out.empty()) throw UsageError("heatmap needs --out <stem>");
    std::ifstream in(input);
    if (!in) throw DataError("cannot open " + input);
    std::stringstream buf;
    buf << in.rdbuf();
    CorrelationMatrix m;
    if (buf.str().find("# coefficient=") != std::string::npos) {
        m = parse_correlation_csv(buf);
    } else {
        const ComparisonTable t = load_table_for_correlation(input);
        std::vector<std::string> warnings;
        m = correlation_matrix(t, default_coefficient(t, coefficient), &warnings);
        for (const auto& w : warnings) err << "warning: " << w << '\n';
    }
    for (const auto& path : export_heatmap(m, g.out)) out << path << '\n';
    return 0;
}

PromptContexts load_contexts(const std::string& ranks, const std::string& weights) {
    PromptContexts c;
    if (!ranks.empty()) {
        c.rank_table = read_table(ranks);
        if (c.rank_table->kind != TableKind::Ranks) throw DataError(ranks + " is not a rank table");
        c.rank_corr = correlation_matrix(*c.rank_table, Coefficient::KendallTauB);
    }
    if (!weights.empty()) {
        c.weight_table = read_table(weights);
        if (c.weight_table->kind != TableKind::Weights) throw DataError(weights + " is not a weight table");
        c.weight_corr = correlation_matrix(*c.weight_table, Coefficient::Pearson);
    }
    return c;
}

std::vector<std::string> template_ids(const std::vector<std::string>& requested, const PromptContexts& c) {
    std::vector<std::string> ids = split_list(requested);
    if (!ids.empty()) return ids;
    for (const auto& t : prompt_catalogue()) {
        const bool have = (t.context == ContextKind::RankTable && c.rank_table) ||
                          (t.context == ContextKind::RankCorr && c.rank_corr) ||
                          (t.context == ContextKind::WeightTable && c.weight_table) ||
                          (t.context == ContextKind::WeightCorr && c.weight_corr);
        if (have) ids.push_back(t.id);
    }
    return ids;
}

int cmd_prompts(const Globals& g, const std::string& dump, const std::string& ranks, const std::string& weights,
                const std::vector<std::string>& ids, bool list, std::ostream& out) {
    if (list) {
        for (const auto& t : prompt_catalogue()) out << t.id << '\t' << to_string(t.context) << '\t' << t.question << '\n';
        return 0;
    }
    if (ranks.empty() && weights.empty()) throw UsageError("give --ranks and/or --weights tables");
    const PromptContexts c = load_contexts(ranks, weights);
    const std::vector<std::string> chosen = template_ids(ids, c);
    const std::string dir = dump.empty() ? g.out : dump;
    if (dir.empty()) {
        for (const auto& id : chosen) out << "=== " << id << " ===\n" << render_prompt(id, c) << "\n\n";
        return 0;
    }
    for (const auto& path : dump_prompts(chosen, c, dir)) out << path << '\n';
    return 0;
}

struct ChatArgs {
    ChatConfig config;
    std::string template_id;
    std::string prompt_file;
    std::string ranks, weights;
    std::string transcripts_dir;
};

int cmd_chat(const Globals& g, const ChatArgs& a, std::ostream& out) {
    std::string prompt;
    if (!a.prompt_file.empty()) {
        if (!a.template_id.empty()) throw UsageError("--template and --prompt-file are mutually exclusive");
        std::ifstream in(a.prompt_file);
        if (!in) throw DataError("cannot open " + a.prompt_file);
        std::stringstream buf;
        buf << in.rdbuf();
        prompt = buf.str();
    } else {
        if (a.template_id.empty()) throw UsageError("give --template or --prompt-file");
        prompt = render_prompt(a.template_id, load_contexts(a.ranks, a.weights));
    }
    const Transcript t = ask(a.config, prompt);
    out << t.response << "\n\n[" << t.disclaimer << "]\n";
    if (!a.transcripts_dir.empty()) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(a.transcripts_dir, ec);
        std::string stamp = t.timestamp;
        std::replace(stamp.begin(), stamp.end(), ':', '-');
        const std::string name = (a.template_id.empty() ? "prompt" : a.template_id) + "_" + stamp + ".json";
        write_file_atomic((fs::path(a.transcripts_dir) / name).string(), transcript_to_json(t) + "\n");
    }
    if (!g.out.empty()) write_file_atomic(g.out, transcript_to_json(t) + "\n");
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multicriteria decision analysis toolkit", "mcda"};
    app.set_version_flag("--version", std::string("mcda ") + kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::uint64_t seed = kDefaultSeed;
    app.add_option("--problem", g.problem, "Decision matrix (CSV or JSON)");
    app.add_option("--out", g.out, "Output file (directory for prompts, file stem for heatmap)");
    auto* seed_opt = app.add_option("--seed", seed, "Seed for stochastic methods (default 42)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "text"}));
    app.add_option("--config", g.config, "Parameter file (key = value lines)");

    auto* rank = app.add_subcommand("rank", "Rank alternatives with one method");
    std::string method;
    rank->add_option("--method", method, "Method id, e.g. topsis")->required();

    auto* weights = app.add_subcommand("weights", "Derive criterion weights");
    std::vector<std::string> weight_methods, external;
    bool all = false;
    std::string mic, lic;
    weights->add_option("--method", weight_methods, "Weighting method id(s)");
    weights->add_flag("--all", all, "Run every weighting method");
    weights->add_option("--mic", mic, "BWM best-to-others criterion ranks, comma separated");
    weights->add_option("--lic", lic, "BWM others-to-worst criterion ranks, comma separated");
    weights->add_option("--external", external, "Extra weight rows (table files)");

    auto* compare = app.add_subcommand("compare", "Run a method list and build a comparison table");
    std::string spec_path;
    compare->add_option("--spec", spec_path, "Method list and parameters")->required();
    compare->add_option("--external", external, "Extra rows from table files, comma separated");

    auto* aggregate = app.add_subcommand("aggregate", "Consensus ranking from a rank table");
    std::string table_path, rule = "mode";
    aggregate->add_option("table", table_path, "Rank table")->required();
    aggregate->add_option("--rule", rule, "mode, borda, copeland or all");

    auto* correlate = app.add_subcommand("correlate", "Pairwise correlation of table rows");
    std::string coefficient, heatmap_stem;
    correlate->add_option("table", table_path, "Rank or weight table")->required();
    correlate->add_option("--coefficient", coefficient, "kendall or pearson (default follows the table kind)");
    correlate->add_option("--heatmap", heatmap_stem, "Also write <stem>.csv and <stem>.svg");

    auto* heatmap = app.add_subcommand("heatmap", "Render a correlation heatmap");
    heatmap->add_option("input", table_path, "Correlation matrix CSV or table")->required();
    heatmap->add_option("--coefficient", coefficient, "Used when the input is a table");

    auto* prompts = app.add_subcommand("prompts", "Render analysis prompts");
    std::string dump, ranks_path, weights_path;
    std::vector<std::string> ids;
    bool list = false;
    prompts->add_option("--dump", dump, "Directory receiving one file per prompt");
    prompts->add_option("--ranks", ranks_path, "Rank comparison table");
    prompts->add_option("--weights", weights_path, "Weight comparison table");
    prompts->add_option("--ids", ids, "Template ids (default: all with available context)");
    prompts->add_flag("--list", list, "List the template catalogue");

    auto* chat = app.add_subcommand("chat", "Send one prompt to a chat-completion endpoint");
    ChatArgs ca;
    chat->add_option("--template", ca.template_id, "Template id");
    chat->add_option("--prompt-file", ca.prompt_file, "Send this file verbatim instead");
    chat->add_option("--ranks", ca.ranks, "Rank comparison table");
    chat->add_option("--weights", ca.weights, "Weight comparison table");
    chat->add_option("--endpoint", ca.config.endpoint_url, "Chat-completions URL");
    chat->add_option("--model", ca.config.model_name, "Model name");
    chat->add_option("--api-key-env", ca.config.api_key_env, "Environment variable holding the API key");
    chat->add_option("--temperature", ca.config.temperature, "Sampling temperature");
    chat->add_option("--timeout", ca.config.timeout_seconds, "Timeout in seconds");
    chat->add_option("--attempts", ca.config.max_attempts, "Total attempts for transient failures");
    chat->add_option("--transcripts-dir", ca.transcripts_dir, "Directory for transcript files");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }
    if (seed_opt->count() > 0) g.seed = seed;

    try {
        if (rank->parsed()) return cmd_rank(g, method, out);
        if (weights->parsed()) return cmd_weights(g, weight_methods, all, mic, lic, external, out, err);
        if (compare->parsed()) return cmd_compare(g, spec_path, external, out, err);
        if (aggregate->parsed()) return cmd_aggregate(g, table_path, rule, out);
        if (correlate->parsed()) return cmd_correlate(g, table_path, coefficient, heatmap_stem, out, err);
        if (heatmap->parsed()) return cmd_heatmap(g, table_path, coefficient, out, err);
        if (prompts->parsed()) return cmd_prompts(g, dump, ranks_path, weights_path, ids, list, out);
        if (chat->parsed()) return cmd_chat(g, ca, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}

}  // namespace mcda
