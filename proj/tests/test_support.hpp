#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "mcda/analysis.hpp"
#include "mcda/core.hpp"
#include "mcda/method_spec.hpp"

#ifndef MCDA_DATA_DIR
#error "MCDA_DATA_DIR must point at the data directory"
#endif

namespace testing {

inline std::string data(const std::string& name) { return std::string(MCDA_DATA_DIR) + "/" + name; }

inline const mcda::DecisionProblem& case1() {
    static const auto p = mcda::load_problem(data("case1.csv"));
    return p;
}

inline const mcda::DecisionProblem& case2() {
    static const auto p = mcda::load_problem(data("case2.csv"));
    return p;
}

inline mcda::DecisionProblem problem_from(const std::string& csv) {
    std::istringstream in(csv);
    return mcda::load_problem_csv(in);
}

inline mcda::Vector row_of(const mcda::ComparisonTable& t, const std::string& label) {
    for (std::size_t i = 0; i < t.labels.size(); ++i)
        if (t.labels[i] == label) return t.rows[i];
    throw std::runtime_error("no row " + label);
}

inline mcda::RankVector ranks_of(const mcda::ComparisonTable& t, const std::string& label) {
    const auto v = row_of(t, label);
    return mcda::RankVector(v.begin(), v.end());
}

// Spec from a shipped spec file with all of its parameters applied.
inline mcda::MethodSpec shipped_spec(const std::string& file, const std::string& id) {
    const auto sf = mcda::load_spec(data(file));
    for (const auto& s : sf.methods)
        if (s.id == id) return s;
    throw std::runtime_error("no method " + id + " in " + file);
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("mcda_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace testing
