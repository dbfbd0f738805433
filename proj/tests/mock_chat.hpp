#pragma once

#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

// Local chat-completion endpoint. Replies with `reply` once `failures`
// requests have been answered with `failure_status`.
class MockChat {
public:
    explicit MockChat(std::string reply = "OK", int failures = 0, int failure_status = 500)
        : reply_(std::move(reply)), failures_(failures), failure_status_(failure_status) {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
            const int n = ++hits_;
            {
                std::lock_guard<std::mutex> lock(mu_);
                authorization_.push_back(req.get_header_value("Authorization"));
                bodies_.push_back(req.body);
            }
            if (n <= failures_) {
                res.status = failure_status_;
                res.set_content("{\"error\":\"injected\"}", "application/json");
                return;
            }
            const nlohmann::json body = {{"choices", {{{"message", {{"role", "assistant"}, {"content", reply_}}}}}}};
            res.set_content(body.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~MockChat() {
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }
    MockChat(const MockChat&) = delete;
    MockChat& operator=(const MockChat&) = delete;

    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }
    int hits() const { return hits_; }
    std::vector<std::string> authorization() const {
        std::lock_guard<std::mutex> lock(mu_);
        return authorization_;
    }
    std::vector<std::string> bodies() const {
        std::lock_guard<std::mutex> lock(mu_);
        return bodies_;
    }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::string reply_;
    int failures_;
    int failure_status_;
    std::atomic<int> hits_{0};
    mutable std::mutex mu_;
    std::vector<std::string> authorization_;
    std::vector<std::string> bodies_;
};

// Sets an environment variable for the lifetime of the object.
class ScopedEnv {
public:
    ScopedEnv(std::string name, const char* value) : name_(std::move(name)) {
        if (const char* old = std::getenv(name_.c_str())) old_ = old, had_ = true;
        if (value)
            ::setenv(name_.c_str(), value, 1);
        else
            ::unsetenv(name_.c_str());
    }
    ~ScopedEnv() {
        if (had_)
            ::setenv(name_.c_str(), old_.c_str(), 1);
        else
            ::unsetenv(name_.c_str());
    }
    ScopedEnv(const ScopedEnv&) = delete;
    ScopedEnv& operator=(const ScopedEnv&) = delete;

private:
    std::string name_;
    std::string old_;
    bool had_ = false;
};
