#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

namespace mss {

using json = nlohmann::ordered_json;

struct Report {
    std::string suite;
    long instances = 0;
    long passed = 0;
    long skipped = 0;
    std::vector<json> counterexamples;

    bool ok() const { return counterexamples.empty(); }

    void pass() {
        ++instances;
        ++passed;
    }
    void skip() { ++skipped; }
    void fail(json witness) {
        ++instances;
        counterexamples.push_back(std::move(witness));
    }
    void check(bool cond, const std::function<json()>& witness) {
        if (cond)
            pass();
        else
            fail(witness());
    }

    void merge(const Report& o) {
        instances += o.instances;
        passed += o.passed;
        skipped += o.skipped;
        counterexamples.insert(counterexamples.end(), o.counterexamples.begin(), o.counterexamples.end());
    }

    json to_json() const {
        std::vector<json> ce = counterexamples;
        std::stable_sort(ce.begin(), ce.end(), [](const json& a, const json& b) { return a.dump() < b.dump(); });
        return json{{"suite", suite}, {"instances", instances}, {"passed", passed}, {"skipped", skipped}, {"counterexamples", ce}};
    }
};

// Runs body(i) for i in [0, count) on up to `jobs` threads.
template <class F>
void parallel_for(int count, int jobs, F body) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) body(i);
        });
    for (auto& th : pool) th.join();
}

// Builds one partial report per work item in parallel and merges them in item order.
template <class F>
Report parallel_report(const std::string& suite, int count, int jobs, F item) {
    std::vector<Report> parts(count);
    parallel_for(count, jobs, [&](int i) { parts[i] = item(i); });
    Report r;
    r.suite = suite;
    for (const auto& p : parts) r.merge(p);
    return r;
}

}  // namespace mss
