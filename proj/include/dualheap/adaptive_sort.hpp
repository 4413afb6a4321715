#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "perm_core.hpp"
#include "smooth.hpp"
#include "stable_heap.hpp"

namespace dualheap {

struct SortReport {
    std::string algo;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t links = 0;
    std::size_t comparisons = 0;
    std::size_t cost = 0;  // links for heap strategies, secondary-heap comparisons for cartesian
    std::uint64_t inv = 0, run = 0, osc = 0;
    double df = 0;
    std::vector<int> output;

    double cost_per_n() const { return n ? static_cast<double>(cost) / static_cast<double>(n) : 0.0; }
    double cost_per_nlogn() const {
        const double d = static_cast<double>(n) * std::log2(static_cast<double>(n));
        return d > 0 ? static_cast<double>(cost) / d : 0.0;
    }
    double cost_per_osc_bound() const {
        const double d = static_cast<double>(n) * std::log2(static_cast<double>(osc) / static_cast<double>(n) + 2.0);
        return n ? static_cast<double>(cost) / d : 0.0;
    }
};

namespace detail {

inline void fill_measures(SortReport& r, const Permutation& X) {
    r.n = X.size();
    r.inv = measure_inv(X);
    r.run = measure_run(X);
    r.osc = measure_osc(X);
    r.df = measure_df(X);
}

inline void require_sorted(const SortReport& r) {
    for (std::size_t i = 0; i < r.output.size(); ++i)
        if (r.output[i] != static_cast<int>(i + 1)) throw std::logic_error(r.algo + ": output not sorted");
    if (r.output.size() != r.n) throw std::logic_error(r.algo + ": output length differs");
}

}  // namespace detail

inline SortReport sort_with(const Permutation& X, Strategy s, std::uint64_t seed = 0) {
    const SortRun run = sort_mode_run(X, s);
    SortReport r;
    r.algo = to_string(s);
    r.seed = seed;
    detail::fill_measures(r, X);
    r.links = r.cost = run.cost;
    r.comparisons = run.comparisons;
    r.output = run.extraction;
    detail::require_sorted(r);
    return r;
}

// Treap of X (positions as keys, values as priorities); the root goes into a
// binary heap, and every extracted node's children are pushed in turn.
inline SortReport cartesian_tree_sort(const Permutation& X, std::uint64_t seed = 0) {
    SortReport r;
    r.algo = "cartesian";
    r.seed = seed;
    detail::fill_measures(r, X);
    if (!X.empty()) {
        const Treap t = treapify(X.values());
        std::size_t cmp = 0;
        auto greater = [&](int a, int b) {
            ++cmp;
            return t.nodes[a].priority > t.nodes[b].priority;
        };
        std::vector<int> heap{t.root};
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end(), greater);
            const int v = heap.back();
            heap.pop_back();
            r.output.push_back(t.nodes[v].priority);
            for (int c : {t.nodes[v].left, t.nodes[v].right})
                if (c >= 0) {
                    heap.push_back(c);
                    std::push_heap(heap.begin(), heap.end(), greater);
                }
        }
        r.comparisons = r.cost = cmp;
    }
    detail::require_sorted(r);
    return r;
}

inline const char* sort_csv_header() {
    return "algo,n,seed,links,comparisons,inv,run,osc,df,cost_per_n,cost_per_nlogn";
}

inline std::string format_csv_row(const SortReport& r) {
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    return r.algo + "," + std::to_string(r.n) + "," + std::to_string(r.seed) + "," + std::to_string(r.links) + "," +
           std::to_string(r.comparisons) + "," + std::to_string(r.inv) + "," + std::to_string(r.run) + "," +
           std::to_string(r.osc) + "," + num(r.df) + "," + num(r.cost_per_n()) + "," + num(r.cost_per_nlogn());
}

}  // namespace dualheap
