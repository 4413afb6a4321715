#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "stable_heap.hpp"

namespace dualheap {

class LocalMaxSelector {
public:
    enum class Policy { leftmost, rightmost, random, scripted };

    static LocalMaxSelector leftmost() { return LocalMaxSelector(Policy::leftmost); }
    static LocalMaxSelector rightmost() { return LocalMaxSelector(Policy::rightmost); }
    static LocalMaxSelector random(std::uint64_t seed) {
        LocalMaxSelector s(Policy::random);
        s.rng_.seed(seed);
        return s;
    }
    // The i-th choice takes script[i] modulo the number of candidates;
    // after the script runs out, the leftmost candidate.
    static LocalMaxSelector scripted(std::vector<std::size_t> script) {
        LocalMaxSelector s(Policy::scripted);
        s.script_ = std::move(script);
        return s;
    }

    std::size_t choose(std::size_t candidates) {
        switch (policy_) {
        case Policy::rightmost: return candidates - 1;
        case Policy::random: return bounded_draw(rng_, candidates);
        case Policy::scripted:
            if (step_ < script_.size()) return script_[step_++] % candidates;
            return 0;
        default: return 0;
        }
    }

private:
    explicit LocalMaxSelector(Policy p) : policy_(p) {}
    Policy policy_;
    std::mt19937_64 rng_;
    std::vector<std::size_t> script_;
    std::size_t step_ = 0;
};

// Non-deterministic view on the top level of H: pick any local maximum
// (ends see a -infinity sentinel) and link it to its larger neighbor.
template <class Key>
void smooth_nondet_round(HeapForest<Key>& H, LocalMaxSelector& sel) {
    using Id = typename HeapForest<Key>::Id;
    std::vector<Id> maxima;
    while (H.top_count() > 1) {
        maxima.clear();
        for (Id x = H.top_leftmost(); x != H.none; x = H.next(x)) {
            const Id p = H.prev(x), q = H.next(x);
            if ((p == H.none || H.key(p) < H.key(x)) && (q == H.none || H.key(q) < H.key(x))) maxima.push_back(x);
        }
        const Id x = maxima[sel.choose(maxima.size())];
        const Id p = H.prev(x), q = H.next(x);
        if (p != H.none && (q == H.none || H.key(q) < H.key(p))) H.link_known(p, true);
        else H.link_known(x, false);
    }
}

// Tree shape as ordered child lists, keyed by node key.
using ChildMap = std::map<int, std::vector<int>>;

struct RestructureResult {
    LinkTrace<int> links;
    int root = 0;
    ChildMap children;
    std::size_t comparisons = 0;
};

namespace detail {

inline HeapForest<int> singleton_forest(const std::vector<int>& keys) {
    if (keys.empty()) throw std::invalid_argument("restructure: empty sibling sequence");
    HeapForest<int> H;
    for (int k : keys) H.insert(k);
    return H;
}

inline RestructureResult collect(const HeapForest<int>& H) {
    RestructureResult r;
    r.links = H.trace();
    r.comparisons = H.comparisons();
    r.root = H.key(H.top_leftmost());
    std::vector<HeapForest<int>::Id> stack{H.top_leftmost()};
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        auto& ch = r.children[H.key(v)];
        for (auto c : H.children(v)) {
            ch.push_back(H.key(c));
            stack.push_back(c);
        }
    }
    return r;
}

}  // namespace detail

inline RestructureResult restructure_nondet(const std::vector<int>& keys, LocalMaxSelector selector) {
    auto H = detail::singleton_forest(keys);
    smooth_nondet_round(H, selector);
    return detail::collect(H);
}

inline RestructureResult restructure_twopass(const std::vector<int>& keys) {
    auto H = detail::singleton_forest(keys);
    smooth_twopass(H);
    return detail::collect(H);
}

// Top-level keys left by the smoothing round alone.
inline std::vector<int> smoothing_survivors(const std::vector<int>& keys) {
    auto H = detail::singleton_forest(keys);
    smoothing_round(H);
    return H.top_keys();
}

// Binary tree in order by position (1-based) and min-heap by priority.
struct Treap {
    struct Node {
        int position;
        int priority;
        int left = -1, right = -1;  // node indices, position - 1
        friend bool operator==(const Node&, const Node&) = default;
    };
    std::vector<Node> nodes;
    int root = -1;

    friend bool operator==(const Treap&, const Treap&) = default;
};

// Stack construction, linear time.
inline Treap treapify(const std::vector<int>& keys) {
    if (keys.empty()) throw std::invalid_argument("treapify: empty sibling sequence");
    Treap t;
    std::vector<int> spine;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        t.nodes.push_back({static_cast<int>(i + 1), keys[i]});
        const int me = static_cast<int>(i);
        int last = -1;
        while (!spine.empty() && keys[spine.back()] > keys[i]) {
            last = spine.back();
            spine.pop_back();
        }
        t.nodes[me].left = last;
        if (!spine.empty()) t.nodes[spine.back()].right = me;
        spine.push_back(me);
    }
    t.root = spine.front();
    return t;
}

// Minimum at the root, recurse on both sides. Quadratic; used as reference.
inline Treap treapify_reference(const std::vector<int>& keys) {
    Treap t;
    for (std::size_t i = 0; i < keys.size(); ++i) t.nodes.push_back({static_cast<int>(i + 1), keys[i]});
    auto build = [&](auto&& self, int lo, int hi) -> int {
        if (lo >= hi) return -1;
        int m = lo;
        for (int i = lo; i < hi; ++i)
            if (keys[i] < keys[m]) m = i;
        t.nodes[m].left = self(self, lo, m);
        t.nodes[m].right = self(self, m + 1, hi);
        return m;
    };
    t.root = build(build, 0, static_cast<int>(keys.size()));
    return t;
}

// Treap as heap tree: left child -> leftmost, right child -> rightmost.
inline ChildMap treap_children(const Treap& t) {
    ChildMap m;
    for (const auto& n : t.nodes) {
        auto& ch = m[n.priority];
        if (n.left >= 0) ch.push_back(t.nodes[n.left].priority);
        if (n.right >= 0) ch.push_back(t.nodes[n.right].priority);
    }
    return m;
}

inline std::vector<LinkEvent<int>> treap_edges(const Treap& t) {
    std::vector<LinkEvent<int>> out;
    for (const auto& n : t.nodes) {
        if (n.left >= 0) out.push_back({t.nodes[n.left].priority, n.priority, Side::leftmost});
        if (n.right >= 0) out.push_back({t.nodes[n.right].priority, n.priority, Side::rightmost});
    }
    return out;
}

inline std::vector<LinkEvent<int>> sorted_links(std::vector<LinkEvent<int>> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        return std::tie(a.child, a.parent, a.side) < std::tie(b.child, b.parent, b.side);
    });
    return v;
}

// All three views agree on tree and link set. On failure *why names the view.
inline bool check_equivalence(const std::vector<int>& keys, std::string* why = nullptr,
                              std::size_t random_selectors = 4, std::uint64_t seed = 0) {
    const Treap t = treapify(keys);
    const ChildMap ref_tree = treap_children(t);
    const auto ref_links = sorted_links(treap_edges(t));
    auto agree = [&](const RestructureResult& r, const std::string& name) {
        if (r.children == ref_tree && sorted_links(r.links) == ref_links && r.root == t.nodes[t.root].priority)
            return true;
        if (why) *why = name + " differs from the treap";
        return false;
    };
    if (!(t == treapify_reference(keys))) {
        if (why) *why = "treap constructions disagree";
        return false;
    }
    if (!agree(restructure_twopass(keys), "two-pass")) return false;
    if (!agree(restructure_nondet(keys, LocalMaxSelector::leftmost()), "nondet/leftmost")) return false;
    if (!agree(restructure_nondet(keys, LocalMaxSelector::rightmost()), "nondet/rightmost")) return false;
    for (std::size_t i = 0; i < random_selectors; ++i)
        if (!agree(restructure_nondet(keys, LocalMaxSelector::random(seed + i)), "nondet/random")) return false;
    return true;
}

}  // namespace dualheap
