#pragma once

#include <algorithm>
#include <iterator>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "geometry.hpp"
#include "perm_core.hpp"

namespace dualheap {

struct BstExecution {
    std::vector<std::vector<int>> touched;    // touched[i - 1] = keys touched at time i, sorted
    std::vector<std::vector<int>> snapshots;  // parent arrays after each time, 0 = root/absent
    std::vector<int> inorder;                 // final tree
    std::size_t cost = 0;
};

class ReplayError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Binary search tree over keys 1..n; 0 means no node.
struct KeyTree {
    explicit KeyTree(int n) : left(n + 1, 0), right(n + 1, 0), parent(n + 1, 0), in(n + 1, 0) {}
    std::vector<int> left, right, parent;
    std::vector<char> in;
    int root = 0;

    std::vector<int> inorder() const {
        std::vector<int> out, stack;
        for (int v = root; v || !stack.empty();) {
            while (v) {
                stack.push_back(v);
                v = left[v];
            }
            v = stack.back();
            stack.pop_back();
            out.push_back(v);
            v = right[v];
        }
        return out;
    }
};

}  // namespace detail

// Offline insert-mode BST run whose touched keys at time i are exactly row i
// of Q. Keys are kept as a treap with priority (next touch time, key); the
// touched top of the tree is rebuilt after every time step. With audit on,
// heap order and search order are checked over the whole tree each step.
inline BstExecution replay_insert_mode(const PointSet& Q, bool audit = true, bool snapshots = false) {
    // P = lowest point of each column
    std::map<int, int> low;
    for (const Point& q : Q)
        if (auto [it, fresh] = low.emplace(q.x, q.y); !fresh) it->second = std::min(it->second, q.y);
    PointSet P;
    for (const auto& [x, y] : low) P.insert({x, y});
    if (!P.is_permutation()) throw ReplayError("replay: column minima do not form a permutation point set");
    if (!is_insertion_compatible(P, Q)) throw ReplayError("replay: Q is not insertion-compatible");
    if (!Q.empty() && std::prev(Q.end())->y > static_cast<int>(P.size()))
        throw ReplayError("replay: Q has rows beyond the last insertion");
    if (auto bad = first_unsatisfied_pair(Q))
        throw ReplayError("replay: Q is not satisfied at " + to_string(bad->first) + " " + to_string(bad->second));

    const int n = static_cast<int>(P.size());
    const int never = std::numeric_limits<int>::max();
    std::vector<std::vector<int>> touch_times(n + 1);
    for (const Point& q : Q) touch_times[q.x].push_back(q.y);  // row-major, so sorted
    std::vector<std::size_t> cursor(n + 1, 0);
    auto next_touch = [&](int k) {
        return cursor[k] < touch_times[k].size() ? touch_times[k][cursor[k]] : never;
    };
    auto prio_less = [&](int a, int b) { return std::make_pair(next_touch(a), a) < std::make_pair(next_touch(b), b); };

    detail::KeyTree T(n);
    BstExecution ex;
    for (int t = 1; t <= n; ++t) {
        std::vector<int> K;
        for (const Point& q : Q.row(t)) K.push_back(q.x);
        const int xnew = P.row(t).front().x;
        std::vector<char> touched(n + 1, 0);
        for (int k : K) touched[k] = 1;

        for (int k : K)
            if (k != xnew && !T.in[k]) throw ReplayError("replay: key " + std::to_string(k) + " touched before insertion");
        if (T.root && !touched[T.root]) throw ReplayError("replay: root not touched at time " + std::to_string(t));
        for (int k : K)
            if (k != xnew && T.parent[k] && !touched[T.parent[k]])
                throw ReplayError("replay: touched set not connected at time " + std::to_string(t));
        // predecessor and successor among inserted keys
        int pred = 0, succ = 0;
        for (int v = T.root; v;) {
            if (v < xnew) {
                pred = v;
                v = T.right[v];
            } else {
                succ = v;
                v = T.left[v];
            }
        }
        if ((pred && !touched[pred]) || (succ && !touched[succ]))
            throw ReplayError("replay: neighbor of inserted key untouched at time " + std::to_string(t));

        // hanging subtrees, indexed by the gap between consecutive touched keys
        std::map<int, int> hang;  // gap index -> subtree root
        auto gap_of = [&](int key) { return static_cast<int>(std::lower_bound(K.begin(), K.end(), key) - K.begin()); };
        for (int k : K) {
            if (k == xnew) continue;
            for (int c : {T.left[k], T.right[k]})
                if (c && !touched[c]) {
                    if (!hang.emplace(gap_of(c), c).second) throw std::logic_error("replay: two subtrees in one gap");
                }
        }

        for (int k : K) ++cursor[k];
        T.in[xnew] = 1;
        // stack construction of the touched treap; children slots of touched
        // nodes are cleared first
        for (int k : K) T.left[k] = T.right[k] = T.parent[k] = 0;
        std::vector<int> spine;
        for (int k : K) {
            int last = 0;
            while (!spine.empty() && prio_less(k, spine.back())) {
                last = spine.back();
                spine.pop_back();
            }
            T.left[k] = last;
            if (last) T.parent[last] = k;
            if (!spine.empty()) {
                T.right[spine.back()] = k;
                T.parent[k] = spine.back();
            }
            spine.push_back(k);
        }
        T.root = spine.front();
        // gap g lies between K[g-1] and K[g]; the empty slot is on the deeper one
        for (const auto& [g, h] : hang) {
            int at = 0;
            bool as_left = false;
            if (g == 0) {
                at = K.front();
                while (T.left[at]) at = T.left[at];
                as_left = true;
            } else if (g == static_cast<int>(K.size())) {
                at = K.back();
                while (T.right[at]) at = T.right[at];
            } else if (!T.right[K[g - 1]]) {
                at = K[g - 1];
            } else {
                at = K[g];
                as_left = true;
            }
            (as_left ? T.left[at] : T.right[at]) = h;
            T.parent[h] = at;
        }

        if (audit) {
            const std::vector<int> ord = T.inorder();
            if (!std::is_sorted(ord.begin(), ord.end()) || static_cast<int>(ord.size()) != std::count(T.in.begin(), T.in.end(), 1))
                throw ReplayError("replay: search order broken at time " + std::to_string(t));
            for (int v = 1; v <= n; ++v)
                if (T.in[v] && T.parent[v] && next_touch(T.parent[v]) > next_touch(v))
                    throw ReplayError("replay: heap order broken at time " + std::to_string(t));
        }
        ex.cost += K.size();
        ex.touched.push_back(std::move(K));
        if (snapshots) ex.snapshots.push_back(T.parent);
    }
    ex.inorder = T.inorder();
    return ex;
}

// Replay with the input point set given explicitly.
inline BstExecution replay_insert_mode(const PointSet& P, const PointSet& Q, bool audit = true, bool snapshots = false) {
    if (!P.is_permutation()) throw ReplayError("replay: P is not a permutation point set");
    if (!includes(Q, P)) throw ReplayError("replay: Q does not contain P");
    if (!is_insertion_compatible(P, Q)) throw ReplayError("replay: Q is not insertion-compatible with P");
    return replay_insert_mode(Q, audit, snapshots);
}

// Greedy's offline BST form: the replay of greedy_sweep(P^X).
inline BstExecution greedy_future(const Permutation& X, bool audit = true) {
    return replay_insert_mode(greedy_sweep(point_set_of(X)), audit);
}

// Touched rows of ex match the rows of Q exactly.
inline bool touches_match(const BstExecution& ex, const PointSet& Q) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < ex.touched.size(); ++i) {
        std::vector<int> row;
        for (const Point& q : Q.row(static_cast<int>(i + 1))) row.push_back(q.x);
        if (row != ex.touched[i]) return false;
        total += row.size();
    }
    return total == Q.size() && ex.cost == Q.size();
}

inline std::string format_execution(const BstExecution& ex) {
    std::string out;
    for (std::size_t i = 0; i < ex.touched.size(); ++i) {
        out += std::to_string(i + 1) + ":";
        for (int k : ex.touched[i]) out += " " + std::to_string(k);
        out += "\n";
    }
    out += "cost: " + std::to_string(ex.cost) + "\n";
    return out;
}

inline BstExecution parse_execution(std::string_view text) {
    BstExecution ex;
    std::istringstream in{std::string(text)};
    std::string line;
    bool footer = false;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos || footer) throw std::invalid_argument("bad execution line: " + line);
        const std::string head = line.substr(0, colon);
        std::istringstream rest(line.substr(colon + 1));
        if (head == "cost") {
            if (!(rest >> ex.cost)) throw std::invalid_argument("bad cost line: " + line);
            footer = true;
            continue;
        }
        if (head != std::to_string(ex.touched.size() + 1)) throw std::invalid_argument("bad time index: " + line);
        std::vector<int> keys;
        for (int k; rest >> k;) keys.push_back(k);
        ex.touched.push_back(std::move(keys));
    }
    if (!footer) throw std::invalid_argument("execution without cost footer");
    return ex;
}

}  // namespace dualheap
