#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "perm_core.hpp"
#include "stable_heap.hpp"

namespace dualheap {

// Tree on P + <0,0> for a permutation point set P. Node r is the point of
// row r; node 0 is the origin.
class MonotoneTree {
public:
    static MonotoneTree star(const PointSet& P) {
        MonotoneTree t(P);
        for (int r = 1; r <= t.n_; ++r) t.parent_[r] = 0;
        t.children_[0].resize(t.n_);
        for (int r = 1; r <= t.n_; ++r) t.children_[0][t.x_[r] - 1] = r;
        return t;
    }

    static MonotoneTree path(const PointSet& P) {
        MonotoneTree t(P);
        for (int r = 1; r <= t.n_; ++r) {
            t.parent_[r] = r - 1;
            t.children_[r - 1] = {r};
        }
        return t;
    }

    int n() const noexcept { return n_; }
    Point point(int v) const { return {x_.at(v), v}; }
    int parent(int v) const { return parent_.at(v); }
    const std::vector<int>& children(int v) const { return children_.at(v); }

    int node_of(Point p) const {
        if (p.y < 0 || p.y > n_ || x_[p.y] != p.x) throw std::invalid_argument("not a tree node: " + to_string(p));
        return p.y;
    }

    // Links neighboring siblings a and b; the one with larger y moves under
    // the other, leftmost if it was on the left. Returns the moved node.
    int link(int a, int b) {
        if (a == b || a <= 0 || b <= 0 || parent_.at(a) != parent_.at(b))
            throw std::invalid_argument("geo_link: not siblings");
        auto& sib = children_[parent_[a]];
        const auto ia = std::find(sib.begin(), sib.end(), a) - sib.begin();
        const auto ib = std::find(sib.begin(), sib.end(), b) - sib.begin();
        if (std::abs(ia - ib) != 1) throw std::invalid_argument("geo_link: not neighboring siblings");
        const int child = a > b ? a : b, par = a > b ? b : a;
        sib.erase(sib.begin() + (child == a ? ia : ib));
        auto& dst = children_[par];
        if (x_[child] < x_[par]) {
            if (!dst.empty() && x_[dst.front()] < x_[child]) throw std::logic_error("geo_link: x-order broken");
            dst.insert(dst.begin(), child);
        } else {
            if (!dst.empty() && x_[dst.back()] > x_[child]) throw std::logic_error("geo_link: x-order broken");
            dst.push_back(child);
        }
        parent_[child] = par;
        return child;
    }

    void link(Point a, Point b) { link(node_of(a), node_of(b)); }

    bool is_path() const {
        for (int r = 1; r <= n_; ++r)
            if (parent_[r] != r - 1) return false;
        return true;
    }

    // Total y-length of all edges; every link strictly decreases it.
    std::uint64_t edge_y_span() const {
        std::uint64_t s = 0;
        for (int r = 1; r <= n_; ++r) s += r - parent_[r];
        return s;
    }

    // Monotone edges, x-ordered siblings, and the nesting property
    // prev(parent(q)).x < q.x < next(parent(q)).x.
    bool check_invariants(std::string* why = nullptr) const {
        auto fail = [&](const std::string& m) {
            if (why) *why = m;
            return false;
        };
        for (int v = 0; v <= n_; ++v) {
            const auto& ch = children_[v];
            for (std::size_t i = 0; i < ch.size(); ++i) {
                if (parent_[ch[i]] != v) return fail("child list and parent disagree");
                if (ch[i] <= v) return fail("edge not monotone in y");
                if (i && x_[ch[i - 1]] >= x_[ch[i]]) return fail("siblings not ordered by x");
            }
        }
        for (int q = 1; q <= n_; ++q) {
            const int u = parent_[q];
            if (u == 0) continue;
            const auto& sib = children_[parent_[u]];
            const auto i = std::find(sib.begin(), sib.end(), u) - sib.begin();
            const int lo = i > 0 ? x_[sib[i - 1]] : std::numeric_limits<int>::min();
            const int hi = i + 1 < static_cast<long>(sib.size()) ? x_[sib[i + 1]] : std::numeric_limits<int>::max();
            if (!(lo < x_[q] && x_[q] < hi)) return fail("nesting violated at " + to_string(point(q)));
        }
        return true;
    }

    const std::vector<int>& parents() const noexcept { return parent_; }

    friend bool operator==(const MonotoneTree& a, const MonotoneTree& b) {
        return a.x_ == b.x_ && a.parent_ == b.parent_ && a.children_ == b.children_;
    }

private:
    explicit MonotoneTree(const PointSet& P) {
        if (!P.is_permutation()) throw std::invalid_argument("MonotoneTree: not a permutation point set");
        n_ = static_cast<int>(P.size());
        x_.assign(n_ + 1, 0);
        for (const Point& p : P) x_[p.y] = p.x;
        parent_.assign(n_ + 1, -1);
        children_.assign(n_ + 1, {});
    }

    int n_ = 0;
    std::vector<int> x_;  // x_[r] = x of row r, x_[0] = 0
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
};

struct GeoLink {
    Point child;
    Point parent;
    friend bool operator==(const GeoLink&, const GeoLink&) = default;
};

using GeoLinkTrace = std::vector<GeoLink>;

inline std::string format_geo_trace(const GeoLinkTrace& t) {
    std::string out;
    for (const auto& l : t)
        out += std::to_string(l.child.x) + "," + std::to_string(l.child.y) + ";" + std::to_string(l.parent.x) + "," +
               std::to_string(l.parent.y) + "\n";
    return out;
}

inline GeoLinkTrace parse_geo_trace(std::string_view text) {
    GeoLinkTrace t;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        GeoLink l;
        char c1 = 0, c2 = 0, c3 = 0;
        std::istringstream ls(line);
        if (!(ls >> l.child.x >> c1 >> l.child.y >> c2 >> l.parent.x >> c3 >> l.parent.y) || c1 != ',' ||
            c2 != ';' || c3 != ',')
            throw std::invalid_argument("bad geo trace line: " + line);
        t.push_back(l);
    }
    return t;
}

// Heap key x_i is the point <i, x_i> of P^{X'}.
inline GeoLinkTrace heap_to_geo(const Permutation& X, const LinkTrace<int>& trace) {
    const Permutation pos = inverse(X);
    auto pt = [&](int key) {
        if (key < 1 || static_cast<std::size_t>(key) > X.size()) throw std::invalid_argument("heap_to_geo: bad key");
        return Point{pos[key - 1], key};
    };
    GeoLinkTrace out;
    for (const auto& e : trace) out.push_back({pt(e.child), pt(e.parent)});
    return out;
}

inline LinkTrace<int> geo_to_heap(const PointSet& P, const GeoLinkTrace& g) {
    LinkTrace<int> out;
    for (const auto& l : g) {
        if (!P.contains(l.child) || !P.contains(l.parent)) throw std::invalid_argument("geo_to_heap: point not in P");
        out.push_back({l.child.y, l.parent.y, l.child.x < l.parent.x ? Side::leftmost : Side::rightmost});
    }
    return out;
}

// Applies a geometric schedule to star(P); each event must name the moved
// node as child. Throws on an illegal event.
inline MonotoneTree replay_geo(const PointSet& P, const GeoLinkTrace& g, bool audit = false) {
    MonotoneTree t = MonotoneTree::star(P);
    for (const auto& l : g) {
        const std::uint64_t before = t.edge_y_span();
        const int moved = t.link(t.node_of(l.child), t.node_of(l.parent));
        if (moved != l.child.y) throw std::invalid_argument("replay_geo: event child has smaller y");
        if (audit) {
            std::string why;
            if (!t.check_invariants(&why)) throw std::logic_error("replay_geo: " + why);
            if (t.edge_y_span() >= before) throw std::logic_error("replay_geo: y-span did not decrease");
        }
    }
    return t;
}

// Replays a link trace on a sorting-mode heap over X: links must join
// top-level neighbors as recorded; extract-min happens whenever one root is
// left. Returns the extraction order. Throws on an illegal event.
inline std::vector<int> replay_heap(const Permutation& X, const LinkTrace<int>& trace) {
    HeapForest<int> H;
    for (int v : X) H.insert(v);
    std::vector<int> out;
    for (const auto& e : trace) {
        while (H.top_count() == 1) out.push_back(H.remove_root());
        const auto c = H.find(e.child), p = H.find(e.parent);
        if (c == H.none || p == H.none || H.parent(c) != H.none || H.parent(p) != H.none)
            throw std::invalid_argument("replay_heap: event not at the top level");
        if (e.side == Side::leftmost) {
            if (H.next(c) != p) throw std::invalid_argument("replay_heap: not neighbors");
            H.link(c);
        } else {
            if (H.next(p) != c) throw std::invalid_argument("replay_heap: not neighbors");
            H.link(p);
        }
        if (!(H.trace().back() == e)) throw std::invalid_argument("replay_heap: link outcome differs");
    }
    while (!H.empty()) {
        if (H.top_count() != 1) throw std::invalid_argument("replay_heap: trace ends before the heap is sorted");
        out.push_back(H.remove_root());
    }
    return out;
}

// Minimum number of links from star(P) to path(P), by breadth-first search
// over parent arrays (sibling order is forced by x). n <= 8.
inline std::size_t brute_force_opt_stable(const PointSet& P, std::size_t budget = 1u << 22) {
    const int n = static_cast<int>(P.size());
    if (n > 8) throw std::invalid_argument("brute_force_opt_stable: n > 8");
    (void)MonotoneTree::star(P);
    std::vector<int> x(n + 1, 0);
    for (const Point& p : P) x[p.y] = p.x;
    auto encode = [&](const std::vector<int>& par) {
        std::uint64_t c = 0;
        for (int r = n; r >= 1; --r) c = c << 4 | static_cast<std::uint64_t>(par[r]);
        return c;
    };
    std::uint64_t goal = 0;
    {
        std::vector<int> par(n + 1, 0);
        for (int r = 1; r <= n; ++r) par[r] = r - 1;
        goal = encode(par);
    }
    std::unordered_set<std::uint64_t> seen{0};
    std::deque<std::uint64_t> frontier{0};
    std::vector<int> par(n + 1);
    std::vector<std::vector<int>> ch(n + 1);
    for (std::size_t depth = 0; !frontier.empty(); ++depth) {
        std::deque<std::uint64_t> next;
        for (std::uint64_t s : frontier) {
            if (s == goal) return depth;
            for (int r = 1; r <= n; ++r) par[r] = static_cast<int>(s >> (4 * (r - 1)) & 15);
            for (auto& c : ch) c.clear();
            for (int r = 1; r <= n; ++r) ch[par[r]].push_back(r);
            for (auto& c : ch) std::sort(c.begin(), c.end(), [&](int a, int b) { return x[a] < x[b]; });
            for (int v = 0; v <= n; ++v)
                for (std::size_t i = 0; i + 1 < ch[v].size(); ++i) {
                    const int a = ch[v][i], b = ch[v][i + 1];
                    const int mover = std::max(a, b), stay = std::min(a, b);
                    const std::uint64_t t = (s & ~(std::uint64_t{15} << (4 * (mover - 1)))) |
                                            static_cast<std::uint64_t>(stay) << (4 * (mover - 1));
                    if (seen.insert(t).second) {
                        if (seen.size() > budget) throw std::runtime_error("brute_force_opt_stable: budget exceeded");
                        next.push_back(t);
                    }
                }
        }
        frontier.swap(next);
    }
    throw std::logic_error("brute_force_opt_stable: path unreachable");
}

}  // namespace dualheap
