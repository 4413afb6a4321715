#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "perm_core.hpp"

namespace dualheap {

// Static closed-rectangle point counts over a coordinate-compressed grid.
class RectCounter {
public:
    explicit RectCounter(const PointSet& Q) {
        for (const Point& p : Q) {
            xs_.push_back(p.x);
            ys_.push_back(p.y);
        }
        auto uniq = [](std::vector<int>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        uniq(xs_);
        uniq(ys_);
        w_ = xs_.size() + 1;
        pre_.assign(w_ * (ys_.size() + 1), 0);
        for (const Point& p : Q) ++at(index(xs_, p.x) + 1, index(ys_, p.y) + 1);
        for (std::size_t j = 1; j <= ys_.size(); ++j)
            for (std::size_t i = 1; i < w_; ++i)
                at(i, j) += at(i - 1, j) + at(i, j - 1) - at(i - 1, j - 1);
    }

    // points with x1 <= x <= x2 and y1 <= y <= y2; empty ranges count zero
    std::uint32_t count(int x1, int x2, int y1, int y2) const {
        if (x1 > x2 || y1 > y2) return 0;
        const std::size_t i0 = std::lower_bound(xs_.begin(), xs_.end(), x1) - xs_.begin();
        const std::size_t i1 = std::upper_bound(xs_.begin(), xs_.end(), x2) - xs_.begin();
        const std::size_t j0 = std::lower_bound(ys_.begin(), ys_.end(), y1) - ys_.begin();
        const std::size_t j1 = std::upper_bound(ys_.begin(), ys_.end(), y2) - ys_.begin();
        if (i0 >= i1 || j0 >= j1) return 0;
        return get(i1, j1) - get(i0, j1) - get(i1, j0) + get(i0, j0);
    }

    std::uint32_t count_rect(Point p, Point q) const {
        return count(std::min(p.x, q.x), std::max(p.x, q.x), std::min(p.y, q.y), std::max(p.y, q.y));
    }

private:
    static std::size_t index(const std::vector<int>& v, int c) {
        return std::lower_bound(v.begin(), v.end(), c) - v.begin();
    }
    std::uint32_t& at(std::size_t i, std::size_t j) { return pre_[j * w_ + i]; }
    std::uint32_t get(std::size_t i, std::size_t j) const { return pre_[j * w_ + i]; }

    std::vector<int> xs_, ys_;
    std::size_t w_ = 1;
    std::vector<std::uint32_t> pre_;
};

inline bool aligned(Point p, Point q) { return p.x == q.x || p.y == q.y; }

// Closed rectangle spanned by p and q, borders and corners included.
inline bool in_rect(Point r, Point p, Point q) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
}

inline bool pair_satisfied(Point p, Point q, const PointSet& Q) {
    if (aligned(p, q)) return true;
    for (const Point& r : Q)
        if (r != p && r != q && in_rect(r, p, q)) return true;
    return false;
}

inline std::optional<std::pair<Point, Point>> first_unsatisfied_pair(const PointSet& Q) {
    const RectCounter rc(Q);
    const std::vector<Point> pts(Q.begin(), Q.end());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (!aligned(pts[i], pts[j]) && rc.count_rect(pts[i], pts[j]) < 3)
                return std::pair{pts[i], pts[j]};
    return std::nullopt;
}

inline bool is_satisfied(const PointSet& Q) { return !first_unsatisfied_pair(Q).has_value(); }

// Row sweep: in row i, add <q.x, i> for every q below row i whose rectangle
// with some p in P_{y=i} is empty. Rectangles are judged against the points
// present before the row's additions, so the result does not depend on the
// order in which candidates are examined. Only the topmost point of each
// column can be such a q, and it is one iff its top is a strict record seen
// walking outward from p.
inline PointSet greedy_sweep(const PointSet& P) {
    PointSet Q = P;
    std::map<int, int> top;  // column -> highest y so far
    std::vector<int> rows;
    for (const Point& p : P)
        if (rows.empty() || rows.back() != p.y) rows.push_back(p.y);
    for (int y : rows) {
        const std::vector<Point> ps = P.row(y);
        std::vector<int> added;
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const int px = ps[k].x;
            const int right_stop = k + 1 < ps.size() ? ps[k + 1].x : std::numeric_limits<int>::max();
            const int left_stop = k > 0 ? ps[k - 1].x : std::numeric_limits<int>::min();
            auto own = top.find(px);
            const int own_top = own == top.end() ? std::numeric_limits<int>::min() : own->second;
            int best = own_top;
            for (auto it = top.upper_bound(px); it != top.end() && it->first < right_stop; ++it)
                if (it->second > best) {
                    added.push_back(it->first);
                    best = it->second;
                }
            best = own_top;
            for (auto it = std::make_reverse_iterator(top.lower_bound(px));
                 it != top.rend() && it->first > left_stop; ++it)
                if (it->second > best) {
                    added.push_back(it->first);
                    best = it->second;
                }
        }
        for (int x : added) {
            Q.insert({x, y});
            top[x] = y;
        }
        for (const Point& p : ps) top[p.x] = y;
    }
    return Q;
}

// For every column, the lowest point of Q is the lowest point of P.
inline bool is_insertion_compatible(const PointSet& P, const PointSet& Q) {
    if (!includes(Q, P)) throw std::invalid_argument("is_insertion_compatible: Q is not a superset of P");
    std::map<int, int> pmin, qmin;
    for (const Point& p : P)
        if (auto [it, fresh] = pmin.emplace(p.x, p.y); !fresh) it->second = std::min(it->second, p.y);
    for (const Point& q : Q)
        if (auto [it, fresh] = qmin.emplace(q.x, q.y); !fresh) it->second = std::min(it->second, q.y);
    for (const auto& [x, y] : qmin) {
        auto it = pmin.find(x);
        if (it == pmin.end() || it->second != y) return false;
    }
    return true;
}

// ---- base / box augmentation ----

enum class Augmentation { none, base, box };

inline PointSet base_points(int n) {
    PointSet b;
    for (int i = 1; i <= n; ++i) b.insert({i, 0});
    return b;
}

inline PointSet box_points(int n) {
    PointSet b = base_points(n);
    for (int i = 0; i <= n; ++i) {
        b.insert({0, i});
        b.insert({n + 1, i});
    }
    return b;
}

struct AugmentedSet {
    PointSet core;
    Augmentation augmentation = Augmentation::none;
    int n = 0;

    PointSet extra() const {
        switch (augmentation) {
        case Augmentation::base: return base_points(n);
        case Augmentation::box: return box_points(n);
        default: return {};
        }
    }

    PointSet host() const {
        PointSet h = core;
        for (const Point& p : extra())
            if (!h.insert(p)) throw std::invalid_argument("augmentation collides with a core point");
        return h;
    }
};

// Smallest n with P inside [n]x[n].
inline int extent(const PointSet& P) {
    int n = 0;
    for (const Point& p : P) n = std::max({n, p.x, p.y});
    return n;
}

// ---- ADD gadgets ----

struct AddGadget {
    enum class Orientation { e_left, e_right };  // side of e relative to the column of a

    Point a, b, c, d, e;
    Orientation orientation = Orientation::e_left;

    Point fill() const { return {b.x, a.y}; }

    friend bool operator==(const AddGadget&, const AddGadget&) = default;
    friend bool operator<(const AddGadget& l, const AddGadget& r) {
        return std::tie(l.a, l.b, l.c, l.d, l.e) < std::tie(r.a, r.b, r.c, r.d, r.e);
    }
};

// First violated condition of the definition, checked directly against the
// host set; empty when g is a gadget of host.
inline std::string gadget_defect(const PointSet& host, const AddGadget& g) {
    for (Point p : {g.a, g.b, g.c, g.d, g.e})
        if (!host.contains(p)) return "missing " + to_string(p);
    if (!(g.a.y > g.b.y && g.b.y > g.c.y && g.c.y == g.d.y && g.d.y == g.e.y)) return "row order";
    if (g.a.x != g.c.x || g.b.x != g.d.x) return "column alignment";
    const bool left = g.e.x < g.a.x && g.a.x < g.b.x;
    const bool right = g.e.x > g.a.x && g.a.x > g.b.x;
    if (!(left || right)) return "column order";
    if ((g.orientation == AddGadget::Orientation::e_left) != left) return "orientation flag";
    if (host.contains(g.fill())) return "fill present";
    const int lo = std::min(g.e.x, g.b.x), hi = std::max(g.e.x, g.b.x);
    if (host.any_in(lo + 1, hi - 1, g.e.y + 1, g.a.y - 1)) {
        for (int y = g.e.y + 1; y < g.a.y; ++y)
            for (const Point& p : host.row(y))
                if (lo < p.x && p.x < hi) return "interior holds " + to_string(p);
    }
    return {};
}

inline bool is_add_gadget(const PointSet& host, const AddGadget& g) { return gadget_defect(host, g).empty(); }

namespace detail {

// Gadgets of one orientation; dir = +1 puts b right of a and e left of a.
inline void collect_gadgets(const PointSet& host, const RectCounter& rc, const std::map<int, std::vector<int>>& cols,
                            const std::vector<int>& xs, int dir, std::vector<AddGadget>& out) {
    for (const Point& a : host) {
        const std::vector<int>& col = cols.at(a.x);
        auto ait = std::lower_bound(col.begin(), col.end(), a.y);
        if (ait == col.begin()) continue;
        const int cy = *std::prev(ait);
        if (a.y - cy < 2) continue;
        // first column beyond a.x holding a point strictly inside the band (cy, a.y)
        auto xit = std::lower_bound(xs.begin(), xs.end(), a.x);
        std::optional<int> bx;
        if (dir > 0) {
            for (auto it = std::next(xit); it != xs.end(); ++it)
                if (rc.count(*it, *it, cy + 1, a.y - 1)) { bx = *it; break; }
        } else {
            for (auto it = std::make_reverse_iterator(xit); it != xs.rend(); ++it)
                if (rc.count(*it, *it, cy + 1, a.y - 1)) { bx = *it; break; }
        }
        if (!bx || !host.contains({*bx, cy}) || host.contains({*bx, a.y})) continue;
        // valid e: points of row cy on the far side of a with no band point between e and a
        std::vector<Point> es;
        const std::vector<Point> row = host.row(cy);
        auto rit = std::lower_bound(row.begin(), row.end(), Point{a.x, cy});
        if (dir > 0) {
            for (auto it = std::make_reverse_iterator(rit); it != row.rend(); ++it) {
                if (rc.count(it->x + 1, a.x - 1, cy + 1, a.y - 1)) break;
                es.push_back(*it);
            }
        } else {
            for (auto it = std::next(rit); it != row.end(); ++it) {
                if (rc.count(a.x + 1, it->x - 1, cy + 1, a.y - 1)) break;
                es.push_back(*it);
            }
        }
        if (es.empty()) continue;
        const std::vector<int>& bcol = cols.at(*bx);
        for (auto it = std::upper_bound(bcol.begin(), bcol.end(), cy); it != bcol.end() && *it < a.y; ++it)
            for (const Point& e : es)
                out.push_back({a, {*bx, *it}, {a.x, cy}, {*bx, cy}, e,
                               dir > 0 ? AddGadget::Orientation::e_left : AddGadget::Orientation::e_right});
    }
}

}  // namespace detail

// All gadgets of the host set, both orientations, sorted.
inline std::vector<AddGadget> find_gadgets(const PointSet& host) {
    std::map<int, std::vector<int>> cols;
    for (const Point& p : host) cols[p.x].push_back(p.y);  // row-major iteration keeps these sorted
    std::vector<int> xs;
    for (const auto& kv : cols) xs.push_back(kv.first);
    const RectCounter rc(host);
    std::vector<AddGadget> out;
    detail::collect_gadgets(host, rc, cols, xs, +1, out);
    detail::collect_gadgets(host, rc, cols, xs, -1, out);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<AddGadget> find_gadgets(const AugmentedSet& Q) { return find_gadgets(Q.host()); }

class GadgetSelector {
public:
    enum class Policy { first, random, lowest_fill_row };

    static GadgetSelector first() { return GadgetSelector(Policy::first, 0); }
    static GadgetSelector random(std::uint64_t seed) { return GadgetSelector(Policy::random, seed); }
    static GadgetSelector lowest_fill_row() { return GadgetSelector(Policy::lowest_fill_row, 0); }

    std::size_t choose(const std::vector<AddGadget>& gs) {
        switch (policy_) {
        case Policy::random: return bounded_draw(rng_, gs.size());
        case Policy::lowest_fill_row: {
            std::size_t best = 0;
            for (std::size_t i = 1; i < gs.size(); ++i)
                if (gs[i].fill().y < gs[best].fill().y) best = i;
            return best;
        }
        default: return 0;
        }
    }

    Policy policy() const { return policy_; }

private:
    GadgetSelector(Policy p, std::uint64_t seed) : policy_(p), rng_(seed) {}
    Policy policy_;
    std::mt19937_64 rng_;
};

// Fill selector-chosen gadgets of P + box until none remain.
inline PointSet greedy_nondet(const PointSet& P, GadgetSelector selector) {
    const int n = extent(P);
    for (const Point& p : P)
        if (p.x < 1 || p.y < 1) throw std::invalid_argument("greedy_nondet: P must lie in [n]x[n]");
    const PointSet box = box_points(n);
    PointSet host = set_union(P, box);
    for (;;) {
        const auto gs = find_gadgets(host);
        if (gs.empty()) break;
        host.insert(gs[selector.choose(gs)].fill());
    }
    return set_difference(host, box);
}

}  // namespace dualheap
