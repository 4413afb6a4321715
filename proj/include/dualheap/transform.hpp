#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"
#include "smooth.hpp"
#include "star_path.hpp"

namespace dualheap {

struct Interval {
    int min = 0;
    int max = 0;
    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class TransformMode { general, smooth };
enum class CheckLevel { off, boundary, every_step };

inline CheckLevel parse_check_level(std::string_view s) {
    if (s == "off") return CheckLevel::off;
    if (s == "boundary") return CheckLevel::boundary;
    if (s == "every-step") return CheckLevel::every_step;
    throw std::invalid_argument("unknown check level: " + std::string(s));
}

class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Tree, point set (augmentation included) and interval function of a run.
struct TransformState {
    enum class Phase { idle, general, two_neighbor, one_neighbor };

    TransformState(TransformMode m, const PointSet& P)
        : mode(m), n(static_cast<int>(P.size())), tree(MonotoneTree::star(P)), q(P), I(P.size() + 1) {
        const PointSet aug = augmentation();
        for (const Point& p : aug) q.insert(p);
        if (mode == TransformMode::general) I[0] = {std::min(1, n), n};
        else I[0] = {0, n + 1};
        for (int r = 1; r <= n; ++r) I[r] = {tree.point(r).x, tree.point(r).x};
    }

    PointSet augmentation() const { return mode == TransformMode::general ? base_points(n) : box_points(n); }

    bool in_augmentation(Point p) const {
        if (p.y == 0) return mode == TransformMode::smooth || (1 <= p.x && p.x <= n);
        return mode == TransformMode::smooth && (p.x == 0 || p.x == n + 1);
    }

    Point endpoint_min(int v, int row) const { return {I[v].min, row}; }
    Point endpoint_max(int v, int row) const { return {I[v].max, row}; }

    TransformMode mode;
    int n;
    MonotoneTree tree;
    PointSet q;
    std::vector<Interval> I;
    std::size_t round = 0;
    Phase phase = Phase::idle;
    bool alt_used = false;
    std::vector<AddGadget> pending;  // witness recipes for the step in progress
};

// ---- invariant checkers ----

namespace detail {

inline bool report(std::string* why, const std::string& m) {
    if (why) *why = m;
    return false;
}

inline std::vector<std::vector<int>> rows_of(const TransformState& s) {
    std::vector<std::vector<int>> rows(s.n + 1);
    for (const Point& p : s.q)
        if (p.y >= 0 && p.y <= s.n) rows[p.y].push_back(p.x);
    return rows;
}

}  // namespace detail

// Child intervals nest in the parent's and are pairwise disjoint (as open
// intervals, in sibling order).
inline bool check_inv1(const TransformState& s, std::string* why = nullptr) {
    for (int v = 0; v <= s.n; ++v) {
        if (s.I[v].min > s.I[v].max) return detail::report(why, "inv1: reversed interval");
        const auto& ch = s.tree.children(v);
        for (std::size_t j = 0; j < ch.size(); ++j) {
            const Interval c = s.I[ch[j]];
            if (c.min < s.I[v].min || c.max > s.I[v].max)
                return detail::report(why, "inv1: child interval escapes parent at row " + std::to_string(ch[j]));
            if (j && s.I[ch[j - 1]].max > c.min)
                return detail::report(why, "inv1: sibling intervals overlap at row " + std::to_string(ch[j]));
        }
    }
    return true;
}

// Every rectangle between a row of a node and a row of one of its ancestors
// is satisfied. Against a fixed q only the nearest point on each side of
// q.x in the ancestor row can fail; farther ones contain it.
inline bool check_inv2(const TransformState& s, std::string* why = nullptr) {
    const RectCounter rc(s.q);
    const auto rows = detail::rows_of(s);
    std::map<int, int> last_in_col;  // column -> highest row below v seen so far
    for (int qx : rows[0]) last_in_col[qx] = 0;
    for (int v = 1; v <= s.n; ++v) {
        for (int qx : rows[v]) {
            // a point of column qx in row w covers every ancestor row below w
            auto cit = last_in_col.find(qx);
            const int w = cit == last_in_col.end() ? std::numeric_limits<int>::min() : cit->second;
            for (int u = s.tree.parent(v); u >= 0 && u > w; u = s.tree.parent(u)) {
                const auto& r = rows[u];
                auto it = std::lower_bound(r.begin(), r.end(), qx);
                if (it != r.end() && *it == qx) continue;
                const Point q{qx, v};
                if (it != r.end() && rc.count_rect(Point{*it, u}, q) < 3)
                    return detail::report(why, "inv2: empty rectangle " + to_string(Point{*it, u}) + " " + to_string(q));
                if (it != r.begin() && rc.count_rect(Point{*std::prev(it), u}, q) < 3)
                    return detail::report(why, "inv2: empty rectangle " + to_string(Point{*std::prev(it), u}) + " " +
                                                   to_string(q));
            }
        }
        for (int qx : rows[v]) last_in_col[qx] = v;
    }
    return true;
}

// No point of Q in column v.x strictly between the rows of v and its parent.
inline bool check_inv3(const TransformState& s, std::string* why = nullptr) {
    const RectCounter rc(s.q);
    for (int v = 1; v <= s.n; ++v) {
        const int u = s.tree.parent(v);
        const int x = s.tree.point(v).x;
        if (rc.count(x, x, u + 1, v - 1))
            return detail::report(why, "inv3: point between row " + std::to_string(v) + " and its parent");
    }
    return true;
}

// No non-augmentation point below the node of its column.
inline bool check_inv3prime(const TransformState& s, std::string* why = nullptr) {
    std::vector<int> node_row(s.n + 2, 0);
    for (int v = 1; v <= s.n; ++v) node_row[s.tree.point(v).x] = v;
    for (const Point& p : s.q) {
        if (s.in_augmentation(p) || p.x < 1 || p.x > s.n) continue;
        if (p.y < node_row[p.x]) return detail::report(why, "inv3': point below its column's node " + to_string(p));
    }
    return true;
}

// Interval endpoints exist in the node's row and in its parent's row.
inline bool check_inv4(const TransformState& s, std::string* why = nullptr) {
    for (int v = 1; v <= s.n; ++v) {
        const int u = s.tree.parent(v);
        for (Point p : {s.endpoint_min(v, v), s.endpoint_max(v, v), s.endpoint_min(v, u), s.endpoint_max(v, u)})
            if (!s.q.contains(p)) return detail::report(why, "inv4: missing endpoint " + to_string(p));
    }
    return true;
}

// Each interval covers the x-span of the non-augmentation points of its row.
inline bool check_inv5(const TransformState& s, std::string* why = nullptr) {
    for (const Point& p : s.q) {
        if (s.in_augmentation(p) || p.y < 0 || p.y > s.n) continue;
        if (p.x < s.I[p.y].min || p.x > s.I[p.y].max)
            return detail::report(why, "inv5: point outside its row's interval " + to_string(p));
    }
    return true;
}

// General mode: intervals equal the leftmost and rightmost points of each row.
inline bool check_closed_form(const TransformState& s, std::string* why = nullptr) {
    const auto rows = detail::rows_of(s);
    for (int v = 0; v <= s.n; ++v)
        if (!rows[v].empty() && s.I[v] != Interval{rows[v].front(), rows[v].back()})
            return detail::report(why, "interval of row " + std::to_string(v) + " differs from its closed form");
    return true;
}

inline bool check_invariants(const TransformState& s, std::string* why = nullptr) {
    if (s.mode == TransformMode::general)
        return check_inv1(s, why) && check_inv2(s, why) && (s.alt_used || check_inv3(s, why)) &&
               check_inv4(s, why) && check_closed_form(s, why);
    return check_inv1(s, why) && check_inv2(s, why) && check_inv3prime(s, why) && check_inv4(s, why) &&
           check_inv5(s, why);
}

inline void enforce_invariants(const TransformState& s) {
    std::string why;
    if (!check_invariants(s, &why)) throw InvariantViolation(why);
}

// Witness for a point about to be added: the recipe gadget of the current
// step whose fill is new_point, validated against the pre-addition Q.
inline AddGadget gadget_audit(const TransformState& s, Point new_point) {
    if (s.q.contains(new_point)) throw std::invalid_argument("gadget_audit: " + to_string(new_point) + " not newly added");
    std::string defect = "no recipe";
    for (const AddGadget& g : s.pending)
        if (g.fill() == new_point) {
            defect = gadget_defect(s.q, g);
            if (defect.empty()) return g;
        }
    throw InvariantViolation("gadget_audit: no witness gadget for " + to_string(new_point) + " (" + defect + ")");
}

// ---- general transformation ----

struct GeneralStepReport {
    std::size_t added = 0;
    bool far_point_new = true;  // the endpoint away from a; always new in standard mode
};

// Moves b under a (neighboring siblings, a.y < b.y) and adds the endpoints of
// I(b) in a's row. The alternative step instead adds the near endpoint of
// I(a) in b's row and the far endpoint of I(b) in a's row.
inline GeneralStepReport general_step(TransformState& s, GeoLink link, bool alt) {
    if (s.mode != TransformMode::general) throw std::logic_error("general_step: state is not in general mode");
    const int a = s.tree.node_of(link.parent), b = s.tree.node_of(link.child);
    const Interval Ia = s.I[a], Ib = s.I[b];
    const bool right = link.parent.x < link.child.x;
    const Point far{right ? Ib.max : Ib.min, a};
    std::vector<Point> pts;
    if (!alt) pts = {{right ? Ib.min : Ib.max, a}, far};
    else pts = {{right ? Ia.max : Ia.min, b}, far};
    if (s.tree.parent(a) != s.tree.parent(b) || b < a) throw std::invalid_argument("general_step: illegal link");
    s.tree.link(a, b);
    s.phase = TransformState::Phase::general;
    s.alt_used = s.alt_used || alt;
    GeneralStepReport rep;
    rep.far_point_new = !s.q.contains(far);
    for (Point p : pts) rep.added += s.q.insert(p);
    for (int row : {a, b}) {
        const auto r = s.q.row(row);
        s.I[row] = {r.front().x, r.back().x};
    }
    return rep;
}

struct GeneralResult {
    PointSet q;  // base included
    std::size_t links = 0;
    std::vector<GeneralStepReport> steps;
};

inline GeneralResult general_transform(const PointSet& P, const GeoLinkTrace& gtrace,
                                       const std::function<bool(std::size_t)>& alt_policy = {},
                                       CheckLevel check = CheckLevel::boundary) {
    TransformState s(TransformMode::general, P);
    if (check != CheckLevel::off) enforce_invariants(s);
    GeneralResult res;
    for (std::size_t k = 0; k < gtrace.size(); ++k) {
        res.steps.push_back(general_step(s, gtrace[k], alt_policy && alt_policy(k)));
        if (check == CheckLevel::every_step) enforce_invariants(s);
    }
    if (!s.tree.is_path()) throw std::invalid_argument("general_transform: schedule does not end in path(P)");
    if (check == CheckLevel::boundary) enforce_invariants(s);
    res.q = std::move(s.q);
    res.links = gtrace.size();
    return res;
}

// ---- smooth transformation ----

struct JournalEntry {
    Point point;
    TransformState::Phase phase;
    AddGadget witness;
};

struct SmoothResult {
    PointSet q;  // box included
    GeoLinkTrace links;
    std::size_t two_links = 0, two_points = 0, one_links = 0, one_points = 0;
    std::vector<std::size_t> two_step_points;
    bool third_point_always_new = true;
    std::size_t claim_violations = 0;  // I(a).max >= I(c).min before a two-neighbor link
    std::vector<JournalEntry> journal;
};

struct SmoothOptions {
    CheckLevel check = CheckLevel::boundary;
    bool audit_gadgets = true;
    bool journal = false;
};

namespace detail {

// A copy of g with e moved to the nearest point of row `row` beyond g.a.
inline void add_row_fallbacks(TransformState& s, AddGadget g, int row) {
    const bool left = g.orientation == AddGadget::Orientation::e_left;
    const std::vector<Point> pts = s.q.row(row);
    const Point* best = nullptr;
    for (const Point& p : pts)
        if (left ? p.x < g.a.x : p.x > g.a.x)
            if (!best || (left ? p.x > best->x : p.x < best->x)) best = &p;
    if (best && !(*best == g.e)) {
        g.e = *best;
        s.pending.push_back(g);
    }
}

inline std::size_t add_audited(TransformState& s, const std::vector<Point>& pts, const SmoothOptions& opt,
                               SmoothResult& res) {
    std::size_t added = 0;
    for (Point p : pts) {
        if (s.q.contains(p)) continue;
        if (opt.audit_gadgets) {
            AddGadget g = gadget_audit(s, p);
            if (opt.journal) res.journal.push_back({p, s.phase, g});
        }
        s.q.insert(p);
        ++added;
    }
    return added;
}

}  // namespace detail

// Runs the smooth heap's star-path execution on P, linking two-neighbor
// local maxima first in every round, and grows Q from P + box alongside.
inline SmoothResult smooth_transform(const PointSet& P, SmoothOptions opt = {},
                                     LocalMaxSelector selector = LocalMaxSelector::leftmost()) {
    using Phase = TransformState::Phase;
    TransformState s(TransformMode::smooth, P);
    SmoothResult res;
    const int n = s.n;
    auto& T = s.tree;
    auto y = [](int v) { return v; };
    auto uproj = [](int x, int row) { return Point{x, row}; };
    if (opt.check != CheckLevel::off) enforce_invariants(s);

    for (int r = 1; r <= n; ++r) {
        s.round = static_cast<std::size_t>(r);
        const int u = r - 1;
        s.phase = Phase::two_neighbor;
        for (;;) {
            const auto& ch = T.children(u);
            std::vector<std::size_t> cand;
            for (std::size_t j = 1; j + 1 < ch.size(); ++j)
                if (y(ch[j]) > y(ch[j - 1]) && y(ch[j]) > y(ch[j + 1])) cand.push_back(j);
            if (cand.empty()) break;
            const std::size_t j = cand[selector.choose(cand.size())];
            const int A = ch[j - 1], b = ch[j], C = ch[j + 1];
            const Interval IA = s.I[A], Ib = s.I[b], IC = s.I[C];
            if (!(IA.max < IC.min)) ++res.claim_violations;
            const Point bmin{Ib.min, y(b)}, bmax{Ib.max, y(b)}, Amax{IA.max, y(A)}, Cmin{IC.min, y(C)};
            std::vector<Point> pts;
            if (y(A) > y(C)) {
                pts = {{IA.max, y(b)}, {IC.min, y(b)}, {IC.min, y(A)}};
                s.pending = {
                    {bmin, Amax, uproj(bmin.x, u), uproj(Amax.x, u), uproj(Cmin.x, u), AddGadget::Orientation::e_right},
                    {bmax, Cmin, uproj(bmax.x, u), uproj(Cmin.x, u), uproj(Amax.x, u), AddGadget::Orientation::e_left},
                    {Amax, Cmin, uproj(Amax.x, u), uproj(Cmin.x, u), s.endpoint_min(A, u), AddGadget::Orientation::e_left}};
                detail::add_row_fallbacks(s, s.pending.back(), u);
                T.link(b, A);
                s.I[A] = {IA.min, IC.min};
            } else {
                pts = {{IC.min, y(b)}, {IA.max, y(b)}, {IA.max, y(C)}};
                s.pending = {
                    {bmax, Cmin, uproj(bmax.x, u), uproj(Cmin.x, u), uproj(Amax.x, u), AddGadget::Orientation::e_left},
                    {bmin, Amax, uproj(bmin.x, u), uproj(Amax.x, u), uproj(Cmin.x, u), AddGadget::Orientation::e_right},
                    {Cmin, Amax, uproj(Cmin.x, u), uproj(Amax.x, u), s.endpoint_max(C, u), AddGadget::Orientation::e_right}};
                detail::add_row_fallbacks(s, s.pending.back(), u);
                T.link(b, C);
                s.I[C] = {IA.max, IC.max};
            }
            s.I[b] = {IA.max, IC.min};
            res.links.push_back({T.point(b), T.point(T.parent(b))});
            if (s.q.contains(pts[2])) res.third_point_always_new = false;
            const std::size_t added = detail::add_audited(s, pts, opt, res);
            res.two_step_points.push_back(added);
            res.two_points += added;
            ++res.two_links;
            if (opt.check == CheckLevel::every_step) enforce_invariants(s);
        }

        s.phase = Phase::one_neighbor;
        const std::vector<int> v = T.children(u);
        if (v.size() > 1) {
            const std::size_t i = std::min_element(v.begin(), v.end()) - v.begin();
            for (std::size_t j = 0; j + 1 < v.size(); ++j)
                if ((j < i) != (y(v[j]) > y(v[j + 1]))) throw std::logic_error("smooth_transform: children not V-shaped");
            const std::vector<Interval> old = s.I;
            const Point umin = s.endpoint_min(u, u), umax = s.endpoint_max(u, u);
            for (std::size_t j = 0; j < i; ++j) {
                const Point a{old[v[j]].max, y(v[j])}, bb{old[v[j + 1]].min, y(v[j + 1])};
                s.pending = {{a, bb, uproj(a.x, u), uproj(bb.x, u), umin, AddGadget::Orientation::e_left}};
                T.link(v[j], v[j + 1]);
                res.links.push_back({T.point(v[j]), T.point(v[j + 1])});
                res.one_points += detail::add_audited(s, {{old[v[j + 1]].min, y(v[j])}}, opt, res);
                ++res.one_links;
                s.I[v[j]] = {0, old[v[j + 1]].min};
            }
            for (std::size_t j = v.size() - 1; j > i; --j) {
                const Point a{old[v[j]].min, y(v[j])}, bb{old[v[j - 1]].max, y(v[j - 1])};
                s.pending = {{a, bb, uproj(a.x, u), uproj(bb.x, u), umax, AddGadget::Orientation::e_right}};
                T.link(v[j], v[j - 1]);
                res.links.push_back({T.point(v[j]), T.point(v[j - 1])});
                res.one_points += detail::add_audited(s, {{old[v[j - 1]].max, y(v[j])}}, opt, res);
                ++res.one_links;
                s.I[v[j]] = {old[v[j - 1]].max, n + 1};
            }
        }
        if (!v.empty()) s.I[*std::min_element(v.begin(), v.end())] = {0, n + 1};
        s.pending.clear();
        if (T.children(u).size() != 1 || T.children(u).front() != r)
            throw std::logic_error("smooth_transform: round did not end with the next minimum");
        if (opt.check != CheckLevel::off) enforce_invariants(s);
        s.phase = Phase::idle;
    }
    if (!T.is_path()) throw std::logic_error("smooth_transform: did not reach path(P)");
    res.q = std::move(s.q);
    return res;
}

// The permutation whose smooth-heap sorting run is P's star-path execution.
inline Permutation heap_input_of(const PointSet& P) { return inverse(permutation_of(P)); }

// Link set of smooth_transform against the smooth heap's sorting run.
inline bool matches_smooth_heap(const PointSet& P, const SmoothResult& r) {
    const Permutation X = heap_input_of(P);
    GeoLinkTrace heap = heap_to_geo(X, sort_mode_run(X, Strategy::smooth).trace);
    GeoLinkTrace mine = r.links;
    auto key = [](const GeoLink& l) { return std::tie(l.child, l.parent); };
    auto cmp = [&](const GeoLink& a, const GeoLink& b) { return key(a) < key(b); };
    std::sort(heap.begin(), heap.end(), cmp);
    std::sort(mine.begin(), mine.end(), cmp);
    return heap == mine;
}

inline PointSet strip_box(const PointSet& Q, int n) { return set_difference(Q, box_points(n)); }
inline PointSet strip_base(const PointSet& Q, int n) { return set_difference(Q, base_points(n)); }

}  // namespace dualheap
