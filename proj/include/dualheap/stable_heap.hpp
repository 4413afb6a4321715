#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "perm_core.hpp"

namespace dualheap {

enum class Side { leftmost, rightmost };

template <class Key>
struct LinkEvent {
    Key child;
    Key parent;
    Side side;

    friend bool operator==(const LinkEvent&, const LinkEvent&) = default;
};

template <class Key>
using LinkTrace = std::vector<LinkEvent<Key>>;

enum class DecreaseKeyPolicy { append_right, by_insertion_time };

// Ordered forest of multiway min-heaps. Every sibling list, the top level
// included, is doubly linked with both endpoints stored, so neighbors and
// leftmost/rightmost children are O(1). Nodes are never freed; handles stay
// valid until meld renumbers the absorbed heap.
template <class Key = int>
class HeapForest {
public:
    using Id = std::int32_t;
    static constexpr Id none = -1;

    struct Node {
        Key key;
        std::uint64_t stamp;  // insertion order
        Id parent = none, prev = none, next = none, leftmost = none, rightmost = none;
        bool alive = true;
    };

    HeapForest() = default;

    std::size_t size() const noexcept { return index_.size(); }
    bool empty() const noexcept { return index_.empty(); }
    std::size_t top_count() const noexcept { return top_count_; }
    Id top_leftmost() const noexcept { return top_left_; }
    Id top_rightmost() const noexcept { return top_right_; }

    const Node& node(Id id) const { return nodes_.at(id); }
    Key key(Id id) const { return nodes_[id].key; }
    Id prev(Id id) const { return nodes_[id].prev; }
    Id next(Id id) const { return nodes_[id].next; }
    Id parent(Id id) const { return nodes_[id].parent; }
    Id leftmost_child(Id id) const { return nodes_[id].leftmost; }
    Id rightmost_child(Id id) const { return nodes_[id].rightmost; }

    Id find(const Key& k) const {
        auto it = index_.find(k);
        return it == index_.end() ? none : it->second;
    }

    std::vector<Id> top_level() const { return siblings_from(top_left_); }
    std::vector<Id> children(Id id) const { return siblings_from(nodes_[id].leftmost); }

    std::vector<Key> top_keys() const {
        std::vector<Key> out;
        for (Id id : top_level()) out.push_back(key(id));
        return out;
    }

    // Unstable links make the larger key the leftmost child regardless of side.
    void set_unstable_links(bool on) noexcept { unstable_ = on; }
    void set_decrease_key_policy(DecreaseKeyPolicy p) noexcept { dk_policy_ = p; }

    Id insert(const Key& k) {
        if (index_.count(k)) throw std::invalid_argument("insert: duplicate key");
        const Id id = static_cast<Id>(nodes_.size());
        nodes_.push_back(Node{k, next_stamp_++});
        index_.emplace(k, id);
        append_top(id);
        return id;
    }

    // Concatenates other's top level after ours; other is left empty.
    void meld(HeapForest&& other) {
        for (const auto& kv : other.index_)
            if (index_.count(kv.first)) throw std::invalid_argument("meld: duplicate key");
        const Id off = static_cast<Id>(nodes_.size());
        auto shift = [off](Id v) { return v == none ? none : v + off; };
        for (const Node& n : other.nodes_) {
            Node m = n;
            m.stamp += next_stamp_;
            m.parent = shift(n.parent);
            m.prev = shift(n.prev);
            m.next = shift(n.next);
            m.leftmost = shift(n.leftmost);
            m.rightmost = shift(n.rightmost);
            nodes_.push_back(m);
        }
        for (const auto& kv : other.index_) index_.emplace(kv.first, kv.second + off);
        if (other.top_left_ != none) {
            const Id l = other.top_left_ + off, r = other.top_right_ + off;
            if (top_right_ == none) top_left_ = l;
            else {
                nodes_[top_right_].next = l;
                nodes_[l].prev = top_right_;
            }
            top_right_ = r;
            top_count_ += other.top_count_;
        }
        next_stamp_ += other.next_stamp_;
        other = HeapForest();
    }

    void decrease_key(Id id, const Key& k) {
        Node& n = nodes_.at(id);
        if (!n.alive) throw std::invalid_argument("decrease_key: node not in heap");
        if (!(k < n.key)) throw std::invalid_argument("decrease_key: new key is not smaller");
        if (index_.count(k)) throw std::invalid_argument("decrease_key: duplicate key");
        index_.erase(n.key);
        index_.emplace(k, id);
        n.key = k;
        if (n.parent == none) return;
        detach_child(id);
        if (dk_policy_ == DecreaseKeyPolicy::append_right) {
            append_top(id);
            return;
        }
        Id after = top_left_;
        while (after != none && nodes_[after].stamp < n.stamp) after = nodes_[after].next;
        if (after == none) append_top(id);
        else insert_top_before(id, after);
    }

    // Counted key comparison.
    bool less(Id a, Id b) {
        ++comparisons_;
        return nodes_[a].key < nodes_[b].key;
    }

    // Stable link of top-level root x with its right neighbor; returns the survivor.
    Id link(Id x) {
        const Id y = checked_right_neighbor(x);
        return link_known(x, less(x, y));
    }

    // Stable link whose outcome the caller already knows; no comparison.
    Id link_known(Id x, bool x_is_smaller) {
        const Id y = checked_right_neighbor(x);
        if (x_is_smaller) {
            remove_top(y);
            attach(y, x, unstable_ ? Side::leftmost : Side::rightmost);
            return x;
        }
        remove_top(x);
        attach(x, y, Side::leftmost);
        return y;
    }

    // Removes the single remaining root; its children become the top level.
    Key remove_root() {
        if (top_count_ != 1) throw std::logic_error("remove_root: top level is not a single tree");
        const Id r = top_left_;
        Node& n = nodes_[r];
        top_left_ = n.leftmost;
        top_right_ = n.rightmost;
        top_count_ = 0;
        for (Id c = top_left_; c != none; c = nodes_[c].next) {
            nodes_[c].parent = none;
            ++top_count_;
        }
        n.alive = false;
        n.leftmost = n.rightmost = none;
        index_.erase(n.key);
        return n.key;
    }

    const LinkTrace<Key>& trace() const noexcept { return trace_; }
    std::size_t links() const noexcept { return trace_.size(); }
    std::size_t comparisons() const noexcept { return comparisons_; }

    // Full structural audit. Sibling order by insertion stamp is part of it
    // unless check_order is false (append-right decrease-key can break it).
    bool audit(std::string* why = nullptr, bool check_order = true) const {
        auto fail = [&](const std::string& m) {
            if (why) *why = m;
            return false;
        };
        std::size_t seen = 0;
        std::vector<Id> stack;
        auto check_list = [&](Id first, Id last, Id par) -> std::string {
            Id p = none;
            std::size_t count = 0;
            for (Id c = first; c != none; p = c, c = nodes_[c].next) {
                const Node& n = nodes_[c];
                if (!n.alive) return "dead node linked";
                if (n.prev != p) return "prev pointer mismatch";
                if (n.parent != par) return "parent pointer mismatch";
                if (par != none && !(nodes_[par].key < n.key)) return "heap order violated";
                if (check_order && p != none && nodes_[p].stamp > n.stamp) return "sibling order violated";
                stack.push_back(c);
                ++count;
            }
            if (p != last) return "endpoint mismatch";
            if (par == none && count != top_count_) return "top count mismatch";
            return {};
        };
        if (auto m = check_list(top_left_, top_right_, none); !m.empty()) return fail(m);
        while (!stack.empty()) {
            const Id v = stack.back();
            stack.pop_back();
            ++seen;
            if (auto m = check_list(nodes_[v].leftmost, nodes_[v].rightmost, v); !m.empty()) return fail(m);
        }
        if (seen != index_.size()) return fail("node count mismatch");
        return true;
    }

private:
    std::vector<Id> siblings_from(Id first) const {
        std::vector<Id> out;
        for (Id c = first; c != none; c = nodes_[c].next) out.push_back(c);
        return out;
    }

    Id checked_right_neighbor(Id x) const {
        const Node& n = nodes_.at(x);
        if (!n.alive || n.parent != none) throw std::logic_error("link: not a top-level root");
        if (n.next == none) throw std::logic_error("link: no right neighbor");
        return n.next;
    }

    void append_top(Id id) {
        Node& n = nodes_[id];
        n.parent = none;
        n.next = none;
        n.prev = top_right_;
        if (top_right_ == none) top_left_ = id;
        else nodes_[top_right_].next = id;
        top_right_ = id;
        ++top_count_;
    }

    void insert_top_before(Id id, Id at) {
        Node& n = nodes_[id];
        n.parent = none;
        n.next = at;
        n.prev = nodes_[at].prev;
        if (n.prev == none) top_left_ = id;
        else nodes_[n.prev].next = id;
        nodes_[at].prev = id;
        ++top_count_;
    }

    void remove_top(Id id) {
        Node& n = nodes_[id];
        if (n.prev == none) top_left_ = n.next;
        else nodes_[n.prev].next = n.next;
        if (n.next == none) top_right_ = n.prev;
        else nodes_[n.next].prev = n.prev;
        n.prev = n.next = none;
        --top_count_;
    }

    void detach_child(Id id) {
        Node& n = nodes_[id];
        Node& p = nodes_[n.parent];
        if (n.prev == none) p.leftmost = n.next;
        else nodes_[n.prev].next = n.next;
        if (n.next == none) p.rightmost = n.prev;
        else nodes_[n.next].prev = n.prev;
        n.prev = n.next = n.parent = none;
    }

    void attach(Id child, Id par, Side side) {
        Node& c = nodes_[child];
        Node& p = nodes_[par];
        c.parent = par;
        if (side == Side::leftmost) {
            c.prev = none;
            c.next = p.leftmost;
            if (p.leftmost == none) p.rightmost = child;
            else nodes_[p.leftmost].prev = child;
            p.leftmost = child;
        } else {
            c.next = none;
            c.prev = p.rightmost;
            if (p.rightmost == none) p.leftmost = child;
            else nodes_[p.rightmost].next = child;
            p.rightmost = child;
        }
        trace_.push_back({c.key, p.key, side});
    }

    std::vector<Node> nodes_;
    std::unordered_map<Key, Id> index_;
    Id top_left_ = none, top_right_ = none;
    std::size_t top_count_ = 0;
    std::uint64_t next_stamp_ = 0;
    std::size_t comparisons_ = 0;
    LinkTrace<Key> trace_;
    bool unstable_ = false;
    DecreaseKeyPolicy dk_policy_ = DecreaseKeyPolicy::append_right;
};

// ---- restructuring rounds on the top level ----

template <class Key>
void pairing_round(HeapForest<Key>& H) {
    using Id = typename HeapForest<Key>::Id;
    for (Id x = H.top_leftmost(); x != H.none && H.next(x) != H.none;) x = H.next(H.link(x));
}

template <class Key>
void ltr_accumulate_round(HeapForest<Key>& H) {
    while (H.top_count() > 1) H.link(H.top_leftmost());
}

template <class Key>
void rtl_accumulate_round(HeapForest<Key>& H) {
    while (H.top_count() > 1) H.link(H.prev(H.top_rightmost()));
}

// Left-to-right cursor pass. At each local maximum the cursor links toward
// the larger neighbor, backing up while the left neighbor is the larger one.
// Every link outcome is already decided by an earlier comparison.
template <class Key>
void smoothing_round(HeapForest<Key>& H) {
    using Id = typename HeapForest<Key>::Id;
    Id x = H.top_leftmost();
    if (x == H.none) return;
    while (H.next(x) != H.none) {
        if (H.less(x, H.next(x))) {
            x = H.next(x);
            continue;
        }
        for (;;) {
            if (H.prev(x) == H.none) {
                x = H.link_known(x, false);
                break;
            }
            if (H.less(H.next(x), H.prev(x))) {
                x = H.link_known(H.prev(x), true);
            } else {
                x = H.link_known(x, false);
                break;
            }
        }
    }
}

// Right-to-left accumulation of an increasing top level, comparison-free.
template <class Key>
void increasing_rtl_round(HeapForest<Key>& H) {
    using Id = typename HeapForest<Key>::Id;
    for (Id x = H.top_rightmost(); x != H.none && H.prev(x) != H.none;) x = H.link_known(H.prev(x), true);
}

template <class Key>
void smooth_twopass(HeapForest<Key>& H) {
    smoothing_round(H);
    increasing_rtl_round(H);
}

enum class Strategy { simple, pairing_standard, pairing_ftb, pairing_multipass, smooth };

inline const std::vector<Strategy>& all_strategies() {
    static const std::vector<Strategy> all{Strategy::simple, Strategy::pairing_standard, Strategy::pairing_ftb,
                                           Strategy::pairing_multipass, Strategy::smooth};
    return all;
}

inline std::string to_string(Strategy s) {
    switch (s) {
    case Strategy::simple: return "simple";
    case Strategy::pairing_standard: return "pairing_standard";
    case Strategy::pairing_ftb: return "pairing_ftb";
    case Strategy::pairing_multipass: return "pairing_multipass";
    case Strategy::smooth: return "smooth";
    }
    return "?";
}

inline Strategy parse_strategy(std::string_view s) {
    for (Strategy st : all_strategies())
        if (to_string(st) == s) return st;
    throw std::invalid_argument("unknown strategy: " + std::string(s));
}

template <class Key>
void consolidate(HeapForest<Key>& H, Strategy s) {
    switch (s) {
    case Strategy::simple: ltr_accumulate_round(H); break;
    case Strategy::pairing_standard:
        pairing_round(H);
        rtl_accumulate_round(H);
        break;
    case Strategy::pairing_ftb:
        pairing_round(H);
        ltr_accumulate_round(H);
        break;
    case Strategy::pairing_multipass: {
        std::size_t rounds = 0;
        for (std::size_t k = H.top_count(); k > 1; k = (k + 1) / 2) ++rounds;  // ceil(log2 k)
        for (std::size_t i = 0; i < rounds && H.top_count() > 1; ++i) pairing_round(H);
        break;
    }
    case Strategy::smooth: smooth_twopass(H); break;
    }
    if (H.top_count() > 1) throw std::logic_error("consolidate: strategy left several roots");
}

template <class Key>
std::pair<Key, std::size_t> extract_min(HeapForest<Key>& H, Strategy s) {
    if (H.empty()) throw std::logic_error("extract_min: empty heap");
    const std::size_t before = H.links();
    consolidate(H, s);
    const Key k = H.remove_root();
    return {k, H.links() - before};
}

struct SortRun {
    Permutation input;
    Strategy strategy = Strategy::smooth;
    LinkTrace<int> trace;
    std::size_t cost = 0;
    std::size_t comparisons = 0;
    std::vector<int> extraction;
};

// n inserts of X left to right, then n extract-mins.
inline SortRun sort_mode_run(const Permutation& X, Strategy s) {
    HeapForest<int> H;
    for (int v : X) H.insert(v);
    SortRun run;
    run.input = X;
    run.strategy = s;
    while (!H.empty()) run.extraction.push_back(extract_min(H, s).first);
    for (std::size_t i = 0; i < run.extraction.size(); ++i)
        if (run.extraction[i] != static_cast<int>(i + 1)) throw std::logic_error("sort_mode_run: output not sorted");
    run.trace = H.trace();
    run.cost = run.trace.size();
    run.comparisons = H.comparisons();
    return run;
}

inline std::string format_sort_summary(const SortRun& r) {
    return "n=" + std::to_string(r.input.size()) + ",strategy=" + to_string(r.strategy) +
           ",cost=" + std::to_string(r.cost) + ",comparisons=" + std::to_string(r.comparisons);
}

inline std::string format_link_trace(const LinkTrace<int>& t) {
    std::string out;
    for (const auto& e : t)
        out += std::to_string(e.child) + "," + std::to_string(e.parent) + "," +
               (e.side == Side::leftmost ? "leftmost" : "rightmost") + "\n";
    return out;
}

inline LinkTrace<int> parse_link_trace(std::string_view text) {
    LinkTrace<int> t;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string c, p, side;
        if (!std::getline(ls, c, ',') || !std::getline(ls, p, ',') || !std::getline(ls, side))
            throw std::invalid_argument("bad trace line: " + line);
        if (!side.empty() && side.back() == '\r') side.pop_back();
        if (side != "leftmost" && side != "rightmost") throw std::invalid_argument("bad side: " + side);
        t.push_back({std::stoi(c), std::stoi(p), side == "leftmost" ? Side::leftmost : Side::rightmost});
    }
    return t;
}

}  // namespace dualheap
