#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dualheap {

// A permutation of ranks 1..n. Positions are 0-based through operator[],
// so x_i of the usual notation is p[i - 1].
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> values) : v_(std::move(values)) {
        std::vector<char> seen(v_.size() + 1, 0);
        for (int r : v_) {
            if (r < 1 || static_cast<std::size_t>(r) > v_.size() || seen[r])
                throw std::invalid_argument("not a permutation of 1..n");
            seen[r] = 1;
        }
    }

    Permutation(std::initializer_list<int> values) : Permutation(std::vector<int>(values)) {}

    static Permutation identity(std::size_t n) {
        std::vector<int> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i + 1);
        return Permutation(std::move(v));
    }

    std::size_t size() const noexcept { return v_.size(); }
    bool empty() const noexcept { return v_.empty(); }
    int operator[](std::size_t i) const { return v_[i]; }
    const std::vector<int>& values() const noexcept { return v_; }
    auto begin() const noexcept { return v_.begin(); }
    auto end() const noexcept { return v_.end(); }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> v_;
};

struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
    // row-major: by y, then x
    friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

inline std::string to_string(Point p) {
    return "<" + std::to_string(p.x) + "," + std::to_string(p.y) + ">";
}

// Finite set of lattice points, iterated in row-major order.
class PointSet {
public:
    using const_iterator = std::set<Point>::const_iterator;

    PointSet() = default;
    PointSet(std::initializer_list<Point> pts) : s_(pts) {}
    template <class It>
    PointSet(It first, It last) : s_(first, last) {}

    bool insert(Point p) { return s_.insert(p).second; }
    bool erase(Point p) { return s_.erase(p) > 0; }
    bool contains(Point p) const { return s_.count(p) > 0; }
    std::size_t size() const noexcept { return s_.size(); }
    bool empty() const noexcept { return s_.empty(); }
    const_iterator begin() const noexcept { return s_.begin(); }
    const_iterator end() const noexcept { return s_.end(); }

    // P_{y=i}, sorted by x
    std::vector<Point> row(int y) const {
        auto lo = s_.lower_bound(Point{std::numeric_limits<int>::min(), y});
        auto hi = s_.lower_bound(Point{std::numeric_limits<int>::min(), y + 1});
        return {lo, hi};
    }

    // P_{x=i}, sorted by y
    std::vector<Point> col(int x) const {
        std::vector<Point> out;
        for (const Point& p : s_)
            if (p.x == x) out.push_back(p);
        return out;
    }

    // |P_{x=i}| = |P_{y=i}| = 1 for every i in [n], n = |P|
    bool is_permutation() const {
        const std::size_t n = s_.size();
        std::vector<char> rows(n + 1, 0), cols(n + 1, 0);
        for (const Point& p : s_) {
            if (p.x < 1 || p.y < 1 || static_cast<std::size_t>(p.x) > n ||
                static_cast<std::size_t>(p.y) > n || rows[p.y] || cols[p.x])
                return false;
            rows[p.y] = cols[p.x] = 1;
        }
        return true;
    }

    // Some point with x1 <= x <= x2 and y1 <= y <= y2; one search per row.
    bool any_in(int x1, int x2, int y1, int y2) const {
        for (int y = y1; y <= y2; ++y) {
            auto it = s_.lower_bound(Point{x1, y});
            if (it == s_.end()) return false;
            if (it->y == y && it->x <= x2) return true;
            y = std::max(y, it->y - 1);
        }
        return false;
    }

    void merge(const PointSet& other) { s_.insert(other.s_.begin(), other.s_.end()); }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::set<Point> s_;
};

inline PointSet set_union(const PointSet& a, const PointSet& b) {
    PointSet out = a;
    out.merge(b);
    return out;
}

inline PointSet set_difference(const PointSet& a, const PointSet& b) {
    PointSet out;
    for (const Point& p : a)
        if (!b.contains(p)) out.insert(p);
    return out;
}

inline bool includes(const PointSet& super, const PointSet& sub) {
    return std::all_of(sub.begin(), sub.end(), [&](Point p) { return super.contains(p); });
}

// ---- permutation <-> point set ----

inline PointSet point_set_of(const Permutation& X) {
    PointSet P;
    for (std::size_t i = 0; i < X.size(); ++i) P.insert({X[i], static_cast<int>(i + 1)});
    return P;
}

// Inverse of point_set_of: x_i is the x-coordinate of the point in row i.
inline Permutation permutation_of(const PointSet& P) {
    if (!P.is_permutation()) throw std::invalid_argument("not a permutation point set");
    std::vector<int> v(P.size());
    for (const Point& p : P) v[p.y - 1] = p.x;
    return Permutation(std::move(v));
}

inline Permutation inverse(const Permutation& X) {
    std::vector<int> y(X.size());
    for (std::size_t j = 0; j < X.size(); ++j) y[X[j] - 1] = static_cast<int>(j + 1);
    return Permutation(std::move(y));
}

inline Permutation reverse(const Permutation& X) {
    std::vector<int> v(X.values().rbegin(), X.values().rend());
    return Permutation(std::move(v));
}

inline PointSet transpose(const PointSet& P) {
    if (!P.is_permutation()) throw std::invalid_argument("transpose: not a permutation point set");
    PointSet out;
    for (const Point& p : P) out.insert({p.y, p.x});
    return out;
}

// Row reversal inside [n]x[n]; accepts any set whose rows lie in 1..n.
inline PointSet reverse_rows(const PointSet& P, int n) {
    PointSet out;
    for (const Point& p : P) {
        if (p.y < 1 || p.y > n) throw std::invalid_argument("reverse_rows: row outside 1..n");
        out.insert({p.x, n - p.y + 1});
    }
    return out;
}

inline PointSet reverse_rows(const PointSet& P) {
    if (!P.is_permutation()) throw std::invalid_argument("reverse_rows: not a permutation point set");
    return reverse_rows(P, static_cast<int>(P.size()));
}

// ---- generators ----

inline Permutation gen_identity(std::size_t n) { return Permutation::identity(n); }

inline Permutation gen_decreasing(std::size_t n) { return reverse(Permutation::identity(n)); }

// Uniform integer in [0, bound) from a 64-bit Mersenne Twister by rejection.
// std::uniform_int_distribution is implementation-defined, this is not.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do r = rng(); while (r >= limit);
    return r % bound;
}

// Fisher-Yates shuffle of the identity driven by std::mt19937_64(seed),
// swapping position i with bounded_draw(i + 1) for i = n-1 down to 1.
inline Permutation gen_random(std::size_t n, std::uint64_t seed) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i + 1);
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i-- > 1;) std::swap(v[i], v[bounded_draw(rng, i + 1)]);
    return Permutation(std::move(v));
}

inline Permutation gen_tilted_grid(std::size_t t) {
    if (t == 0) throw std::invalid_argument("gen_tilted_grid: t must be positive");
    const int ti = static_cast<int>(t);
    std::vector<Point> raw;
    for (int i = 1; i <= ti; ++i)
        for (int j = 1; j <= ti; ++j) raw.push_back({i * ti + (j - 1), j * ti + i - 1});
    auto ranks = [&](auto coord) {
        std::vector<int> c;
        for (const Point& p : raw) c.push_back(coord(p));
        std::vector<int> sorted = c;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::logic_error("gen_tilted_grid: coordinates collide");
        for (int& v : c)
            v = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()) + 1;
        return c;
    };
    const auto xr = ranks([](Point p) { return p.x; });
    const auto yr = ranks([](Point p) { return p.y; });
    std::vector<int> v(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) v[yr[k] - 1] = xr[k];
    return Permutation(std::move(v));
}

// ---- pre-sortedness measures ----

inline std::uint64_t measure_inv(const Permutation& X) {
    const std::size_t n = X.size();
    std::vector<std::uint32_t> bit(n + 1, 0);
    std::uint64_t inv = 0;
    for (std::size_t i = n; i-- > 0;) {
        for (int k = X[i] - 1; k > 0; k -= k & -k) inv += bit[k];
        for (std::size_t k = X[i]; k <= n; k += k & (~k + 1)) ++bit[k];
    }
    return inv;
}

inline std::uint64_t measure_run(const Permutation& X) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i + 1 < X.size(); ++i)
        if (X[i] > X[i + 1]) ++r;
    return r;
}

// Number of positions j whose value lies strictly between x_i and x_{i+1},
// summed over consecutive pairs. On ranks this is |x_{i+1} - x_i| - 1.
inline std::uint64_t measure_osc(const Permutation& X) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i + 1 < X.size(); ++i) s += std::abs(X[i + 1] - X[i]) - 1;
    return s;
}

inline double measure_df(const Permutation& X) {
    double s = 0;
    for (std::size_t i = 0; i + 1 < X.size(); ++i) s += std::log2(std::abs(X[i + 1] - X[i]) + 1.0);
    return s;
}

// Minimum number of increasing subsequences covering X, i.e. the length of
// the longest strictly decreasing subsequence.
inline std::size_t sms_increasing_cover(const Permutation& X) {
    std::vector<int> tails;  // tails of decreasing runs, stored negated
    for (int v : X) {
        auto it = std::lower_bound(tails.begin(), tails.end(), -v);
        if (it == tails.end()) tails.push_back(-v);
        else *it = -v;
    }
    return tails.size();
}

namespace detail {

// Minimum cover of X by increasing (optionally also decreasing) chains, by
// subset dynamic programming. Exponential; n <= 10.
inline std::size_t brute_force_cover(const Permutation& X, bool allow_decreasing) {
    const std::size_t n = X.size();
    if (n > 10) throw std::invalid_argument("brute force cover: n > 10");
    const std::uint32_t full = (1u << n) - 1;
    std::vector<char> mono(full + 1, 0);
    for (std::uint32_t m = 1; m <= full; ++m) {
        bool inc = true, dec = true;
        int last = 0;
        bool first = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(m >> i & 1)) continue;
            if (!first) {
                inc = inc && X[i] > last;
                dec = dec && X[i] < last;
            }
            last = X[i];
            first = false;
        }
        mono[m] = inc || (allow_decreasing && dec);
    }
    std::vector<std::uint8_t> best(full + 1, 0xff);
    best[0] = 0;
    for (std::uint32_t m = 1; m <= full; ++m) {
        const std::uint32_t low = m & (~m + 1);
        for (std::uint32_t s = m; s; s = (s - 1) & m)
            if ((s & low) && mono[s] && best[m ^ s] + 1 < best[m]) best[m] = best[m ^ s] + 1;
    }
    return best[full];
}

}  // namespace detail

// Minimum cover by increasing subsequences, exhaustively. n <= 10.
inline std::size_t increasing_cover_brute_force(const Permutation& X) { return detail::brute_force_cover(X, false); }

// Minimum cover by monotone (increasing or decreasing) subsequences,
// exhaustively. n <= 10.
inline std::size_t sms_brute_force(const Permutation& X) { return detail::brute_force_cover(X, true); }

// ---- text formats ----

inline std::string format_permutation(const Permutation& X) {
    std::string out;
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(X[i]);
    }
    return out;
}

inline Permutation parse_permutation(std::string_view text) {
    std::vector<int> v;
    std::string tok;
    auto flush = [&] {
        if (!tok.empty()) {
            std::size_t used = 0;
            int r = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("bad rank: " + tok);
            v.push_back(r);
            tok.clear();
        }
    };
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\n' || c == '\r' || c == '\t') flush();
        else tok += c;
    }
    flush();
    return Permutation(std::move(v));
}

inline std::string format_point_set(const PointSet& P) {
    std::string out;
    for (const Point& p : P) out += std::to_string(p.x) + "," + std::to_string(p.y) + "\n";
    return out;
}

inline PointSet parse_point_set(std::string_view text) {
    PointSet P;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Point p;
        char comma = 0;
        std::istringstream ls(line);
        if (!(ls >> p.x >> comma >> p.y) || comma != ',') throw std::invalid_argument("bad point line: " + line);
        if (!P.insert(p)) throw std::invalid_argument("duplicate point: " + line);
    }
    return P;
}

}  // namespace dualheap
