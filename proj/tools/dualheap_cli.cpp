#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "dualheap/dualheap.hpp"

using namespace dualheap;

namespace {

constexpr int exit_pass = 0, exit_mismatch = 1, exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputSpec {
    std::string perm, file, gen;

    void attach(CLI::App* app) {
        auto* a = app->add_option("--perm", perm, "inline permutation, e.g. 4,1,7,2,6,3,5");
        auto* b = app->add_option("--in", file, "file holding one permutation");
        auto* c = app->add_option("--gen", gen, "generator spec: 'random N SEED', 'identity N', 'reverse N', 'tilted T'");
        a->excludes(b)->excludes(c);
        b->excludes(c);
    }

    bool given() const { return !perm.empty() || !file.empty() || !gen.empty(); }
};

Permutation generate(const std::string& spec) {
    std::istringstream in(spec);
    std::string kind;
    in >> kind;
    std::vector<std::uint64_t> args;
    for (std::uint64_t v; in >> v;) args.push_back(v);
    if (!in.eof()) throw UsageError("bad generator spec: " + spec);
    if (kind == "random" && args.size() == 2) return gen_random(args[0], args[1]);
    if (kind == "identity" && args.size() == 1) return gen_identity(args[0]);
    if (kind == "reverse" && args.size() == 1) return gen_decreasing(args[0]);
    if (kind == "tilted" && args.size() == 1 && args[0] >= 1) return gen_tilted_grid(args[0]);
    throw UsageError("bad generator spec: " + spec);
}

Permutation load(const InputSpec& s) {
    if (!s.given()) throw UsageError("one of --perm, --in, --gen is required");
    try {
        if (!s.gen.empty()) return generate(s.gen);
        if (!s.perm.empty()) return parse_permutation(s.perm);
        std::ifstream f(s.file);
        if (!f) throw UsageError("cannot read " + s.file);
        std::stringstream buf;
        buf << f.rdbuf();
        return parse_permutation(buf.str());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// Writes to --out (appending when asked) or stdout.
void emit(const std::string& out, const std::string& text, bool append = false) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, append ? std::ios::app : std::ios::trunc);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
}

bool file_empty(const std::string& path) {
    std::ifstream f(path);
    return !f || f.peek() == std::ifstream::traits_type::eof();
}

std::string csv_block(const std::vector<SortReport>& rows, bool header, const std::vector<double>* wall_ms = nullptr) {
    std::string s;
    if (header) s += std::string(sort_csv_header()) + (wall_ms ? ",wall_ms" : "") + "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s += format_csv_row(rows[i]);
        if (wall_ms) {
            char buf[32];
            std::snprintf(buf, sizeof buf, ",%.3f", (*wall_ms)[i]);
            s += buf;
        }
        s += "\n";
    }
    return s;
}

SortReport run_algo(const Permutation& X, const std::string& algo, std::uint64_t seed) {
    if (algo == "cartesian") return cartesian_tree_sort(X, seed);
    try {
        return sort_with(X, parse_strategy(algo), seed);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// ---- verify ----

struct Verdict {
    bool pass = true;
    std::string detail;
};

std::vector<Permutation> verify_inputs(const InputSpec& in, std::size_t count, std::size_t max_n, std::uint64_t seed) {
    if (in.given()) return {load(in)};
    std::vector<Permutation> v;
    for (std::size_t i = 0; i < count; ++i) v.push_back(gen_random(1 + i % max_n, seed + i));
    return v;
}

std::string first_difference(const PointSet& got, const PointSet& want) {
    for (const Point& p : want)
        if (!got.contains(p)) return "missing " + to_string(p);
    for (const Point& p : got)
        if (!want.contains(p)) return "extra " + to_string(p);
    return "equal";
}

Verdict verify_one(const std::string& which, const Permutation& X, std::size_t selectors, std::uint64_t seed,
                   CheckLevel check) {
    const std::string tag = "X=" + format_permutation(X) + ": ";
    const PointSet Pinv = point_set_of(inverse(X));
    const int n = static_cast<int>(X.size());
    if (which == "nondet-eq") {
        const PointSet P = point_set_of(X), G = greedy_sweep(P);
        for (std::size_t k = 0; k < selectors; ++k) {
            const PointSet N = greedy_nondet(P, GadgetSelector::random(seed + k));
            if (N != G) return {false, tag + "selector " + std::to_string(k) + ", " + first_difference(N, G)};
        }
        return {};
    }
    if (which == "smooth-greedy-eq") {
        SmoothOptions opt;
        opt.check = check;
        const SmoothResult r = smooth_transform(Pinv, opt);
        const PointSet Q = strip_box(r.q, n), G = greedy_sweep(Pinv);
        if (Q != G) return {false, tag + first_difference(Q, G)};
        if (!matches_smooth_heap(Pinv, r)) return {false, tag + "link set differs from the heap run"};
        return {};
    }
    if (which == "bijection") {
        for (Strategy s : all_strategies()) {
            const SortRun run = sort_mode_run(X, s);
            const GeoLinkTrace g = heap_to_geo(X, run.trace);
            const LinkTrace<int> back = geo_to_heap(Pinv, g);
            for (std::size_t i = 0; i < std::min(back.size(), run.trace.size()); ++i)
                if (!(back[i] == run.trace[i])) return {false, tag + to_string(s) + " event " + std::to_string(i) + " differs"};
            if (back.size() != run.trace.size()) return {false, tag + to_string(s) + " trace lengths differ"};
            if (!replay_geo(Pinv, g, true).is_path()) return {false, tag + to_string(s) + " replay misses path(P)"};
        }
        return {};
    }
    if (which == "invariants") {
        SmoothOptions opt;
        opt.check = CheckLevel::every_step;
        const SmoothResult r = smooth_transform(Pinv, opt);
        if (!is_satisfied(r.q)) return {false, tag + "smooth Q not satisfied"};
        const GeneralResult g =
            general_transform(Pinv, heap_to_geo(X, sort_mode_run(X, Strategy::smooth).trace), {}, CheckLevel::every_step);
        if (!is_satisfied(g.q)) return {false, tag + "general Q not satisfied"};
        if (!is_insertion_compatible(reverse_rows(Pinv), reverse_rows(strip_base(g.q, n), n)))
            return {false, tag + "reversed general Q not insertion-compatible"};
        return {};
    }
    if (which == "replay") {
        const PointSet Q = greedy_sweep(point_set_of(X));
        const BstExecution ex = replay_insert_mode(Q);
        if (!touches_match(ex, Q)) return {false, tag + "touched rows differ from Q"};
        if (!std::is_sorted(ex.inorder.begin(), ex.inorder.end()) || ex.inorder.size() != X.size())
            return {false, tag + "final tree not sorted"};
        return {true, "cost " + std::to_string(ex.cost) + " = |Q|"};
    }
    throw UsageError("unknown verify target: " + which);
}

// ---- bench ----

int bench(const std::string& suite, const std::string& out, bool timing) {
    std::vector<SortReport> rows;
    std::vector<double> wall;
    bool ok = true;
    auto timed = [&](const Permutation& X, const std::string& algo, std::uint64_t seed) {
        const auto t0 = std::chrono::steady_clock::now();
        SortReport r = run_algo(X, algo, seed);
        wall.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
        rows.push_back(r);
        return r;
    };
    if (suite == "random-scaling") {
        for (std::size_t e = 8; e <= 12; ++e)
            for (std::uint64_t s = 0; s < 3; ++s)
                ok &= timed(gen_random(std::size_t{1} << e, 60'000 + e * 10 + s), "smooth", 60'000 + e * 10 + s)
                          .cost_per_nlogn() <= 3.0;
    } else if (suite == "tilted-scaling") {
        double last = 0;
        for (std::size_t t : {4u, 8u, 16u, 32u}) {
            const Permutation X = gen_tilted_grid(t);
            const SortReport sm = timed(X, "smooth", 0), ca = timed(X, "cartesian", 0);
            ok &= sm.cost_per_n() <= 10.0;
            const double ratio = static_cast<double>(ca.cost) / static_cast<double>(sm.cost);
            ok &= ratio >= last;
            last = ratio;
        }
    } else if (suite == "monotone") {
        for (const Permutation& X : {gen_identity(1024), gen_decreasing(1024)})
            ok &= timed(X, "smooth", 0).cost == 1023;
    } else if (suite == "strategy-matrix") {
        std::vector<Permutation> inputs = {gen_identity(512), gen_decreasing(512), gen_tilted_grid(16)};
        for (std::uint64_t s = 0; s < 3; ++s) inputs.push_back(gen_random(512, 80'000 + s));
        for (const Permutation& X : inputs) {
            for (Strategy st : all_strategies()) timed(X, to_string(st), 0);
            timed(X, "cartesian", 0);
        }
    } else {
        throw UsageError("unknown bench suite: " + suite);
    }
    emit(out, csv_block(rows, true, timing ? &wall : nullptr));
    if (!ok) std::cerr << "bench " << suite << ": threshold violated\n";
    return ok ? exit_pass : exit_mismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable heaps, greedy BSTs and the transformations between them"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out;
    std::uint64_t seed = 0;
    std::string check_s = "boundary";
    std::string strategy = "smooth";
    app.add_option("--out", out, "output file (default stdout)");
    app.add_option("--seed", seed, "seed for randomized paths");
    app.add_option("--check", check_s, "verification level")->check(CLI::IsMember({"off", "boundary", "every-step"}));

    auto* gen = app.add_subcommand("gen", "write a permutation");
    std::vector<std::string> gen_spec;
    gen->add_option("spec", gen_spec, "random N SEED | identity N | reverse N | tilted T")->required();

    InputSpec in_sort, in_greedy, in_transform, in_verify, in_opt;
    auto* sort = app.add_subcommand("sort", "sorting-mode run; one CSV row");
    in_sort.attach(sort);
    sort->add_option("--strategy", strategy, "heap strategy or 'cartesian'");
    bool trace = false;
    sort->add_flag("--trace", trace, "print the link trace instead of CSV");

    auto* greedy = app.add_subcommand("greedy", "greedy_sweep of the point set of X");
    in_greedy.attach(greedy);
    bool use_inverse = false;
    std::int64_t nondet = -1;
    greedy->add_flag("--inverse", use_inverse, "use the point set of the inverse of X");
    greedy->add_option("--nondet", nondet, "fill gadgets in random order with this selector seed");

    auto* transform = app.add_subcommand("transform", "star-path transformation of the point set of inverse(X)");
    in_transform.attach(transform);
    std::string mode = "smooth";
    transform->add_option("--mode", mode, "smooth or general")->check(CLI::IsMember({"smooth", "general"}));
    transform->add_option("--strategy", strategy, "heap strategy driving general mode");

    auto* verify = app.add_subcommand("verify", "equalities and properties");
    in_verify.attach(verify);
    std::string which;
    std::size_t count = 200, max_n = 64, selectors = 20;
    verify->add_option("which", which, "nondet-eq | smooth-greedy-eq | bijection | invariants | replay")
        ->required()
        ->check(CLI::IsMember({"nondet-eq", "smooth-greedy-eq", "bijection", "invariants", "replay"}));
    verify->add_option("--count", count, "random instances when no input is given");
    verify->add_option("--max-n", max_n, "largest random n")->check(CLI::PositiveNumber);
    verify->add_option("--selectors", selectors, "gadget selectors per instance (nondet-eq)");

    auto* benchc = app.add_subcommand("bench", "deterministic benchmark tables");
    std::string suite;
    bool timing = false;
    benchc->add_option("suite", suite, "random-scaling | tilted-scaling | monotone | strategy-matrix")
        ->required()
        ->check(CLI::IsMember({"random-scaling", "tilted-scaling", "monotone", "strategy-matrix"}));
    benchc->add_flag("--timing", timing, "add a wall_ms column (output no longer reproducible)");

    auto* opt = app.add_subcommand("opt", "minimum stable links for the point set of inverse(X), n <= 8");
    in_opt.attach(opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_pass : exit_usage;
    }

    try {
        const CheckLevel check = parse_check_level(check_s);
        if (gen->parsed()) {
            std::string spec;
            for (const auto& s : gen_spec) spec += (spec.empty() ? "" : " ") + s;
            emit(out, format_permutation(generate(spec)) + "\n");
            return exit_pass;
        }
        if (sort->parsed()) {
            const Permutation X = load(in_sort);
            if (trace) {
                const Strategy st = parse_strategy(strategy);
                emit(out, format_link_trace(sort_mode_run(X, st).trace));
                return exit_pass;
            }
            const SortReport r = run_algo(X, strategy, seed);
            emit(out, csv_block({r}, out.empty() || file_empty(out)), true);
            return exit_pass;
        }
        if (greedy->parsed()) {
            const Permutation X = load(in_greedy);
            const PointSet P = point_set_of(use_inverse ? inverse(X) : X);
            const PointSet G =
                nondet >= 0 ? greedy_nondet(P, GadgetSelector::random(static_cast<std::uint64_t>(nondet))) : greedy_sweep(P);
            emit(out, format_point_set(G));
            std::cerr << "points=" << G.size() << "\n";
            return exit_pass;
        }
        if (transform->parsed()) {
            const Permutation X = load(in_transform);
            const PointSet P = point_set_of(inverse(X));
            const int n = static_cast<int>(P.size());
            if (mode == "smooth") {
                SmoothOptions o;
                o.check = check;
                const SmoothResult r = smooth_transform(P, o);
                emit(out, format_point_set(strip_box(r.q, n)));
                std::cerr << "links=" << r.links.size() << ",two_links=" << r.two_links << ",two_points=" << r.two_points
                          << ",one_links=" << r.one_links << ",one_points=" << r.one_points << "\n";
            } else {
                const Strategy st = parse_strategy(strategy);
                const GeneralResult r = general_transform(P, heap_to_geo(X, sort_mode_run(X, st).trace), {}, check);
                emit(out, format_point_set(strip_base(r.q, n)));
                std::cerr << "links=" << r.links << ",points=" << strip_base(r.q, n).size() << "\n";
            }
            return exit_pass;
        }
        if (verify->parsed()) {
            const auto xs = verify_inputs(in_verify, count, max_n, seed);
            std::string last_detail;
            for (const Permutation& X : xs) {
                Verdict v;
                try {
                    v = verify_one(which, X, selectors, seed, check);
                } catch (const UsageError&) {
                    throw;
                } catch (const std::exception& e) {
                    v = {false, "X=" + format_permutation(X) + ": " + e.what()};
                }
                if (!v.pass) {
                    std::cout << "FAIL " << which << ": " << v.detail << "\n";
                    return exit_mismatch;
                }
                last_detail = v.detail;
            }
            std::cout << "PASS " << which << ": " << xs.size() << " instance" << (xs.size() == 1 ? "" : "s")
                      << (xs.size() == 1 && !last_detail.empty() ? ", " + last_detail : "") << "\n";
            return exit_pass;
        }
        if (benchc->parsed()) return bench(suite, out, timing);
        if (opt->parsed()) {
            const Permutation X = load(in_opt);
            if (X.size() > 8) throw UsageError("opt: n must be at most 8");
            const std::size_t best = brute_force_opt_stable(point_set_of(inverse(X)));
            emit(out, "opt=" + std::to_string(best) + ",smooth=" + std::to_string(sort_mode_run(X, Strategy::smooth).cost) +
                          "\n");
            return exit_pass;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return exit_mismatch;
    }
    return exit_usage;
}
