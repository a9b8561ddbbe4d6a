#pragma once

// Self-verification suites behind `unrefinable verify`. Every suite walks its
// cases in increasing size and lexicographic order, so the first failure
// recorded per check is the smallest counterexample.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "unrefinable/unrefinable.hpp"

namespace cli {

using unrefinable::CheckResult;
using unrefinable::DistinctPartition;
using unrefinable::Int;

struct SuiteCheck {
    std::string suite;
    CheckResult result;
    std::uint64_t cases = 0;
};

class Recorder {
public:
    explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

    SuiteCheck& check(const std::string& name)
    {
        for (auto& c : checks_)
            if (c.result.name == name)
                return c;
        checks_.push_back({suite_, {name, true, {}}, 0});
        return checks_.back();
    }

    void record(const std::string& name, bool ok, const std::string& counterexample)
    {
        auto& c = check(name);
        ++c.cases;
        if (!ok && c.result.passed) {
            c.result.passed = false;
            c.result.detail = counterexample;
        }
    }

    std::vector<SuiteCheck> take() { return std::move(checks_); }

private:
    std::string suite_;
    std::vector<SuiteCheck> checks_;
};

struct SuiteRanges {
    Int n_lo = 1, n_hi = 40;          // partition sums for the partition suite
    Int search_lo = 1, search_hi = 60; // sums compared against the plain filter
    Int bounds_lo = 1, bounds_hi = 300;
    Int tri_lo = 1, tri_hi = 101;      // triangular indices for the maximal suite
    Int oracle_hi = 25;                // brute-force comparison stops here
    Int k_lo = 7, k_hi = 40;
};

inline std::string first_difference(const std::vector<DistinctPartition>& got,
                                    const std::vector<DistinctPartition>& want)
{
    std::vector<DistinctPartition> extra, lost;
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                        std::back_inserter(extra));
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                        std::back_inserter(lost));
    if (!extra.empty() && (lost.empty() || extra.front() < lost.front()))
        return "unexpected " + unrefinable::to_text(extra.front());
    if (!lost.empty())
        return "missing " + unrefinable::to_text(lost.front());
    return "order differs";
}

inline std::vector<SuiteCheck> partition_suite(const SuiteRanges& r)
{
    using namespace unrefinable;
    Recorder rec("partition");
    for (Int N = std::max<Int>(r.n_lo, 1); N <= r.n_hi; ++N) {
        EnumerationConstraints c;
        c.target_sum = N;
        for (auto s = enumerate_distinct(c); auto p = s.next();) {
            const auto info = analyze_missing(*p);
            const auto w = refinability_witness(*p);
            if (w) {
                const bool valid = w->smaller < w->larger && !p->contains(w->smaller)
                    && !p->contains(w->larger) && w->larger <= p->largest()
                    && p->contains(w->part) && w->part == w->smaller + w->larger;
                rec.record("witness_valid", valid, to_text(*p));
            } else {
                bool pair_free = true;
                for (std::size_t i = 0; i < info.missing.size() && pair_free; ++i)
                    for (std::size_t j = i + 1; j < info.missing.size(); ++j)
                        if (p->contains(info.missing[i] + info.missing[j])) {
                            pair_free = false;
                            break;
                        }
                rec.record("unrefinable_pair_free", pair_free, to_text(*p));
                rec.record("missing_bound", missing_bound_holds(*p), to_text(*p));
            }
            rec.record("mex", info.mex == mex(*p), to_text(*p));
        }
    }
    return rec.take();
}

inline std::vector<SuiteCheck> enumeration_suite(const SuiteRanges& r, unsigned threads)
{
    using namespace unrefinable;
    Recorder rec("enumeration");
    for (Int N = std::max<Int>(r.search_lo, 1); N <= r.search_hi; ++N) {
        EnumerationConstraints c;
        c.target_sum = N;
        c.unrefinable_only = true;
        const auto filtered = collect(enumerate_distinct(c));
        UnrefinableSearchOptions opt;
        opt.threads = threads;
        const auto searched = enumerate_unrefinable(N, opt);
        rec.record("search_matches_filter", searched == filtered,
                   "N=" + std::to_string(N) + " " + first_difference(searched, filtered));
    }
    for (Int N = std::max<Int>(r.bounds_lo, 1); N <= r.bounds_hi; ++N) {
        UnrefinableSearchOptions open;
        open.use_part_bounds = false;
        open.threads = threads;
        const auto all = enumerate_unrefinable(N, open);
        const auto ctx = triangular_context(N);
        const Int cap = ctx.d == 0 ? 2 * ctx.n - 4 : 2 * ctx.n - 2;
        for (const auto& p : all) {
            const Int top = p.largest();
            // The cap only applies once it exceeds n; small N keep top = n.
            const bool ok = top >= ctx.n && (top <= cap || top == ctx.n);
            rec.record("largest_part_bounds", ok, to_text(p));
            rec.record("missing_bound", missing_bound_holds(p), to_text(p));
        }
        UnrefinableSearchOptions windowed;
        windowed.threads = threads;
        const auto inside = enumerate_unrefinable(N, windowed);
        rec.record("window_is_complete", inside == all,
                   "N=" + std::to_string(N) + " " + first_difference(inside, all));
    }
    return rec.take();
}

inline std::vector<SuiteCheck> maximal_suite(const SuiteRanges& r, unsigned threads)
{
    using namespace unrefinable;
    Recorder rec("maximal");
    for (Int n = std::max<Int>(r.tri_lo, 1); n <= std::min(r.tri_hi, r.oracle_hi); ++n) {
        GenerationOptions opt;
        opt.threads = threads;
        const auto generated = generate_maximal(n, opt);
        const auto brute = maximal_unrefinable_bruteforce(triangular(n));
        rec.record("bruteforce_equivalence", generated == brute,
                   "n=" + std::to_string(n) + " " + first_difference(generated, brute));
    }
    for (Int n = std::max<Int>(r.tri_lo, 7); n <= r.tri_hi; ++n) {
        if (n % 2 == 0)
            continue;
        const std::string at = "n=" + std::to_string(n) + " ";
        std::map<MaximalClass, std::uint64_t> tally;
        std::vector<DistinctPartition> sorted;
        Int least_mex = std::numeric_limits<Int>::max();
        for_each_maximal(n, [&](const DistinctPartition& p, const MaximalClass& cls) {
            ++tally[cls];
            sorted.push_back(p);
            least_mex = std::min(least_mex, mex(p));
        });
        std::sort(sorted.begin(), sorted.end());
        for (const auto& p : sorted) {
            const auto cls = classify_maximal(p);
            rec.record("classified_unrefinable", is_unrefinable(p) && tally.count(cls) == 1,
                       at + to_text(p));
        }
        const Int floor = (n - 3) / 2;
        rec.record("min_mex", n == 7 ? least_mex >= floor : least_mex == floor,
                   at + "min mex " + std::to_string(least_mex));
        for (ClassTag tag : removal_classes) {
            const auto range = h_range(n, tag);
            for (Int h = 4; h <= range.h_max + 1; ++h) {
                const MaximalClass cls{tag, h};
                const auto found = tally.count(cls) ? tally.at(cls) : 0;
                const std::string where = at + cls.to_string() + " ";
                if (h < range.h_min || h > range.h_max) {
                    rec.record("h_range", found == 0, where + std::to_string(found));
                    continue;
                }
                const auto closed = class_count(n, tag, h);
                rec.record(h <= 5 ? "closed_form_h4_h5" : "class_count_h6", closed == found,
                           where + std::to_string(closed) + " vs " + std::to_string(found));
                rec.record("nonempty_threshold", (found > 0) == (n >= nonempty_threshold(tag, h)),
                           where + std::to_string(found));
                if (h >= 6) {
                    const auto fg = bounded_partition_count(fg_spec(n, h, tag));
                    rec.record("fg_identity", fg == found,
                               where + std::to_string(fg) + " vs " + std::to_string(found));
                }
            }
        }
    }
    return rec.take();
}

inline std::vector<SuiteCheck> bijection_suite(const SuiteRanges& r)
{
    using namespace unrefinable;
    Recorder rec("bijection");
    for (Int k = std::max<Int>(r.k_lo, 1); k <= r.k_hi; ++k) {
        const auto report = verify_bijection(k);
        for (const auto& c : report.checks)
            rec.record(c.name, c.passed, "k=" + std::to_string(k) + " " + c.detail);
    }
    return rec.take();
}

} // namespace cli
