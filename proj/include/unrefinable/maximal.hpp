#pragma once

// Maximal unrefinable partitions of triangular numbers T_n: decomposition
// into removed parts and replacements, the A/B/C/D class taxonomy,
// constructive generation and the per-class counts.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unrefinable/enumeration.hpp"
#include "unrefinable/partition.hpp"

namespace unrefinable {

enum class ClassTag { Complete, PiTilde, A, B, C, D };

inline constexpr std::array<ClassTag, 4> removal_classes{ClassTag::A, ClassTag::B, ClassTag::C,
                                                         ClassTag::D};

inline std::string class_letter(ClassTag tag)
{
    switch (tag) {
    case ClassTag::A: return "A";
    case ClassTag::B: return "B";
    case ClassTag::C: return "C";
    case ClassTag::D: return "D";
    case ClassTag::Complete: return "complete";
    case ClassTag::PiTilde: return "pi_tilde";
    }
    return "?";
}

struct MaximalClass {
    ClassTag tag = ClassTag::Complete;
    Int h = 0; // number of removed parts; only meaningful for A/B/C/D

    /// "complete", "pi_tilde", "A4", "D6", ...
    std::string to_string() const
    {
        switch (tag) {
        case ClassTag::Complete:
        case ClassTag::PiTilde: return class_letter(tag);
        default: return class_letter(tag) + std::to_string(h);
        }
    }

    friend bool operator==(const MaximalClass&, const MaximalClass&) = default;
    friend auto operator<=>(const MaximalClass&, const MaximalClass&) = default;
};

inline std::optional<MaximalClass> parse_maximal_class(const std::string& s)
{
    if (s == "complete")
        return MaximalClass{ClassTag::Complete, 0};
    if (s == "pi_tilde")
        return MaximalClass{ClassTag::PiTilde, 0};
    if (s.size() < 2 || s[0] < 'A' || s[0] > 'D')
        return std::nullopt;
    try {
        std::size_t used = 0;
        const Int h = std::stoll(s.substr(1), &used);
        if (used != s.size() - 1 || h < 1)
            return std::nullopt;
        return MaximalClass{removal_classes[static_cast<std::size_t>(s[0] - 'A')], h};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

/// The three largest removed parts (a_{h-2}, a_{h-1}, a_h) fixing each class.
inline std::array<Int, 3> class_triple(ClassTag tag, Int n)
{
    switch (tag) {
    case ClassTag::A: return {n - 4, n - 3, n - 2};
    case ClassTag::B: return {n - 4, n - 2, n - 1};
    case ClassTag::C: return {n - 3, n - 2, n};
    case ClassTag::D: return {n - 2, n - 1, n};
    default: throw PartitionError(ErrorKind::DomainError, "only classes A-D have a triple");
    }
}

/// pi_n with parts a_1 < ... < a_h removed and alpha_1 < ... < alpha_j added.
struct RemovalSignature {
    Int n = 0;
    std::vector<Int> a;
    std::vector<Int> alpha;
    Int h() const noexcept { return static_cast<Int>(a.size()); }
    Int j() const noexcept { return static_cast<Int>(alpha.size()); }
};

namespace detail {

// Missing values up to n, and the parts above n; no validation.
inline RemovalSignature split_at(const DistinctPartition& p, Int n)
{
    RemovalSignature sig;
    sig.n = n;
    auto it = p.parts().begin();
    for (Int v = 1; v <= n; ++v) {
        if (it != p.parts().end() && *it == v)
            ++it;
        else
            sig.a.push_back(v);
    }
    sig.alpha.assign(it, p.parts().end());
    const Int removed = std::accumulate(sig.a.begin(), sig.a.end(), Int{0});
    const Int added = std::accumulate(sig.alpha.begin(), sig.alpha.end(), Int{0});
    if (removed != added)
        throw PartitionError(ErrorKind::NotTriangularSum, "removed and added parts differ in sum");
    return sig;
}

} // namespace detail

inline RemovalSignature removal_signature(const DistinctPartition& p, Int n)
{
    if (n < 1 || p.sum() != triangular(n))
        throw PartitionError(ErrorKind::NotTriangularSum,
                             "partition does not sum to T_" + std::to_string(n));
    if (p.largest() == n)
        throw PartitionError(ErrorKind::IsComplete, "the complete partition removes nothing");
    if (!is_unrefinable(p))
        throw PartitionError(ErrorKind::NotUnrefinable, "partition is refinable");
    return detail::split_at(p, n);
}

inline MaximalClass classify_maximal(const DistinctPartition& p)
{
    const auto n_opt = triangular_index(p.sum());
    if (!n_opt)
        throw PartitionError(ErrorKind::NotTriangularSum,
                             "sum " + std::to_string(p.sum()) + " is not triangular");
    const Int n = *n_opt;
    if (!is_unrefinable(p))
        throw PartitionError(ErrorKind::NotUnrefinable, "partition is refinable");
    if (n <= 5) {
        if (p.largest() != n)
            throw PartitionError(ErrorKind::NotMaximal, "only pi_n is unrefinable for n <= 5");
        return {ClassTag::Complete, 0};
    }
    if (p.largest() != 2 * n - 4)
        throw PartitionError(ErrorKind::NotMaximal,
                             "largest part " + std::to_string(p.largest()) + " differs from 2n-4 = "
                                 + std::to_string(2 * n - 4));
    // Largest part and sum already fixed, so 1..n-3 followed by n+1 pins it down.
    if (p.size() == static_cast<std::size_t>(n - 1) && p[n - 4] == n - 3 && p[n - 3] == n + 1)
        return {ClassTag::PiTilde, 0};

    const auto sig = detail::split_at(p, n);
    if (sig.h() >= 3) {
        const std::array<Int, 3> top{sig.a[sig.a.size() - 3], sig.a[sig.a.size() - 2],
                                     sig.a.back()};
        for (ClassTag tag : removal_classes)
            if (class_triple(tag, n) == top)
                return {tag, sig.h()};
    }
    throw PartitionError(ErrorKind::NotMaximal, "removed parts match no class triple");
}

struct HRange {
    Int h_min = 0;
    Int h_max = 0;
    friend bool operator==(const HRange&, const HRange&) = default;
};

namespace detail {

inline void require_odd_class_domain(Int n)
{
    if (n < 7 || n % 2 == 0)
        throw PartitionError(ErrorKind::DomainError,
                             "class machinery needs odd n >= 7, got " + std::to_string(n));
}

inline Int isqrt(Int x)
{
    auto r = static_cast<Int>(std::sqrt(static_cast<double>(x)));
    while (r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    return r;
}

// Offsets used by the h-range radicals and the nonemptiness thresholds.
inline Int radical_constant(ClassTag tag)
{
    switch (tag) {
    case ClassTag::A: return 5;
    case ClassTag::B: return 13;
    case ClassTag::C: return 21;
    case ClassTag::D: return 29;
    default: throw PartitionError(ErrorKind::DomainError, "only classes A-D have an h-range");
    }
}

inline Int threshold_constant(ClassTag tag)
{
    switch (tag) {
    case ClassTag::A: return 1;
    case ClassTag::B: return 3;
    case ClassTag::C: return 5;
    case ClassTag::D: return 7;
    default: throw PartitionError(ErrorKind::DomainError, "only classes A-D have thresholds");
    }
}

inline Int triple_sum(ClassTag tag, Int n)
{
    const auto t = class_triple(tag, n);
    return t[0] + t[1] + t[2];
}

/// Calls visit(span) for each ascending tuple of `len` distinct values in
/// [lo, hi] summing to `sum`, in lexicographic order.
template <class Visit>
void for_each_fixed_sum_tuple(Int len, Int lo, Int hi, Int sum, Visit&& visit)
{
    std::vector<Int> cur;
    cur.reserve(static_cast<std::size_t>(std::max<Int>(len, 0)));
    auto rec = [&](auto& self, Int remaining_len, Int from, Int rest) -> void {
        if (remaining_len == 0) {
            if (rest == 0)
                visit(std::span<const Int>(cur));
            return;
        }
        const Int k = remaining_len;
        for (Int v = from; v + k - 1 <= hi; ++v) {
            // smallest and largest sums of k distinct values with minimum v
            if (k * v + k * (k - 1) / 2 > rest)
                break;
            if (v + (k - 1) * hi - (k - 1) * (k - 2) / 2 < rest)
                continue;
            cur.push_back(v);
            self(self, k - 1, v + 1, rest - v);
            cur.pop_back();
        }
    };
    if (len < 0 || lo > hi + 1)
        return;
    rec(rec, len, lo, sum);
}

/// pi_n minus the removed parts (tuple and class triple) plus each mirror
/// 2n-4-a and the largest part 2n-4.
inline DistinctPartition assemble_maximal(Int n, std::span<const Int> tuple,
                                          const std::array<Int, 3>& triple)
{
    // tuple values stay below n - 4 and the triple starts at n - 4 or above,
    // so tuple then triple is already ascending.
    const std::size_t h = tuple.size() + 3;
    std::vector<Int> parts(static_cast<std::size_t>(n) - h + tuple.size() + 1);
    std::size_t out = 0;
    std::size_t next = 0;
    auto removed_at = [&](std::size_t i) { return i < tuple.size() ? tuple[i] : triple[i - tuple.size()]; };
    for (Int v = 1; v <= n; ++v) {
        if (next < h && removed_at(next) == v)
            ++next;
        else
            parts[out++] = v;
    }
    for (auto it = tuple.rbegin(); it != tuple.rend(); ++it)
        parts[out++] = 2 * n - 4 - *it;
    parts[out] = 2 * n - 4;
    return DistinctPartition::from_ascending(std::move(parts));
}

} // namespace detail

/// Range of h for which class `tag` can occur in MUP(T_n).
inline HRange h_range(Int n, ClassTag tag)
{
    detail::require_odd_class_domain(n);
    const Int s = detail::isqrt(detail::radical_constant(tag) + 4 * n);
    return {tag == ClassTag::D ? 5 : 4, (1 + s) / 2};
}

/// Smallest odd n for which class (tag, h) is nonempty: fixed values at
/// h = 4 and 5, then h^2 - h - c for h >= 6.
inline Int nonempty_threshold(ClassTag tag, Int h)
{
    if (h < 4)
        throw PartitionError(ErrorKind::DomainError, "classes start at h = 4");
    if (h == 4) {
        switch (tag) {
        case ClassTag::A:
        case ClassTag::B: return 11;
        case ClassTag::C: return 9;
        case ClassTag::D: return std::numeric_limits<Int>::max(); // never populated
        default: break;
        }
    } else if (h == 5) {
        switch (tag) {
        case ClassTag::A: return 19;
        case ClassTag::B:
        case ClassTag::D: return 17;
        case ClassTag::C: return 15;
        default: break;
        }
    } else {
        return h * h - h - detail::threshold_constant(tag);
    }
    throw PartitionError(ErrorKind::DomainError, "only classes A-D have thresholds");
}

/// Smallest first removed part a_1 reached by each class's construction.
inline Int minimal_a1(Int n, ClassTag tag, Int h)
{
    if (h == 4) {
        switch (tag) {
        case ClassTag::C: return (n - 3) / 2;
        case ClassTag::B: return (n - 1) / 2;
        case ClassTag::A: return (n + 1) / 2;
        default: break;
        }
    } else if (h == 5) {
        switch (tag) {
        case ClassTag::D:
        case ClassTag::C: return (n + 3) / 2;
        case ClassTag::B: return (n + 5) / 2;
        case ClassTag::A: return (n + 7) / 2;
        default: break;
        }
    } else if (h >= 6) {
        const Int base = n + h * h - 3 * h;
        switch (tag) {
        case ClassTag::D: return (base - 9) / 2;
        case ClassTag::C: return (base - 7) / 2;
        case ClassTag::B: return (base - 5) / 2;
        case ClassTag::A: return (base - 3) / 2;
        default: break;
        }
    }
    throw PartitionError(ErrorKind::DomainError, "no construction for this class and h");
}

struct GenerationOptions {
    /// Lower bound for the removed parts a_1..a_{h-3}. Defaults to
    /// ceil((n-3)/2), the minimal-excludant bound; 1 searches everything.
    std::optional<Int> tuple_floor;
    /// Also try h from 4 up to h_max + 2 in every class.
    bool widen_h = false;
    unsigned threads = 1;
};

/// Tuples accepted and rejected by the unrefinability filter, per class.
struct GenerationStats {
    std::map<MaximalClass, std::uint64_t> accepted;
    std::map<MaximalClass, std::uint64_t> rejected;
};

/// Streams MUP(T_n) as (partition, class) pairs: pi_tilde first, then the
/// classes A..D with h ascending and tuples in lexicographic order.
template <class Visitor>
void for_each_maximal(Int n, Visitor&& visit, const GenerationOptions& opt = {},
                      GenerationStats* stats = nullptr)
{
    if (n < 1)
        throw PartitionError(ErrorKind::DomainError, "n must be positive");
    if (n <= 5) {
        visit(complete_partition(n), MaximalClass{ClassTag::Complete, 0});
        return;
    }
    visit(pi_tilde(n), MaximalClass{ClassTag::PiTilde, 0});
    if (n % 2 == 0)
        return;
    const Int floor = opt.tuple_floor.value_or((n - 2) / 2);
    for (ClassTag tag : removal_classes) {
        const auto range = h_range(n, tag);
        const Int h_lo = opt.widen_h ? 4 : range.h_min;
        const Int h_hi = opt.widen_h ? range.h_max + 2 : range.h_max;
        const auto triple = class_triple(tag, n);
        for (Int h = h_lo; h <= h_hi; ++h) {
            const Int twice = (h - 2) * (2 * n - 4) - detail::triple_sum(tag, n);
            if (twice < 0 || twice % 2 != 0)
                continue;
            const MaximalClass cls{tag, h};
            detail::for_each_fixed_sum_tuple(h - 3, floor, n - 5, twice / 2,
                                             [&](std::span<const Int> tuple) {
                auto p = detail::assemble_maximal(n, tuple, triple);
                const bool ok = is_unrefinable(p);
                if (stats)
                    ++(ok ? stats->accepted : stats->rejected)[cls];
                if (ok)
                    visit(static_cast<const DistinctPartition&>(p), cls);
            });
        }
    }
}

/// MUP(T_n), sorted lexicographically.
inline std::vector<DistinctPartition> generate_maximal(Int n, const GenerationOptions& opt = {})
{
    if (opt.threads <= 1 || n < 7 || n % 2 == 0) {
        std::vector<DistinctPartition> out;
        for_each_maximal(n, [&](const DistinctPartition& p, const MaximalClass&) {
            out.push_back(p);
        }, opt);
        std::sort(out.begin(), out.end());
        return out;
    }
    // One job per (class, h); every job restarts the stream filtered to its pair.
    std::vector<MaximalClass> jobs;
    for (ClassTag tag : removal_classes) {
        const auto r = h_range(n, tag);
        for (Int h = opt.widen_h ? 4 : r.h_min; h <= (opt.widen_h ? r.h_max + 2 : r.h_max); ++h)
            jobs.push_back({tag, h});
    }
    std::vector<std::vector<DistinctPartition>> found(jobs.size());
    const Int floor = opt.tuple_floor.value_or((n - 2) / 2);
    detail::parallel_for_shards(jobs.size(), detail::worker_count(opt.threads, jobs.size()),
                                [&](std::size_t i, unsigned) {
        const auto [tag, h] = jobs[i];
        const Int twice = (h - 2) * (2 * n - 4) - detail::triple_sum(tag, n);
        if (twice < 0 || twice % 2 != 0)
            return;
        const auto triple = class_triple(tag, n);
        detail::for_each_fixed_sum_tuple(h - 3, floor, n - 5, twice / 2,
                                         [&](std::span<const Int> tuple) {
            auto p = detail::assemble_maximal(n, tuple, triple);
            if (is_unrefinable(p))
                found[i].push_back(std::move(p));
        });
    });
    std::vector<DistinctPartition> out{pi_tilde(n)};
    for (auto& f : found)
        std::move(f.begin(), f.end(), std::back_inserter(out));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::uint64_t count_maximal(Int n)
{
    std::uint64_t total = 0;
    for_each_maximal(n, [&](const DistinctPartition&, const MaximalClass&) { ++total; });
    return total;
}

/// #(MUP(T_n) ∩ class_h). Closed forms for h = 4 and h = 5; for h >= 6 zero
/// below the quadratic threshold and otherwise the number of fixed-sum
/// tuples (a_1, ..., a_{h-3}) between ceil((n-3)/2) and n-5.
inline std::uint64_t class_count(Int n, ClassTag tag, Int h)
{
    detail::require_odd_class_domain(n);
    if (tag == ClassTag::Complete || tag == ClassTag::PiTilde)
        throw PartitionError(ErrorKind::DomainError, "class_count covers classes A-D");
    if (h < 4)
        throw PartitionError(ErrorKind::DomainError, "classes start at h = 4");
    const Int threshold = nonempty_threshold(tag, h);
    if (n < threshold)
        return 0;
    if (h == 4)
        return 1;
    if (h == 5) {
        const Int k = (n - threshold) / 2;
        return static_cast<std::uint64_t>(k / 2 + 1);
    }
    const Int twice = (h - 2) * (2 * n - 4) - detail::triple_sum(tag, n);
    std::uint64_t count = 0;
    detail::for_each_fixed_sum_tuple(h - 3, (n - 2) / 2, n - 5, twice / 2,
                                     [&](std::span<const Int>) { ++count; });
    return count;
}

/// Smallest minimal excludant over MUP(T_n).
inline Int min_mex_maximal(Int n)
{
    detail::require_odd_class_domain(n);
    Int best = std::numeric_limits<Int>::max();
    for_each_maximal(n, [&](const DistinctPartition& p, const MaximalClass&) {
        best = std::min(best, mex(p));
    });
    return best;
}

/// Partitions of `total` into exactly `parts` distinct values, each at most `max_part`.
struct BoundedCountSpec {
    Int total = 0;
    Int parts = 0;
    Int max_part = 0;
    friend bool operator==(const BoundedCountSpec&, const BoundedCountSpec&) = default;
};

/// f(n, h) and g(n, h) for the class, with h - 3 parts.
inline BoundedCountSpec fg_spec(Int n, Int h, ClassTag tag)
{
    detail::require_odd_class_domain(n);
    if (h < 4)
        throw PartitionError(ErrorKind::DomainError, "classes start at h = 4");
    // Per class: coefficient shift on (n + c1) h, constant c2 in f, constant c3 in g.
    Int c1 = 0, c2 = 0, c3 = 0;
    switch (tag) {
    case ClassTag::A: c1 = -8; c2 = 2; c3 = -5; break;
    case ClassTag::B: c1 = -6; c2 = -6; c3 = -3; break;
    case ClassTag::C: c1 = -4; c2 = -14; c3 = -1; break;
    case ClassTag::D: c1 = -2; c2 = -22; c3 = 1; break;
    default: throw PartitionError(ErrorKind::DomainError, "fg_spec covers classes A-D");
    }
    const Int f2 = -h * h * h + 6 * h * h + (n + c1) * h - 4 * n + c2;
    const Int g2 = n - h * h + 3 * h + c3;
    // Both numerators are even for odd n; floor division keeps negative
    // values negative so they read as infeasible.
    auto half = [](Int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); };
    return {half(f2), h - 3, half(g2)};
}

inline std::uint64_t bounded_partition_count(const BoundedCountSpec& spec)
{
    if (spec.total < 0 || spec.parts < 0 || spec.max_part < 0)
        return 0;
    if (spec.parts == 0)
        return spec.total == 0 ? 1 : 0;
    const auto total = static_cast<std::size_t>(spec.total);
    const auto parts = static_cast<std::size_t>(spec.parts);
    // ways[c][s]: sets of c distinct values from the values seen so far summing to s
    std::vector<std::vector<std::uint64_t>> ways(parts + 1, std::vector<std::uint64_t>(total + 1, 0));
    ways[0][0] = 1;
    for (Int v = 1; v <= std::min(spec.max_part, spec.total); ++v) {
        const auto uv = static_cast<std::size_t>(v);
        for (std::size_t c = parts; c >= 1; --c)
            for (std::size_t s = total; s >= uv; --s)
                if (__builtin_add_overflow(ways[c][s], ways[c - 1][s - uv], &ways[c][s]))
                    throw PartitionError(ErrorKind::DomainError, "count overflows 64 bits");
    }
    return ways[parts][total];
}

} // namespace unrefinable
