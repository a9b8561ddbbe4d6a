#pragma once

// Partitions into distinct parts, missing parts and the unrefinability
// predicate, plus the canonical partitions of triangular numbers.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unrefinable/error.hpp"

namespace unrefinable {

using Int = std::int64_t;

constexpr Int triangular(Int n) noexcept { return n * (n + 1) / 2; }

namespace detail {

/// Growable bit row indexed from 0. `window(pos)` reads 64 consecutive bits
/// starting at an arbitrary position, which is what the pair-sum scans need.
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(std::size_t bits) : words_((bits + 63) / 64 + 1, 0) {}

    void resize(std::size_t bits) { words_.assign((bits + 63) / 64 + 1, 0); }

    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const noexcept
    {
        return (i >> 6) < words_.size() && ((words_[i >> 6] >> (i & 63)) & 1U);
    }

    std::size_t word_count() const noexcept { return words_.size(); }
    std::uint64_t word(std::size_t i) const noexcept { return words_[i]; }
    std::uint64_t& word(std::size_t i) noexcept { return words_[i]; }

    std::uint64_t window(std::size_t pos) const noexcept
    {
        const std::size_t w = pos >> 6;
        const unsigned shift = pos & 63;
        if (w >= words_.size())
            return 0;
        std::uint64_t lo = words_[w] >> shift;
        if (shift != 0 && w + 1 < words_.size())
            lo |= words_[w + 1] << (64 - shift);
        return lo;
    }

private:
    std::vector<std::uint64_t> words_;
};

inline std::uint64_t low_mask(Int count) noexcept
{
    return count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
}

/// Smallest v in [first, last] with missing[v] && parts[v + shift], or 0.
inline Int first_pair_hit(const BitRow& missing, const BitRow& parts, Int shift, Int first,
                          Int last) noexcept
{
    for (Int base = first; base <= last; base += 64) {
        std::uint64_t w = missing.window(static_cast<std::size_t>(base))
            & parts.window(static_cast<std::size_t>(base + shift));
        w &= low_mask(last - base + 1);
        if (w != 0)
            return base + std::countr_zero(w);
    }
    return 0;
}

} // namespace detail

/// A partition into distinct parts, stored ascending. Length one is allowed
/// here; `has_two_or_more_parts()` marks the t >= 2 convention.
class DistinctPartition {
public:
    DistinctPartition() = default;

    /// Validating factory: any order in, ascending out.
    static DistinctPartition from_values(std::vector<Int> values)
    {
        if (values.empty())
            throw PartitionError(ErrorKind::EmptyPartition, "a partition needs at least one part");
        for (Int v : values)
            if (v <= 0)
                throw PartitionError(ErrorKind::NonPositivePart,
                                     "part " + std::to_string(v) + " is not positive");
        std::sort(values.begin(), values.end());
        auto dup = std::adjacent_find(values.begin(), values.end());
        if (dup != values.end())
            throw PartitionError(ErrorKind::DuplicatePart,
                                 "part " + std::to_string(*dup) + " appears more than once");
        return DistinctPartition(std::move(values));
    }

    /// Trusted constructor for generators that already produce strictly
    /// increasing positive parts.
    static DistinctPartition from_ascending(std::vector<Int> ascending)
    {
        return DistinctPartition(std::move(ascending));
    }

    std::span<const Int> parts() const noexcept { return parts_; }
    const std::vector<Int>& values() const noexcept { return parts_; }
    std::size_t size() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    Int largest() const noexcept { return parts_.empty() ? 0 : parts_.back(); }
    Int smallest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }
    Int sum() const noexcept { return sum_; }
    Int operator[](std::size_t i) const noexcept { return parts_[i]; }

    bool has_two_or_more_parts() const noexcept { return parts_.size() >= 2; }

    bool contains(Int v) const noexcept
    {
        return std::binary_search(parts_.begin(), parts_.end(), v);
    }

    friend bool operator==(const DistinctPartition& a, const DistinctPartition& b)
    {
        return a.parts_ == b.parts_;
    }
    friend std::strong_ordering operator<=>(const DistinctPartition& a, const DistinctPartition& b)
    {
        return std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(),
                                                      b.parts_.begin(), b.parts_.end());
    }

private:
    explicit DistinctPartition(std::vector<Int> ascending) : parts_(std::move(ascending))
    {
        for (Int v : parts_)
            if (__builtin_add_overflow(sum_, v, &sum_))
                throw PartitionError(ErrorKind::DomainError, "sum of parts overflows 64 bits");
    }

    std::vector<Int> parts_;
    Int sum_ = 0;
};

/// Text form: parts joined by commas, e.g. "1,2,4,5,8,11,14".
inline std::string to_text(const DistinctPartition& p, char sep = ',')
{
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            out += sep;
        out += std::to_string(p[i]);
    }
    return out;
}

inline DistinctPartition make_partition(std::vector<Int> values)
{
    return DistinctPartition::from_values(std::move(values));
}

struct MissingAnalysis {
    std::vector<Int> missing; // ascending, inside [1, largest part]
    std::size_t m = 0;
    Int mex = 0;              // 0 when nothing is missing
};

inline MissingAnalysis analyze_missing(const DistinctPartition& p)
{
    MissingAnalysis out;
    auto it = p.parts().begin();
    for (Int v = 1; v <= p.largest(); ++v) {
        if (it != p.parts().end() && *it == v)
            ++it;
        else
            out.missing.push_back(v);
    }
    out.m = out.missing.size();
    out.mex = out.missing.empty() ? 0 : out.missing.front();
    return out;
}

/// Smallest value in [1, largest part] that is not a part; 0 for complete partitions.
inline Int mex(const DistinctPartition& p) noexcept
{
    Int expect = 1;
    for (Int v : p.parts()) {
        if (v != expect)
            return expect;
        ++expect;
    }
    return 0;
}

/// Two distinct missing parts whose sum is a part: smaller + larger == part.
struct RefinementWitness {
    Int smaller = 0;
    Int larger = 0;
    Int part = 0;
    friend bool operator==(const RefinementWitness&, const RefinementWitness&) = default;
};

/// Lexicographically least (smaller, larger, part) refinement, if any.
inline std::optional<RefinementWitness> refinability_witness(const DistinctPartition& p)
{
    const Int top = p.largest();
    if (top < 3)
        return std::nullopt;
    thread_local detail::BitRow parts;
    thread_local detail::BitRow missing;
    const auto bits = static_cast<std::size_t>(top) + 1;
    parts.resize(bits);
    missing.resize(bits);
    for (Int v : p.parts())
        parts.set(static_cast<std::size_t>(v));
    // missing = complement of parts on [1, top]
    for (std::size_t i = 0; i < missing.word_count(); ++i) {
        const Int base = static_cast<Int>(i) * 64;
        std::uint64_t w = ~parts.word(i) & detail::low_mask(std::max<Int>(0, top + 1 - base));
        if (i == 0)
            w &= ~std::uint64_t{1};
        missing.word(i) = w;
    }
    // A violating pair has smaller < top / 2.
    const Int limit = (top - 1) / 2;
    for (std::size_t i = 0; static_cast<Int>(i) * 64 <= limit; ++i) {
        std::uint64_t w = missing.word(i);
        while (w != 0) {
            const Int mu = static_cast<Int>(i) * 64 + std::countr_zero(w);
            if (mu > limit)
                return std::nullopt;
            if (Int nu = detail::first_pair_hit(missing, parts, mu, mu + 1, top - mu))
                return RefinementWitness{mu, nu, mu + nu};
            w &= w - 1;
        }
    }
    return std::nullopt;
}

inline bool is_unrefinable(const DistinctPartition& p)
{
    return !refinability_witness(p).has_value();
}

/// Unrefinable partitions have at most floor(largest / 2) missing parts.
inline bool missing_bound_holds(const DistinctPartition& p)
{
    const Int m = p.largest() - static_cast<Int>(p.size());
    return m <= p.largest() / 2;
}

/// (1, 2, ..., n)
inline DistinctPartition complete_partition(Int n)
{
    if (n < 1)
        throw PartitionError(ErrorKind::DomainError, "complete partition needs n >= 1");
    std::vector<Int> parts(static_cast<std::size_t>(n));
    std::iota(parts.begin(), parts.end(), Int{1});
    return DistinctPartition::from_ascending(std::move(parts));
}

/// (1, 2, ..., n) with the part d removed; a partition of T_n - d.
inline DistinctPartition near_complete(Int n, Int d)
{
    if (n < 2 || d < 1 || d > n - 1)
        throw PartitionError(ErrorKind::DomainError,
                             "near-complete partition needs 1 <= d <= n - 1");
    std::vector<Int> parts;
    parts.reserve(static_cast<std::size_t>(n - 1));
    for (Int v = 1; v <= n; ++v)
        if (v != d)
            parts.push_back(v);
    return DistinctPartition::from_ascending(std::move(parts));
}

/// (1, 2, ..., n-3, n+1, 2n-4): the maximal unrefinable partition of T_n
/// present for every n >= 6.
inline DistinctPartition pi_tilde(Int n)
{
    if (n < 6)
        throw PartitionError(ErrorKind::DomainError, "pi_tilde needs n >= 6");
    std::vector<Int> parts;
    parts.reserve(static_cast<std::size_t>(n - 1));
    for (Int v = 1; v <= n - 3; ++v)
        parts.push_back(v);
    parts.push_back(n + 1);
    parts.push_back(2 * n - 4);
    return DistinctPartition::from_ascending(std::move(parts));
}

/// Position of N between consecutive triangular numbers: T_{n-1} < N <= T_n.
struct TriangularContext {
    Int n = 0;
    Int tn = 0;
    Int d = 0; // T_n - N, zero iff N is triangular
    bool is_triangular() const noexcept { return d == 0; }
    friend bool operator==(const TriangularContext&, const TriangularContext&) = default;
};

inline TriangularContext triangular_context(Int N)
{
    if (N < 1)
        throw PartitionError(ErrorKind::DomainError, "N must be positive");
    auto n = static_cast<Int>((std::sqrt(8.0 * static_cast<double>(N) + 1.0) - 1.0) / 2.0);
    if (n < 1)
        n = 1;
    while (triangular(n) < N)
        ++n;
    while (n > 1 && triangular(n - 1) >= N)
        --n;
    return TriangularContext{n, triangular(n), triangular(n) - N};
}

/// Index n with T_n == N, if N is triangular.
inline std::optional<Int> triangular_index(Int N)
{
    if (N < 1)
        return std::nullopt;
    const auto ctx = triangular_context(N);
    if (!ctx.is_triangular())
        return std::nullopt;
    return ctx.n;
}

struct PartBounds {
    Int lower = 0;
    Int upper = 0;
    friend bool operator==(const PartBounds&, const PartBounds&) = default;
};

namespace detail {
// Extremes of the largest part over all unrefinable partitions of N, N = 1..20,
// taken from exhaustive enumeration (the closed forms need n >= 6).
inline constexpr std::array<std::pair<Int, Int>, 20> small_part_bounds{{
    {1, 1}, {2, 2}, {2, 2}, {3, 3}, {3, 4}, {3, 3}, {4, 4}, {4, 5}, {4, 6}, {4, 4},
    {5, 6}, {5, 6}, {5, 7}, {5, 8}, {5, 5}, {6, 8}, {6, 7}, {6, 8}, {6, 9}, {6, 10},
}};
} // namespace detail

/// Interval containing the largest part of every unrefinable partition of N.
inline PartBounds max_part_bounds(Int N)
{
    if (N < 1)
        throw PartitionError(ErrorKind::DomainError, "N must be positive");
    if (N <= static_cast<Int>(detail::small_part_bounds.size())) {
        const auto [lo, hi] = detail::small_part_bounds[static_cast<std::size_t>(N - 1)];
        return {lo, hi};
    }
    const auto ctx = triangular_context(N);
    return ctx.is_triangular() ? PartBounds{ctx.n, 2 * ctx.n - 4} : PartBounds{ctx.n, 2 * ctx.n - 2};
}

} // namespace unrefinable
