#pragma once

// Exhaustive generation of partitions into distinct parts and of unrefinable
// partitions. These are the reference sets every constructive routine is
// checked against.

#include <algorithm>
#include <atomic>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "unrefinable/partition.hpp"

namespace unrefinable {

struct EnumerationConstraints {
    Int target_sum = 1;
    std::optional<Int> max_part;
    std::optional<Int> min_part;
    std::optional<Int> max_len;
    bool unrefinable_only = false;
    bool at_least_two_parts = false; // t >= 2
};

/// Lexicographically ascending stream of the distinct-part partitions of
/// `target_sum` meeting the constraints. Partitions are produced one at a
/// time by a successor function; nothing is materialized up front.
class DistinctPartitionStream {
public:
    explicit DistinctPartitionStream(const EnumerationConstraints& c) : c_(c)
    {
        if (c_.target_sum < 1)
            throw PartitionError(ErrorKind::DomainError, "target sum must be positive");
        lo_ = c_.min_part.value_or(1);
        hi_ = c_.max_part.value_or(c_.target_sum);
        slots_ = c_.max_len.value_or(c_.target_sum);
        if (lo_ < 1 || hi_ < lo_ || hi_ > c_.target_sum || slots_ < 1)
            throw PartitionError(ErrorKind::DomainError,
                                 "constraints need 1 <= min_part <= max_part <= target_sum");
    }

    /// Next partition in order, or nullopt once the stream is exhausted.
    std::optional<DistinctPartition> next()
    {
        while (advance()) {
            if (c_.at_least_two_parts && cur_.size() < 2)
                continue;
            auto p = DistinctPartition::from_ascending(cur_);
            if (c_.unrefinable_only && !is_unrefinable(p))
                continue;
            return p;
        }
        return std::nullopt;
    }

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = DistinctPartition;
        using difference_type = std::ptrdiff_t;
        using pointer = const DistinctPartition*;
        using reference = const DistinctPartition&;

        iterator() = default;
        explicit iterator(DistinctPartitionStream* s) : s_(s) { ++*this; }

        reference operator*() const { return *cur_; }
        pointer operator->() const { return &*cur_; }
        iterator& operator++()
        {
            cur_ = s_->next();
            if (!cur_)
                s_ = nullptr;
            return *this;
        }
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.s_ == b.s_; }

    private:
        DistinctPartitionStream* s_ = nullptr;
        std::optional<DistinctPartition> cur_;
    };

    iterator begin() { return iterator(this); }
    iterator end() { return iterator(); }

private:
    // Can `rest` be written as at most `slots` distinct parts in (after, hi_]?
    bool feasible(Int rest, Int after, Int slots) const
    {
        if (rest == 0)
            return true;
        const Int avail = std::min(slots, hi_ - after);
        for (Int k = 1; k <= avail; ++k) {
            const Int lo_sum = k * (after + 1) + k * (k - 1) / 2;
            if (lo_sum > rest)
                return false;
            const Int hi_sum = k * hi_ - k * (k - 1) / 2;
            if (rest <= hi_sum)
                return true;
        }
        return false;
    }

    // Appends the lexicographically least completion of `rest`.
    void complete(Int rest, Int after)
    {
        while (rest > 0) {
            const Int slots = slots_ - static_cast<Int>(cur_.size());
            Int y = after + 1;
            while (!feasible(rest - y, y, slots - 1))
                ++y;
            cur_.push_back(y);
            rest -= y;
            after = y;
        }
    }

    bool advance()
    {
        if (done_)
            return false;
        if (!started_) {
            started_ = true;
            if (!feasible(c_.target_sum, lo_ - 1, slots_)) {
                done_ = true;
                return false;
            }
            complete(c_.target_sum, lo_ - 1);
            return true;
        }
        Int prefix_sum = std::accumulate(cur_.begin(), cur_.end(), Int{0});
        for (auto i = static_cast<Int>(cur_.size()) - 1; i >= 0; --i) {
            const Int old = cur_[static_cast<std::size_t>(i)];
            prefix_sum -= old;
            const Int rest = c_.target_sum - prefix_sum;
            const Int slots = slots_ - i;
            for (Int x = old + 1; x <= std::min(hi_, rest); ++x) {
                if (feasible(rest - x, x, slots - 1)) {
                    cur_.resize(static_cast<std::size_t>(i));
                    cur_.push_back(x);
                    complete(rest - x, x);
                    return true;
                }
            }
        }
        done_ = true;
        return false;
    }

    EnumerationConstraints c_;
    Int lo_ = 1;
    Int hi_ = 1;
    Int slots_ = 1;
    std::vector<Int> cur_;
    bool started_ = false;
    bool done_ = false;
};

inline DistinctPartitionStream enumerate_distinct(const EnumerationConstraints& c)
{
    return DistinctPartitionStream(c);
}

inline std::vector<DistinctPartition> collect(DistinctPartitionStream stream)
{
    std::vector<DistinctPartition> out;
    while (auto p = stream.next())
        out.push_back(std::move(*p));
    return out;
}

struct UnrefinableSearchOptions {
    /// Restrict the largest part to max_part_bounds(N) and prune on the
    /// missing-part bound. Off means the largest part ranges over [1, N] and
    /// only the refinability check prunes.
    bool use_part_bounds = true;
    bool at_least_two_parts = false;
    std::optional<Int> fixed_largest;
    unsigned threads = 1;
};

namespace detail {

/// Depth-first search placing parts largest-first. Every value passed over
/// becomes a missing part and is immediately tested against the missing
/// parts above it: a refinement mu + nu = part with mu < nu always has
/// part > nu, so it is visible the moment mu is passed over.
class DescendingSearch {
public:
    DescendingSearch(Int target, bool missing_count_prune) : target_(target), missing_count_prune_(missing_count_prune) {}

    /// Search rooted at (largest, second); second == 0 means a single part.
    template <class Emit>
    void run_shard(Int largest, Int second, Emit& emit)
    {
        begin(largest);
        Int passed = largest - 1;
        bool ok = true;
        for (; passed > second; --passed)
            if (!pass_over(passed)) {
                ok = false;
                break;
            }
        if (ok) {
            if (second == 0) {
                if (target_ - largest == 0)
                    emit_current(emit);
            } else {
                place(second);
                descend(second - 1, target_ - largest - second, emit);
                unplace();
            }
        }
        for (Int u = largest - 1; u > passed; --u)
            restore(u);
    }

    /// Full search under a fixed largest part.
    template <class Emit>
    void run_root(Int largest, Emit& emit)
    {
        begin(largest);
        descend(largest - 1, target_ - largest, emit);
    }

    // Incremental pass-over used to list viable shards.
    void begin_probe(Int largest) { begin(largest); }
    bool probe_pass_over(Int v) { return pass_over(v); }

private:
    void begin(Int largest)
    {
        largest_ = largest;
        placed_.resize(static_cast<std::size_t>(largest) + 1);
        missing_.resize(static_cast<std::size_t>(largest) + 1);
        forced_.resize(static_cast<std::size_t>(largest) + 1);
        stack_.clear();
        forced_log_.clear();
        forced_marks_.clear();
        missing_count_ = 0;
        forced_sum_ = 0;
        place(largest);
    }

    void place(Int v)
    {
        placed_.set(static_cast<std::size_t>(v));
        stack_.push_back(v);
        if (forced_.test(static_cast<std::size_t>(v)))
            forced_sum_ -= v;
    }
    void unplace()
    {
        const Int v = stack_.back();
        placed_.reset(static_cast<std::size_t>(v));
        stack_.pop_back();
        if (forced_.test(static_cast<std::size_t>(v)))
            forced_sum_ += v;
    }

    // Records v as missing unless it completes a refinement. Once v is
    // missing, every undecided p - v with p placed has to become a part.
    bool pass_over(Int v)
    {
        if (forced_.test(static_cast<std::size_t>(v)))
            return false;
        if (missing_count_prune_ && 2 * (missing_count_ + 1) > largest_)
            return false;
        if (2 * v < largest_ && first_pair_hit(missing_, placed_, v, v + 1, largest_ - v) != 0)
            return false;
        missing_.set(static_cast<std::size_t>(v));
        ++missing_count_;
        const auto mark = forced_log_.size();
        for (auto it = stack_.rbegin(); it != stack_.rend() && *it < 2 * v; ++it) {
            const Int x = *it - v;
            if (!forced_.test(static_cast<std::size_t>(x))) {
                forced_.set(static_cast<std::size_t>(x));
                forced_sum_ += x;
                forced_log_.push_back(x);
            }
        }
        forced_marks_.push_back(mark);
        return true;
    }
    void restore(Int v)
    {
        missing_.reset(static_cast<std::size_t>(v));
        --missing_count_;
        const auto mark = forced_marks_.back();
        forced_marks_.pop_back();
        while (forced_log_.size() > mark) {
            const Int x = forced_log_.back();
            forced_log_.pop_back();
            forced_.reset(static_cast<std::size_t>(x));
            forced_sum_ -= x;
        }
    }

    template <class Emit>
    void emit_current(Emit& emit)
    {
        std::vector<Int> asc(stack_.rbegin(), stack_.rend());
        emit(DistinctPartition::from_ascending(std::move(asc)));
    }

    template <class Emit>
    void descend(Int v, Int rest, Emit& emit)
    {
        if (rest == 0) {
            Int u = v;
            for (; u >= 1; --u)
                if (!pass_over(u))
                    break;
            if (u == 0)
                emit_current(emit);
            for (Int w = v; w > u; --w)
                restore(w);
            return;
        }
        if (v < 1 || triangular(v) < rest || forced_sum_ > rest)
            return;
        if (v <= rest) {
            place(v);
            descend(v - 1, rest - v, emit);
            unplace();
        }
        if (pass_over(v)) {
            descend(v - 1, rest, emit);
            restore(v);
        }
    }

    Int target_;
    bool missing_count_prune_;
    Int largest_ = 0;
    BitRow placed_;
    BitRow missing_;
    BitRow forced_;
    std::vector<Int> stack_;
    std::vector<Int> forced_log_;
    std::vector<std::size_t> forced_marks_;
    Int missing_count_ = 0;
    Int forced_sum_ = 0;
};

struct Shard {
    Int largest;
    Int second;
};

inline std::pair<Int, Int> largest_part_window(Int N, const UnrefinableSearchOptions& opt)
{
    if (N < 1)
        throw PartitionError(ErrorKind::DomainError, "N must be positive");
    if (opt.fixed_largest) {
        if (*opt.fixed_largest < 1)
            throw PartitionError(ErrorKind::DomainError, "largest part must be positive");
        return {*opt.fixed_largest, *opt.fixed_largest};
    }
    if (opt.use_part_bounds) {
        const auto b = max_part_bounds(N);
        return {b.lower, b.upper};
    }
    return {1, N};
}

/// The search forest split by (largest part, second largest part). A shard
/// is listed only if passing over every value strictly between its two
/// parts leaves the partial partition refinement-free.
inline std::vector<Shard> shards_for(Int N, const UnrefinableSearchOptions& opt)
{
    std::vector<Shard> out;
    const auto [lo, hi] = largest_part_window(N, opt);
    DescendingSearch probe(N, opt.use_part_bounds);
    for (Int L = lo; L <= std::min(hi, N); ++L) {
        if (L == N) {
            out.push_back({L, 0});
            continue;
        }
        const Int rest = N - L;
        probe.begin_probe(L);
        for (Int s = L - 1; s >= 1; --s) {
            if (s <= rest) {
                if (rest - s > triangular(s - 1))
                    break;
                out.push_back({L, s});
            }
            if (!probe.probe_pass_over(s))
                break;
        }
    }
    return out;
}

inline unsigned worker_count(unsigned requested, std::size_t jobs)
{
    unsigned t = requested == 0 ? std::max(1U, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(jobs, 1)));
}

/// Runs `work(shard_index, worker_index)` over all shards on `threads` workers.
template <class Work>
void parallel_for_shards(std::size_t count, unsigned threads, Work&& work)
{
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            work(i, 0U);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = cursor++; i < count; i = cursor++)
                work(i, w);
        });
}

} // namespace detail

/// Visits every unrefinable partition of N in search order (largest part
/// ascending, then depth-first with larger parts first). Single-threaded and
/// streaming: nothing is retained between visits.
template <class Visitor>
void for_each_unrefinable(Int N, Visitor&& visit, const UnrefinableSearchOptions& opt = {})
{
    if (N < 1)
        throw PartitionError(ErrorKind::DomainError, "N must be positive");
    detail::DescendingSearch search(N, opt.use_part_bounds);
    auto emit = [&](DistinctPartition&& p) {
        if (opt.at_least_two_parts && !p.has_two_or_more_parts())
            return;
        visit(static_cast<const DistinctPartition&>(p));
    };
    const auto [lo, hi] = detail::largest_part_window(N, opt);
    for (Int L = lo; L <= std::min(hi, N); ++L)
        search.run_root(L, emit);
}

/// All unrefinable partitions of N, sorted lexicographically.
inline std::vector<DistinctPartition> enumerate_unrefinable(Int N,
                                                            const UnrefinableSearchOptions& opt = {})
{
    if (N < 1)
        throw PartitionError(ErrorKind::DomainError, "N must be positive");
    const auto shards = detail::shards_for(N, opt);
    const unsigned threads = detail::worker_count(opt.threads, shards.size());
    std::vector<std::vector<DistinctPartition>> found(shards.size());
    detail::parallel_for_shards(shards.size(), threads, [&](std::size_t i, unsigned) {
        detail::DescendingSearch search(N, opt.use_part_bounds);
        auto emit = [&](DistinctPartition&& p) {
            if (!opt.at_least_two_parts || p.has_two_or_more_parts())
                found[i].push_back(std::move(p));
        };
        search.run_shard(shards[i].largest, shards[i].second, emit);
    });
    std::vector<DistinctPartition> out;
    for (auto& f : found)
        std::move(f.begin(), f.end(), std::back_inserter(out));
    std::sort(out.begin(), out.end());
    return out;
}

/// |U_N|, without materializing the set. The result does not depend on the
/// number of threads.
inline std::uint64_t count_unrefinable(Int N, const UnrefinableSearchOptions& opt = {})
{
    if (N < 1)
        throw PartitionError(ErrorKind::DomainError, "N must be positive");
    const auto shards = detail::shards_for(N, opt);
    const unsigned threads = detail::worker_count(opt.threads, shards.size());
    std::vector<std::uint64_t> per_worker(threads, 0);
    detail::parallel_for_shards(shards.size(), threads, [&](std::size_t i, unsigned w) {
        detail::DescendingSearch search(N, opt.use_part_bounds);
        auto emit = [&](DistinctPartition&& p) {
            if (!opt.at_least_two_parts || p.has_two_or_more_parts())
                ++per_worker[w];
        };
        search.run_shard(shards[i].largest, shards[i].second, emit);
    });
    return std::accumulate(per_worker.begin(), per_worker.end(), std::uint64_t{0});
}

/// Unrefinable partitions of N whose largest part is as large as possible.
/// Scans the largest part downward from N without using any closed-form
/// bound, so it can serve as an oracle for the maximal-partition generator.
inline std::vector<DistinctPartition> maximal_unrefinable_bruteforce(Int N)
{
    if (N < 1)
        throw PartitionError(ErrorKind::DomainError, "N must be positive");
    detail::DescendingSearch search(N, false);
    std::vector<DistinctPartition> out;
    auto emit = [&](DistinctPartition&& p) { out.push_back(std::move(p)); };
    for (Int L = N; L >= 1 && out.empty(); --L)
        search.run_root(L, emit);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace unrefinable
