#pragma once

#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "unrefinable/unrefinable.hpp"

namespace testing_util {

inline std::vector<oracle::Parts> as_parts(const std::vector<unrefinable::DistinctPartition>& ps)
{
    std::vector<oracle::Parts> out;
    out.reserve(ps.size());
    for (const auto& p : ps)
        out.push_back(p.values());
    return out;
}

inline unrefinable::DistinctPartition P(std::vector<unrefinable::Int> v)
{
    return unrefinable::make_partition(std::move(v));
}

// Runs `f` and reports whether it threw a PartitionError of `kind`.
inline ::testing::AssertionResult throws_kind(const std::function<void()>& f,
                                              unrefinable::ErrorKind kind)
{
    try {
        f();
    } catch (const unrefinable::PartitionError& e) {
        if (e.kind() == kind)
            return ::testing::AssertionSuccess();
        return ::testing::AssertionFailure() << "threw " << to_string(e.kind()) << ": " << e.what();
    } catch (const std::exception& e) {
        return ::testing::AssertionFailure() << "threw a foreign exception: " << e.what();
    }
    return ::testing::AssertionFailure() << "did not throw";
}

} // namespace testing_util
