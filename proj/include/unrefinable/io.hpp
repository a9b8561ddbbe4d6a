#pragma once

// Serialization: JSON arrays, comma-separated text, CSV rows and inclusive
// integer ranges written "a..b".

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "unrefinable/partition.hpp"

namespace unrefinable::io {

inline nlohmann::json to_json(const DistinctPartition& p) { return nlohmann::json(p.values()); }

/// "[1,2,4,5,8,11,14]"
inline std::string to_json_text(const DistinctPartition& p) { return to_json(p).dump(); }

inline DistinctPartition partition_from_json(const nlohmann::json& j)
{
    if (!j.is_array())
        throw PartitionError(ErrorKind::DomainError, "expected a JSON array of integers");
    std::vector<Int> values;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw PartitionError(ErrorKind::DomainError, "non-integer entry " + v.dump());
        values.push_back(v.get<Int>());
    }
    return make_partition(std::move(values));
}

inline DistinctPartition parse_json_partition(std::string_view text)
{
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw PartitionError(ErrorKind::DomainError, "malformed JSON: " + std::string(text));
    return partition_from_json(j);
}

inline std::optional<Int> parse_int(std::string_view s)
{
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    Int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        return std::nullopt;
    return v;
}

/// "1,2,4" (any order; validated and sorted).
inline DistinctPartition parse_text_partition(std::string_view text, char sep = ',')
{
    std::vector<Int> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(sep, start), text.size());
        const auto v = parse_int(text.substr(start, end - start));
        if (!v)
            throw PartitionError(ErrorKind::DomainError,
                                 "bad part '" + std::string(text.substr(start, end - start)) + "'");
        values.push_back(*v);
        start = end + 1;
    }
    return make_partition(std::move(values));
}

struct IntRange {
    Int first = 0;
    Int last = 0;
    friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// "7..40" or a single "45".
inline std::optional<IntRange> parse_range(std::string_view s)
{
    const auto dots = s.find("..");
    if (dots == std::string_view::npos) {
        auto v = parse_int(s);
        if (!v)
            return std::nullopt;
        return IntRange{*v, *v};
    }
    auto a = parse_int(s.substr(0, dots));
    auto b = parse_int(s.substr(dots + 2));
    if (!a || !b || *a > *b)
        return std::nullopt;
    return IntRange{*a, *b};
}

inline const char* csv_header() { return "parts,N,t,lambda_t,m,mex"; }

/// parts joined by ';' in the first field, then N, t, largest part, m, mex.
inline std::string csv_row(const DistinctPartition& p)
{
    std::ostringstream os;
    os << to_text(p, ';') << ',' << p.sum() << ',' << p.size() << ',' << p.largest() << ','
       << (p.largest() - static_cast<Int>(p.size())) << ',' << mex(p);
    return os.str();
}

} // namespace unrefinable::io
