#pragma once

// Row-oriented output in four formats. Every command builds rows of named
// JSON values and hands them to an Emitter, which keeps column order stable.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "unrefinable/partition.hpp"

namespace cli {

enum class Format { Text, Jsonl, Csv, Table };

inline std::optional<Format> parse_format(const std::string& s)
{
    if (s == "text")
        return Format::Text;
    if (s == "jsonl")
        return Format::Jsonl;
    if (s == "csv")
        return Format::Csv;
    if (s == "table")
        return Format::Table;
    return std::nullopt;
}

using Row = std::vector<std::pair<std::string, nlohmann::json>>;

inline nlohmann::json parts_json(const unrefinable::DistinctPartition& p)
{
    return nlohmann::json(p.values());
}

// Scalars print bare, arrays of integers join with ';', null prints empty.
inline std::string cell(const nlohmann::json& v)
{
    if (v.is_null())
        return "";
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                out += ';';
            out += cell(v[i]);
        }
        return out;
    }
    return v.dump();
}

class Emitter {
public:
    Emitter(Format f, std::ostream& os) : format_(f), os_(os) {}
    Emitter(const Emitter&) = delete;
    Emitter& operator=(const Emitter&) = delete;
    ~Emitter() { finish(); }

    void row(const Row& r)
    {
        switch (format_) {
        case Format::Jsonl: {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (const auto& [k, v] : r)
                obj[k] = v;
            os_ << obj.dump() << '\n';
            break;
        }
        case Format::Csv:
            if (!header_done_) {
                write_joined(r, ',', true);
                header_done_ = true;
            }
            write_joined(r, ',', false);
            break;
        case Format::Text:
            write_joined(r, ' ', false);
            break;
        case Format::Table:
            buffered_.push_back(r);
            break;
        }
    }

    void finish()
    {
        if (format_ != Format::Table || buffered_.empty())
            return;
        const auto& head = buffered_.front();
        std::vector<std::size_t> width(head.size());
        for (std::size_t c = 0; c < head.size(); ++c)
            width[c] = head[c].first.size();
        for (const auto& r : buffered_)
            for (std::size_t c = 0; c < r.size() && c < width.size(); ++c)
                width[c] = std::max(width[c], cell(r[c].second).size());
        auto line = [&](auto&& text_of) {
            std::string out;
            for (std::size_t c = 0; c < width.size(); ++c) {
                std::string t = text_of(c);
                if (c + 1 < width.size())
                    t.resize(width[c], ' ');
                out += t;
                if (c + 1 < width.size())
                    out += "  ";
            }
            os_ << out << '\n';
        };
        line([&](std::size_t c) { return head[c].first; });
        for (const auto& r : buffered_)
            line([&](std::size_t c) { return c < r.size() ? cell(r[c].second) : std::string(); });
        buffered_.clear();
    }

private:
    void write_joined(const Row& r, char sep, bool header)
    {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i)
                os_ << sep;
            os_ << (header ? r[i].first : cell(r[i].second));
        }
        os_ << '\n';
    }

    Format format_;
    std::ostream& os_;
    bool header_done_ = false;
    std::vector<Row> buffered_;
};

} // namespace cli
