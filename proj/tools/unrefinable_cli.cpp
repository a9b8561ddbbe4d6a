// unrefinable: enumerate, count, classify and map unrefinable partitions.
//
// Exit status: 0 on success, 1 when a verification suite fails, 2 on usage
// errors (bad flags, malformed ranges or partitions, inputs outside a
// command's domain).

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emit.hpp"
#include "suites.hpp"
#include "unrefinable/unrefinable.hpp"

namespace {

using namespace unrefinable;
using cli::Emitter;
using cli::Format;
using cli::Row;

constexpr Int kMaxArgument = Int{1} << 31;
constexpr int kUsage = 2;
constexpr int kFailed = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

io::IntRange range_arg(const std::string& flag, const std::string& text, Int min_value)
{
    const auto r = io::parse_range(text);
    if (!r)
        throw UsageError(flag + ": expected an integer or a range a..b, got '" + text + "'");
    if (r->first < min_value || r->last > kMaxArgument)
        throw UsageError(flag + ": values must lie in [" + std::to_string(min_value) + ", 2^31]");
    return *r;
}

Format format_arg(const std::string& text)
{
    const auto f = cli::parse_format(text);
    if (!f)
        throw UsageError("--format: expected text, jsonl, csv or table");
    return *f;
}

Row partition_row(const DistinctPartition& p)
{
    return {{"parts", cli::parts_json(p)},
            {"N", p.sum()},
            {"t", p.size()},
            {"lambda_t", p.largest()},
            {"m", p.largest() - static_cast<Int>(p.size())},
            {"mex", mex(p)}};
}

// Sums named either directly (--N) or as triangular indices (--tri).
std::vector<Int> sums_from(const std::string& N_text, const std::string& tri_text)
{
    if (N_text.empty() == tri_text.empty())
        throw UsageError("give exactly one of --N and --tri");
    std::vector<Int> out;
    if (!N_text.empty()) {
        const auto r = range_arg("--N", N_text, 1);
        for (Int N = r.first; N <= r.last; ++N)
            out.push_back(N);
    } else {
        const auto r = range_arg("--tri", tri_text, 1);
        if (r.last > 65535)
            throw UsageError("--tri: T_n must stay below 2^31");
        for (Int n = r.first; n <= r.last; ++n)
            out.push_back(triangular(n));
    }
    return out;
}

struct Common {
    std::string format = "text";
    unsigned threads = 1;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format)
{
    c.format = default_format;
    sub->add_option("--format", c.format, "text | jsonl | csv | table")->capture_default_str();
    sub->add_option("--threads", c.threads, "worker threads")
        ->check(CLI::Range(1U, 1024U))
        ->capture_default_str();
}

struct EnumerateArgs {
    Common common;
    std::string N, tri;
    bool all_distinct = false;
    bool at_least_two = false;
    bool exhaustive = false;
    std::optional<Int> largest;
};

int run_enumerate(const EnumerateArgs& a)
{
    Emitter out(format_arg(a.common.format), std::cout);
    for (Int N : sums_from(a.N, a.tri)) {
        if (a.all_distinct) {
            EnumerationConstraints c;
            c.target_sum = N;
            c.at_least_two_parts = a.at_least_two;
            c.max_part = a.largest;
            for (auto s = enumerate_distinct(c); auto p = s.next();)
                if (!a.largest || p->largest() == *a.largest)
                    out.row(partition_row(*p));
            continue;
        }
        UnrefinableSearchOptions opt;
        opt.use_part_bounds = !a.exhaustive;
        opt.at_least_two_parts = a.at_least_two;
        opt.fixed_largest = a.largest;
        opt.threads = a.common.threads;
        for (const auto& p : enumerate_unrefinable(N, opt))
            out.row(partition_row(p));
    }
    return 0;
}

struct CountArgs {
    Common common;
    std::string N, tri;
    bool unrefinable = false;
    bool distinct = false;
    bool maximal = false;
    bool at_least_two = false;
};

int run_count(const CountArgs& a)
{
    if (a.unrefinable + a.distinct + a.maximal != 1)
        throw UsageError("count needs exactly one of --unrefinable, --distinct, --maximal");
    Emitter out(format_arg(a.common.format), std::cout);
    if (a.maximal) {
        if (a.tri.empty() || !a.N.empty())
            throw UsageError("count --maximal takes --tri n");
        const auto r = range_arg("--tri", a.tri, 1);
        for (Int n = r.first; n <= r.last; ++n)
            out.row({{"n", n}, {"count", count_maximal(n)}});
        return 0;
    }
    const auto sums = sums_from(a.N, a.tri);
    for (Int N : sums) {
        std::uint64_t count = 0;
        if (a.distinct) {
            count = count_distinct(N, a.at_least_two ? LengthConvention::AtLeastTwo
                                                     : LengthConvention::AnyLength);
        } else {
            UnrefinableSearchOptions opt;
            opt.at_least_two_parts = a.at_least_two;
            opt.threads = a.common.threads;
            count = count_unrefinable(N, opt);
        }
        out.row({{"N", N}, {"count", count}});
    }
    return 0;
}

struct MaximalArgs {
    Common common;
    std::string tri;
};

int run_maximal(const MaximalArgs& a)
{
    if (a.tri.empty())
        throw UsageError("maximal needs --tri n");
    const auto r = range_arg("--tri", a.tri, 1);
    Emitter out(format_arg(a.common.format), std::cout);
    for (Int n = r.first; n <= r.last; ++n) {
        GenerationOptions opt;
        opt.threads = a.common.threads;
        for (const auto& p : generate_maximal(n, opt)) {
            auto row = partition_row(p);
            row.insert(row.begin(), {"n", n});
            row.emplace_back("class", classify_maximal(p).to_string());
            out.row(row);
        }
    }
    return 0;
}

struct PartsArgs {
    Common common;
    std::string parts;
};

DistinctPartition parts_arg(const std::string& text)
{
    if (text.empty())
        throw UsageError("--parts is required");
    return io::parse_text_partition(text);
}

int run_classify(const PartsArgs& a)
{
    const auto p = parts_arg(a.parts);
    Emitter out(format_arg(a.common.format), std::cout);
    auto row = partition_row(p);
    const auto witness = refinability_witness(p);
    row.emplace_back("unrefinable", !witness.has_value());
    row.emplace_back("witness", witness ? nlohmann::json{witness->smaller, witness->larger,
                                                         witness->part}
                                        : nlohmann::json());
    nlohmann::json maximal_class;
    try {
        maximal_class = classify_maximal(p).to_string();
    } catch (const PartitionError&) {
    }
    row.emplace_back("maximal_class", maximal_class);
    row.emplace_back("distinct_class", p.has_two_or_more_parts()
                                           ? nlohmann::json(classify_distinct(p).to_string())
                                           : nlohmann::json());
    out.row(row);
    return 0;
}

struct SigmaArgs {
    Common common;
    std::string parts;
    std::string tri;
    std::optional<Int> inverse_k;
};

Row sigma_row(Int n, const DistinctPartition& maximal, const DistinctPartition& image)
{
    return {{"n", n},
            {"maximal", cli::parts_json(maximal)},
            {"image", cli::parts_json(image)},
            {"class", classify_maximal(maximal).to_string()},
            {"image_class", classify_distinct(image).name()}};
}

int run_sigma(const SigmaArgs& a)
{
    Emitter out(format_arg(a.common.format), std::cout);
    if (a.inverse_k) {
        const auto image = parts_arg(a.parts);
        const Int k = *a.inverse_k;
        const auto maximal = sigma_inverse(image, k);
        out.row(sigma_row(2 * k - 1, maximal, image));
        return 0;
    }
    if (!a.parts.empty()) {
        if (!a.tri.empty())
            throw UsageError("give either --parts or --tri");
        const auto p = parts_arg(a.parts);
        const auto n = triangular_index(p.sum());
        if (!n)
            throw PartitionError(ErrorKind::NotTriangularSum, "sum is not triangular");
        out.row(sigma_row(*n, p, sigma(p, *n)));
        return 0;
    }
    if (a.tri.empty())
        throw UsageError("sigma needs --parts, --tri or --inverse");
    const auto r = range_arg("--tri", a.tri, 1);
    for (Int n = r.first; n <= r.last; ++n)
        for (const auto& p : generate_maximal(n))
            out.row(sigma_row(n, p, sigma(p, n)));
    return 0;
}

struct VerifyArgs {
    Common common;
    std::string suite = "all";
    std::string N, search_N, bounds_N, tri, k;
};

int run_verify(const VerifyArgs& a)
{
    cli::SuiteRanges r;
    auto apply = [](const std::string& flag, const std::string& text, Int& lo, Int& hi) {
        if (text.empty())
            return;
        const auto range = range_arg(flag, text, 1);
        lo = range.first;
        hi = range.last;
    };
    apply("--N", a.N, r.n_lo, r.n_hi);
    apply("--search-N", a.search_N, r.search_lo, r.search_hi);
    apply("--bounds-N", a.bounds_N, r.bounds_lo, r.bounds_hi);
    apply("--tri", a.tri, r.tri_lo, r.tri_hi);
    apply("--k", a.k, r.k_lo, r.k_hi);

    const std::vector<std::string> known{"partition", "enumeration", "maximal", "bijection"};
    std::vector<std::string> chosen;
    if (a.suite == "all")
        chosen = known;
    else if (std::find(known.begin(), known.end(), a.suite) != known.end())
        chosen = {a.suite};
    else
        throw UsageError("--suite: expected all, partition, enumeration, maximal or bijection");

    Emitter out(format_arg(a.common.format), std::cout);
    bool all_passed = true;
    for (const auto& name : chosen) {
        std::vector<cli::SuiteCheck> checks;
        if (name == "partition")
            checks = cli::partition_suite(r);
        else if (name == "enumeration")
            checks = cli::enumeration_suite(r, a.common.threads);
        else if (name == "maximal")
            checks = cli::maximal_suite(r, a.common.threads);
        else
            checks = cli::bijection_suite(r);
        for (const auto& c : checks) {
            all_passed = all_passed && c.result.passed;
            out.row({{"suite", c.suite},
                     {"check", c.result.name},
                     {"status", c.result.passed ? "PASS" : "FAIL"},
                     {"cases", c.cases},
                     {"counterexample", c.result.passed ? nlohmann::json()
                                                        : nlohmann::json(c.result.detail)}});
        }
    }
    return all_passed ? 0 : kFailed;
}

struct SequenceArgs {
    Common common;
    std::string kind;
    std::string N, k;
};

int run_sequence(const SequenceArgs& a)
{
    Emitter out(format_arg(a.common.format), std::cout);
    if (a.kind == "unrefinable-counts") {
        if (a.N.empty())
            throw UsageError("unrefinable-counts takes --N a..b");
        const auto r = range_arg("--N", a.N, 1);
        for (Int N = r.first; N <= r.last; ++N) {
            UnrefinableSearchOptions opt;
            opt.threads = a.common.threads;
            out.row({{"N", N},
                     {"count", count_unrefinable(N, opt)},
                     {"provenance", N == 45 ? "published" : "derived"}});
        }
        return 0;
    }
    if (a.kind != "mup-counts" && a.kind != "distinct-counts")
        throw UsageError("--kind: expected mup-counts, unrefinable-counts or distinct-counts");
    if (a.k.empty())
        throw UsageError(a.kind + " takes --k a..b");
    const auto r = range_arg("--k", a.k, 1);
    for (Int k = r.first; k <= r.last; ++k) {
        if (a.kind == "mup-counts")
            out.row({{"k", k}, {"count", count_maximal(2 * k - 1)}});
        else
            out.row({{"k", k}, {"count", count_distinct(k, LengthConvention::AtLeastTwo)}});
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Unrefinable partitions: enumeration, maximal classes and the map to distinct parts"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    EnumerateArgs en;
    auto* enumerate = app.add_subcommand("enumerate", "list unrefinable (or all distinct) partitions");
    enumerate->add_option("--N", en.N, "sum N or range a..b");
    enumerate->add_option("--tri", en.tri, "triangular index n (sum T_n) or range");
    enumerate->add_flag("--unrefinable", "default; accepted for symmetry with count");
    enumerate->add_flag("--all-distinct", en.all_distinct, "every partition into distinct parts");
    enumerate->add_flag("--at-least-two", en.at_least_two, "drop the single-part partition");
    enumerate->add_flag("--exhaustive", en.exhaustive, "search every largest part, not only the proven window");
    enumerate->add_option("--largest", en.largest, "fix the largest part");
    add_common(enumerate, en.common, "jsonl");

    CountArgs co;
    auto* count = app.add_subcommand("count", "count partitions");
    count->add_option("--N", co.N, "sum N or range a..b");
    count->add_option("--tri", co.tri, "triangular index n or range");
    count->add_flag("--unrefinable", co.unrefinable, "unrefinable partitions of N");
    count->add_flag("--distinct", co.distinct, "partitions of N into distinct parts");
    count->add_flag("--maximal", co.maximal, "maximal unrefinable partitions of T_n");
    count->add_flag("--at-least-two", co.at_least_two, "drop the single-part partition");
    add_common(count, co.common, "text");

    MaximalArgs ma;
    auto* maximal = app.add_subcommand("maximal", "maximal unrefinable partitions of T_n with classes");
    maximal->add_option("--tri", ma.tri, "n or range a..b");
    add_common(maximal, ma.common, "jsonl");

    PartsArgs cl;
    auto* classify = app.add_subcommand("classify", "describe one partition");
    classify->add_option("--parts", cl.parts, "comma-separated distinct parts");
    add_common(classify, cl.common, "jsonl");

    SigmaArgs si;
    auto* sigma_cmd = app.add_subcommand("sigma", "map maximal partitions of T_{2k-1} to distinct partitions of k");
    sigma_cmd->add_option("--parts", si.parts, "a maximal partition, or an image with --inverse");
    sigma_cmd->add_option("--tri", si.tri, "every maximal partition of T_n, n or range");
    sigma_cmd->add_option("--inverse", si.inverse_k, "treat --parts as a partition of k and invert");
    add_common(sigma_cmd, si.common, "jsonl");

    VerifyArgs ve;
    auto* verify = app.add_subcommand("verify", "run self-verification suites");
    verify->add_option("--suite", ve.suite, "all | partition | enumeration | maximal | bijection")
        ->capture_default_str();
    verify->add_option("--N", ve.N, "sums for the partition suite (default 1..40)");
    verify->add_option("--search-N", ve.search_N, "sums compared against the plain filter (default 1..60)");
    verify->add_option("--bounds-N", ve.bounds_N, "sums for the bounds checks (default 1..300)");
    verify->add_option("--tri", ve.tri, "triangular indices for the maximal suite (default 1..101)");
    verify->add_option("--k", ve.k, "k range for the bijection suite (default 7..40)");
    add_common(verify, ve.common, "text");

    SequenceArgs se;
    auto* sequence = app.add_subcommand("sequence", "integer sequences");
    sequence->add_option("--kind", se.kind, "mup-counts | unrefinable-counts | distinct-counts")->required();
    sequence->add_option("--N", se.N, "range for unrefinable-counts");
    sequence->add_option("--k", se.k, "range for mup-counts and distinct-counts");
    add_common(sequence, se.common, "text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*enumerate)
            return run_enumerate(en);
        if (*count)
            return run_count(co);
        if (*maximal)
            return run_maximal(ma);
        if (*classify)
            return run_classify(cl);
        if (*sigma_cmd)
            return run_sigma(si);
        if (*verify)
            return run_verify(ve);
        if (*sequence)
            return run_sequence(se);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const PartitionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
