#include "diskconn/script.hpp"

#include <bit>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string_view>
#include <vector>

#include "diskconn/connectivity.hpp"

namespace diskconn {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (pos < line.size()) {
        while (pos < line.size() && is_space(line[pos])) ++pos;
        const std::size_t start = pos;
        while (pos < line.size() && !is_space(line[pos])) ++pos;
        if (pos > start) tokens.push_back(line.substr(start, pos - start));
    }
    return tokens;
}

// std::from_chars keeps parsing locale-free; the whole token must be consumed.
template <typename T>
bool parse_number(std::string_view text, T& out) {
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

// Shortest representation that round-trips; '.' decimal point regardless of
// locale.
std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

void print_add(std::ostream& out, const InsertResult& result) {
    out << "id=" << result.id << " merged=" << result.report.intersected_components.size()
        << " moved=" << result.report.sites_moved << '\n';
}

void print_stats(std::ostream& out, const ConnectivityStats& s) {
    out << "insertions=" << s.insertions << '\n'
        << "queries=" << s.queries << '\n'
        << "awnn_inserts=" << s.awnn_inserts << '\n'
        << "awnn_deletes=" << s.awnn_deletes << '\n'
        << "awnn_queries=" << s.awnn_queries << '\n'
        << "sites_moved=" << s.sites_moved << '\n'
        << "expansions=" << s.expansions << '\n'
        << "height=" << s.height << '\n';
}

constexpr std::size_t check_full_pair_limit = 2000;
constexpr std::size_t check_sample_size = 1000;
constexpr std::size_t check_report_limit = 50;

// Audit plus oracle comparison. All pairs are compared up to
// check_full_pair_limit sites; past that a deterministic sample of
// check_sample_size pairs is used and announced. Pair comparisons go through
// connected(), so they show up in the query counter.
bool run_check(DiskConnectivity& structure, std::ostream& out) {
    const std::vector<Site>& sites = structure.sites();
    std::vector<std::string> problems;

    for (const AuditViolation& v : structure.tree().audit(sites))
        problems.push_back("violation " + std::string(audit_kind_name(v.kind)) + ": " + v.detail);

    NaiveConnectivity oracle;
    for (const Site& s : sites) oracle.insert(s);

    if (structure.component_count() != oracle.component_count())
        problems.push_back("components structure=" + std::to_string(structure.component_count()) +
                           " oracle=" + std::to_string(oracle.component_count()));

    auto describe = [](const std::optional<bool>& answer) {
        return !answer ? "unknown" : (*answer ? "connected" : "separate");
    };
    auto compare_pair = [&](SiteId a, SiteId b) {
        const auto fast = structure.connected(a, b);
        const auto slow = oracle.connected(a, b);
        const bool same_leaf = structure.tree().site_leaf(a) == structure.tree().site_leaf(b);
        if (fast != slow || (slow && same_leaf != *slow))
            problems.push_back("mismatch " + std::to_string(a) + " " + std::to_string(b) +
                               ": structure=" + describe(fast) + " oracle=" + describe(slow));
    };

    const bool sample = sites.size() > check_full_pair_limit;
    if (sample) out << "sampled pairs=" << check_sample_size << '\n';
    if (sites.size() >= 2) {
        if (!sample) {
            for (std::size_t i = 0; i < sites.size(); ++i)
                for (std::size_t j = i + 1; j < sites.size(); ++j)
                    compare_pair(sites[i].id, sites[j].id);
        } else {
            std::mt19937_64 rng(sites.size());
            for (std::size_t k = 0; k < check_sample_size; ++k) {
                const SiteId a = sites[rng() % sites.size()].id;
                SiteId b = a;
                while (b == a) b = sites[rng() % sites.size()].id;
                compare_pair(a, b);
            }
        }
    }

    if (problems.empty()) {
        out << "ok\n";
        return true;
    }
    for (std::size_t i = 0; i < problems.size() && i < check_report_limit; ++i)
        out << problems[i] << '\n';
    if (problems.size() > check_report_limit)
        out << "... " << problems.size() - check_report_limit << " more\n";
    return false;
}

unsigned floor_log2(std::size_t n) {
    return n ? static_cast<unsigned>(std::bit_width(n)) - 1 : 0;
}

unsigned ceil_log2(std::size_t n) {
    return n > 1 ? static_cast<unsigned>(std::bit_width(n - 1)) : 0;
}

}  // namespace

int run_script(std::istream& in, std::ostream& out, AwnnKind kind) {
    DiskConnectivity structure(kind);
    bool checks_passed = true;
    std::string line;
    std::size_t line_number = 0;

    auto fail = [&](std::string_view reason) {
        out << "error line " << line_number << ": " << reason << '\n';
        return 1;
    };

    while (std::getline(in, line)) {
        ++line_number;
        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        const std::string_view command = tokens.front();

        if (command == "ADD") {
            if (tokens.size() != 4) return fail("ADD expects x y r");
            double x = 0, y = 0, r = 0;
            if (!parse_number(tokens[1], x) || !parse_number(tokens[2], y) ||
                !parse_number(tokens[3], r))
                return fail("ADD expects numeric x y r");
            const auto result = structure.insert({x, y}, r);
            if (!result) return fail("invalid site");
            print_add(out, *result);
        } else if (command == "QUERY") {
            if (tokens.size() != 3) return fail("QUERY expects two site ids");
            SiteId a = 0, b = 0;
            if (!parse_number(tokens[1], a) || !parse_number(tokens[2], b))
                return fail("QUERY expects numeric site ids");
            const auto result = structure.connected(a, b);
            if (!result) return fail("unknown site id");
            out << (*result ? "connected" : "separate") << '\n';
        } else if (command == "COMPONENTS") {
            if (tokens.size() != 1) return fail("COMPONENTS takes no arguments");
            out << structure.component_count() << '\n';
        } else if (command == "STATS") {
            if (tokens.size() != 1) return fail("STATS takes no arguments");
            print_stats(out, structure.stats());
        } else if (command == "CHECK") {
            if (tokens.size() != 1) return fail("CHECK takes no arguments");
            if (!run_check(structure, out)) checks_passed = false;
        } else if (command == "GEN") {
            if (tokens.size() != 4) return fail("GEN expects preset n seed");
            const auto preset = parse_preset(tokens[1]);
            if (!preset) return fail("unknown preset");
            GeneratorConfig config;
            config.preset = *preset;
            if (!parse_number(tokens[2], config.n) || !parse_number(tokens[3], config.seed))
                return fail("GEN expects numeric n and seed");
            const auto sites = generate_sites(config);
            if (!sites) return fail("invalid generator config");
            for (const Site& s : *sites) {
                const auto result = structure.insert(s.center, s.radius);
                if (!result) return fail("invalid site");
                print_add(out, *result);
            }
        } else {
            return fail("unknown command");
        }
    }
    return checks_passed ? 0 : 1;
}

int run_benchmark(const GeneratorConfig& config, const BenchmarkOptions& options,
                  std::ostream& out) {
    const auto sites = generate_sites(config);
    if (!sites) {
        out << "error: invalid generator config\n";
        return 2;
    }

    std::ofstream csv;
    if (!options.csv_path.empty()) {
        csv.open(options.csv_path);
        if (!csv) {
            out << "error: cannot open csv file " << options.csv_path << '\n';
            return 2;
        }
        csv << "i,merged,moved,awnn_inserts,awnn_deletes,awnn_queries,height\n";
    }

    DiskConnectivity structure(options.kind);
    const auto start = std::chrono::steady_clock::now();
    for (const Site& s : *sites) {
        const auto result = structure.insert(s.center, s.radius);
        if (!result) {
            out << "error: generated site rejected\n";
            return 2;
        }
        if (csv.is_open()) {
            const ConnectivityStats snap = structure.stats();
            csv << result->id << ',' << result->report.intersected_components.size() << ','
                << result->report.sites_moved << ',' << snap.awnn_inserts << ','
                << snap.awnn_deletes << ',' << snap.awnn_queries << ',' << snap.height << '\n';
        }
    }
    const double build_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::size_t n = sites->size();
    const ConnectivityStats s = structure.stats();
    const std::uint64_t move_bound = static_cast<std::uint64_t>(n) * floor_log2(n);
    const std::uint64_t log_term = 1 + ceil_log2(n);
    const std::uint64_t update_envelope = 4 * n * log_term * log_term;
    const double envelope_constant =
        n ? static_cast<double>(s.awnn_inserts + s.awnn_deletes) /
                static_cast<double>(n * log_term * log_term)
          : 0.0;

    bool moves_ok = s.sites_moved <= move_bound;
    for (const Site& site : *sites)
        if (structure.tree().site_move_count(site.id) > floor_log2(n)) moves_ok = false;

    out << "preset=" << preset_name(config.preset) << '\n'
        << "n=" << n << '\n'
        << "seed=" << config.seed << '\n'
        << "awnn=" << awnn_kind_name(options.kind) << '\n'
        << "build_seconds=" << format_double(build_seconds) << '\n'
        << "insertions=" << s.insertions << '\n'
        << "awnn_inserts=" << s.awnn_inserts << '\n'
        << "awnn_deletes=" << s.awnn_deletes << '\n'
        << "awnn_queries=" << s.awnn_queries << '\n'
        << "sites_moved=" << s.sites_moved << '\n'
        << "expansions=" << s.expansions << '\n'
        << "height=" << s.height << '\n'
        << "components=" << structure.component_count() << '\n'
        << "move_bound=" << move_bound << '\n'
        << "move_bound_ok=" << (moves_ok ? 1 : 0) << '\n'
        << "update_envelope=" << update_envelope << '\n'
        << "envelope_constant=" << format_double(envelope_constant) << '\n';

    if (options.compare_naive) {
        NaiveConnectivity naive;
        const auto naive_start = std::chrono::steady_clock::now();
        for (const Site& site : *sites) naive.insert(site);
        const double naive_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - naive_start).count();
        out << "naive_seconds=" << format_double(naive_seconds) << '\n'
            << "naive_pair_tests=" << naive.pair_tests() << '\n'
            << "naive_components=" << naive.component_count() << '\n';
    }
    return moves_ok ? 0 : 1;
}

}  // namespace diskconn
