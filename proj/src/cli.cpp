#include "addbasis/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "addbasis/basis.hpp"
#include "addbasis/catalog.hpp"
#include "addbasis/enumeration.hpp"
#include "addbasis/mitm.hpp"
#include "addbasis/oracle.hpp"

namespace addbasis::cli {

namespace {

constexpr int kExitError = 3;
constexpr const char* kCacheEnv = "ADDBASIS_CACHE_DIR";

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// --out redirects results to a file; otherwise the caller's stream is used.
class Output {
public:
    Output(const CliConfig& config, std::ostream& fallback) : stream_(&fallback) {
        if (!config.out.empty()) {
            file_ = std::make_unique<std::ofstream>(config.out);
            if (!*file_) {
                throw std::runtime_error("cannot write " + config.out);
            }
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

std::optional<PrefixCache> make_cache(const CliConfig& config) {
    std::string dir = config.cache_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv(kCacheEnv)) {
            dir = env;
        }
    }
    if (dir.empty()) {
        return std::nullopt;
    }
    return PrefixCache(dir);
}

SearchOptions search_options(const CliConfig& config, const std::optional<PrefixCache>& cache, std::ostream& err) {
    SearchOptions options;
    options.threads = config.threads;
    options.cache = cache ? &*cache : nullptr;
    options.progress = [&err](const std::string& line) { err << line << '\n'; };
    return options;
}

void print_json(std::ostream& out, const nlohmann::json& doc) {
    out << doc.dump(2) << '\n';
}

std::string describe(const BasisClass& c) {
    std::ostringstream s;
    s << "range " << c.range << ", " << (c.admissible ? "admissible" : "not admissible") << ", "
      << (c.restricted ? "restricted" : "not restricted") << ", " << (c.symmetric ? "symmetric" : "asymmetric");
    return s.str();
}

void print_elapsed(std::ostream& err, double seconds) {
    err << "elapsed " << std::fixed << std::setprecision(3) << seconds << " s\n";
    err.unsetf(std::ios::floatfield);
}

void require_k(const CliConfig& config, int minimum) {
    if (config.k < minimum) {
        throw UsageError("-k must be at least " + std::to_string(minimum));
    }
}

std::optional<std::string> catalog_status(int k, int found) {
    if (auto known = RangeCatalog::builtin().find_restricted(k)) {
        return std::string(*known == found ? "MATCH" : "MISMATCH") + " catalog n2*=" + std::to_string(*known);
    }
    return std::nullopt;
}

}  // namespace

int cmd_search(const CliConfig& config, std::ostream& out_stream, std::ostream& err) {
    require_k(config, 3);
    if (!config.n) {
        throw UsageError("search needs -n");
    }
    if (*config.n % 2 != 0 || *config.n < 2) {
        throw UsageError("-n must be even and positive (restricted ranges are even)");
    }
    const auto target = SearchTarget::make(config.k, *config.n, config.pivot);
    const auto cache = make_cache(config);
    const auto report = search_restricted(target, search_options(config, cache, err));
    Output out(config, out_stream);
    if (config.format == Format::json) {
        print_json(*out, report_to_json(report));
    } else {
        write_report(*out, report);
    }
    print_elapsed(err, report.elapsed_seconds);
    return report.empty() ? kExitNotFound : kExitOk;
}

int cmd_extremal(const CliConfig& config, std::ostream& out_stream, std::ostream& err) {
    require_k(config, 3);
    const auto cache = make_cache(config);
    const auto report = find_extremal_restricted(config.k, config.pivot, search_options(config, cache, err));
    const auto status = catalog_status(config.k, report.n);
    Output out(config, out_stream);
    if (config.format == Format::json) {
        auto doc = report_to_json(report);
        doc["n2star"] = report.n;
        if (auto known = RangeCatalog::builtin().find_restricted(config.k)) {
            doc["catalog"] = {{"n2star", *known}, {"match", *known == report.n}};
        }
        print_json(*out, doc);
    } else {
        write_report(*out, report);
        *out << "# n2*=" << report.n << '\n';
        if (status) {
            *out << "# " << *status << '\n';
        }
    }
    print_elapsed(err, report.elapsed_seconds);
    return kExitOk;
}

int cmd_enumerate(const CliConfig& config, std::ostream& out_stream, std::ostream& err) {
    require_k(config, 1);
    if (config.min_range < 0) {
        throw UsageError("--min-range must be non-negative");
    }
    const auto cache = make_cache(config);
    const EnumSpec spec{config.k, config.min_range, {}};
    const EnumOptions options{true, config.threads, 0};
    Output out(config, out_stream);
    if (config.format == Format::json || cache) {
        std::optional<std::vector<Basis>> bases;
        if (cache) {
            bases = cache->lookup(spec.length, spec.min_range);
        }
        if (!bases) {
            bases = list_admissible(spec, options);
            if (cache) {
                cache->store(spec.length, spec.min_range, *bases);
            }
        }
        if (config.format == Format::json) {
            nlohmann::json list = nlohmann::json::array();
            for (const Basis& b : *bases) {
                list.push_back(std::vector<Element>(b.elements().begin(), b.elements().end()));
            }
            print_json(*out, {{"version", kToolVersion},
                              {"k", spec.length},
                              {"min_range", spec.min_range},
                              {"count", bases->size()},
                              {"bases", std::move(list)}});
        } else {
            write_basis_list(*out, make_enumeration_list(spec.length, spec.min_range, std::move(*bases)));
        }
        err << "count " << (config.format == Format::json ? "written" : "done") << '\n';
        return kExitOk;
    }
    *out << "# version=" << kToolVersion << "\n# k=" << spec.length << "\n# min_range=" << spec.min_range << '\n';
    std::uint64_t count = 0;
    enumerate_admissible(
        spec,
        [&](std::span<const Element> e) {
            *out << format_elements(e) << '\n';
            ++count;
        },
        options);
    *out << "# count=" << count << '\n';
    err << "count " << count << '\n';
    return kExitOk;
}

int cmd_verify(const CliConfig& config, std::ostream& out_stream, std::ostream& err) {
    if (config.path.empty()) {
        throw UsageError("verify needs a file path");
    }
    std::ifstream in(config.path);
    if (!in) {
        throw std::runtime_error("cannot open " + config.path);
    }
    Output out(config, out_stream);
    nlohmann::json rows = nlohmann::json::array();
    std::string line;
    std::size_t line_no = 0;
    std::size_t failures = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        try {
            const Basis b = parse_basis(line, line_no);
            const BasisClass c = classify(b);
            if (config.format == Format::json) {
                rows.push_back({{"line", line_no},
                                {"elements", std::vector<Element>(b.elements().begin(), b.elements().end())},
                                {"range", c.range},
                                {"admissible", c.admissible},
                                {"restricted", c.restricted},
                                {"symmetric", c.symmetric}});
            } else {
                *out << format_basis(b) << " : " << describe(c) << '\n';
            }
        } catch (const ParseError& e) {
            ++failures;
            err << config.path << ':' << e.what() << '\n';
        }
    }
    if (config.format == Format::json) {
        print_json(*out, {{"path", config.path}, {"errors", failures}, {"bases", std::move(rows)}});
    }
    return failures == 0 ? kExitOk : kExitNotFound;
}

int cmd_oracle(const CliConfig& config, std::ostream& out_stream, std::ostream& err) {
    require_k(config, 1);
    if (config.k > config.oracle_limit) {
        throw UsageError("oracle -k " + std::to_string(config.k) + " exceeds --oracle-limit " +
                         std::to_string(config.oracle_limit));
    }
    const auto result = brute_force(config.k, config.oracle_limit);
    Output out(config, out_stream);
    if (config.format == Format::json) {
        auto as_json = [](const std::vector<Basis>& list) {
            nlohmann::json a = nlohmann::json::array();
            for (const Basis& b : list) {
                a.push_back(std::vector<Element>(b.elements().begin(), b.elements().end()));
            }
            return a;
        };
        print_json(*out, {{"k", result.k},
                          {"admissible", result.admissible_count},
                          {"n2", result.extremal_range},
                          {"extremal", as_json(result.extremal)},
                          {"n2star", result.restricted_range},
                          {"extremal_restricted", as_json(result.extremal_restricted)}});
    } else {
        *out << "# k=" << result.k << "\n# admissible=" << result.admissible_count << '\n';
        *out << "# section=extremal\n# n2=" << result.extremal_range << "\n# count=" << result.extremal.size()
             << '\n';
        for (const Basis& b : result.extremal) {
            *out << format_basis(b) << '\n';
        }
        *out << "# section=extremal-restricted\n# n2*=" << result.restricted_range
             << "\n# count=" << result.extremal_restricted.size() << '\n';
        for (const Basis& b : result.extremal_restricted) {
            *out << format_basis(b) << '\n';
        }
    }
    err << "n2=" << result.extremal_range << " (" << result.extremal.size() << " bases), n2*="
        << result.restricted_range << " (" << result.extremal_restricted.size() << " bases)\n";
    return kExitOk;
}

int cmd_table(const CliConfig& config, std::ostream& out_stream, std::ostream& err) {
    if (config.from < 3 || config.to < config.from) {
        throw UsageError("table needs 3 <= --from <= --to");
    }
    const auto cache = make_cache(config);
    Output out(config, out_stream);
    *out << "# k n2* S|A basis\n";
    int mismatches = 0;
    for (int k = config.from; k <= config.to; ++k) {
        const auto report = find_extremal_restricted(k, config.pivot, search_options(config, cache, err));
        const auto status = catalog_status(k, report.n);
        if (status && status->rfind("MISMATCH", 0) == 0) {
            ++mismatches;
        }
        *out << "# k=" << k << " n2*=" << report.n << " count=" << report.bases.size();
        if (status) {
            *out << ' ' << *status;
        }
        *out << '\n';
        for (std::size_t i = 0; i < report.bases.size(); ++i) {
            *out << k << ' ' << report.n << ' ' << (report.classes[i].symmetric ? 'S' : 'A') << ' '
                 << format_basis(report.bases[i]) << '\n';
        }
        print_elapsed(err, report.elapsed_seconds);
    }
    return mismatches == 0 ? kExitOk : kExitNotFound;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig config;
    config.threads = std::max(1U, std::thread::hardware_concurrency());
    std::string format = "text";

    CLI::App app{"Search engine for extremal restricted additive 2-bases", "addbasis"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", config.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", config.out, "Write results to this file instead of stdout");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--cache-dir", config.cache_dir, std::string("Prefix cache directory (env ") + kCacheEnv + ")");

    auto* search = app.add_subcommand("search", "List restricted bases of length k and range n");
    search->add_option("-k", config.k, "Length")->required();
    search->add_option("-n", config.n, "Range (even)")->required();
    search->add_option("--pivot", config.pivot, "Pivot index i, default floor(k/2)");

    auto* extremal = app.add_subcommand("extremal", "Find n2*(k) and all extremal restricted bases");
    extremal->add_option("-k", config.k, "Length")->required();
    extremal->add_option("--pivot", config.pivot, "Pivot index i, default floor(k/2)");

    auto* enumerate = app.add_subcommand("enumerate", "List admissible bases with a minimum range");
    enumerate->add_option("-k", config.k, "Length")->required();
    enumerate->add_option("--min-range", config.min_range, "Minimum range");

    auto* verify = app.add_subcommand("verify", "Classify every basis in a file");
    verify->add_option("path", config.path, "File with one basis per line")->required();

    auto* oracle = app.add_subcommand("oracle", "Brute-force extremal and extremal restricted bases");
    oracle->add_option("-k", config.k, "Length")->required();
    oracle->add_option("--oracle-limit", config.oracle_limit, "Largest k accepted");

    auto* table = app.add_subcommand("table", "Regenerate the extremal restricted table for a range of k");
    table->add_option("--from", config.from, "First length")->required();
    table->add_option("--to", config.to, "Last length")->required();
    table->add_option("--pivot", config.pivot, "Pivot index for every k");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    config.format = format == "json" ? Format::json : Format::text;
    config.subcommand = app.get_subcommands().front()->get_name();

    try {
        if (search->parsed()) return cmd_search(config, out, err);
        if (extremal->parsed()) return cmd_extremal(config, out, err);
        if (enumerate->parsed()) return cmd_enumerate(config, out, err);
        if (verify->parsed()) return cmd_verify(config, out, err);
        if (oracle->parsed()) return cmd_oracle(config, out, err);
        if (table->parsed()) return cmd_table(config, out, err);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CatalogError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitUsage;
}

}  // namespace addbasis::cli
