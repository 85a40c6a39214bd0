#pragma once

// Known extremal ranges, the fixture tables, prefix caches and the text/JSON
// persistence of basis lists and search reports.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "addbasis/basis.hpp"
#include "addbasis/report.hpp"

namespace addbasis {

inline constexpr std::string_view kToolVersion = "1.0.0";

class CatalogError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// n2(k) (any basis) and n2*(k) (restricted bases) keyed by length.
class RangeCatalog {
public:
    struct Entry {
        std::optional<int> unrestricted;
        std::optional<int> restricted;
        std::string provenance;
    };

    /// Values for k = 1..24 (n2) and k = 1..41 (n2*).
    static const RangeCatalog& builtin();

    /// Lines "k n2 n2star provenance", '-' for unknown, '#' comments.
    static RangeCatalog parse(std::istream& in);
    static RangeCatalog load(const std::filesystem::path& path);
    void write(std::ostream& out) const;

    /// n2(0) = 0 for the basis {0}. Throws CatalogError when unknown.
    [[nodiscard]] int unrestricted(int k) const;
    [[nodiscard]] int restricted(int k) const;
    [[nodiscard]] std::optional<int> find_unrestricted(int k) const;
    [[nodiscard]] std::optional<int> find_restricted(int k) const;

    [[nodiscard]] const std::map<int, Entry>& entries() const noexcept { return entries_; }

private:
    std::map<int, Entry> entries_;
};

[[nodiscard]] int known_unrestricted_range(int k);
[[nodiscard]] int known_restricted_range(int k);

/// One row of the transcribed extremal-restricted tables.
struct FixtureRow {
    int k = 0;
    int range = 0;
    bool symmetric = false;
    Basis basis;
};

/// Expands "+c" run tokens: "8 +6 32" means 8, 14, 20, 26, 32.
[[nodiscard]] std::vector<Element> expand_run_notation(std::string_view text, std::size_t line_number = 1);

/// Lines "k n S|A elements..." with optional "+c" runs.
[[nodiscard]] std::vector<FixtureRow> load_fixture_table(const std::filesystem::path& path);
[[nodiscard]] std::vector<FixtureRow> parse_fixture_table(std::istream& in);

// Basis lists: "# key=value" header lines, then one basis per line.

using Header = std::vector<std::pair<std::string, std::string>>;

struct BasisList {
    Header header;
    std::vector<Basis> bases;

    [[nodiscard]] std::optional<std::string> get(std::string_view key) const;
};

void write_basis_list(std::ostream& out, const BasisList& list);
[[nodiscard]] BasisList read_basis_list(std::istream& in);

void write_report(std::ostream& out, const SearchReport& report);
[[nodiscard]] SearchReport read_report(std::istream& in);
void store_report(const std::filesystem::path& path, const SearchReport& report);
[[nodiscard]] SearchReport load_report(const std::filesystem::path& path);

[[nodiscard]] nlohmann::json report_to_json(const SearchReport& report);
[[nodiscard]] SearchReport report_from_json(const nlohmann::json& doc);

/// Directory of enumerated prefix lists keyed by (length, min_range, version).
class PrefixCache {
public:
    explicit PrefixCache(std::filesystem::path directory);

    [[nodiscard]] const std::filesystem::path& directory() const noexcept { return directory_; }
    [[nodiscard]] std::filesystem::path path_for(int length, int min_range) const;

    /// Exact entry, or else the entry with the largest smaller min_range
    /// filtered down to range >= min_range.
    [[nodiscard]] std::optional<std::vector<Basis>> lookup(int length, int min_range) const;
    void store(int length, int min_range, const std::vector<Basis>& bases) const;

private:
    std::filesystem::path directory_;
};

[[nodiscard]] BasisList make_enumeration_list(int length, int min_range, std::vector<Basis> bases);

}  // namespace addbasis
