#include "doctest.h"

#include <algorithm>
#include <fstream>

#include "addbasis/catalog.hpp"
#include "addbasis/enumeration.hpp"
#include "addbasis/mitm.hpp"
#include "addbasis/oracle.hpp"
#include "test_support.hpp"

using namespace addbasis;

TEST_CASE("upper bound on n2*") {
    CHECK(upper_bound_restricted(3) == 8);
    CHECK(upper_bound_restricted(4) == 12);
    CHECK(upper_bound_restricted(5) == 16);
    CHECK(upper_bound_restricted(10) == 4 * 12 + 4);
    CHECK(upper_bound_restricted(25) == 2 * 54 + 2 * 64 + 4);
    CHECK(upper_bound_restricted(25) == 240);
    CHECK_THROWS_AS((void)upper_bound_restricted(2), std::invalid_argument);
    CHECK_THROWS_AS((void)upper_bound_restricted(60), CatalogError);
    for (int k = 3; k <= 41; ++k) {
        CAPTURE(k);
        CHECK(upper_bound_restricted(k) >= known_restricted_range(k));
    }
}

TEST_CASE("search target bounds") {
    const auto t = SearchTarget::make(25, 228);
    CHECK(t.pivot == 12);
    CHECK(t.suffix_length == 12);
    CHECK(t.prefix_min_range == 114 - 54 - 2);
    CHECK(t.suffix_min_range == 114 - 54 - 2);
    const auto u = SearchTarget::make(10, 44, 4);
    CHECK(u.suffix_length == 5);
    CHECK(u.prefix_min_range == 22 - 12 - 2);
    CHECK(u.suffix_min_range == 22 - 8 - 2);
    CHECK_THROWS_AS((void)SearchTarget::make(10, 45), std::invalid_argument);
    CHECK_THROWS_AS((void)SearchTarget::make(10, 44, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)SearchTarget::make(10, 44, 9), std::invalid_argument);
    CHECK_THROWS_AS((void)SearchTarget::make(2, 4), std::invalid_argument);
}

TEST_CASE("assemble") {
    // Prefix 0 1 and mirrored suffix 0 1 about n/2 = 4 give 0 1 3 4.
    CHECK(assemble(Basis{0, 1}, Basis{0, 1}, 8) == Basis{0, 1, 3, 4});
    CHECK(assemble(Basis{0, 1, 3, 4, 6, 11}, Basis{0, 1, 3, 4, 9}, 44) == Basis{0, 1, 3, 4, 6, 11, 13, 18, 19, 21, 22});
    // 13 - {0,1,9} = {4,12,13} overlaps the prefix.
    CHECK_FALSE(assemble(Basis{0, 1, 3, 13}, Basis{0, 1, 9}, 26).has_value());
    CHECK_FALSE(assemble(Basis{0, 1}, Basis{0, 1}, 4).has_value());
    CHECK_FALSE(assemble(Basis{0, 1, 2}, Basis{0, 1, 2}, 8).has_value());
    CHECK_FALSE(assemble(Basis{0, 1}, Basis{0, 1, 2, 3, 4, 5}, 8).has_value());
    CHECK_THROWS_AS((void)assemble(Basis{0, 1}, Basis{0, 1}, 7), std::invalid_argument);
}

namespace {

std::vector<Basis> read_bases(const std::string& name) {
    std::ifstream in(test_support::data_path(name));
    std::vector<Basis> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            out.push_back(parse_basis(line));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("k=10, n=44 yields the eight tabulated bases") {
    const auto table = read_bases("k10_extremal.txt");
    REQUIRE(table.size() == 10);
    std::vector<Basis> expected(table.begin(), table.begin() + 8);
    std::sort(expected.begin(), expected.end());
    const auto report = search_restricted(SearchTarget::make(10, 44));
    CHECK(report.bases == expected);
    const auto symmetric = std::count_if(expected.begin(), expected.end(), [](const Basis& b) { return is_symmetric(b); });
    CHECK(report.symmetric_count() == static_cast<std::size_t>(symmetric));
    for (std::size_t i = 0; i < report.bases.size(); ++i) {
        CHECK(report.classes[i].restricted);
        CHECK(report.bases[report.mirror_of[i]] == mirror(report.bases[i]));
    }
    // The two range-46 bases are not restricted and never appear.
    for (std::size_t i = 8; i < table.size(); ++i) {
        CHECK(range(table[i]) == 46);
        CHECK_FALSE(classify(table[i]).restricted);
    }
    CHECK(search_restricted(SearchTarget::make(10, 44, 5)).bases == expected);
    CHECK(search_restricted(SearchTarget::make(10, 46)).empty());
}

TEST_CASE("k=25: the single tabulated basis at 228, none at 240") {
    const auto rows = load_fixture_table(test_support::data_path("extremal_restricted.txt"));
    const auto row = std::find_if(rows.begin(), rows.end(), [](const FixtureRow& r) { return r.k == 25; });
    REQUIRE(row != rows.end());
    const auto report = search_restricted(SearchTarget::make(25, 228));
    REQUIRE(report.bases.size() == 1);
    CHECK(report.bases[0] == row->basis);
    CHECK(report.classes[0].symmetric);
    CHECK(search_restricted(SearchTarget::make(25, 240)).empty());
}

TEST_CASE("mitm search is exhaustive against the brute-force oracle") {
    for (int k = 3; k <= 9; ++k) {
        CAPTURE(k);
        const auto oracle = brute_force(k);
        const auto report = find_extremal_restricted(k);
        CHECK(report.n == oracle.restricted_range);
        CHECK(report.bases == oracle.extremal_restricted);
        // Every even n, not only the extremal one.
        const auto universe = admissible_universe(k);
        for (int n = 2; n <= oracle.restricted_range + 4; n += 2) {
            std::vector<Basis> want;
            for (const Basis& b : universe) {
                if (b.max() * 2 == n && range(b) == n) {
                    want.push_back(b);
                }
            }
            CAPTURE(n);
            CHECK(search_restricted(SearchTarget::make(k, n)).bases == want);
        }
    }
}

TEST_CASE("pivot choice does not change the result") {
    for (int k = 4; k <= 9; ++k) {
        const int n = known_restricted_range(k);
        const auto base = search_restricted(SearchTarget::make(k, n));
        for (int i = 1; i < k - 1; ++i) {
            CAPTURE(k);
            CAPTURE(i);
            CHECK(search_restricted(SearchTarget::make(k, n, i)).bases == base.bases);
        }
    }
    const auto base = search_restricted(SearchTarget::make(12, 64));
    for (int i : {2, 4, 8, 9}) {
        CHECK(search_restricted(SearchTarget::make(12, 64, i)).bases == base.bases);
    }
}

TEST_CASE("found bases respect the prefix and suffix range bounds") {
    for (int k : {10, 13, 16}) {
        const auto report = find_extremal_restricted(k);
        CHECK(report.n == known_restricted_range(k));
        for (int i = 1; i < k - 1; ++i) {
            const auto t = SearchTarget::make(k, report.n, i);
            for (const Basis& b : report.bases) {
                CAPTURE(format_basis(b));
                CHECK(range(b.prefix(i)) >= t.prefix_min_range);
                const auto upper = b.elements().subspan(static_cast<std::size_t>(i) + 1);
                const Basis suffix(mirror(upper, report.n / 2));
                CHECK(suffix.length() == t.suffix_length);
                CHECK(range(suffix) >= t.suffix_min_range);
            }
        }
    }
}

TEST_CASE("threads and pruning do not change a search") {
    const auto target = SearchTarget::make(14, 80);
    const auto one = search_restricted(target);
    SearchOptions many;
    many.threads = 4;
    CHECK(search_restricted(target, many).same_content(one));
    SearchOptions plain;
    plain.pruning = false;
    const auto small = SearchTarget::make(11, 54);
    CHECK(search_restricted(small, plain).same_content(search_restricted(small)));
}

TEST_CASE("k=41: tabulated basis recovered from stem-restricted prefix lists") {
    // The full length-20 list at min range 139 takes days on one core; here
    // only the branches below the tabulated basis's own stems are enumerated.
    const auto rows = load_fixture_table(test_support::data_path("extremal_restricted.txt"));
    const auto row = std::find_if(rows.begin(), rows.end(), [](const FixtureRow& r) { return r.k == 41; });
    REQUIRE(row != rows.end());
    const auto target = SearchTarget::make(41, 562);
    REQUIRE(target.pivot == 20);
    REQUIRE(target.prefix_min_range == 139);
    REQUIRE(target.suffix_min_range == 139);
    const auto el = row->basis.elements();
    const Basis prefix(std::vector<Element>(el.begin(), el.begin() + 21));
    const Basis suffix(mirror(el.subspan(21), 281));
    const std::size_t stem = 12;
    const auto stem_list = [&](const Basis& half) {
        return list_admissible(
            EnumSpec{20, 139, std::vector<Element>(half.elements().begin(), half.elements().begin() + stem)});
    };
    const auto prefixes = stem_list(prefix);
    const auto suffixes = stem_list(suffix);
    CHECK(std::find(prefixes.begin(), prefixes.end(), prefix) != prefixes.end());
    CHECK(std::find(suffixes.begin(), suffixes.end(), suffix) != suffixes.end());
    int hits = 0;
    for (const Basis& p : prefixes) {
        for (const Basis& s : suffixes) {
            if (auto b = assemble(p, s, 562); b && covers(*b, 562)) {
                CHECK(classify(*b).restricted);
                hits += *b == row->basis ? 1 : 0;
            }
        }
    }
    CHECK(hits == 1);
}
