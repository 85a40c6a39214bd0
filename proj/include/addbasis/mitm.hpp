#pragma once

// Meet-in-the-middle search for restricted bases: a restricted basis of
// length k and range n splits at a pivot i into an admissible prefix A_i and
// a suffix whose mirror about n/2 is an admissible basis B_j (j = k-1-i).
// Both halves have provable minimum ranges, so each side is a short
// enumeration; every pair is then glued and checked for coverage of [0, n].

#include <functional>
#include <optional>
#include <string>

#include "addbasis/basis.hpp"
#include "addbasis/catalog.hpp"
#include "addbasis/report.hpp"

namespace addbasis {

struct SearchTarget {
    int k = 0;
    int n = 0;
    int pivot = 0;
    int suffix_length = 0;
    /// n/2 - n2(j-1) - 2, clamped at 0.
    int prefix_min_range = 0;
    /// n/2 - n2(i-1) - 2, clamped at 0.
    int suffix_min_range = 0;

    /// Throws std::invalid_argument for k < 3, odd n or a pivot outside
    /// 0 < i < k-1, and CatalogError when n2(i-1) or n2(j-1) is unknown.
    /// Default pivot is floor(k/2).
    static SearchTarget make(int k, int n, std::optional<int> pivot = std::nullopt,
                             const RangeCatalog& catalog = RangeCatalog::builtin());
};

struct SearchOptions {
    unsigned threads = 1;
    /// Enumerator pruning; off only for differential testing.
    bool pruning = true;
    /// Optional source and sink of prefix / suffix lists.
    const PrefixCache* cache = nullptr;
    /// Progress lines, e.g. for stderr.
    std::function<void(const std::string&)> progress;
};

/// Largest range any restricted basis of length k can have, from the
/// prefix/suffix bound with i = floor(k/2). Needs k >= 3.
[[nodiscard]] int upper_bound_restricted(int k, const RangeCatalog& catalog = RangeCatalog::builtin());

/// prefix ∪ (n/2 - mirrored_suffix) when the two parts do not overlap.
[[nodiscard]] std::optional<Basis> assemble(const Basis& prefix, const Basis& mirrored_suffix, int n);

/// All restricted bases of length target.k and range exactly target.n.
[[nodiscard]] SearchReport search_restricted(const SearchTarget& target, const SearchOptions& options = {});

/// Searches n downward from upper_bound_restricted(k) in steps of 2 and
/// returns the first non-empty report, whose n is n2*(k).
[[nodiscard]] SearchReport find_extremal_restricted(int k, std::optional<int> pivot = std::nullopt,
                                                    const SearchOptions& options = {},
                                                    const RangeCatalog& catalog = RangeCatalog::builtin());

}  // namespace addbasis
