#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "addbasis/basis.hpp"

namespace addbasis {

/// Outcome of one restricted-basis search for fixed (k, n, pivot).
struct SearchReport {
    int k = 0;
    int n = 0;
    int pivot = 0;
    /// Sorted lexicographically; every entry is restricted with range n.
    std::vector<Basis> bases;
    std::vector<BasisClass> classes;
    /// mirror_of[i] is the index of mirror(bases[i]); equals i when symmetric.
    std::vector<std::size_t> mirror_of;
    std::uint64_t prefix_count = 0;
    std::uint64_t suffix_count = 0;
    double elapsed_seconds = 0.0;

    [[nodiscard]] bool empty() const noexcept { return bases.empty(); }
    [[nodiscard]] std::size_t symmetric_count() const noexcept;

    /// Timing is excluded.
    [[nodiscard]] bool same_content(const SearchReport& other) const;
};

/// Sorts bases and fills classes and mirror_of. Throws std::logic_error if
/// the set is not closed under mirroring about n/2.
void finalize_report(SearchReport& report);

}  // namespace addbasis
