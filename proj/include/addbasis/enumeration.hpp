#pragma once

// Exhaustive enumeration of admissible bases of a fixed length whose range
// reaches a target, by depth-first extension with a gaps-counting prune.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "addbasis/basis.hpp"

namespace addbasis {

struct EnumSpec {
    int length = 1;
    int min_range = 0;
    /// Fixed leading elements (including the 0). Empty means unconstrained.
    std::vector<Element> stem;
};

struct EnumOptions {
    /// Gaps test and last-element filter. Off gives the plain candidate-interval DFS.
    bool pruning = true;
    unsigned threads = 1;
    /// Stem depth used to split work across threads; 0 picks one.
    int split_depth = 0;
};

/// Receives each basis as its element list, including the leading 0.
using BasisSink = std::function<void(std::span<const Element>)>;

/// Legal next element values [lo, hi]; empty when hi < lo.
struct CandidateInterval {
    Element lo = 0;
    Element hi = -1;

    [[nodiscard]] bool empty() const noexcept { return hi < lo; }
    [[nodiscard]] int size() const noexcept { return empty() ? 0 : hi - lo + 1; }
    bool operator==(const CandidateInterval&) const = default;
};

/// A partial basis with its incrementally maintained sum coverage.
class PartialState {
public:
    explicit PartialState(const Basis& partial);

    /// Appends x > last element, updating coverage in place of a recompute.
    [[nodiscard]] PartialState extended(Element x) const;

    [[nodiscard]] const Basis& basis() const noexcept { return basis_; }
    [[nodiscard]] const SumCoverage& coverage() const noexcept { return coverage_; }
    [[nodiscard]] int range() const noexcept { return range_; }
    /// Members of 2A within [0, limit].
    [[nodiscard]] int covered_through(int limit) const;

private:
    PartialState(Basis basis, SumCoverage coverage);

    Basis basis_;
    SumCoverage coverage_;
    int range_;
};

[[nodiscard]] CandidateInterval next_candidates(const PartialState& state);

/// Upper bound on how many integers of [0, target] that `remaining` new
/// elements (all larger than elements.back()) can add to 2A.
[[nodiscard]] long long gaps_capacity(std::span<const Element> elements, int remaining, int target);

/// True only when no completion with `remaining` more elements reaches range
/// `target`.
[[nodiscard]] bool gaps_prune(const PartialState& state, int remaining, int target);

/// Streams admissible bases of spec.length with range >= spec.min_range in
/// lexicographic order. Throws std::invalid_argument on a bad spec.
void enumerate_admissible(const EnumSpec& spec, const BasisSink& sink, const EnumOptions& options = {});

[[nodiscard]] std::vector<Basis> list_admissible(const EnumSpec& spec, const EnumOptions& options = {});

[[nodiscard]] std::uint64_t count_matching(const EnumSpec& spec, const EnumOptions& options = {});

/// Number of admissible bases of length k.
[[nodiscard]] std::uint64_t count_admissible(int k, const EnumOptions& options = {});

/// All surviving partial bases with exactly depth+1 elements that extend
/// spec.stem, in lexicographic order. Enumerating spec with each stem in turn
/// reproduces the unpartitioned stream.
[[nodiscard]] std::vector<std::vector<Element>> make_stems(const EnumSpec& spec, int depth,
                                                           const EnumOptions& options = {});

}  // namespace addbasis
