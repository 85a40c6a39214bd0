#pragma once

// Exact integer-set algebra for additive 2-bases: sumsets, ranges, mirror
// images and the admissible / restricted / symmetric predicates.
//
// A basis is stored with its leading zero, so a basis of length k holds k+1
// elements 0 = a_0 < a_1 < ... < a_k.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace addbasis {

using Element = int;

/// Largest element accepted anywhere; keeps 2*a_k representable as an index.
inline constexpr Element kMaxElement = (1 << 24);

class Basis {
public:
    Basis() : elements_{0} {}

    /// Throws std::invalid_argument unless `elements` is strictly increasing,
    /// starts at 0 and stays within kMaxElement.
    explicit Basis(std::vector<Element> elements);
    Basis(std::initializer_list<Element> elements) : Basis(std::vector<Element>(elements)) {}

    [[nodiscard]] int length() const noexcept { return static_cast<int>(elements_.size()) - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
    [[nodiscard]] Element max() const noexcept { return elements_.back(); }
    [[nodiscard]] Element operator[](std::size_t i) const noexcept { return elements_[i]; }
    [[nodiscard]] std::span<const Element> elements() const noexcept { return elements_; }

    /// Partial basis {a_0, ..., a_i}.
    [[nodiscard]] Basis prefix(int i) const;

    auto operator<=>(const Basis&) const = default;
    bool operator==(const Basis&) const = default;

private:
    std::vector<Element> elements_;
};

/// Dense bit vector over [0, 2*a_k]; bit t is set iff t is in 2A.
class SumCoverage {
public:
    explicit SumCoverage(std::size_t max_index);

    [[nodiscard]] std::size_t max_index() const noexcept { return max_index_; }
    [[nodiscard]] bool test(std::size_t t) const noexcept {
        return t <= max_index_ && ((words_[t >> 6] >> (t & 63)) & 1U) != 0;
    }
    void set(std::size_t t) noexcept { words_[t >> 6] |= std::uint64_t{1} << (t & 63); }

    /// Smallest index not in the set, or max_index()+1 when all are set.
    [[nodiscard]] std::size_t first_unset() const noexcept;
    /// Number of set bits at indices <= limit.
    [[nodiscard]] std::size_t count_through(std::size_t limit) const noexcept;
    [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool operator==(const SumCoverage&) const = default;

private:
    std::size_t max_index_;
    std::vector<std::uint64_t> words_;
};

struct BasisClass {
    bool admissible = false;
    bool restricted = false;
    bool symmetric = false;
    int range = 0;

    bool operator==(const BasisClass&) const = default;
};

[[nodiscard]] SumCoverage sum_coverage(const Basis& basis);

/// Largest n with [0, n] contained in 2A.
[[nodiscard]] int range(const Basis& basis);

/// b - A for an arbitrary finite set, returned ascending. Throws
/// std::domain_error when b < max(A).
[[nodiscard]] std::vector<Element> mirror(std::span<const Element> set, Element b);

/// a_k - A, which is again a basis (starts at 0, same largest element).
[[nodiscard]] Basis mirror(const Basis& basis);

[[nodiscard]] bool is_symmetric(const Basis& basis) noexcept;
[[nodiscard]] BasisClass classify(const Basis& basis);
[[nodiscard]] bool covers(const Basis& basis, int n);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parses the one-line text form "0 a_1 ... a_k". `line_number` only labels
/// the ParseError.
[[nodiscard]] Basis parse_basis(std::string_view text, std::size_t line_number = 1);
[[nodiscard]] std::string format_basis(const Basis& basis);
[[nodiscard]] std::string format_elements(std::span<const Element> elements);

}  // namespace addbasis
