#include "addbasis/basis.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

namespace addbasis {

namespace {

void validate(std::span<const Element> elements) {
    if (elements.empty()) {
        throw std::invalid_argument("basis must contain 0");
    }
    if (elements.front() != 0) {
        throw std::invalid_argument("basis must start with 0");
    }
    for (std::size_t i = 1; i < elements.size(); ++i) {
        if (elements[i] <= elements[i - 1]) {
            throw std::invalid_argument("basis elements must be strictly increasing");
        }
    }
    if (elements.back() > kMaxElement) {
        throw std::invalid_argument("basis element exceeds " + std::to_string(kMaxElement));
    }
}

}  // namespace

Basis::Basis(std::vector<Element> elements) : elements_(std::move(elements)) {
    validate(elements_);
}

Basis Basis::prefix(int i) const {
    if (i < 0 || i > length()) {
        throw std::out_of_range("prefix index out of range");
    }
    return Basis(std::vector<Element>(elements_.begin(), elements_.begin() + i + 1));
}

SumCoverage::SumCoverage(std::size_t max_index)
    : max_index_(max_index), words_(max_index / 64 + 1, 0) {}

std::size_t SumCoverage::first_unset() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] != ~std::uint64_t{0}) {
            auto t = w * 64 + static_cast<std::size_t>(std::countr_one(words_[w]));
            return std::min(t, max_index_ + 1);
        }
    }
    return max_index_ + 1;
}

std::size_t SumCoverage::count_through(std::size_t limit) const noexcept {
    limit = std::min(limit, max_index_);
    std::size_t total = 0;
    std::size_t last = limit >> 6;
    for (std::size_t w = 0; w < last; ++w) {
        total += static_cast<std::size_t>(std::popcount(words_[w]));
    }
    std::uint64_t tail = words_[last];
    unsigned bit = static_cast<unsigned>(limit & 63);
    if (bit != 63) {
        tail &= (std::uint64_t{1} << (bit + 1)) - 1;
    }
    return total + static_cast<std::size_t>(std::popcount(tail));
}

SumCoverage sum_coverage(const Basis& basis) {
    auto el = basis.elements();
    SumCoverage cov(2 * static_cast<std::size_t>(basis.max()));
    for (std::size_t i = 0; i < el.size(); ++i) {
        for (std::size_t j = i; j < el.size(); ++j) {
            cov.set(static_cast<std::size_t>(el[i] + el[j]));
        }
    }
    return cov;
}

int range(const Basis& basis) {
    return static_cast<int>(sum_coverage(basis).first_unset()) - 1;
}

std::vector<Element> mirror(std::span<const Element> set, Element b) {
    std::vector<Element> out;
    out.reserve(set.size());
    for (Element a : set) {
        if (a > b) {
            throw std::domain_error("mirror point " + std::to_string(b) + " is below element " +
                                    std::to_string(a));
        }
        out.push_back(b - a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Basis mirror(const Basis& basis) {
    return Basis(mirror(basis.elements(), basis.max()));
}

bool is_symmetric(const Basis& basis) noexcept {
    auto el = basis.elements();
    const Element top = basis.max();
    const std::size_t n = el.size();
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        if (el[i] + el[n - 1 - i] != top) {
            return false;
        }
    }
    return true;
}

BasisClass classify(const Basis& basis) {
    BasisClass c;
    c.range = range(basis);
    c.admissible = c.range >= basis.max();
    c.restricted = c.range >= 2 * basis.max();
    c.symmetric = is_symmetric(basis);
    return c;
}

bool covers(const Basis& basis, int n) {
    if (n < 0) {
        throw std::invalid_argument("covers: n must be non-negative");
    }
    return range(basis) >= n;
}

Basis parse_basis(std::string_view text, std::size_t line_number) {
    std::vector<Element> values;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) {
            ++pos;
        }
        if (pos >= text.size()) {
            break;
        }
        Element v{};
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        std::size_t end = static_cast<std::size_t>(ptr - text.data());
        if (ec != std::errc{} || (end < text.size() && text[end] != ' ' && text[end] != '\t' &&
                                  text[end] != '\r')) {
            throw ParseError(line_number, "malformed integer near column " + std::to_string(pos + 1));
        }
        values.push_back(v);
        pos = end;
    }
    if (values.empty()) {
        throw ParseError(line_number, "empty basis");
    }
    if (values.front() != 0) {
        throw ParseError(line_number, "basis must start with 0");
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] <= values[i - 1]) {
            throw ParseError(line_number, "elements not strictly increasing at position " +
                                              std::to_string(i + 1));
        }
    }
    if (values.back() > kMaxElement) {
        throw ParseError(line_number, "element too large");
    }
    return Basis(std::move(values));
}

std::string format_elements(std::span<const Element> elements) {
    std::string out;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i != 0) {
            out += ' ';
        }
        out += std::to_string(elements[i]);
    }
    return out;
}

std::string format_basis(const Basis& basis) {
    return format_elements(basis.elements());
}

}  // namespace addbasis
