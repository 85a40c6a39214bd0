#pragma once

// Fixed-capacity bit set used by the inner loops of the enumerator and the
// cross-product check. Capacity is W*64 bits; bits shifted past it are lost,
// so callers size W for 2*max_element + 1.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace addbasis::detail {

template <std::size_t W>
struct WordSet {
    static constexpr int kBits = static_cast<int>(W * 64);

    std::array<std::uint64_t, W> words{};

    void set(int t) noexcept { words[static_cast<std::size_t>(t) >> 6] |= std::uint64_t{1} << (t & 63); }
    [[nodiscard]] bool test(int t) const noexcept {
        return ((words[static_cast<std::size_t>(t) >> 6] >> (t & 63)) & 1U) != 0;
    }

    /// this |= src << shift
    void or_shifted(const WordSet& src, int shift) noexcept {
        const std::size_t q = static_cast<std::size_t>(shift) >> 6;
        const unsigned b = static_cast<unsigned>(shift & 63);
        if (q >= W) {
            return;
        }
        if (b == 0) {
            for (std::size_t i = W; i-- > q;) {
                words[i] |= src.words[i - q];
            }
            return;
        }
        for (std::size_t i = W - 1; i > q; --i) {
            words[i] |= (src.words[i - q] << b) | (src.words[i - q - 1] >> (64 - b));
        }
        words[q] |= src.words[0] << b;
    }

    /// popcount((src << shift) & mask) without materialising the shift.
    [[nodiscard]] static int shifted_overlap(const WordSet& src, int shift, const WordSet& mask) noexcept {
        const std::size_t q = static_cast<std::size_t>(shift) >> 6;
        const unsigned b = static_cast<unsigned>(shift & 63);
        int total = 0;
        if (q >= W) {
            return 0;
        }
        if (b == 0) {
            for (std::size_t i = q; i < W; ++i) {
                total += std::popcount(mask.words[i] & src.words[i - q]);
            }
            return total;
        }
        total += std::popcount(mask.words[q] & (src.words[0] << b));
        for (std::size_t i = q + 1; i < W; ++i) {
            total += std::popcount(mask.words[i] & ((src.words[i - q] << b) | (src.words[i - q - 1] >> (64 - b))));
        }
        return total;
    }

    /// Index of the lowest clear bit, or kBits when every bit is set.
    [[nodiscard]] int first_unset() const noexcept {
        for (std::size_t i = 0; i < W; ++i) {
            if (words[i] != ~std::uint64_t{0}) {
                return static_cast<int>(i * 64) + std::countr_one(words[i]);
            }
        }
        return kBits;
    }

    /// Highest clear bit at or below limit, or -1.
    [[nodiscard]] int last_unset_through(int limit) const noexcept {
        std::size_t i = static_cast<std::size_t>(limit) >> 6;
        const unsigned bit = static_cast<unsigned>(limit & 63);
        std::uint64_t clear = ~words[i];
        if (bit != 63) {
            clear &= (std::uint64_t{1} << (bit + 1)) - 1;
        }
        while (true) {
            if (clear != 0) {
                return static_cast<int>(i * 64) + 63 - std::countl_zero(clear);
            }
            if (i == 0) {
                return -1;
            }
            clear = ~words[--i];
        }
    }

    /// Set bits at indices 0..limit (limit < kBits).
    [[nodiscard]] int count_through(int limit) const noexcept {
        const std::size_t last = static_cast<std::size_t>(limit) >> 6;
        int total = 0;
        for (std::size_t i = 0; i < last; ++i) {
            total += std::popcount(words[i]);
        }
        const unsigned bit = static_cast<unsigned>(limit & 63);
        std::uint64_t tail = words[last];
        if (bit != 63) {
            tail &= (std::uint64_t{1} << (bit + 1)) - 1;
        }
        return total + std::popcount(tail);
    }
};

inline constexpr std::size_t kMaxWords = 16;

/// Calls fn.template operator()<W>() with the smallest supported W holding
/// `bits` bits.
template <typename Fn>
decltype(auto) dispatch_words(int bits, Fn&& fn) {
    const int words = (bits + 63) / 64;
    if (words <= 1) return std::forward<Fn>(fn).template operator()<1>();
    if (words <= 2) return std::forward<Fn>(fn).template operator()<2>();
    if (words <= 3) return std::forward<Fn>(fn).template operator()<3>();
    if (words <= 4) return std::forward<Fn>(fn).template operator()<4>();
    if (words <= 6) return std::forward<Fn>(fn).template operator()<6>();
    if (words <= 8) return std::forward<Fn>(fn).template operator()<8>();
    if (words <= 12) return std::forward<Fn>(fn).template operator()<12>();
    if (words <= 16) return std::forward<Fn>(fn).template operator()<16>();
    throw std::length_error("sum range of " + std::to_string(bits) + " bits exceeds the fixed-width kernel");
}

}  // namespace addbasis::detail
