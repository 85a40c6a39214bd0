#include "addbasis/mitm.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <thread>

#include "addbasis/enumeration.hpp"
#include "addbasis/wordset.hpp"

namespace addbasis {

namespace {

std::vector<Basis> admissible_list(int length, int min_range, const SearchOptions& options, std::string_view side) {
    if (options.cache != nullptr) {
        if (auto cached = options.cache->lookup(length, min_range)) {
            if (options.progress) {
                options.progress(std::string(side) + ": " + std::to_string(cached->size()) + " bases of length " +
                                 std::to_string(length) + " with range >= " + std::to_string(min_range) +
                                 " (cache)");
            }
            return std::move(*cached);
        }
    }
    auto list = list_admissible(EnumSpec{length, min_range, {}}, EnumOptions{options.pruning, options.threads, 0});
    if (options.cache != nullptr) {
        options.cache->store(length, min_range, list);
    }
    if (options.progress) {
        options.progress(std::string(side) + ": " + std::to_string(list.size()) + " bases of length " +
                         std::to_string(length) + " with range >= " + std::to_string(min_range));
    }
    return list;
}

// Precomputed halves for the pairwise coverage check over [0, n].
template <std::size_t W>
class PairChecker {
public:
    PairChecker(const std::vector<Basis>& prefixes, const std::vector<Basis>& mirrored_suffixes, int n)
        : n_(n), half_(n / 2) {
        prefixes_.reserve(prefixes.size());
        for (const Basis& p : prefixes) {
            Prefix pre;
            pre.top = p.max();
            const auto el = p.elements();
            for (std::size_t a = 0; a < el.size(); ++a) {
                pre.members.set(el[a]);
                for (std::size_t b = a; b < el.size(); ++b) {
                    if (el[a] + el[b] <= n_) {
                        pre.cover.set(el[a] + el[b]);
                    }
                }
            }
            prefixes_.push_back(pre);
        }
        suffixes_.reserve(mirrored_suffixes.size());
        for (const Basis& b : mirrored_suffixes) {
            Suffix suf;
            suf.usable = b.max() <= half_;
            if (suf.usable) {
                suf.elements = mirror(b.elements(), half_);
                suf.bottom = suf.elements.front();
                for (std::size_t a = 0; a < suf.elements.size(); ++a) {
                    for (std::size_t c = a; c < suf.elements.size(); ++c) {
                        suf.cover.set(suf.elements[a] + suf.elements[c]);
                    }
                }
            }
            suffixes_.push_back(std::move(suf));
        }
    }

    [[nodiscard]] bool covers(std::size_t pi, std::size_t si) const {
        const Prefix& p = prefixes_[pi];
        const Suffix& s = suffixes_[si];
        if (!s.usable || p.top >= s.bottom) {
            return false;
        }
        // Every integer of [0, n] outside 2A_i and 2R must be some a + r.
        for (std::size_t w = 0; w < W; ++w) {
            std::uint64_t gaps = ~(p.cover.words[w] | s.cover.words[w]);
            const int base = static_cast<int>(w * 64);
            if (base > n_) {
                break;
            }
            if (n_ - base < 63) {
                gaps &= (std::uint64_t{1} << (n_ - base + 1)) - 1;
            }
            while (gaps != 0) {
                const int g = base + std::countr_zero(gaps);
                gaps &= gaps - 1;
                bool hit = false;
                for (Element r : s.elements) {
                    const int a = g - r;
                    if (a < 0) {
                        break;
                    }
                    if (a <= p.top && p.members.test(a)) {
                        hit = true;
                        break;
                    }
                }
                if (!hit) {
                    return false;
                }
            }
        }
        return true;
    }

private:
    struct Prefix {
        detail::WordSet<W> cover;
        detail::WordSet<W> members;
        Element top = 0;
    };
    struct Suffix {
        detail::WordSet<W> cover;
        std::vector<Element> elements;
        Element bottom = 0;
        bool usable = false;
    };

    int n_;
    int half_;
    std::vector<Prefix> prefixes_;
    std::vector<Suffix> suffixes_;
};

std::vector<Basis> combine(const std::vector<Basis>& prefixes, const std::vector<Basis>& suffixes, int n,
                           unsigned threads) {
    return detail::dispatch_words(n + 1, [&]<std::size_t W>() {
        const PairChecker<W> checker(prefixes, suffixes, n);
        const std::size_t block = 16;
        const std::size_t blocks = (prefixes.size() + block - 1) / block;
        std::vector<std::vector<Basis>> found(blocks);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
                const std::size_t end = std::min(prefixes.size(), (b + 1) * block);
                for (std::size_t pi = b * block; pi < end; ++pi) {
                    for (std::size_t si = 0; si < suffixes.size(); ++si) {
                        if (!checker.covers(pi, si)) {
                            continue;
                        }
                        auto candidate = assemble(prefixes[pi], suffixes[si], n);
                        // Independent recheck through the plain sumset.
                        if (candidate && addbasis::covers(*candidate, n)) {
                            found[b].push_back(std::move(*candidate));
                        }
                    }
                }
            }
        };
        {
            const unsigned n_threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
            std::vector<std::jthread> pool;
            for (unsigned t = 1; t < n_threads; ++t) {
                pool.emplace_back(worker);
            }
            worker();
        }
        std::vector<Basis> out;
        for (auto& part : found) {
            std::move(part.begin(), part.end(), std::back_inserter(out));
        }
        return out;
    });
}

}  // namespace

SearchTarget SearchTarget::make(int k, int n, std::optional<int> pivot, const RangeCatalog& catalog) {
    if (k < 3) {
        throw std::invalid_argument("restricted search needs k >= 3");
    }
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("range of a restricted basis is even and positive; got n=" + std::to_string(n));
    }
    SearchTarget t;
    t.k = k;
    t.n = n;
    t.pivot = pivot.value_or(k / 2);
    if (t.pivot <= 0 || t.pivot >= k - 1) {
        throw std::invalid_argument("pivot must satisfy 0 < i < k-1; got " + std::to_string(t.pivot));
    }
    t.suffix_length = k - 1 - t.pivot;
    const int half = n / 2;
    t.prefix_min_range = std::max(0, half - catalog.unrestricted(t.suffix_length - 1) - 2);
    t.suffix_min_range = std::max(0, half - catalog.unrestricted(t.pivot - 1) - 2);
    return t;
}

int upper_bound_restricted(int k, const RangeCatalog& catalog) {
    if (k < 3) {
        throw std::invalid_argument("upper bound needs k >= 3");
    }
    const int r = k / 2;
    if (k % 2 == 0) {
        return 4 * catalog.unrestricted(r - 1) + 4;
    }
    return 2 * catalog.unrestricted(r - 1) + 2 * catalog.unrestricted(r) + 4;
}

std::optional<Basis> assemble(const Basis& prefix, const Basis& mirrored_suffix, int n) {
    if (n < 0 || n % 2 != 0) {
        throw std::invalid_argument("assemble needs an even n");
    }
    const int half = n / 2;
    if (mirrored_suffix.max() > half || prefix.max() >= half - mirrored_suffix.max()) {
        return std::nullopt;
    }
    std::vector<Element> elements(prefix.elements().begin(), prefix.elements().end());
    const auto tail = mirror(mirrored_suffix.elements(), half);
    elements.insert(elements.end(), tail.begin(), tail.end());
    return Basis(std::move(elements));
}

SearchReport search_restricted(const SearchTarget& target, const SearchOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    SearchReport report;
    report.k = target.k;
    report.n = target.n;
    report.pivot = target.pivot;

    const auto prefixes = admissible_list(target.pivot, target.prefix_min_range, options, "prefixes");
    std::vector<Basis> suffix_storage;
    const std::vector<Basis>* suffixes = &prefixes;
    if (target.suffix_length != target.pivot || target.suffix_min_range != target.prefix_min_range) {
        suffix_storage = admissible_list(target.suffix_length, target.suffix_min_range, options, "suffixes");
        suffixes = &suffix_storage;
    }
    report.prefix_count = prefixes.size();
    report.suffix_count = suffixes->size();
    report.bases = combine(prefixes, *suffixes, target.n, options.threads);
    finalize_report(report);
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

SearchReport find_extremal_restricted(int k, std::optional<int> pivot, const SearchOptions& options,
                                      const RangeCatalog& catalog) {
    const int bound = upper_bound_restricted(k, catalog);
    for (int n = bound - bound % 2; n >= 2; n -= 2) {
        const auto target = SearchTarget::make(k, n, pivot, catalog);
        if (options.progress) {
            options.progress("k=" + std::to_string(k) + " n=" + std::to_string(n) + " pivot=" +
                             std::to_string(target.pivot));
        }
        auto report = search_restricted(target, options);
        if (!report.empty()) {
            return report;
        }
    }
    throw std::runtime_error("no restricted basis of length " + std::to_string(k) + " found for any n >= 2");
}

}  // namespace addbasis
