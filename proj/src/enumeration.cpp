#include "addbasis/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "addbasis/wordset.hpp"

namespace addbasis {

namespace {

// k+1 elements give at most (k+1)(k+2)/2 distinct sums, so an admissible
// basis of length k has a_k <= n2(A_{k-1}) + 1 <= k(k+1)/2.
int largest_element_bound(int length) {
    return length * (length + 1) / 2;
}

void validate_spec(const EnumSpec& spec) {
    if (spec.length < 1) {
        throw std::invalid_argument("enumeration length must be at least 1");
    }
    if (spec.min_range < 0) {
        throw std::invalid_argument("min_range must be non-negative");
    }
    if (spec.length > 60) {
        throw std::invalid_argument("enumeration length " + std::to_string(spec.length) + " is too large");
    }
    const auto& stem = spec.stem;
    if (stem.empty()) {
        return;
    }
    if (stem.size() > static_cast<std::size_t>(spec.length) + 1) {
        throw std::invalid_argument("stem is longer than the requested basis");
    }
    if (stem[0] != 0 || (stem.size() > 1 && stem[1] != 1)) {
        throw std::invalid_argument("stem must begin 0, 1");
    }
    Basis partial(stem);  // ordering checks
    for (std::size_t i = 1; i < stem.size(); ++i) {
        if (stem[i] > range(partial.prefix(static_cast<int>(i) - 1)) + 1) {
            throw std::invalid_argument("stem is not an admissible partial basis");
        }
    }
}

template <std::size_t W, typename Emit>
class Dfs {
public:
    Dfs(int length, int target, bool pruning, int stop_depth, Emit& emit)
        : length_(length),
          target_(target),
          stop_depth_(stop_depth),
          pruning_(pruning),
          emit_(emit),
          path_(static_cast<std::size_t>(length) + 1, 0),
          frames_(static_cast<std::size_t>(length) + 1) {}

    void run(std::span<const Element> stem) {
        Frame& root = frames_[0];
        root = Frame{};
        root.cover.set(0);
        root.members.set(0);
        root.range = 0;
        std::size_t depth = 0;
        for (std::size_t i = 1; i < stem.size(); ++i) {
            push(static_cast<int>(depth), stem[i]);
            ++depth;
        }
        descend(static_cast<int>(depth));
    }

private:
    using Set = detail::WordSet<W>;

    struct Frame {
        Set cover;
        Set members;
        int range = 0;
    };

    void push(int depth, Element x) {
        const Frame& parent = frames_[static_cast<std::size_t>(depth)];
        Frame& child = frames_[static_cast<std::size_t>(depth) + 1];
        child.cover = parent.cover;
        child.cover.or_shifted(parent.members, x);
        child.cover.set(2 * x);
        child.members = parent.members;
        child.members.set(x);
        child.range = child.cover.first_unset() - 1;
        path_[static_cast<std::size_t>(depth) + 1] = x;
    }

    void descend(int depth) {
        const Frame& f = frames_[static_cast<std::size_t>(depth)];
        if (depth == stop_depth_) {
            if (stop_depth_ < length_ || f.range >= target_) {
                emit_(std::span<const Element>(path_.data(), static_cast<std::size_t>(depth) + 1));
            }
            return;
        }
        const int remaining = length_ - depth;
        const Element last = path_[static_cast<std::size_t>(depth)];
        if (pruning_ && f.range < target_) {
            const int uncovered = target_ + 1 - f.cover.count_through(target_);
            const std::span<const Element> elems(path_.data(), static_cast<std::size_t>(depth) + 1);
            if (uncovered > gaps_capacity(elems, remaining, target_)) {
                return;
            }
            if (remaining == 1) {
                // The smallest gap g is below 2*(last+1), so only x + a_j can
                // fill it: x = g - a_j for some existing a_j. The largest gap
                // up to the target must be filled by x as well.
                const int gap = f.range + 1;
                const int top_gap = f.cover.last_unset_through(target_);
                for (int j = depth; j >= 0; --j) {
                    const Element x = gap - path_[static_cast<std::size_t>(j)];
                    if (x <= last) {
                        continue;
                    }
                    const int rest = top_gap - x;
                    if (rest != x && (rest < 0 || rest > last || !f.members.test(rest))) {
                        continue;
                    }
                    push(depth, x);
                    descend(depth + 1);
                }
                return;
            }
        }
        for (Element x = last + 1; x <= f.range + 1; ++x) {
            push(depth, x);
            descend(depth + 1);
        }
    }

    int length_;
    int target_;
    int stop_depth_;
    bool pruning_;
    Emit& emit_;
    std::vector<Element> path_;
    std::vector<Frame> frames_;
};

int kernel_bits(const EnumSpec& spec) {
    int top = largest_element_bound(spec.length);
    if (!spec.stem.empty()) {
        top = std::max(top, spec.stem.back());
    }
    return std::max(2 * top, spec.min_range) + 1;
}

template <typename Emit>
void run_kernel(const EnumSpec& spec, bool pruning, int stop_depth, Emit& emit) {
    static const std::vector<Element> kRoot{0};
    const std::span<const Element> stem = spec.stem.empty() ? std::span<const Element>(kRoot)
                                                            : std::span<const Element>(spec.stem);
    if (static_cast<int>(stem.size()) - 1 > stop_depth) {
        return;
    }
    detail::dispatch_words(kernel_bits(spec), [&]<std::size_t W>() {
        Dfs<W, Emit> dfs(spec.length, spec.min_range, pruning, stop_depth, emit);
        dfs.run(stem);
    });
}

int stem_size(const EnumSpec& spec) {
    return spec.stem.empty() ? 1 : static_cast<int>(spec.stem.size());
}

// Stems deep enough to give each worker many independent partitions.
std::vector<std::vector<Element>> auto_stems(const EnumSpec& spec, const EnumOptions& options) {
    if (options.split_depth > 0) {
        return make_stems(spec, options.split_depth, options);
    }
    const std::size_t wanted = 64 * static_cast<std::size_t>(options.threads);
    std::vector<std::vector<Element>> stems;
    for (int depth = stem_size(spec) - 1; depth < spec.length; ++depth) {
        stems = make_stems(spec, depth, options);
        if (stems.size() >= wanted) {
            break;
        }
    }
    return stems;
}

// Runs fn(stem_index, stem_spec) over all stems on `threads` workers.
template <typename Fn>
void for_each_stem(const std::vector<std::vector<Element>>& stems, const EnumSpec& spec, unsigned threads,
                   Fn&& fn) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < stems.size(); i = next.fetch_add(1)) {
            EnumSpec part = spec;
            part.stem = stems[i];
            fn(i, part);
        }
    };
    std::vector<std::jthread> pool;
    const unsigned n = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(stems.size())));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back(worker);
    }
}

}  // namespace

PartialState::PartialState(const Basis& partial)
    : basis_(partial), coverage_(sum_coverage(partial)), range_(static_cast<int>(coverage_.first_unset()) - 1) {}

PartialState::PartialState(Basis basis, SumCoverage coverage)
    : basis_(std::move(basis)), coverage_(std::move(coverage)), range_(static_cast<int>(coverage_.first_unset()) - 1) {}

PartialState PartialState::extended(Element x) const {
    if (x <= basis_.max()) {
        throw std::invalid_argument("extension must exceed the last element");
    }
    std::vector<Element> elems(basis_.elements().begin(), basis_.elements().end());
    elems.push_back(x);
    SumCoverage cov(2 * static_cast<std::size_t>(x));
    for (std::size_t t = 0; t <= coverage_.max_index(); ++t) {
        if (coverage_.test(t)) {
            cov.set(t);
        }
    }
    for (Element a : elems) {
        cov.set(static_cast<std::size_t>(a + x));
    }
    return PartialState(Basis(std::move(elems)), std::move(cov));
}

int PartialState::covered_through(int limit) const {
    if (limit < 0) {
        return 0;
    }
    return static_cast<int>(coverage_.count_through(static_cast<std::size_t>(limit)));
}

CandidateInterval next_candidates(const PartialState& state) {
    return CandidateInterval{state.basis().max() + 1, state.range() + 1};
}

long long gaps_capacity(std::span<const Element> elements, int remaining, int target) {
    // New element t (1-based) is at least s+t-1. Its sums with existing a_j
    // only matter when they land in [0, target]; its sums with new elements
    // u <= t are at least 2s+u+t-2.
    const long long s = static_cast<long long>(elements.back()) + 1;
    long long capacity = 0;
    std::size_t below = elements.size();
    for (int t = 1; t <= remaining; ++t) {
        const long long limit = target - s - t + 1;
        while (below > 0 && elements[below - 1] > limit) {
            --below;
        }
        capacity += static_cast<long long>(below);
        const long long pairs = target - 2 * s - t + 2;
        capacity += std::clamp<long long>(pairs, 0, t);
    }
    return capacity;
}

bool gaps_prune(const PartialState& state, int remaining, int target) {
    if (remaining < 0 || target < 0) {
        throw std::invalid_argument("gaps_prune: negative argument");
    }
    if (state.range() >= target) {
        return false;
    }
    if (remaining == 0) {
        return true;
    }
    const long long uncovered = static_cast<long long>(target) + 1 - state.covered_through(target);
    return uncovered > gaps_capacity(state.basis().elements(), remaining, target);
}

void enumerate_admissible(const EnumSpec& spec, const BasisSink& sink, const EnumOptions& options) {
    validate_spec(spec);
    if (options.threads <= 1) {
        auto emit = [&](std::span<const Element> e) { sink(e); };
        run_kernel(spec, options.pruning, spec.length, emit);
        return;
    }
    const auto stems = auto_stems(spec, options);
    std::vector<std::vector<Element>> buffers(stems.size());
    for_each_stem(stems, spec, options.threads, [&](std::size_t i, const EnumSpec& part) {
        auto& buf = buffers[i];
        auto emit = [&](std::span<const Element> e) { buf.insert(buf.end(), e.begin(), e.end()); };
        run_kernel(part, options.pruning, part.length, emit);
    });
    const std::size_t width = static_cast<std::size_t>(spec.length) + 1;
    for (const auto& buf : buffers) {
        for (std::size_t off = 0; off < buf.size(); off += width) {
            sink(std::span<const Element>(buf.data() + off, width));
        }
    }
}

std::vector<Basis> list_admissible(const EnumSpec& spec, const EnumOptions& options) {
    std::vector<Basis> out;
    enumerate_admissible(
        spec, [&](std::span<const Element> e) { out.emplace_back(std::vector<Element>(e.begin(), e.end())); },
        options);
    return out;
}

std::uint64_t count_matching(const EnumSpec& spec, const EnumOptions& options) {
    validate_spec(spec);
    if (options.threads <= 1) {
        std::uint64_t count = 0;
        auto emit = [&](std::span<const Element>) { ++count; };
        run_kernel(spec, options.pruning, spec.length, emit);
        return count;
    }
    const auto stems = auto_stems(spec, options);
    std::vector<std::uint64_t> counts(stems.size(), 0);
    for_each_stem(stems, spec, options.threads, [&](std::size_t i, const EnumSpec& part) {
        auto emit = [&counts, i](std::span<const Element>) { ++counts[i]; };
        run_kernel(part, options.pruning, part.length, emit);
    });
    std::uint64_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    return total;
}

std::uint64_t count_admissible(int k, const EnumOptions& options) {
    return count_matching(EnumSpec{k, 0, {}}, options);
}

std::vector<std::vector<Element>> make_stems(const EnumSpec& spec, int depth, const EnumOptions& options) {
    validate_spec(spec);
    if (depth < stem_size(spec) - 1 || depth > spec.length) {
        throw std::invalid_argument("stem depth out of range");
    }
    std::vector<std::vector<Element>> stems;
    auto emit = [&](std::span<const Element> e) { stems.emplace_back(e.begin(), e.end()); };
    run_kernel(spec, options.pruning, depth, emit);
    return stems;
}

}  // namespace addbasis
