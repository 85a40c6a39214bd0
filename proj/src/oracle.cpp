#include "addbasis/oracle.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace addbasis {

namespace {

void check_limit(int k, int limit) {
    if (k < 1) {
        throw std::invalid_argument("oracle length must be at least 1");
    }
    if (k > limit) {
        throw std::invalid_argument("oracle length " + std::to_string(k) + " exceeds the limit " +
                                    std::to_string(limit));
    }
}

// Calls visit(basis, range) for every admissible basis of length k.
void walk(int k, const std::function<void(const Basis&, int)>& visit) {
    std::vector<Element> path{0};
    std::function<void(int)> step = [&](int range_so_far) {
        if (static_cast<int>(path.size()) == k + 1) {
            visit(Basis(path), range_so_far);
            return;
        }
        const Element last = path.back();
        for (Element x = last + 1; x <= range_so_far + 1; ++x) {
            path.push_back(x);
            step(range(Basis(path)));
            path.pop_back();
        }
    };
    step(0);
}

}  // namespace

OracleResult brute_force(int k, int limit) {
    check_limit(k, limit);
    OracleResult result;
    result.k = k;
    result.extremal_range = -1;
    result.restricted_range = -1;
    walk(k, [&](const Basis& b, int r) {
        ++result.admissible_count;
        if (r > result.extremal_range) {
            result.extremal_range = r;
            result.extremal.clear();
        }
        if (r == result.extremal_range) {
            result.extremal.push_back(b);
        }
        if (r >= 2 * b.max()) {
            if (r > result.restricted_range) {
                result.restricted_range = r;
                result.extremal_restricted.clear();
            }
            if (r == result.restricted_range) {
                result.extremal_restricted.push_back(b);
            }
        }
    });
    return result;
}

std::vector<Basis> admissible_universe(int k, int limit) {
    check_limit(k, limit);
    std::vector<Basis> out;
    walk(k, [&](const Basis& b, int r) {
        if (r >= b.max()) {
            out.push_back(b);
        }
    });
    return out;
}

}  // namespace addbasis
