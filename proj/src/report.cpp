#include "addbasis/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace addbasis {

std::size_t SearchReport::symmetric_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(), [](const BasisClass& c) { return c.symmetric; }));
}

bool SearchReport::same_content(const SearchReport& other) const {
    return k == other.k && n == other.n && pivot == other.pivot && bases == other.bases &&
           classes == other.classes && mirror_of == other.mirror_of && prefix_count == other.prefix_count &&
           suffix_count == other.suffix_count;
}

void finalize_report(SearchReport& report) {
    std::sort(report.bases.begin(), report.bases.end());
    report.bases.erase(std::unique(report.bases.begin(), report.bases.end()), report.bases.end());
    report.classes.clear();
    report.mirror_of.clear();
    for (const Basis& b : report.bases) {
        report.classes.push_back(classify(b));
        const Basis m = mirror(b);
        auto it = std::lower_bound(report.bases.begin(), report.bases.end(), m);
        if (it == report.bases.end() || *it != m) {
            throw std::logic_error("report is not closed under mirroring: " + format_basis(b));
        }
        report.mirror_of.push_back(static_cast<std::size_t>(it - report.bases.begin()));
    }
}

}  // namespace addbasis
