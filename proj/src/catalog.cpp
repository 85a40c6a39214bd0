#include "addbasis/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace addbasis {

namespace {

constexpr int kUnrestricted[] = {2,  4,  8,   12,  16,  20,  26,  32,  40,  46,  54,  64,
                                 72, 80, 92,  104, 116, 128, 140, 152, 164, 180, 196, 212};
constexpr int kRestrictedBeyond24[] = {228, 244, 262, 280, 298, 316, 338, 360, 382,
                                       404, 426, 448, 470, 492, 514, 536, 562};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

int parse_int(std::string_view token, std::size_t line, std::string_view what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, "bad " + std::string(what) + " '" + std::string(token) + "'");
    }
    return v;
}

std::optional<int> parse_optional_int(std::string_view token, std::size_t line, std::string_view what) {
    if (token == "-") {
        return std::nullopt;
    }
    return parse_int(token, line, what);
}

std::uint64_t parse_u64(const std::string& token, std::size_t line, std::string_view what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, "bad " + std::string(what) + " '" + token + "'");
    }
    return v;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return in;
}

}  // namespace

const RangeCatalog& RangeCatalog::builtin() {
    static const RangeCatalog catalog = [] {
        RangeCatalog c;
        for (int k = 1; k <= 24; ++k) {
            Entry e;
            e.unrestricted = kUnrestricted[k - 1];
            e.restricted = (k == 10) ? 44 : kUnrestricted[k - 1];
            e.provenance = "extremal bases known for k<=24";
            c.entries_[k] = e;
        }
        for (int k = 25; k <= 41; ++k) {
            Entry e;
            e.restricted = kRestrictedBeyond24[k - 25];
            e.provenance = "exhaustive restricted search";
            c.entries_[k] = e;
        }
        return c;
    }();
    return catalog;
}

RangeCatalog RangeCatalog::parse(std::istream& in) {
    RangeCatalog c;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        auto tokens = split_ws(body);
        if (tokens.size() < 3) {
            throw ParseError(line_no, "expected 'k n2 n2star [provenance]'");
        }
        const int k = parse_int(tokens[0], line_no, "length");
        if (k < 1) {
            throw ParseError(line_no, "length must be positive");
        }
        Entry e;
        e.unrestricted = parse_optional_int(tokens[1], line_no, "n2");
        e.restricted = parse_optional_int(tokens[2], line_no, "n2star");
        if (tokens.size() > 3) {
            const auto start = static_cast<std::size_t>(tokens[3].data() - body.data());
            e.provenance = std::string(body.substr(start));
        }
        if (e.unrestricted && e.restricted && *e.restricted > *e.unrestricted) {
            throw ParseError(line_no, "n2star exceeds n2");
        }
        if (!c.entries_.emplace(k, std::move(e)).second) {
            throw ParseError(line_no, "duplicate length " + std::to_string(k));
        }
    }
    return c;
}

RangeCatalog RangeCatalog::load(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    return parse(in);
}

void RangeCatalog::write(std::ostream& out) const {
    out << "# k n2 n2star provenance\n";
    for (const auto& [k, e] : entries_) {
        out << k << ' ' << (e.unrestricted ? std::to_string(*e.unrestricted) : "-") << ' '
            << (e.restricted ? std::to_string(*e.restricted) : "-");
        if (!e.provenance.empty()) {
            out << ' ' << e.provenance;
        }
        out << '\n';
    }
}

std::optional<int> RangeCatalog::find_unrestricted(int k) const {
    if (k == 0) {
        return 0;
    }
    auto it = entries_.find(k);
    return it == entries_.end() ? std::nullopt : it->second.unrestricted;
}

std::optional<int> RangeCatalog::find_restricted(int k) const {
    if (k == 0) {
        return 0;
    }
    auto it = entries_.find(k);
    return it == entries_.end() ? std::nullopt : it->second.restricted;
}

int RangeCatalog::unrestricted(int k) const {
    if (auto v = find_unrestricted(k)) {
        return *v;
    }
    throw CatalogError("n2(" + std::to_string(k) + ") is not in the catalog");
}

int RangeCatalog::restricted(int k) const {
    if (auto v = find_restricted(k)) {
        return *v;
    }
    throw CatalogError("n2*(" + std::to_string(k) + ") is not in the catalog");
}

int known_unrestricted_range(int k) {
    if (k < 1) {
        throw CatalogError("length must be positive");
    }
    return RangeCatalog::builtin().unrestricted(k);
}

int known_restricted_range(int k) {
    if (k < 1) {
        throw CatalogError("length must be positive");
    }
    return RangeCatalog::builtin().restricted(k);
}

std::vector<Element> expand_run_notation(std::string_view text, std::size_t line_number) {
    std::vector<Element> out;
    auto tokens = split_ws(text);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto tok = tokens[i];
        if (tok.front() != '+') {
            out.push_back(parse_int(tok, line_number, "element"));
            continue;
        }
        const int step = parse_int(tok.substr(1), line_number, "run step");
        if (step <= 0 || out.empty() || i + 1 >= tokens.size() || tokens[i + 1].front() == '+') {
            throw ParseError(line_number, "run '" + std::string(tok) + "' needs elements on both sides");
        }
        const int until = parse_int(tokens[i + 1], line_number, "element");
        if ((until - out.back()) % step != 0 || until <= out.back()) {
            throw ParseError(line_number, "run '" + std::string(tok) + "' does not reach " + std::to_string(until));
        }
        for (int x = out.back() + step; x < until; x += step) {
            out.push_back(x);
        }
    }
    return out;
}

std::vector<FixtureRow> parse_fixture_table(std::istream& in) {
    std::vector<FixtureRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        auto tokens = split_ws(body);
        if (tokens.size() < 4) {
            throw ParseError(line_no, "expected 'k n S|A elements'");
        }
        FixtureRow row;
        row.k = parse_int(tokens[0], line_no, "length");
        row.range = parse_int(tokens[1], line_no, "range");
        if (tokens[2] != "S" && tokens[2] != "A") {
            throw ParseError(line_no, "symmetry flag must be S or A");
        }
        row.symmetric = tokens[2] == "S";
        const auto start = static_cast<std::size_t>(tokens[3].data() - body.data());
        auto elements = expand_run_notation(body.substr(start), line_no);
        try {
            row.basis = Basis(std::move(elements));
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<FixtureRow> load_fixture_table(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    return parse_fixture_table(in);
}

std::optional<std::string> BasisList::get(std::string_view key) const {
    for (const auto& [k, v] : header) {
        if (k == key) {
            return v;
        }
    }
    return std::nullopt;
}

void write_basis_list(std::ostream& out, const BasisList& list) {
    for (const auto& [k, v] : list.header) {
        out << "# " << k << '=' << v << '\n';
    }
    for (const Basis& b : list.bases) {
        out << format_basis(b) << '\n';
    }
}

BasisList read_basis_list(std::istream& in) {
    BasisList list;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = trim(line);
        if (body.empty()) {
            continue;
        }
        if (body.front() == '#') {
            body.remove_prefix(1);
            body = trim(body);
            auto eq = body.find('=');
            if (eq != std::string_view::npos) {
                list.header.emplace_back(std::string(trim(body.substr(0, eq))), std::string(trim(body.substr(eq + 1))));
            }
            continue;
        }
        list.bases.push_back(parse_basis(body, line_no));
    }
    if (auto count = list.get("count")) {
        if (parse_u64(*count, line_no, "count") != list.bases.size()) {
            throw ParseError(line_no, "count header says " + *count + " but " + std::to_string(list.bases.size()) +
                                          " bases were read");
        }
    }
    return list;
}

void write_report(std::ostream& out, const SearchReport& report) {
    BasisList list;
    list.header = {{"k", std::to_string(report.k)},
                   {"n", std::to_string(report.n)},
                   {"pivot", std::to_string(report.pivot)},
                   {"prefixes", std::to_string(report.prefix_count)},
                   {"suffixes", std::to_string(report.suffix_count)},
                   {"count", std::to_string(report.bases.size())}};
    list.bases = report.bases;
    write_basis_list(out, list);
}

SearchReport read_report(std::istream& in) {
    BasisList list = read_basis_list(in);
    auto required = [&](std::string_view key) {
        auto v = list.get(key);
        if (!v) {
            throw ParseError(1, "report header lacks '" + std::string(key) + "'");
        }
        return parse_int(*v, 1, key);
    };
    SearchReport r;
    r.k = required("k");
    r.n = required("n");
    r.pivot = required("pivot");
    if (auto v = list.get("prefixes")) {
        r.prefix_count = parse_u64(*v, 1, "prefixes");
    }
    if (auto v = list.get("suffixes")) {
        r.suffix_count = parse_u64(*v, 1, "suffixes");
    }
    r.bases = std::move(list.bases);
    for (const Basis& b : r.bases) {
        if (b.length() != r.k) {
            throw ParseError(1, "basis '" + format_basis(b) + "' does not have length " + std::to_string(r.k));
        }
    }
    finalize_report(r);
    return r;
}

void store_report(const std::filesystem::path& path, const SearchReport& report) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    write_report(out, report);
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

SearchReport load_report(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    return read_report(in);
}

nlohmann::json report_to_json(const SearchReport& report) {
    nlohmann::json bases = nlohmann::json::array();
    for (std::size_t i = 0; i < report.bases.size(); ++i) {
        const auto el = report.bases[i].elements();
        const BasisClass& c = report.classes[i];
        bases.push_back({{"elements", std::vector<Element>(el.begin(), el.end())},
                         {"range", c.range},
                         {"symmetric", c.symmetric},
                         {"mirror", report.mirror_of[i]}});
    }
    return {{"k", report.k},
            {"n", report.n},
            {"pivot", report.pivot},
            {"prefixes", report.prefix_count},
            {"suffixes", report.suffix_count},
            {"count", report.bases.size()},
            {"bases", std::move(bases)}};
}

SearchReport report_from_json(const nlohmann::json& doc) {
    SearchReport r;
    r.k = doc.at("k").get<int>();
    r.n = doc.at("n").get<int>();
    r.pivot = doc.at("pivot").get<int>();
    r.prefix_count = doc.at("prefixes").get<std::uint64_t>();
    r.suffix_count = doc.at("suffixes").get<std::uint64_t>();
    for (const auto& b : doc.at("bases")) {
        r.bases.emplace_back(b.at("elements").get<std::vector<Element>>());
    }
    finalize_report(r);
    return r;
}

PrefixCache::PrefixCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

std::filesystem::path PrefixCache::path_for(int length, int min_range) const {
    return directory_ / ("prefixes-k" + std::to_string(length) + "-T" + std::to_string(min_range) + ".txt");
}

BasisList make_enumeration_list(int length, int min_range, std::vector<Basis> bases) {
    BasisList list;
    list.header = {{"version", std::string(kToolVersion)},
                   {"k", std::to_string(length)},
                   {"min_range", std::to_string(min_range)},
                   {"count", std::to_string(bases.size())}};
    list.bases = std::move(bases);
    return list;
}

std::optional<std::vector<Basis>> PrefixCache::lookup(int length, int min_range) const {
    std::error_code ec;
    if (!std::filesystem::is_directory(directory_, ec)) {
        return std::nullopt;
    }
    // Pick the exact file if present, else the closest looser one.
    std::optional<std::pair<int, std::filesystem::path>> best;
    const std::string prefix = "prefixes-k" + std::to_string(length) + "-T";
    for (const auto& entry : std::filesystem::directory_iterator(directory_, ec)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) != 0 || name.size() <= prefix.size() + 4 ||
            name.substr(name.size() - 4) != ".txt") {
            continue;
        }
        const std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - 4);
        int t = 0;
        auto [ptr, perr] = std::from_chars(digits.data(), digits.data() + digits.size(), t);
        if (perr != std::errc{} || ptr != digits.data() + digits.size() || t > min_range) {
            continue;
        }
        if (!best || t > best->first) {
            best = std::make_pair(t, entry.path());
        }
    }
    if (!best) {
        return std::nullopt;
    }
    auto in = open_for_read(best->second);
    BasisList list = read_basis_list(in);
    if (list.get("version") != std::string(kToolVersion) || list.get("k") != std::to_string(length) ||
        list.get("min_range") != std::to_string(best->first)) {
        return std::nullopt;
    }
    if (best->first == min_range) {
        return std::move(list.bases);
    }
    std::vector<Basis> filtered;
    for (Basis& b : list.bases) {
        if (range(b) >= min_range) {
            filtered.push_back(std::move(b));
        }
    }
    return filtered;
}

void PrefixCache::store(int length, int min_range, const std::vector<Basis>& bases) const {
    std::filesystem::create_directories(directory_);
    const auto final_path = path_for(length, min_range);
    auto tmp = final_path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        write_basis_list(out, make_enumeration_list(length, min_range, bases));
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, final_path);
}

}  // namespace addbasis
