#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace addbasis::cli {

enum class Format { text, json };

struct CliConfig {
    std::string subcommand;
    int k = 0;
    std::optional<int> n;
    std::optional<int> pivot;
    int min_range = 0;
    unsigned threads = 1;
    std::string out;
    Format format = Format::text;
    std::string cache_dir;
    int oracle_limit = 10;
    std::string path;
    int from = 3;
    int to = 3;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotFound = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv-style arguments (without the program name) and runs the
/// subcommand. Results go to `out` (or --out), progress and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_search(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_extremal(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_enumerate(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_oracle(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_table(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace addbasis::cli
