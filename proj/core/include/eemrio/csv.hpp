#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace eemrio::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column position for a named header, or throws DataError.
    std::size_t col(const std::string& name) const;
};

/// Reads a comma-separated file with a mandatory header row.
/// Handles quoted fields and trims trailing CR. Empty lines are skipped.
Table read_file(const std::filesystem::path& path);

/// Parses CSV text (same rules as read_file); `origin` names the source in errors.
Table parse(const std::string& text, const std::string& origin);

double to_double(const std::string& field, const std::string& context);

/// Formats a value with 6 significant digits, the fixed precision used in
/// every emitted CSV so reruns diff cleanly.
std::string format_sig(double value);

}  // namespace eemrio::csv
