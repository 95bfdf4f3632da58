#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "primorial/primality.hpp"

namespace primlab {

enum class Form { minus, plus };

std::string_view to_string(Form f) noexcept;
std::optional<Form> parse_form(std::string_view s) noexcept;

struct SearchRecord {
    std::size_t n = 0;
    Form form = Form::plus;
    Classification classification = Classification::composite;
    std::string method;
    std::uint64_t elapsed_ms = 0;
    std::string digest;  // hex SHA-256 of the decimal candidate

    [[nodiscard]] bool passes() const noexcept { return classification != Classification::composite; }
};

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

inline constexpr const char* kCacheEnvVar = "PRIMORIAL_LAB_CACHE";

/// Cache path: an explicit flag wins, then the environment variable, else none.
std::optional<std::filesystem::path> resolve_cache_path(const std::optional<std::string>& flag);

/// Line-delimited JSON store of primality results keyed by (n, form).
/// Loading refuses malformed lines and conflicting duplicates with
/// IntegrityError; lookups refuse digest mismatches. Thread safe.
class SearchCache {
public:
    /// In-memory cache without persistence.
    SearchCache() = default;
    /// Loads (or creates on first store) the file at `path`.
    explicit SearchCache(std::filesystem::path path);

    SearchCache(const SearchCache&) = delete;
    SearchCache& operator=(const SearchCache&) = delete;

    /// Record for (n, form) if cached. `digest` is that of the candidate the
    /// caller is about to test; a stored record for another value is an error.
    std::optional<SearchRecord> lookup(std::size_t n, Form form, std::string_view digest) const;

    /// Inserts and appends to the file. Storing an identical record twice is a
    /// no-op; a conflicting one raises IntegrityError.
    void store(const SearchRecord& rec);

    /// Snapshot ordered by (n, form).
    std::vector<SearchRecord> records() const;
    std::size_t size() const;
    const std::optional<std::filesystem::path>& path() const noexcept { return path_; }

    static std::string serialize(const SearchRecord& rec);
    /// IntegrityError naming `where` on any schema problem.
    static SearchRecord parse(std::string_view line, const std::string& where);

private:
    using Key = std::pair<std::size_t, int>;
    static Key key(std::size_t n, Form f) { return {n, static_cast<int>(f)}; }
    static bool same(const SearchRecord& a, const SearchRecord& b);

    std::optional<std::filesystem::path> path_;
    mutable std::mutex mu_;
    std::map<Key, SearchRecord> records_;
    std::ofstream out_;
};

}  // namespace primlab
