#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace primlab {

enum class OutputFormat { csv, json, md };

std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept;

/// One evaluated point of a check. `asserted == false` marks a reported-only
/// value (it never affects `passed`).
struct CheckDetail {
    std::string point;
    double value = 0.0;
    double bound = 0.0;
    bool ok = true;
    bool asserted = true;
    std::string note;
};

struct CheckReport {
    std::string check_name;
    bool passed = true;
    double max_residual = 0.0;
    std::vector<CheckDetail> details;
    std::vector<std::string> notes;

    void add(CheckDetail d);
    void note(std::string text) { notes.push_back(std::move(text)); }
    /// passed <=> every asserted detail is ok.
    void finalize();
};

/// One row of a reproduced table. Which optionals are set depends on the table.
struct TableRow {
    std::uint64_t N = 0;
    std::optional<std::uint64_t> actual;
    double expected_low = 0.0;
    double expected_high = 0.0;
    std::optional<double> omega;
    std::optional<double> reference;  // comparison column, e.g. 2 e^gamma ln p_N
};

/// Rectangular text table ready for emission.
struct TextTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string emit(const TextTable& t, OutputFormat fmt);
std::string emit(const CheckReport& r, OutputFormat fmt, int digits = 9);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

}  // namespace primlab
