#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "primorial/report.hpp"

namespace primlab {

struct CliConfig {
    std::uint64_t sieve_limit = 2'000'000;
    double c = 0.5;
    int k = 1;
    OutputFormat output_format = OutputFormat::md;
    std::optional<std::string> cache_path;
    unsigned jobs = 1;
    bool long_run = false;
    int digits = 9;
};

/// Exit codes: 0 success, 1 failed check or runtime failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace primlab
