#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tropreg/bounds.hpp"
#include "tropreg/sampler.hpp"

namespace tropreg::cli {

enum ExitCode : int { ok = 0, failure = 1, validation = 2, cap_exceeded = 3 };

/// One result line; every count or bound carries the method that produced it.
struct MethodEntry {
    std::string method;
    std::optional<std::size_t> count;
    std::optional<BigInt> bound;
    std::optional<std::string> branch;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> degenerate;
    std::optional<std::size_t> K;
    std::optional<double> delta;
    double elapsed_ms = 0.0;
};

struct AngleRow {
    Vector point;
    bool upper_hull = false;
    double full = 0.0;
    double upper = 0.0;
};

struct RunReport {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<MethodEntry> entries;
    std::optional<std::vector<AngleRow>> angles;
    std::size_t angle_samples = 0;
};

inline constexpr const char* kCsvHeader = "method,count,bound,branch,seed,degenerate,K,delta,elapsed_ms";

nlohmann::json to_json(const RunReport& report);
std::string to_csv(const RunReport& report);
std::string to_human(const RunReport& report);

/// Parse argv (without the program name), run, write the report to `out`; returns the exit code.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tropreg::cli
