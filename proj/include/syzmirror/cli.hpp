#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syzmirror/toric.hpp"

namespace syzmirror::cli {

enum class OutputFormat { Text, Structured, Latex };

struct RunConfig {
    std::string subcommand;
    // Fan file path; empty when `example` supplies the fan.
    std::string input;
    std::string example;
    int cutoff = 8;
    std::optional<std::size_t> base_cone;
    OutputFormat format = OutputFormat::Text;
    // mirror-eq: "flat" or "cform".
    std::string form = "flat";
    // verify: comparison order, optional replacement reference document and export switch.
    int order = 6;
    std::string reference_path;
    bool export_reference = false;
    // discriminant: the constant K2 of the boundary stratum.
    std::string k2 = "1";
};

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInternal = 4;
// Module errors exit with kExitErrorBase + ErrorCode.
inline constexpr int kExitErrorBase = 10;

struct FanDocument {
    Fan fan;
    std::optional<RatVector> polytope_constants;
};

// {"rank": n, "rays": [[...], ...], "max_cones": [[...], ...],
//  "polytope_constants": ["p/q", ...]}; the last key is optional.
FanDocument parse_fan_document(std::string_view text);
std::string fan_document_to_json(const FanDocument &doc);

int run(const RunConfig &config, std::ostream &out, std::ostream &err);

// Parses argv into a RunConfig and runs it.
int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace syzmirror::cli
