#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "atri/solver.hpp"

namespace atri::cli
{

inline constexpr const char* kToolVersion = "1.0.0";

/** @brief 64-bit FNV-1a hash of a byte string */
std::uint64_t fnv1a64(std::string_view bytes);

/** Flat text form of a solve report; every number keeps 17 significant digits */
struct ReportDocument {
    std::string tool_version{kToolVersion};
    std::string input_name;
    std::string input_digest;
    std::string status;
    std::vector<Filling> fillings;
    int iterations{0};
    int dimension{0};
    bool thin{false};
    double start_margin{0.0};
    double volume{0.0};
    double lower_bound{0.0};
    bool lower_bound_caveat{true};
    double residual_edge{0.0};
    double residual_completeness{0.0};
    double residual_filling{0.0};
    std::vector<double> angles;
    std::vector<std::pair<double, double>> shapes;

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

ReportDocument make_report(const SolveReport& rep, const std::string& name, std::string_view input_bytes);

std::string write_report(const ReportDocument& doc);

/** @brief Inverse of write_report; throws SyntaxError on malformed text */
ReportDocument parse_report(std::string_view text);

}  // namespace atri::cli

