#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "atri/solver.hpp"

namespace atri::cli
{

/** Process exit codes */
enum Exit : int {
    kOk = 0,
    kError = 1,
    kInfeasible = 2,
    kBoundary = 3,
};

struct SolveFlags {
    double tolerance{SolveOptions{}.gradient_tolerance};
    int max_iterations{SolveOptions{}.max_iterations};
    std::vector<std::string> fills;
    std::string report_path;
    bool quiet{false};
};

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_solve(const std::string& path, const SolveFlags& flags, std::ostream& out, std::ostream& err);
int cmd_bound(const std::string& path, const std::string& angles_path, std::ostream& out, std::ostream& err);

/** @brief Parse "C:P/Q"; throws atri::Error when malformed */
Filling parse_fill(const std::string& spec);

/** @brief Whole command line, including the program name in argv[0] */
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace atri::cli
