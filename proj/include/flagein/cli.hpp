#pragma once

// Command surface: describe / system / verify / solve / invariants over
// text, JSON and LaTeX output. Exit codes: 0 success, 2 validation error,
// 3 internal failure.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flagein/einstein.hpp"
#include "flagein/solver.hpp"

namespace flagein::cli {

struct CliRequest {
    std::string command;  // describe | system | verify | solve | invariants
    std::string family;
    std::vector<int> partition;
    std::optional<std::string> ansatz;
    std::vector<std::string> metrics;  // JSON maps, t-root key -> value
    std::string format = "text";       // text | json | latex
    bool oracle = false;
    double verify_tol = 1e-6;
    SolveConfig solve;
};

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Parses the ansatz grammar ("g=1,f=1,h=*", individual keys override the
/// class clauses) against the variables of a system. Positions in error
/// messages are 0-based character offsets.
Ansatz parse_ansatz(const std::string& text, const PolySystem& sys);

CliResult run(const CliRequest& request);

/// argv-level entry used by the binary; returns the process exit code.
int main_entry(const std::vector<std::string>& args, std::string& out, std::string& err);

}  // namespace flagein::cli
