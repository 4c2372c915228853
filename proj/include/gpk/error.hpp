#pragma once

#include <stdexcept>
#include <string>

namespace gpk {

// Error taxonomy maps onto CLI exit codes: usage=1, infeasible order=2,
// budget=3, mismatch=4. Everything else is a plain Error (internal misuse,
// parse problems, kind/arity violations) and surfaces as usage unless a
// command knows better.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
    ParseError(const std::string& what, int line, int col)
        : Error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
          line(line), col(col) {}
    int line, col;
};

struct InfeasibleOrderError : Error {
    explicit InfeasibleOrderError(const std::string& what) : Error(what) {}
};

struct BudgetError : Error {
    explicit BudgetError(const std::string& what) : Error(what) {}
};

} // namespace gpk
