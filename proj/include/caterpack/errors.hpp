#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace caterpack {

// Bad argument values or violated call preconditions.
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A constructor's feasibility conditions do not hold; carries every violated condition.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(std::vector<std::string> conditions)
        : std::runtime_error(join(conditions)), violated(std::move(conditions)) {}

    std::vector<std::string> violated;

private:
    static std::string join(const std::vector<std::string>& cs) {
        std::string out = "infeasible:";
        for (const auto& c : cs) {
            out += ' ';
            out += '[';
            out += c;
            out += ']';
        }
        return out;
    }
};

// Input data does not have the structure the operation requires.
class structure_error : public std::runtime_error {
public:
    explicit structure_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A produced artifact failed its own correctness check.
class verification_error : public std::runtime_error {
public:
    explicit verification_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A bounded constructive search ended without a certified result, either by
// exhausting its candidate space or by running out of budget.
class construction_error : public std::runtime_error {
public:
    construction_error(const std::string& msg, bool out_of_budget)
        : std::runtime_error(msg), budget_exhausted(out_of_budget) {}

    bool budget_exhausted;
};

// Numeric degeneracy in the geometric oracle; never silently miscount.
class geometry_error : public std::runtime_error {
public:
    explicit geometry_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace caterpack
