#pragma once

#include "hxplain/model.hpp"

#include <variant>
#include <vector>

namespace hxplain {

struct ConstraintSystem {
    std::vector<std::string> variables;
    std::vector<LinearConstraint> constraints;

    [[nodiscard]] ConstraintSystem subset(const std::vector<std::size_t>& indices) const;
};

// One weighted term of a Farkas combination. The weight applies to the
// "<=" normal form of the constraint: GE/GT are negated, and an EQ is used
// as "a.x <= b" or, when `reversed`, as "-a.x <= -b".
struct FarkasTerm {
    std::size_t constraint = 0;
    bool reversed = false;
    Rat weight;
};

struct Feasible {
    Valuation witness;
    Rat strictness_margin;
};

struct Infeasible {
    std::vector<FarkasTerm> certificate;
};

using FeasibilityResult = std::variant<Feasible, Infeasible>;

inline bool is_feasible(const FeasibilityResult& r) { return std::holds_alternative<Feasible>(r); }

FeasibilityResult solve_feasibility(const ConstraintSystem& cs);

// Re-derives the contradiction of a certificate with exact arithmetic.
bool verify_certificate(const ConstraintSystem& cs, const Infeasible& inf);

// Fourier-Motzkin oracle. Limited to 8 variables and 24 constraints.
bool fm_eliminate_all(const ConstraintSystem& cs);

struct IIS {
    std::vector<std::size_t> indices; // ascending
};

IIS deletion_filter_iis(const ConstraintSystem& cs);

struct SolverStats {
    std::size_t solves = 0;
    std::size_t pivots = 0;
};

// Per-thread counters, for benchmarks and reports.
SolverStats& solver_stats();

} // namespace hxplain
