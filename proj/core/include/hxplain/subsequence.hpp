#pragma once

#include "hxplain/model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hxplain {

using SymbolSeq = std::vector<std::string>;

SymbolSeq lcs_pair(const SymbolSeq& a, const SymbolSeq& b);

constexpr std::size_t kDefaultLcsBudget = 10'000'000;

// Throws BudgetExceeded when the product of (length + 1) exceeds budget.
SymbolSeq lcs_multi_exact(const std::vector<SymbolSeq>& seqs, std::size_t budget = kDefaultLcsBudget);

// Whether the exact DP table for seqs fits the budget.
bool lcs_multi_fits(const std::vector<SymbolSeq>& seqs, std::size_t budget = kDefaultLcsBudget);

// Deduplicated, sorted by (length, lexicographic).
std::vector<SymbolSeq> fold_order(std::vector<SymbolSeq> seqs);

// Small inputs (at most kFoldExactCells DP cells after dedup) are solved
// exactly; larger ones fold lcs_pair in fold_order.
constexpr std::size_t kFoldExactCells = 1 << 16;

SymbolSeq common_subsequence_fold(const std::vector<SymbolSeq>& seqs);

bool is_subsequence(const SymbolSeq& c, const SymbolSeq& s);
bool is_common_subsequence(const SymbolSeq& c, const std::vector<SymbolSeq>& seqs);

// True when no single symbol can be inserted anywhere into c while keeping
// it a common subsequence of seqs.
bool is_locally_maximal(const SymbolSeq& c, const std::vector<SymbolSeq>& seqs);

struct SubProblem {
    std::string location;
    std::vector<LinearConstraint> goal; // Inv(location)
};

struct WaypointChain {
    std::vector<SubProblem> elements;
    SymbolSeq provenance;

    [[nodiscard]] SymbolSeq locations() const;
};

WaypointChain build_chain(const SymbolSeq& c, const PlanningProblem& p);

} // namespace hxplain
