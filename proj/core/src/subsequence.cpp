#include "hxplain/subsequence.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

namespace hxplain {

namespace {

struct Interner {
    std::unordered_map<std::string, int> ids;
    std::vector<std::string> names;

    int id(const std::string& s)
    {
        auto [it, fresh] = ids.emplace(s, static_cast<int>(names.size()));
        if (fresh)
            names.push_back(s);
        return it->second;
    }
    std::vector<int> encode(const SymbolSeq& s)
    {
        std::vector<int> out;
        out.reserve(s.size());
        for (const auto& x : s)
            out.push_back(id(x));
        return out;
    }
    SymbolSeq decode(const std::vector<int>& s) const
    {
        SymbolSeq out;
        out.reserve(s.size());
        for (int x : s)
            out.push_back(names[x]);
        return out;
    }
};

// next[j][c] = smallest position >= j holding symbol c, or n.
std::vector<std::vector<int>> next_table(const std::vector<int>& s, int alphabet)
{
    const int n = static_cast<int>(s.size());
    std::vector<std::vector<int>> next(n + 1, std::vector<int>(alphabet, n));
    for (int j = n - 1; j >= 0; --j) {
        next[j] = next[j + 1];
        next[j][s[j]] = j;
    }
    return next;
}

std::vector<int> lcs_pair_ids(const std::vector<int>& a, const std::vector<int>& b, int alphabet)
{
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<std::uint32_t> L((n + 1) * (m + 1), 0);
    auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return L[i * (m + 1) + j]; };
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = m; j-- > 0;)
            at(i, j) = a[i] == b[j] ? at(i + 1, j + 1) + 1 : std::max(at(i + 1, j), at(i, j + 1));

    auto next = next_table(b, alphabet);
    std::vector<int> out;
    std::size_t i = 0;
    std::size_t j = 0;
    std::uint32_t r = at(0, 0);
    while (r > 0) {
        for (std::size_t ii = i; ii < n; ++ii) {
            std::size_t jj = static_cast<std::size_t>(next[j][a[ii]]);
            if (jj < m && at(ii + 1, jj + 1) + 1 == r) {
                out.push_back(a[ii]);
                i = ii + 1;
                j = jj + 1;
                --r;
                break;
            }
        }
    }
    return out;
}

} // namespace

SymbolSeq lcs_pair(const SymbolSeq& a, const SymbolSeq& b)
{
    Interner in;
    auto ea = in.encode(a);
    auto eb = in.encode(b);
    return in.decode(lcs_pair_ids(ea, eb, static_cast<int>(in.names.size())));
}

bool lcs_multi_fits(const std::vector<SymbolSeq>& seqs, std::size_t budget)
{
    std::size_t cells = 1;
    for (const auto& s : seqs) {
        if (cells > budget / (s.size() + 1))
            return false;
        cells *= s.size() + 1;
    }
    return cells <= budget;
}

SymbolSeq lcs_multi_exact(const std::vector<SymbolSeq>& seqs, std::size_t budget)
{
    if (seqs.empty())
        return {};
    if (!lcs_multi_fits(seqs, budget))
        throw BudgetExceeded("exact LCS table exceeds " + std::to_string(budget) + " cells");

    Interner in;
    std::vector<std::vector<int>> s;
    for (const auto& x : seqs)
        s.push_back(in.encode(x));
    const int alphabet = static_cast<int>(in.names.size());
    const std::size_t k = s.size();

    std::vector<std::size_t> stride(k);
    std::size_t cells = 1;
    for (std::size_t d = k; d-- > 0;) {
        stride[d] = cells;
        cells *= s[d].size() + 1;
    }
    std::vector<std::uint32_t> L(cells, 0);
    std::vector<std::size_t> pos(k);
    for (std::size_t idx = cells; idx-- > 0;) {
        std::size_t rem = idx;
        bool edge = false;
        for (std::size_t d = 0; d < k; ++d) {
            pos[d] = rem / stride[d];
            rem %= stride[d];
            if (pos[d] == s[d].size())
                edge = true;
        }
        if (edge)
            continue;
        int c = s[0][pos[0]];
        bool all = true;
        for (std::size_t d = 1; d < k && all; ++d)
            all = s[d][pos[d]] == c;
        if (all) {
            std::size_t diag = idx;
            for (std::size_t d = 0; d < k; ++d)
                diag += stride[d];
            L[idx] = L[diag] + 1;
        } else {
            std::uint32_t best = 0;
            for (std::size_t d = 0; d < k; ++d)
                best = std::max(best, L[idx + stride[d]]);
            L[idx] = best;
        }
    }

    std::vector<std::vector<std::vector<int>>> next;
    for (const auto& x : s)
        next.push_back(next_table(x, alphabet));
    std::vector<int> out;
    std::vector<std::size_t> p(k, 0);
    auto linear = [&](const std::vector<std::size_t>& q) {
        std::size_t idx = 0;
        for (std::size_t d = 0; d < k; ++d)
            idx += q[d] * stride[d];
        return idx;
    };
    std::uint32_t r = L[0];
    std::vector<std::size_t> q(k);
    while (r > 0) {
        bool took = false;
        for (std::size_t i0 = p[0]; i0 < s[0].size() && !took; ++i0) {
            int c = s[0][i0];
            q[0] = i0 + 1;
            bool ok = true;
            for (std::size_t d = 1; d < k && ok; ++d) {
                std::size_t j = static_cast<std::size_t>(next[d][p[d]][c]);
                ok = j < s[d].size();
                q[d] = j + 1;
            }
            if (ok && L[linear(q)] + 1 == r) {
                out.push_back(c);
                p = q;
                --r;
                took = true;
            }
        }
        if (!took)
            throw InvariantViolation("LCS reconstruction failed");
    }
    return in.decode(out);
}

std::vector<SymbolSeq> fold_order(std::vector<SymbolSeq> seqs)
{
    std::sort(seqs.begin(), seqs.end(), [](const SymbolSeq& a, const SymbolSeq& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    seqs.erase(std::unique(seqs.begin(), seqs.end()), seqs.end());
    return seqs;
}

SymbolSeq common_subsequence_fold(const std::vector<SymbolSeq>& seqs)
{
    if (seqs.empty())
        throw Error("common_subsequence_fold needs at least one sequence");
    auto order = fold_order(seqs);
    if (lcs_multi_fits(order, kFoldExactCells))
        return lcs_multi_exact(order, kFoldExactCells);
    Interner in;
    std::vector<int> acc = in.encode(order.front());
    for (std::size_t i = 1; i < order.size() && !acc.empty(); ++i) {
        auto e = in.encode(order[i]);
        acc = lcs_pair_ids(acc, e, static_cast<int>(in.names.size()));
    }
    return in.decode(acc);
}

bool is_subsequence(const SymbolSeq& c, const SymbolSeq& s)
{
    std::size_t i = 0;
    for (std::size_t j = 0; j < s.size() && i < c.size(); ++j)
        if (s[j] == c[i])
            ++i;
    return i == c.size();
}

bool is_common_subsequence(const SymbolSeq& c, const std::vector<SymbolSeq>& seqs)
{
    return std::all_of(seqs.begin(), seqs.end(), [&](const SymbolSeq& s) { return is_subsequence(c, s); });
}

bool is_locally_maximal(const SymbolSeq& c, const std::vector<SymbolSeq>& seqs)
{
    if (seqs.empty() || !is_common_subsequence(c, seqs))
        return false;
    const std::size_t gaps = c.size() + 1;
    // insertable[g] = symbols insertable at gap g in every sequence so far.
    std::vector<std::set<std::string>> insertable(gaps);
    bool first = true;
    for (const auto& s : seqs) {
        const std::size_t n = s.size();
        // pre[g]: end of the earliest embedding of c[0..g); suf[g]: start of
        // the latest embedding of c[g..).
        std::vector<std::size_t> pre(gaps, 0);
        std::size_t j = 0;
        for (std::size_t g = 1; g < gaps; ++g) {
            while (s[j] != c[g - 1])
                ++j;
            pre[g] = ++j;
        }
        std::vector<std::size_t> suf(gaps, n);
        j = n;
        for (std::size_t g = c.size(); g-- > 0;) {
            do
                --j;
            while (s[j] != c[g]);
            suf[g] = j;
        }
        for (std::size_t g = 0; g < gaps; ++g) {
            std::set<std::string> here(s.begin() + static_cast<std::ptrdiff_t>(pre[g]),
                                       s.begin() + static_cast<std::ptrdiff_t>(std::max(pre[g], suf[g])));
            if (first) {
                insertable[g] = std::move(here);
            } else {
                std::set<std::string> keep;
                std::set_intersection(insertable[g].begin(), insertable[g].end(), here.begin(), here.end(),
                                      std::inserter(keep, keep.begin()));
                insertable[g] = std::move(keep);
            }
        }
        first = false;
    }
    return std::all_of(insertable.begin(), insertable.end(), [](const auto& x) { return x.empty(); });
}

SymbolSeq WaypointChain::locations() const
{
    SymbolSeq out;
    for (const auto& e : elements)
        out.push_back(e.location);
    return out;
}

WaypointChain build_chain(const SymbolSeq& c, const PlanningProblem& p)
{
    const auto& l0 = p.init().location;
    const auto& lg = p.goal.location;
    if (c.empty() || c.front() != l0)
        throw EndpointMissing("common subsequence does not start at the initial location " + l0);
    if (c.back() != lg)
        throw EndpointMissing("common subsequence does not end at the goal location " + lg);
    WaypointChain chain;
    chain.provenance = c;
    for (const auto& l : c)
        chain.elements.push_back(SubProblem{l, p.automaton.location(l).invariant});
    return chain;
}

} // namespace hxplain
