#include "hxplain/feasibility.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_map>

namespace hxplain {

SolverStats& solver_stats()
{
    thread_local SolverStats stats;
    return stats;
}

ConstraintSystem ConstraintSystem::subset(const std::vector<std::size_t>& indices) const
{
    ConstraintSystem out;
    out.variables = variables;
    for (auto i : indices)
        out.constraints.push_back(constraints.at(i));
    return out;
}

namespace {

using SRow = std::vector<std::pair<int, Rat>>;

// a.x (+ eps when strict) <= b, or a.x = b when eq.
struct NormRow {
    SRow a;
    Rat b;
    bool eq = false;
    bool strict = false;
    std::size_t src = 0;
};

std::vector<NormRow> normalize(const ConstraintSystem& cs)
{
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < cs.variables.size(); ++i)
        index.emplace(cs.variables[i], static_cast<int>(i));

    std::vector<NormRow> rows;
    rows.reserve(cs.constraints.size());
    for (std::size_t i = 0; i < cs.constraints.size(); ++i) {
        const auto& c = cs.constraints[i];
        NormRow r;
        r.src = i;
        bool neg = c.op == Op::GE || c.op == Op::GT;
        r.eq = c.op == Op::EQ;
        r.strict = is_strict(c.op);
        for (const auto& [var, coef] : c.coeffs) {
            auto it = index.find(var);
            if (it == index.end())
                throw UnboundVariable(var);
            if (!coef.is_zero())
                r.a.emplace_back(it->second, neg ? -coef : coef);
        }
        std::sort(r.a.begin(), r.a.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        r.b = neg ? -c.rhs : c.rhs;
        rows.push_back(std::move(r));
    }
    return rows;
}

const Rat* coef_of(const SRow& r, int j)
{
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& p, int k) { return p.first < k; });
    if (it != r.end() && it->first == j)
        return &it->second;
    return nullptr;
}

// r := r + c * p, with column `skip` of r dropped first.
SRow add_scaled(const SRow& r, int skip, const Rat& c, const SRow& p)
{
    SRow out;
    out.reserve(r.size() + p.size());
    auto i = r.begin();
    auto k = p.begin();
    while (i != r.end() || k != p.end()) {
        if (i != r.end() && i->first == skip) {
            ++i;
            continue;
        }
        if (k == p.end() || (i != r.end() && i->first < k->first)) {
            out.push_back(*i++);
        } else if (i == r.end() || k->first < i->first) {
            out.emplace_back(k->first, c * k->second);
            ++k;
        } else {
            Rat v = i->second + c * k->second;
            if (!v.is_zero())
                out.emplace_back(i->first, std::move(v));
            ++i;
            ++k;
        }
    }
    return out;
}

struct Conflict {
    // (row position, reversed, weight)
    std::vector<std::tuple<std::size_t, bool, Rat>> terms;
};

// General simplex over exact rationals. Variables: x_0..x_{n-1} free,
// eps, then one slack per row with s_i = a_i.x + [strict_i] eps.
class Simplex {
public:
    Simplex(int nx, const std::vector<const NormRow*>& rows) : nx_(nx), eps_(nx), input_(rows)
    {
        const int m = static_cast<int>(rows.size());
        nvars_ = nx + 1 + m;
        lo_.assign(nvars_, std::nullopt);
        hi_.assign(nvars_, std::nullopt);
        val_.assign(nvars_, Rat());
        row_of_.assign(nvars_, -1);
        lo_[eps_] = Rat(0);
        hi_[eps_] = Rat(0);
        for (int i = 0; i < m; ++i) {
            const NormRow& r = *rows[i];
            int s = slack(i);
            hi_[s] = r.b;
            if (r.eq)
                lo_[s] = r.b;
            SRow row = r.a;
            if (r.strict)
                row.emplace_back(eps_, Rat(1));
            rows_.push_back(std::move(row));
            basic_.push_back(s);
            row_of_[s] = i;
            if (r.strict)
                any_strict_ = true;
        }
    }

    FeasibilityResult solve(const std::vector<std::string>& names)
    {
        ++solver_stats().solves;
        eliminate_free();
        if (auto c = phase_one())
            return to_infeasible(*c);

        Rat eps_star(1);
        if (any_strict_) {
            hi_[eps_] = Rat(1);
            if (auto c = phase_two())
                return to_infeasible(*c);
            eps_star = val_[eps_];
        }

        Feasible f;
        f.strictness_margin = eps_star;
        for (int j = 0; j < nx_; ++j)
            f.witness[names[j]] = Rat();
        for (const auto& [x, row] : frozen_) {
            Rat v;
            for (const auto& [k, c] : row)
                v += c * val_[k];
            val_[x] = v;
        }
        for (int j = 0; j < nx_; ++j)
            f.witness[names[j]] = val_[j];
        return f;
    }

private:
    int slack(int i) const { return nx_ + 1 + i; }

    bool can_inc(int j) const { return !hi_[j] || val_[j] < *hi_[j]; }
    bool can_dec(int j) const { return !lo_[j] || *lo_[j] < val_[j]; }

    // Swap basic row r with nonbasic j. Frozen rows are updated only while
    // free variables are being eliminated.
    void pivot(std::size_t r, int j, bool touch_frozen)
    {
        ++solver_stats().pivots;
        const SRow& R = rows_[r];
        int b = basic_[r];
        Rat t = *coef_of(R, j);
        Rat inv = Rat(1) / t;
        SRow nr;
        nr.reserve(R.size());
        bool placed = false;
        for (const auto& [k, c] : R) {
            if (k == j)
                continue;
            if (!placed && b < k) {
                nr.emplace_back(b, inv);
                placed = true;
            }
            nr.emplace_back(k, -c * inv);
        }
        if (!placed)
            nr.emplace_back(b, inv);

        for (std::size_t q = 0; q < rows_.size(); ++q) {
            if (q == r)
                continue;
            if (const Rat* c = coef_of(rows_[q], j)) {
                Rat cc = *c;
                rows_[q] = add_scaled(rows_[q], j, cc, nr);
            }
        }
        if (touch_frozen)
            for (auto& [x, row] : frozen_)
                if (const Rat* c = coef_of(row, j)) {
                    Rat cc = *c;
                    row = add_scaled(row, j, cc, nr);
                }
        rows_[r] = std::move(nr);
        row_of_[b] = -1;
        row_of_[j] = static_cast<int>(r);
        basic_[r] = j;
    }

    void eliminate_free()
    {
        std::vector<std::size_t> to_freeze;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (rows_[r].empty() || rows_[r].front().first >= nx_)
                continue;
            pivot(r, rows_[r].front().first, true);
            to_freeze.push_back(r);
            frozen_.emplace_back(basic_[r], SRow());
        }
        // Move the rows of now-basic free variables out of the tableau.
        std::vector<SRow> kept;
        std::vector<int> kept_basic;
        std::set<std::size_t> freeze(to_freeze.begin(), to_freeze.end());
        std::unordered_map<int, std::size_t> frozen_pos;
        for (std::size_t k = 0; k < frozen_.size(); ++k)
            frozen_pos[frozen_[k].first] = k;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (freeze.count(r)) {
                frozen_[frozen_pos[basic_[r]]].second = std::move(rows_[r]);
                row_of_[basic_[r]] = -1;
            } else {
                row_of_[basic_[r]] = static_cast<int>(kept.size());
                kept.push_back(std::move(rows_[r]));
                kept_basic.push_back(basic_[r]);
            }
        }
        rows_ = std::move(kept);
        basic_ = std::move(kept_basic);
        is_basic_.assign(nvars_, false);
        for (int b : basic_)
            is_basic_[b] = true;
        for (const auto& fr : frozen_)
            is_basic_[fr.first] = true;

        // Nonbasic slacks start at their upper bound, everything else at 0.
        for (int v = 0; v < nvars_; ++v) {
            if (is_basic_[v])
                continue;
            val_[v] = hi_[v] ? *hi_[v] : Rat();
            if (v < nx_ || v == eps_)
                val_[v] = Rat();
        }
        for (std::size_t r = 0; r < rows_.size(); ++r)
            val_[basic_[r]] = row_value(rows_[r]);
    }

    Rat row_value(const SRow& row) const
    {
        Rat v;
        for (const auto& [k, c] : row)
            v += c * val_[k];
        return v;
    }

    void update_and_pivot(std::size_t r, int j, const Rat& delta_j, bool do_pivot)
    {
        val_[j] += delta_j;
        for (std::size_t q = 0; q < rows_.size(); ++q)
            if (const Rat* c = coef_of(rows_[q], j))
                val_[basic_[q]] += *c * delta_j;
        if (do_pivot) {
            int b = basic_[r];
            pivot(r, j, false);
            is_basic_[b] = false;
            is_basic_[j] = true;
        }
    }

    std::optional<Conflict> phase_one()
    {
        for (;;) {
            int best_var = -1;
            std::size_t best_row = 0;
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                int b = basic_[r];
                bool bad = (lo_[b] && val_[b] < *lo_[b]) || (hi_[b] && *hi_[b] < val_[b]);
                if (bad && (best_var < 0 || b < best_var)) {
                    best_var = b;
                    best_row = r;
                }
            }
            if (best_var < 0)
                return std::nullopt;

            const SRow& row = rows_[best_row];
            bool need_inc = lo_[best_var] && val_[best_var] < *lo_[best_var];
            int enter = -1;
            for (const auto& [k, c] : row) {
                bool ok = need_inc ? ((c.sign() > 0 && can_inc(k)) || (c.sign() < 0 && can_dec(k)))
                                   : ((c.sign() < 0 && can_inc(k)) || (c.sign() > 0 && can_dec(k)));
                if (ok) {
                    enter = k;
                    break; // row entries are sorted: smallest index first
                }
            }
            if (enter < 0)
                return conflict_from_row(best_row, need_inc);

            const Rat& target = need_inc ? *lo_[best_var] : *hi_[best_var];
            Rat t = *coef_of(row, enter);
            Rat delta = (target - val_[best_var]) / t;
            update_and_pivot(best_row, enter, delta, true);
        }
    }

    // Weight on row i's "<=" form, or on its reversed form for equalities.
    Conflict conflict_from_row(std::size_t r, bool below_lower)
    {
        Conflict c;
        int b = basic_[r];
        std::size_t bi = static_cast<std::size_t>(b - nx_ - 1);
        c.terms.emplace_back(bi, below_lower, Rat(1));
        for (const auto& [k, coef] : rows_[r]) {
            if (k <= eps_)
                continue;
            std::size_t ki = static_cast<std::size_t>(k - nx_ - 1);
            // Above upper: s_b - sum coef*s_k == 0 gives weight -coef on k's
            // "<=" form when coef < 0, or coef on its reversed form.
            Rat w = below_lower ? -coef : coef;
            if (w.sign() < 0)
                c.terms.emplace_back(ki, false, -w);
            else
                c.terms.emplace_back(ki, true, w);
        }
        return c;
    }

    // Maximize eps with Bland's rule. Returns a conflict when eps* = 0.
    std::optional<Conflict> phase_two()
    {
        for (;;) {
            SRow obj;
            if (is_basic_[eps_])
                obj = rows_[row_of_[eps_]];
            else
                obj.emplace_back(eps_, Rat(1));

            int enter = -1;
            int dir = 0;
            for (const auto& [k, d] : obj) {
                if (d.sign() > 0 && can_inc(k)) {
                    enter = k;
                    dir = 1;
                    break;
                }
                if (d.sign() < 0 && can_dec(k)) {
                    enter = k;
                    dir = -1;
                    break;
                }
            }
            if (enter < 0) {
                if (val_[eps_].sign() > 0)
                    return std::nullopt;
                return conflict_from_objective(obj);
            }

            std::optional<Rat> theta;
            if (dir > 0 && hi_[enter])
                theta = *hi_[enter] - val_[enter];
            if (dir < 0 && lo_[enter])
                theta = val_[enter] - *lo_[enter];
            bool flip = theta.has_value();
            int leave_var = -1;
            std::size_t leave_row = 0;
            std::optional<Rat> best;
            for (std::size_t q = 0; q < rows_.size(); ++q) {
                const Rat* c = coef_of(rows_[q], enter);
                if (!c)
                    continue;
                int b = basic_[q];
                int rate = c->sign() * dir;
                std::optional<Rat> lim;
                if (rate > 0 && hi_[b])
                    lim = (*hi_[b] - val_[b]) / abs(*c);
                else if (rate < 0 && lo_[b])
                    lim = (val_[b] - *lo_[b]) / abs(*c);
                if (!lim)
                    continue;
                if (!best || *lim < *best || (*lim == *best && b < leave_var)) {
                    best = lim;
                    leave_var = b;
                    leave_row = q;
                }
            }
            if (best && (!theta || !(*theta < *best))) {
                theta = best;
                flip = false;
            }
            if (!theta)
                throw InvariantViolation("unbounded strictness objective");
            Rat delta = dir > 0 ? *theta : -*theta;
            update_and_pivot(leave_row, enter, delta, !flip);
        }
    }

    Conflict conflict_from_objective(const SRow& obj)
    {
        Conflict c;
        for (const auto& [k, d] : obj) {
            if (k <= eps_) {
                if (!d.is_zero() && k < nx_)
                    throw InvariantViolation("free variable with nonzero reduced cost at optimum");
                continue;
            }
            std::size_t ki = static_cast<std::size_t>(k - nx_ - 1);
            if (d.sign() > 0)
                c.terms.emplace_back(ki, false, d);
            else
                c.terms.emplace_back(ki, true, -d);
        }
        return c;
    }

    Infeasible to_infeasible(const Conflict& c) const
    {
        Infeasible inf;
        for (const auto& [ri, rev, w] : c.terms) {
            if (w.is_zero())
                continue;
            const NormRow& nr = *input_[ri];
            inf.certificate.push_back(FarkasTerm{nr.src, nr.eq && rev, w});
        }
        std::sort(inf.certificate.begin(), inf.certificate.end(),
                  [](const FarkasTerm& a, const FarkasTerm& b) {
                      return std::tie(a.constraint, a.reversed) < std::tie(b.constraint, b.reversed);
                  });
        return inf;
    }

    int nx_;
    int eps_;
    int nvars_ = 0;
    bool any_strict_ = false;
    const std::vector<const NormRow*>& input_;
    std::vector<std::optional<Rat>> lo_, hi_;
    std::vector<Rat> val_;
    std::vector<SRow> rows_;
    std::vector<int> basic_;
    std::vector<int> row_of_;
    std::vector<bool> is_basic_;
    std::vector<std::pair<int, SRow>> frozen_;
};

FeasibilityResult solve_rows(const ConstraintSystem& cs, const std::vector<const NormRow*>& rows)
{
    Simplex s(static_cast<int>(cs.variables.size()), rows);
    return s.solve(cs.variables);
}

} // namespace

FeasibilityResult solve_feasibility(const ConstraintSystem& cs)
{
    auto rows = normalize(cs);
    std::vector<const NormRow*> ptrs;
    ptrs.reserve(rows.size());
    for (const auto& r : rows)
        ptrs.push_back(&r);
    return solve_rows(cs, ptrs);
}

bool verify_certificate(const ConstraintSystem& cs, const Infeasible& inf)
{
    std::map<std::string, Rat> lhs;
    Rat rhs;
    bool strict_weight = false;
    for (const auto& t : inf.certificate) {
        if (t.constraint >= cs.constraints.size() || t.weight.sign() < 0)
            return false;
        if (t.weight.is_zero())
            continue;
        const auto& c = cs.constraints[t.constraint];
        if (t.reversed && c.op != Op::EQ)
            return false;
        bool neg = c.op == Op::GE || c.op == Op::GT || t.reversed;
        Rat w = neg ? -t.weight : t.weight;
        for (const auto& [var, coef] : c.coeffs)
            lhs[var] += w * coef;
        rhs += w * c.rhs;
        if (is_strict(c.op))
            strict_weight = true;
    }
    for (const auto& [var, coef] : lhs)
        if (!coef.is_zero())
            return false;
    return rhs.sign() < 0 || (rhs.is_zero() && strict_weight);
}

// ============================================================================
// Fourier-Motzkin oracle
// ============================================================================

namespace {

struct FmRow {
    std::vector<Rat> a;
    Rat b;
    bool strict = false;
    bool eq = false;
    std::uint32_t history = 0; // originating inequalities
};

// Scale so the first nonzero coefficient has magnitude one.
void fm_scale(FmRow& r)
{
    for (const auto& c : r.a)
        if (!c.is_zero()) {
            Rat s = abs(c);
            for (auto& x : r.a)
                x /= s;
            r.b /= s;
            return;
        }
}

bool fm_constant_ok(const FmRow& r)
{
    if (r.eq)
        return r.b.is_zero();
    return r.strict ? Rat(0) < r.b : r.b.sign() >= 0;
}

} // namespace

bool fm_eliminate_all(const ConstraintSystem& cs)
{
    if (cs.variables.size() > 8 || cs.constraints.size() > 24)
        throw ScaleExceeded("Fourier-Motzkin oracle limited to 8 variables and 24 constraints");
    auto norm = normalize(cs);
    const std::size_t n = cs.variables.size();
    std::vector<FmRow> rows;
    for (std::size_t i = 0; i < norm.size(); ++i) {
        const auto& nr = norm[i];
        FmRow r;
        r.a.assign(n, Rat());
        for (const auto& [j, c] : nr.a)
            r.a[j] = c;
        r.b = nr.b;
        r.strict = nr.strict;
        r.eq = nr.eq;
        r.history = std::uint32_t(1) << i;
        rows.push_back(std::move(r));
    }

    std::size_t fm_steps = 0;
    for (std::size_t v = 0; v < n; ++v) {
        // Equalities eliminate exactly by substitution.
        auto eq = std::find_if(rows.begin(), rows.end(), [&](const FmRow& r) { return r.eq && !r.a[v].is_zero(); });
        if (eq != rows.end()) {
            FmRow e = *eq;
            rows.erase(eq);
            for (auto& r : rows) {
                if (r.a[v].is_zero())
                    continue;
                Rat f = r.a[v] / e.a[v];
                for (std::size_t j = 0; j < n; ++j)
                    r.a[j] -= f * e.a[j];
                r.b -= f * e.b;
                r.a[v] = Rat();
            }
            continue;
        }

        ++fm_steps;
        std::vector<FmRow> pos, negs, next;
        for (auto& r : rows) {
            int s = r.a[v].sign();
            if (s > 0)
                pos.push_back(std::move(r));
            else if (s < 0)
                negs.push_back(std::move(r));
            else
                next.push_back(std::move(r));
        }
        for (const auto& p : pos)
            for (const auto& q : negs) {
                std::uint32_t h = p.history | q.history;
                // Chernikov: more than fm_steps + 1 ancestors means redundant.
                if (static_cast<std::size_t>(__builtin_popcount(h)) > fm_steps + 1)
                    continue;
                Rat wp = -q.a[v];
                Rat wq = p.a[v];
                FmRow r;
                r.a.resize(n);
                for (std::size_t j = 0; j < n; ++j)
                    r.a[j] = wp * p.a[j] + wq * q.a[j];
                r.a[v] = Rat();
                r.b = wp * p.b + wq * q.b;
                r.strict = p.strict || q.strict;
                r.history = h;
                next.push_back(std::move(r));
            }
        rows.clear();
        for (auto& r : next) {
            if (std::all_of(r.a.begin(), r.a.end(), [](const Rat& x) { return x.is_zero(); })) {
                if (!fm_constant_ok(r))
                    return false;
                continue;
            }
            fm_scale(r);
            rows.push_back(std::move(r));
        }
    }

    for (const auto& r : rows)
        if (!fm_constant_ok(r))
            return false;
    return true;
}

// ============================================================================
// Deletion filter
// ============================================================================

IIS deletion_filter_iis(const ConstraintSystem& cs)
{
    auto rows = normalize(cs);
    const std::size_t m = rows.size();
    auto solve_mask = [&](const std::vector<bool>& in) {
        std::vector<const NormRow*> ptrs;
        for (std::size_t i = 0; i < m; ++i)
            if (in[i])
                ptrs.push_back(&rows[i]);
        return solve_rows(cs, ptrs);
    };
    std::vector<bool> in(m, true);
    auto first = solve_mask(in);
    if (is_feasible(first))
        throw NotInfeasible();

    // Any constraint outside the latest certificate's support can be dropped
    // without a solve: the support alone is still infeasible.
    std::set<std::size_t> support;
    for (const auto& t : std::get<Infeasible>(first).certificate)
        support.insert(t.constraint);

    for (std::size_t i = 0; i < m; ++i) {
        in[i] = false;
        if (!support.count(i))
            continue;
        auto r = solve_mask(in);
        if (is_feasible(r)) {
            in[i] = true;
        } else {
            support.clear();
            for (const auto& t : std::get<Infeasible>(r).certificate)
                support.insert(t.constraint);
        }
    }
    IIS out;
    for (std::size_t i = 0; i < m; ++i)
        if (in[i])
            out.indices.push_back(i);
    return out;
}

} // namespace hxplain
