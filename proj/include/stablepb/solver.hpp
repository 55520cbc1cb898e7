#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "stablepb/pbtrans.hpp"

namespace stablepb {

enum class SolveStatus { Sat, Unsat, Unknown };

struct SolveStats {
    long long decisions = 0;
    long long propagations = 0;
    double seconds = 0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Unknown;
    std::vector<std::uint8_t> assignment;  // present iff Sat
    SolveStats stats;
    std::string diagnostic;
};

namespace detail {

/// Complete DPLL-style search over 0-1 variables with slack-based bound
/// propagation. Deliberately simple: static variable order, no learning,
/// chronological backtracking. Correctness and reproducibility first; an
/// external solver supplies speed when needed.
class BuiltinSolver {
public:
    BuiltinSolver(const PBTheory& t, double timeout_s) : timeout_s_(timeout_s) {
        nvars_ = t.num_vars();
        for (const auto& c : t.constraints) {
            if (c.rel == PBConstraint::Rel::Ge || c.rel == PBConstraint::Rel::Eq)
                add_row(c.terms, c.bound, false);
            if (c.rel == PBConstraint::Rel::Le || c.rel == PBConstraint::Rel::Eq)
                add_row(c.terms, c.bound, true);
        }
        if (occs_.size() < static_cast<std::size_t>(nvars_))
            occs_.resize(static_cast<std::size_t>(nvars_));
    }

    SolveResult solve() {
        auto start = std::chrono::steady_clock::now();
        SolveResult res;
        vals_.assign(static_cast<std::size_t>(nvars_), -1);

        // Initial slacks; constraints may be born violated.
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].slack < 0) {
                res.status = SolveStatus::Unsat;
                return res;
            }
        for (std::size_t i = 0; i < rows_.size(); ++i)
            pending_.push_back(static_cast<int>(i));

        long long steps = 0;
        for (;;) {
            if (++steps % 4096 == 0 && timeout_s_ > 0) {
                std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
                if (el.count() > timeout_s_) {
                    res.status = SolveStatus::Unknown;
                    res.diagnostic = "timeout";
                    res.stats = stats_;
                    return res;
                }
            }
            if (!propagate()) {
                if (!backtrack()) {
                    res.status = SolveStatus::Unsat;
                    break;
                }
                continue;
            }
            int v = pick_var();
            if (v < 0) {
                res.status = SolveStatus::Sat;
                res.assignment.assign(vals_.begin(), vals_.end());
                break;
            }
            ++stats_.decisions;
            decisions_.push_back(static_cast<int>(trail_.size()));
            assign(v, 0);
        }
        std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
        stats_.seconds = el.count();
        res.stats = stats_;
        return res;
    }

private:
    struct Row {
        std::vector<PBTerm> terms;
        long long bound = 0;
        long long slack = 0;  // max achievable under current assignment, minus bound
    };
    struct Occ {
        int row;
        long long coef;
    };

    void add_row(const std::vector<PBTerm>& terms, long long bound, bool negate) {
        Row r;
        // Merge duplicate variables; they can arise from constructed theories.
        std::map<int, long long> merged;
        for (const auto& t : terms)
            merged[t.var] += negate ? -t.coef : t.coef;
        r.bound = negate ? -bound : bound;
        long long maxsum = 0;
        for (const auto& [var, coef] : merged) {
            if (coef == 0)
                continue;
            r.terms.push_back({coef, var});
            if (coef > 0)
                maxsum += coef;
        }
        r.slack = maxsum - r.bound;
        int idx = static_cast<int>(rows_.size());
        for (const auto& t : r.terms) {
            if (static_cast<std::size_t>(t.var) >= occs_.size())
                occs_.resize(static_cast<std::size_t>(t.var) + 1);
            occs_[static_cast<std::size_t>(t.var)].push_back({idx, t.coef});
        }
        rows_.push_back(std::move(r));
    }

    void assign(int var, int value) {
        vals_[static_cast<std::size_t>(var)] = static_cast<signed char>(value);
        trail_.push_back(var);
        for (const auto& o : occs_[static_cast<std::size_t>(var)]) {
            long long delta = 0;
            if (o.coef > 0 && value == 0)
                delta = o.coef;
            else if (o.coef < 0 && value == 1)
                delta = -o.coef;
            if (delta != 0) {
                rows_[static_cast<std::size_t>(o.row)].slack -= delta;
                pending_.push_back(o.row);
            }
        }
    }

    void unassign_to(std::size_t mark) {
        while (trail_.size() > mark) {
            int var = trail_.back();
            trail_.pop_back();
            int value = vals_[static_cast<std::size_t>(var)];
            for (const auto& o : occs_[static_cast<std::size_t>(var)]) {
                if (o.coef > 0 && value == 0)
                    rows_[static_cast<std::size_t>(o.row)].slack += o.coef;
                else if (o.coef < 0 && value == 1)
                    rows_[static_cast<std::size_t>(o.row)].slack += -o.coef;
            }
            vals_[static_cast<std::size_t>(var)] = -1;
        }
    }

    /// Fixpoint propagation; false on conflict.
    bool propagate() {
        while (!pending_.empty()) {
            int ri = pending_.back();
            pending_.pop_back();
            Row& r = rows_[static_cast<std::size_t>(ri)];
            if (r.slack < 0)
                return false;
            for (const auto& t : r.terms) {
                if (vals_[static_cast<std::size_t>(t.var)] != -1)
                    continue;
                long long mag = t.coef > 0 ? t.coef : -t.coef;
                if (mag > r.slack) {
                    ++stats_.propagations;
                    assign(t.var, t.coef > 0 ? 1 : 0);
                    if (rows_[static_cast<std::size_t>(ri)].slack < 0)
                        return false;
                }
            }
        }
        return true;
    }

    int pick_var() const {
        for (int v = 0; v < nvars_; ++v)
            if (vals_[static_cast<std::size_t>(v)] == -1)
                return v;
        return -1;
    }

    /// Chronological: undo the latest decision still having an untried value.
    /// The first branch always tries 0, so flipping to 1 exhausts the level.
    bool backtrack() {
        pending_.clear();
        while (!decisions_.empty()) {
            std::size_t mark = static_cast<std::size_t>(decisions_.back());
            int var = trail_[mark];
            int tried = vals_[static_cast<std::size_t>(var)];
            decisions_.pop_back();
            unassign_to(mark);
            if (tried == 0) {
                decisions_.push_back(static_cast<int>(trail_.size()));
                assign(var, 1);
                // Re-examine everything this assignment touched.
                for (const auto& o : occs_[static_cast<std::size_t>(var)])
                    pending_.push_back(o.row);
                return true;
            }
        }
        return false;
    }

    int nvars_ = 0;
    double timeout_s_ = 0;
    std::vector<Row> rows_;
    std::vector<std::vector<Occ>> occs_;
    std::vector<signed char> vals_;
    std::vector<int> trail_;
    std::vector<int> decisions_;  // trail marks of decision assignments
    std::vector<int> pending_;
    SolveStats stats_;
};

}  // namespace detail

/// Complete search. UNSAT is a proof of nonexistence; UNKNOWN only on timeout.
inline SolveResult solve_builtin(const PBTheory& t, double timeout_s = 0) {
    return detail::BuiltinSolver(t, timeout_s).solve();
}

}  // namespace stablepb
