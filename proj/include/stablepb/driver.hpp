#pragma once

#include <set>
#include <string>
#include <vector>

#include "stablepb/external.hpp"
#include "stablepb/semantics.hpp"

namespace stablepb {

struct DriverIteration {
    Interpretation candidate;
    Interpretation residue;
    std::vector<Loop> loops_added;
    bool stable = false;
};

struct DriverTrace {
    enum class End { Done, Unsat, Unknown };
    std::vector<DriverIteration> iterations;
    End end = End::Done;
    bool exhaustive = false;  // backend proved nonexistence of further models
    std::string message;
};

struct DriverResult {
    std::vector<Interpretation> models;
    DriverTrace trace;
};

/// The solving loop: translate Comp(P) to pseudo-boolean constraints, ask
/// the backend for a model, test the projection for stability, and refute
/// non-stable candidates by the loop formulas of all terminating loops of
/// the dependency graph restricted to the residue. The theory only grows;
/// loop formulas hold in every stable model, so nothing is lost, and each
/// refuted candidate stays excluded. max_models = 0 enumerates everything
/// (stable models found along the way are blocked explicitly).
inline DriverResult pbmodels_solve(const Program& p, const BackendConfig& cfg,
                                   int max_models = 1) {
    DriverResult out;
    MProgram mp = mc_transform(p);
    Digraph dep = dependency_graph(mp, at_atoms(p));

    Clausifier cl;
    PbBuilder builder(at_atoms(p));
    builder.add_clauses(cl.clausify_all(completion(p)), cl);

    std::set<AtomSet> added_loops;
    for (;;) {
        SolveResult r = cfg.kind == BackendConfig::Kind::Builtin
                            ? solve_builtin(builder.theory(), cfg.timeout_s)
                            : solve_external(builder.theory(), cfg);
        if (r.status == SolveStatus::Unsat) {
            out.trace.end = DriverTrace::End::Unsat;
            out.trace.exhaustive = cfg.kind == BackendConfig::Kind::Builtin;
            out.trace.message = "no stable models found";
            return out;
        }
        if (r.status == SolveStatus::Unknown) {
            out.trace.end = DriverTrace::End::Unknown;
            out.trace.message = r.diagnostic.empty() ? "no stable models found"
                                                     : "no stable models found (" + r.diagnostic + ")";
            return out;
        }
        Interpretation m = project_model(builder.theory(), r.assignment);
        StabilityReport rep = stability(mp, p, m);
        DriverIteration it;
        it.candidate = m;
        it.residue = rep.residue;
        it.stable = rep.stable;
        if (rep.stable) {
            out.models.push_back(m);
            out.trace.iterations.push_back(std::move(it));
            if (max_models > 0 && static_cast<int>(out.models.size()) >= max_models) {
                out.trace.end = DriverTrace::End::Done;
                return out;
            }
            builder.add_constraint(block_model(builder.theory(), m));
            continue;
        }
        bool progress = false;
        for (const Loop& l : terminating_loops(induced(dep, rep.residue))) {
            if (!added_loops.insert(l).second)
                continue;
            builder.add_clauses(cl.clausify(loop_formula(p, l)), cl);
            it.loops_added.push_back(l);
            progress = true;
        }
        if (!progress) {
            // Every terminating loop of the residue is already in the theory;
            // cannot happen for a candidate the theory admits, but blocking
            // the candidate keeps the loop sound if it ever does.
            builder.add_constraint(block_model(builder.theory(), m));
        }
        out.trace.iterations.push_back(std::move(it));
    }
}

}  // namespace stablepb
