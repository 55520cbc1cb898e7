#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "stablepb/completion.hpp"

namespace stablepb {

// ---------------------------------------------------------------------------
// Clausal form: PL^wa clauses B1 & ... & Bm -> H1 | ... | Hn whose atoms are
// weight atoms or auxiliary propositional atoms introduced by clausification.

struct ClauseAtom {
    enum class Kind { Watom, Aux };
    Kind kind = Kind::Watom;
    WeightAtom watom;
    int aux = -1;

    static ClauseAtom of(WeightAtom w) {
        ClauseAtom a;
        a.watom = std::move(w);
        return a;
    }
    static ClauseAtom of_aux(int id) {
        ClauseAtom a;
        a.kind = Kind::Aux;
        a.aux = id;
        return a;
    }
};

struct WaClause {
    std::vector<ClauseAtom> body;
    std::vector<ClauseAtom> heads;
};

struct AuxAtomInfo {
    enum class Src { BodyInd, LoopInd };
    Src src = Src::BodyInd;
    int rule = -1;     // source rule of the body / support
    int loop_id = -1;  // which clausified loop formula, for LoopInd
};

/// Turns completion and loop formulas into PL^wa clauses. Body indicators
/// are keyed by source rule, so one rule supporting several atoms shares its
/// b_r atom and defining clauses.
class Clausifier {
public:
    std::vector<WaClause> clausify(const PLwaFormula& f) {
        std::vector<WaClause> out;
        if (const auto* r = std::get_if<RuleImpl>(&f)) {
            WaClause c;
            for (const auto& w : r->body)
                c.body.push_back(ClauseAtom::of(w));
            if (!r->head.is_falsum())
                c.heads.push_back(ClauseAtom::of(r->head));
            out.push_back(std::move(c));
        } else if (const auto* s = std::get_if<SupportImpl>(&f)) {
            WaClause main;
            main.body.push_back(ClauseAtom::of(WeightAtom::unit(s->atom)));
            for (std::size_t i = 0; i < s->bodies.size(); ++i) {
                int b = body_indicator(s->rules[i], s->bodies[i], out);
                main.heads.push_back(ClauseAtom::of_aux(b));
            }
            out.push_back(std::move(main));
        } else {
            const auto& l = std::get<LoopImpl>(f);
            int loop_id = next_loop_id_++;
            WaClause main;
            WeightAtom wl;
            wl.lower = 1;
            for (AtomId a : l.loop_atoms)
                wl.elems.push_back({a, false, 1});
            main.body.push_back(ClauseAtom::of(wl));
            for (std::size_t i = 0; i < l.supports.size(); ++i) {
                int bdf = static_cast<int>(aux_.size());
                aux_.push_back({AuxAtomInfo::Src::LoopInd, l.rules[i], loop_id});
                main.heads.push_back(ClauseAtom::of_aux(bdf));
                WaClause in;  // beta_L(r) -> bdf
                for (const auto& w : l.supports[i])
                    in.body.push_back(ClauseAtom::of(w));
                in.heads.push_back(ClauseAtom::of_aux(bdf));
                out.push_back(std::move(in));
                for (const auto& w : l.supports[i]) {
                    WaClause proj;  // bdf -> A_j
                    proj.body.push_back(ClauseAtom::of_aux(bdf));
                    proj.heads.push_back(ClauseAtom::of(w));
                    out.push_back(std::move(proj));
                }
            }
            out.push_back(std::move(main));
        }
        return out;
    }

    std::vector<WaClause> clausify_all(const std::vector<PLwaFormula>& fs) {
        std::vector<WaClause> out;
        for (const auto& f : fs)
            for (auto& c : clausify(f))
                out.push_back(std::move(c));
        return out;
    }

    const std::vector<AuxAtomInfo>& aux_atoms() const { return aux_; }

private:
    int body_indicator(int rule, const std::vector<WeightAtom>& body, std::vector<WaClause>& out) {
        auto it = body_memo_.find(rule);
        if (it != body_memo_.end())
            return it->second;
        int b = static_cast<int>(aux_.size());
        aux_.push_back({AuxAtomInfo::Src::BodyInd, rule, -1});
        body_memo_.emplace(rule, b);
        WaClause def;  // bd(r) -> b_r
        for (const auto& w : body)
            def.body.push_back(ClauseAtom::of(w));
        def.heads.push_back(ClauseAtom::of_aux(b));
        out.push_back(std::move(def));
        for (const auto& w : body) {
            WaClause proj;  // b_r -> A_j
            proj.body.push_back(ClauseAtom::of_aux(b));
            proj.heads.push_back(ClauseAtom::of(w));
            out.push_back(std::move(proj));
        }
        return b;
    }

    std::vector<AuxAtomInfo> aux_;
    std::map<int, int> body_memo_;
    int next_loop_id_ = 0;
};

// ---------------------------------------------------------------------------
// Pseudo-boolean theories.

struct PBTerm {
    long long coef;
    int var;
};

struct PBConstraint {
    enum class Rel { Ge, Le, Eq };
    std::vector<PBTerm> terms;
    Rel rel = Rel::Ge;
    long long bound = 0;
};

struct PBVarInfo {
    enum class Kind { ProgramAtom, BodyInd, LoopInd, WatomB, WatomBPlus, WatomBMinus };
    Kind kind = Kind::ProgramAtom;
    AtomId atom = -1;   // ProgramAtom
    int rule = -1;      // BodyInd / LoopInd
    int loop_id = -1;   // LoopInd
    int watom_id = -1;  // the split indicators
};

struct PBTheory {
    std::vector<PBConstraint> constraints;
    std::vector<PBVarInfo> vars;
    std::map<AtomId, int> atom_var;

    int num_vars() const { return static_cast<int>(vars.size()); }
};

/// Incrementally translates PL^wa clauses into a PB theory. Weight-atom
/// indicators are memoized by structural equality; unit atoms 1{x} use the
/// program variable directly; one-sided atoms collapse onto a single
/// indicator; vacuous atoms collapse to constant true.
class PbBuilder {
public:
    explicit PbBuilder(const AtomSet& program_atoms) {
        for (AtomId a : program_atoms) {
            theory_.atom_var.emplace(a, static_cast<int>(theory_.vars.size()));
            theory_.vars.push_back({PBVarInfo::Kind::ProgramAtom, a, -1, -1, -1});
        }
    }

    const PBTheory& theory() const { return theory_; }

    void add_clauses(const std::vector<WaClause>& clauses, const Clausifier& cl) {
        sync_aux(cl);
        for (const auto& c : clauses)
            add_clause(c);
    }

    void add_constraint(PBConstraint c) { theory_.constraints.push_back(std::move(c)); }

private:
    struct Ind {
        bool const_true = false;
        int var = -1;
    };

    void sync_aux(const Clausifier& cl) {
        const auto& aux = cl.aux_atoms();
        while (aux_var_.size() < aux.size()) {
            std::size_t i = aux_var_.size();
            PBVarInfo info;
            info.kind = aux[i].src == AuxAtomInfo::Src::BodyInd ? PBVarInfo::Kind::BodyInd
                                                                : PBVarInfo::Kind::LoopInd;
            info.rule = aux[i].rule;
            info.loop_id = aux[i].loop_id;
            aux_var_.push_back(static_cast<int>(theory_.vars.size()));
            theory_.vars.push_back(info);
        }
    }

    void add_clause(const WaClause& c) {
        PBConstraint out;
        long long m = 0;
        for (const auto& a : c.body) {
            Ind ind = atom_indicator(a);
            if (ind.const_true)
                continue;
            out.terms.push_back({-1, ind.var});
            ++m;
        }
        for (const auto& a : c.heads) {
            Ind ind = atom_indicator(a);
            if (ind.const_true)
                return;  // clause trivially satisfied
            out.terms.push_back({1, ind.var});
        }
        out.rel = PBConstraint::Rel::Ge;
        out.bound = 1 - m;
        theory_.constraints.push_back(std::move(out));
    }

    Ind atom_indicator(const ClauseAtom& a) {
        if (a.kind == ClauseAtom::Kind::Aux)
            return {false, aux_var_.at(static_cast<std::size_t>(a.aux))};
        const WeightAtom& w = a.watom;
        if (w.is_unit())
            return {false, theory_.atom_var.at(w.elems[0].atom)};
        auto it = watom_memo_.find(w);
        if (it != watom_memo_.end())
            return it->second;
        Ind ind = build_watom(w);
        watom_memo_.emplace(w, ind);
        return ind;
    }

    Ind build_watom(const WeightAtom& w) {
        const long long l = w.effective_lower();
        const long long u = w.effective_upper();
        const long long sum = w.weight_sum();
        const bool low_vac = l <= 0;
        const bool up_vac = u >= sum;
        if (low_vac && up_vac)
            return {true, -1};
        int id = next_watom_id_++;
        std::vector<PBTerm> weights;
        for (const auto& e : w.elems)
            weights.push_back({e.weight, theory_.atom_var.at(e.atom)});

        auto new_var = [&](PBVarInfo::Kind kind) {
            int v = static_cast<int>(theory_.vars.size());
            PBVarInfo info;
            info.kind = kind;
            info.watom_id = id;
            theory_.vars.push_back(info);
            return v;
        };
        auto lower_pair = [&](int bplus) {
            PBConstraint c1;  // (-l) b+ + sum(a_i w_i) >= 0
            c1.terms = weights;
            c1.terms.push_back({-l, bplus});
            c1.rel = PBConstraint::Rel::Ge;
            c1.bound = 0;
            theory_.constraints.push_back(std::move(c1));
            PBConstraint c2;  // -(sum-l+1) b+ + sum(a_i w_i) <= l-1
            c2.terms = weights;
            c2.terms.push_back({-(sum - l + 1), bplus});
            c2.rel = PBConstraint::Rel::Le;
            c2.bound = l - 1;
            theory_.constraints.push_back(std::move(c2));
        };
        auto upper_pair = [&](int bminus) {
            PBConstraint c1;  // (sum-u) b- + sum(a_i w_i) <= sum
            c1.terms = weights;
            c1.terms.push_back({sum - u, bminus});
            c1.rel = PBConstraint::Rel::Le;
            c1.bound = sum;
            theory_.constraints.push_back(std::move(c1));
            PBConstraint c2;  // (u+1) b- + sum(a_i w_i) >= u+1
            c2.terms = weights;
            c2.terms.push_back({u + 1, bminus});
            c2.rel = PBConstraint::Rel::Ge;
            c2.bound = u + 1;
            theory_.constraints.push_back(std::move(c2));
        };

        if (!low_vac && up_vac) {
            int b = new_var(PBVarInfo::Kind::WatomBPlus);
            lower_pair(b);
            return {false, b};
        }
        if (low_vac && !up_vac) {
            int b = new_var(PBVarInfo::Kind::WatomBMinus);
            upper_pair(b);
            return {false, b};
        }
        int b = new_var(PBVarInfo::Kind::WatomB);
        int bplus = new_var(PBVarInfo::Kind::WatomBPlus);
        int bminus = new_var(PBVarInfo::Kind::WatomBMinus);
        // b == b+ & b-, as three clauses.
        theory_.constraints.push_back({{{-1, b}, {1, bplus}}, PBConstraint::Rel::Ge, 0});
        theory_.constraints.push_back({{{-1, b}, {1, bminus}}, PBConstraint::Rel::Ge, 0});
        theory_.constraints.push_back(
            {{{-1, bplus}, {-1, bminus}, {1, b}}, PBConstraint::Rel::Ge, -1});
        lower_pair(bplus);
        upper_pair(bminus);
        return {false, b};
    }

    PBTheory theory_;
    std::vector<int> aux_var_;
    std::map<WeightAtom, Ind> watom_memo_;
    int next_watom_id_ = 0;
};

/// Convenience wrapper: the PB theory of a formula set.
inline PBTheory pb_translate(const std::vector<PLwaFormula>& fs, const AtomSet& program_atoms) {
    Clausifier cl;
    std::vector<WaClause> clauses = cl.clausify_all(fs);
    PbBuilder builder(program_atoms);
    builder.add_clauses(clauses, cl);
    return builder.theory();
}

/// The blocking constraint excluding exactly the interpretations that
/// project onto m.
inline PBConstraint block_model(const PBTheory& t, const Interpretation& m) {
    PBConstraint c;
    long long in_count = 0;
    for (const auto& [atom, var] : t.atom_var) {
        if (m.contains(atom)) {
            c.terms.push_back({-1, var});
            ++in_count;
        } else {
            c.terms.push_back({1, var});
        }
    }
    c.rel = PBConstraint::Rel::Ge;
    c.bound = 1 - in_count;
    return c;
}

/// Keep the program atoms assigned 1.
inline Interpretation project_model(const PBTheory& t, const std::vector<std::uint8_t>& assignment) {
    Interpretation m;
    for (const auto& [atom, var] : t.atom_var)
        if (assignment[static_cast<std::size_t>(var)])
            m.insert(atom);
    return m;
}

// ---------------------------------------------------------------------------
// OPB text format.

inline std::string emit_opb(const PBTheory& t) {
    std::string out = "* #variable= " + std::to_string(t.num_vars()) +
                      " #constraint= " + std::to_string(t.constraints.size()) + "\n";
    for (const auto& c : t.constraints) {
        const bool flip = c.rel == PBConstraint::Rel::Le;
        bool first = true;
        for (const auto& term : c.terms) {
            long long coef = flip ? -term.coef : term.coef;
            if (!first)
                out += ' ';
            first = false;
            out += coef >= 0 ? "+" : "-";
            out += std::to_string(coef >= 0 ? coef : -coef);
            out += " x";
            out += std::to_string(term.var + 1);
        }
        if (!first)
            out += ' ';
        out += c.rel == PBConstraint::Rel::Eq ? "=" : ">=";
        out += ' ';
        out += std::to_string(flip ? -c.bound : c.bound);
        out += " ;\n";
    }
    return out;
}

/// Minimal OPB reader covering what emit_opb writes (plus <= for good
/// measure). Variable labels are lost; only indices survive.
inline PBTheory parse_opb(const std::string& text) {
    PBTheory t;
    int max_var = -1;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '*')
            continue;
        std::istringstream ls(line);
        PBConstraint c;
        std::string tok;
        long long coef = 0;
        bool have_coef = false;
        bool done_terms = false;
        while (ls >> tok) {
            if (tok == ";")
                break;
            if (tok == ">=" || tok == "<=" || tok == "=") {
                c.rel = tok == ">=" ? PBConstraint::Rel::Ge
                                    : tok == "<=" ? PBConstraint::Rel::Le : PBConstraint::Rel::Eq;
                ls >> c.bound;
                done_terms = true;
            } else if (!done_terms && tok[0] == 'x') {
                int var = std::stoi(tok.substr(1)) - 1;
                max_var = std::max(max_var, var);
                c.terms.push_back({have_coef ? coef : 1, var});
                have_coef = false;
            } else if (!done_terms) {
                coef = std::stoll(tok);
                have_coef = true;
            }
        }
        t.constraints.push_back(std::move(c));
    }
    for (int i = 0; i <= max_var; ++i)
        t.vars.push_back({});
    return t;
}

}  // namespace stablepb
