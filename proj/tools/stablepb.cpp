#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stablepb/driver.hpp"
#include "stablepb/equivalence.hpp"
#include "stablepb/generators.hpp"
#include "stablepb/parser.hpp"

namespace {

using namespace stablepb;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<std::string> sorted_names(const Interpretation& m, const AtomTable& atoms,
                                      const AtomSet& hide) {
    std::vector<std::string> names;
    for (AtomId a : m)
        if (!hide.contains(a))
            names.push_back(atoms.name(a));
    std::sort(names.begin(), names.end());
    return names;
}

void print_model(int index, const Interpretation& m, const AtomTable& atoms, const AtomSet& hide) {
    std::cout << "Answer: " << index << "\n";
    bool first = true;
    for (const auto& name : sorted_names(m, atoms, hide)) {
        if (!first)
            std::cout << ' ';
        first = false;
        std::cout << name;
    }
    std::cout << "\n\n";
}

BackendConfig parse_solver_option(const std::string& opt, double timeout) {
    BackendConfig cfg;
    cfg.timeout_s = timeout;
    if (opt == "builtin")
        return cfg;
    if (opt.rfind("ext:", 0) == 0) {
        cfg.kind = BackendConfig::Kind::External;
        cfg.command = opt.substr(4);
        if (cfg.command.empty())
            throw CLI::ValidationError("--solver", "ext: requires a command template");
        return cfg;
    }
    throw CLI::ValidationError("--solver", "expected 'builtin' or 'ext:\"CMD {opb}\"'");
}

Interpretation parse_model_list(const std::string& text, AtomTable& atoms) {
    Interpretation m;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        cur.erase(0, cur.find_first_not_of(" \t"));
        cur.erase(cur.find_last_not_of(" \t") + 1);
        if (!cur.empty())
            m.insert(atoms.intern(cur));
    }
    return m;
}

/// Extend a model over source atoms with the aux atoms' forced values.
Interpretation lift_over_aux(const Interpretation& m, const NormalizeResult& norm) {
    Interpretation out = m;
    for (const auto& [aux, src] : norm.aux_to_source)
        if (!m.contains(src))
            out.insert(aux);
    return out;
}

int cmd_solve(const std::string& file, const std::string& solver_opt, int models,
              double timeout, const std::string& dump_opb, bool dump_completion,
              bool trace_loops) {
    NormalizeResult norm = normalize(parse_program(read_file(file)));
    const Program& p = norm.program;
    AtomSet hide = norm.aux_atoms();

    if (dump_completion) {
        for (const auto& f : completion(p))
            std::cout << render_formula(f, p.atoms) << "\n";
    }
    if (!dump_opb.empty())
        write_file(dump_opb, emit_opb(pb_translate(completion(p), at_atoms(p))));

    BackendConfig cfg = parse_solver_option(solver_opt, timeout);
    DriverResult res = pbmodels_solve(p, cfg, models);

    int i = 0;
    for (const auto& m : res.models)
        print_model(++i, m, p.atoms, hide);
    if (!res.models.empty()) {
        std::cout << "Stable models: " << res.models.size() << "\n";
    } else {
        std::cout << res.trace.message;
        if (res.trace.exhaustive)
            std::cout << " (exhaustive)";
        std::cout << "\n";
    }
    if (trace_loops) {
        std::set<std::string> lines;
        for (const auto& it : res.trace.iterations) {
            for (const auto& loop : it.loops_added) {
                std::string line;
                for (const auto& name : sorted_names(loop, p.atoms, AtomSet{})) {
                    if (!line.empty())
                        line += ' ';
                    line += name;
                }
                lines.insert(line);
            }
        }
        for (const auto& line : lines)
            std::cerr << line << "\n";
    }
    return res.models.empty() ? 1 : 0;
}

int cmd_check(const std::string& file, const std::string& model_text, bool stable,
              bool supported, bool tight) {
    Program parsed = parse_program(read_file(file));
    Interpretation m0 = parse_model_list(model_text, parsed.atoms);
    NormalizeResult norm = normalize(parsed);
    Interpretation m = lift_over_aux(m0, norm);
    bool ok = false;
    if (stable)
        ok = is_stable(norm.program, m);
    else if (supported)
        ok = is_supported(norm.program, m);
    else if (tight)
        ok = tight_on(norm.program, m);
    std::cout << (ok ? "yes" : "no") << "\n";
    return ok ? 0 : 1;
}

int cmd_enum(const std::string& file, bool stable, bool supported, bool models) {
    NormalizeResult norm = normalize(parse_program(read_file(file)));
    const Program& p = norm.program;
    AtomSet hide = norm.aux_atoms();
    std::set<Interpretation> found;
    if (stable)
        found = enum_stable(p);
    else if (supported)
        found = enum_supported(p);
    else if (models)
        found = enum_models(p);
    int i = 0;
    for (const auto& m : found)
        print_model(++i, m, p.atoms, hide);
    std::cout << "Count: " << found.size() << "\n";
    return found.empty() ? 1 : 0;
}

int cmd_equiv(const std::string& pfile, const std::string& qfile, bool strong, bool witness) {
    auto [p0, q0] = share_table(parse_program(read_file(pfile)), parse_program(read_file(qfile)));
    NormalizeResult pn = normalize(p0);
    NormalizeResult qn = normalize(q0);
    std::pair<Program, Program> shared = share_table(pn.program, qn.program);
    const Program& p = shared.first;
    const Program& q = shared.second;
    EquivVerdict v = strong ? strongly_equivalent(p, q) : uniformly_equivalent(p, q);
    if (v.equivalent) {
        std::cout << (strong ? "strongly equivalent" : "uniformly equivalent") << "\n";
        return 0;
    }
    std::cout << "not " << (strong ? "strongly" : "uniformly") << " equivalent" << "\n";
    if (witness && v.witness) {
        auto fmt = [&](const Interpretation& s) {
            std::string out = "{";
            bool first = true;
            for (const auto& name : sorted_names(s, p.atoms, AtomSet{})) {
                if (!first)
                    out += ',';
                first = false;
                out += name;
            }
            return out + "}";
        };
        std::cout << "witness: (" << fmt(v.witness->x) << ", " << fmt(v.witness->y) << ") is "
                  << (strong ? "an SE-model" : "a UE-model") << " of "
                  << (v.witness_in_first ? "P only" : "Q only") << "\n";
        if (v.context) {
            std::cout << "context with differing stable models:\n"
                      << render_program(*v.context);
        }
        if (!v.diagnostic.empty())
            std::cout << "note: " << v.diagnostic << "\n";
    }
    return 1;
}

int cmd_translate(const std::string& file, const std::string& to, const std::string& out_path) {
    if (to != "opb")
        throw CLI::ValidationError("--to", "only 'opb' is supported");
    NormalizeResult norm = normalize(parse_program(read_file(file)));
    std::string text = emit_opb(pb_translate(completion(norm.program), at_atoms(norm.program)));
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return 0;
}

int cmd_gen(const std::string& kind, const GenParams& prm, const std::string& out_path) {
    Program p = generate(kind, prm);
    std::string text = render_program(p);
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stablepb - stable models of weight-constraint programs via pseudo-boolean solving"};
    app.require_subcommand(1);

    // solve
    std::string file, solver_opt = "builtin", dump_opb;
    int models = 1;
    double timeout = 0;
    bool dump_completion = false, trace_loops = false;
    auto* solve = app.add_subcommand("solve", "find stable models");
    solve->add_option("FILE", file)->required();
    solve->add_option("--solver", solver_opt, "builtin or ext:\"CMD {opb}\"");
    solve->add_option("--models", models, "how many stable models to report; 0 = all");
    solve->add_option("--timeout", timeout, "per solver call, seconds");
    solve->add_option("--dump-opb", dump_opb, "write the completion's OPB encoding to PATH");
    solve->add_flag("--dump-completion", dump_completion, "print the completion formulas");
    solve->add_flag("--trace-loops", trace_loops, "dump added loops to stderr");

    // check
    std::string check_file, model_text;
    bool chk_stable = false, chk_supported = false, chk_tight = false;
    auto* check = app.add_subcommand("check", "test a given interpretation");
    check->add_option("FILE", check_file)->required();
    check->add_option("--model", model_text, "comma-separated atoms")->required();
    auto* g1 = check->add_flag("--stable", chk_stable);
    auto* g2 = check->add_flag("--supported", chk_supported);
    auto* g3 = check->add_flag("--tight", chk_tight);
    check->require_option();
    g1->excludes(g2, g3);
    g2->excludes(g3);

    // enum
    std::string enum_file;
    bool en_stable = false, en_supported = false, en_models = false;
    auto* enumc = app.add_subcommand("enum", "brute-force enumeration (small programs)");
    enumc->add_option("FILE", enum_file)->required();
    auto* e1 = enumc->add_flag("--stable", en_stable);
    auto* e2 = enumc->add_flag("--supported", en_supported);
    auto* e3 = enumc->add_flag("--models", en_models);
    e1->excludes(e2, e3);
    e2->excludes(e3);

    // equiv
    std::string pfile, qfile;
    bool eq_strong = false, eq_uniform = false, eq_witness = false;
    auto* equiv = app.add_subcommand("equiv", "strong/uniform equivalence");
    equiv->add_option("P", pfile)->required();
    equiv->add_option("Q", qfile)->required();
    auto* s1 = equiv->add_flag("--strong", eq_strong);
    auto* s2 = equiv->add_flag("--uniform", eq_uniform);
    s1->excludes(s2);
    equiv->add_flag("--witness", eq_witness);

    // translate
    std::string tr_file, tr_to = "opb", tr_out;
    auto* translate = app.add_subcommand("translate", "emit the pseudo-boolean encoding");
    translate->add_option("FILE", tr_file)->required();
    translate->add_option("--to", tr_to)->required();
    translate->add_option("-o", tr_out, "output path (stdout if omitted)");

    // gen
    std::string gen_kind, gen_out;
    GenParams prm;
    auto* gen = app.add_subcommand("gen", "benchmark instance generators");
    gen->add_option("KIND", gen_kind, "magic-square|vertex-cover|tsp|wnqueens|wlatin|hanoi")
        ->required();
    gen->add_option("--n", prm.n);
    gen->add_option("--m", prm.m);
    gen->add_option("--k", prm.k);
    gen->add_option("--maxw", prm.maxw);
    gen->add_option("--bound", prm.bound);
    gen->add_option("--disks", prm.disks);
    gen->add_option("--steps", prm.steps);
    gen->add_option("--seed", prm.seed);
    gen->add_option("-o", gen_out, "output path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return cmd_solve(file, solver_opt, models, timeout, dump_opb, dump_completion,
                             trace_loops);
        if (check->parsed()) {
            if (!chk_stable && !chk_supported && !chk_tight)
                throw std::runtime_error("check: one of --stable/--supported/--tight is required");
            return cmd_check(check_file, model_text, chk_stable, chk_supported, chk_tight);
        }
        if (enumc->parsed()) {
            if (!en_stable && !en_supported && !en_models)
                throw std::runtime_error("enum: one of --stable/--supported/--models is required");
            return cmd_enum(enum_file, en_stable, en_supported, en_models);
        }
        if (equiv->parsed()) {
            if (eq_strong == eq_uniform)
                throw std::runtime_error("equiv: exactly one of --strong/--uniform is required");
            return cmd_equiv(pfile, qfile, eq_strong, eq_witness);
        }
        if (translate->parsed())
            return cmd_translate(tr_file, tr_to, tr_out);
        if (gen->parsed())
            return cmd_gen(gen_kind, prm, gen_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
