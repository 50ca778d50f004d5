#include "runner.hpp"

#include "rescalc/multicat.hpp"
#include "rescalc/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace rescalc::cli {

namespace {

using json = nlohmann::ordered_json;

class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct options {
    std::string system = "auto";
    std::string sig_file;
    std::string expr;
    std::string file;
    bool json_out = false;
    bool trace = false;
    std::string ctx;
    std::string type;
    std::size_t bound = 12;
    std::string profile;
    bool count_only = false;
};

struct outcome {
    int code = exit_ok;
    std::string text;
    json data = json::object();
};

struct input_line {
    int line;
    std::string text;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<input_line> read_inputs(const options& opt) {
    if (!opt.expr.empty())
        return {{0, opt.expr}};
    if (opt.file.empty())
        throw input_error("no input: pass -e TEXT or a file");
    std::ifstream in(opt.file);
    if (!in)
        throw input_error("cannot open " + opt.file);
    std::vector<input_line> out;
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (!line.empty())
            out.push_back({n, line});
    }
    return out;
}

Fragment system_of(const std::string& name) {
    auto f = parse_fragment(name);
    if (!f)
        throw input_error("unknown system '" + name + "' (expected rep, symrep, symclosed or auto)");
    return *f;
}

void term_atoms(const TermP& s, std::set<std::string>& out) {
    for (const auto& b : s->binders)
        collect_atoms(b.type, out);
    for (const auto& k : s->kids)
        term_atoms(k, out);
}

void context_atoms(const Context& ctx, std::set<std::string>& out) {
    for (const auto& b : ctx)
        collect_atoms(b.type, out);
}

SignatureP build_signature(const options& opt, Fragment system, const std::set<std::string>& atoms) {
    Kind kind = fragment_kind(system);
    if (opt.sig_file.empty())
        return std::make_shared<const Signature>(discrete_signature(kind, {atoms.begin(), atoms.end()}));
    std::ifstream in(opt.sig_file);
    if (!in)
        throw input_error("cannot open signature file " + opt.sig_file);
    std::stringstream buf;
    buf << in.rdbuf();
    auto decl = parse_signature(buf.str());
    return std::make_shared<const Signature>(make_signature(kind, decl.atoms, decl.arrows));
}

json context_json(const Context& ctx) {
    json out = json::array();
    for (const auto& b : ctx)
        out.push_back({{"name", b.name}, {"type", to_string(b.type)}});
    return out;
}

json derivation_json(const DerivationP& d) {
    json out = {{"rule", d->rule},
                {"context", context_json(d->ctx)},
                {"term", to_string(d->term)},
                {"type", to_string(d->type)}};
    if (d->rule != "var" && d->rule != "abs") {
        out["blocks"] = d->blocks;
        out["shuffle"] = d->shuffle.images();
    }
    json premises = json::array();
    for (const auto& p : d->premises)
        premises.push_back(derivation_json(p));
    out["premises"] = std::move(premises);
    return out;
}

json measures_json(const Measures& m) { return {{"size", m.size}, {"eta1", m.eta1}, {"eta2", m.eta2}}; }

std::string measures_text(const Measures& m) {
    return "size=" + std::to_string(m.size) + " eta1=" + std::to_string(m.eta1) + " eta2=" + std::to_string(m.eta2);
}

SignatureP judgment_signature(const options& opt, Fragment system, const Judgment& j) {
    std::set<std::string> atoms;
    context_atoms(j.ctx, atoms);
    term_atoms(j.term, atoms);
    collect_atoms(j.type, atoms);
    return build_signature(opt, system, atoms);
}

outcome do_check(const options& opt, const std::string& text) {
    Fragment system = system_of(opt.system);
    auto j = parse_judgment(text);
    auto sig = judgment_signature(opt, system, j);
    auto d = check(*sig, system, j.ctx, j.term, j.type);
    return {exit_ok, to_string(d), {{"derivation", derivation_json(d)}}};
}

outcome do_normalize(const options& opt, const std::string& text) {
    Fragment system = system_of(opt.system);
    auto j = parse_judgment(text);
    auto sig = judgment_signature(opt, system, j);
    check(*sig, system, j.ctx, j.term, j.type);
    auto n = normalize(*sig, system, j.ctx, j.term);
    outcome out;
    if (opt.trace) {
        out.text += "initial: " + to_string(j.term) + " ; " + measures_text(n.trace.start) + "\n";
        auto lines = trace_lines(n.trace);
        for (std::size_t i = 0; i < lines.size(); ++i)
            out.text += lines[i] + "\n  " + to_string(n.trace.steps[i].term) + "\n";
    }
    out.text += "nf: " + to_string(n.nf) + "\nsteps: " + std::to_string(n.trace.steps.size());
    json steps = json::array();
    for (std::size_t i = 0; i < n.trace.steps.size(); ++i) {
        const auto& st = n.trace.steps[i];
        json row = {{"n", i + 1},
                    {"kind", redex_kind_name(st.redex.kind)},
                    {"position", position_string(st.redex.position)},
                    {"term", to_string(st.term)}};
        row.update(measures_json(st.after));
        steps.push_back(std::move(row));
    }
    out.data = {{"nf", to_string(n.nf)}, {"initial", measures_json(n.trace.start)}, {"steps", std::move(steps)}};
    return out;
}

outcome do_equal(const options& opt, const std::string& text) {
    Fragment system = system_of(opt.system);
    auto e = parse_equation(text);
    std::set<std::string> atoms;
    context_atoms(e.ctx, atoms);
    term_atoms(e.lhs, atoms);
    term_atoms(e.rhs, atoms);
    collect_atoms(e.type, atoms);
    auto sig = build_signature(opt, system, atoms);
    check(*sig, system, e.ctx, e.lhs, e.type);
    check(*sig, system, e.ctx, e.rhs, e.type);
    auto lhs = struct_canon(normalize(*sig, system, e.ctx, e.lhs).nf);
    auto rhs = struct_canon(normalize(*sig, system, e.ctx, e.rhs).nf);
    bool same = alpha_eq(lhs, rhs);
    std::string verdict = same ? "EQUAL" : "DISTINCT";
    return {same ? exit_ok : exit_fail,
            verdict + "\nlhs: " + to_string(lhs) + "\nrhs: " + to_string(rhs),
            {{"verdict", verdict}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}}};
}

outcome do_measures(const options& opt, const std::string& text) {
    Fragment system = system_of(opt.system);
    auto j = parse_judgment(text);
    auto sig = judgment_signature(opt, system, j);
    check(*sig, system, j.ctx, j.term, j.type);
    auto m = measures(*sig, system, j.ctx, j.term);
    return {exit_ok, measures_text(m), measures_json(m)};
}

outcome do_sym(const options& opt, const std::string& text) {
    auto j = parse_judgment(text);
    auto sig = judgment_signature(opt, Fragment::SymRep, j);
    auto f = make_morphism(sig, Fragment::SymRep, j.ctx, j.term, j.type);
    auto sigma = sym_extract(f);
    return {exit_ok, "sym: " + sigma.to_string() + "\nnf: " + to_string(f.canon_nf),
            {{"sym", sigma.images()}, {"nf", to_string(f.canon_nf)}}};
}

outcome do_coherence(const options& opt) {
    Fragment system = system_of(opt.system);
    if (opt.type.empty())
        throw input_error("coherence needs --type");
    auto ctx = parse_context(opt.ctx);
    auto a = parse_type(opt.type);
    std::set<std::string> atoms;
    context_atoms(ctx, atoms);
    collect_atoms(a, atoms);
    auto report = coherence_report(build_signature(opt, system, atoms), system, ctx, a, opt.bound);
    json classes = json::array();
    for (const auto& c : report.classes) {
        json row = {{"rep", to_string(c.morphism.rep)}, {"canon", to_string(c.morphism.canon_nf)}};
        if (c.sym)
            row["sym"] = c.sym->images();
        classes.push_back(std::move(row));
    }
    std::string text = report.text();
    text.pop_back();
    return {report.pass ? exit_ok : exit_fail,
            text,
            {{"judgment", report.judgment},
             {"system", fragment_name(system)},
             {"inhabitants", report.inhabitants},
             {"classes", std::move(classes)},
             {"witnesses", report.witnesses},
             {"verdict", report.pass ? "PASS" : "FAIL"}}};
}

outcome do_shuffles(const options& opt) {
    BlockProfile profile;
    std::stringstream in(opt.profile);
    std::string part;
    while (std::getline(in, part, ',')) {
        part = trim(part);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos || part.size() > 3)
            throw input_error("bad profile entry '" + part + "'");
        profile.push_back(std::stoi(part));
    }
    int total = 0;
    for (int b : profile)
        total += b;
    if (total > 12)
        throw input_error("profile total " + std::to_string(total) + " exceeds 12");
    auto shuffles = enumerate_shuffles(profile);
    std::string text = "profile: " + opt.profile + "\ncount: " + std::to_string(shuffles.size());
    json list = json::array();
    for (const auto& s : shuffles) {
        if (!opt.count_only)
            text += "\n" + s.to_string();
        list.push_back(s.images());
    }
    json data = {{"profile", profile}, {"count", shuffles.size()}};
    if (!opt.count_only)
        data["shuffles"] = std::move(list);
    return {exit_ok, text, std::move(data)};
}

json error_json(const Error& e) {
    return {{"code", errc_name(e.code())}, {"position", position_string(e.where())}, {"message", e.detail()}};
}

// Runs `handler` on one input and prints its report; returns the exit code.
int emit(const options& opt, const std::string& input, bool header, const std::function<outcome()>& handler,
         std::ostream& out, std::ostream& err) {
    outcome result;
    try {
        result = handler();
    } catch (const Error& e) {
        result.code = e.code() == Errc::ParseError ? exit_input : exit_fail;
        result.text = std::string("error: ") + e.what();
        result.data = {{"error", error_json(e)}};
    } catch (const input_error& e) {
        result.code = exit_input;
        result.text = std::string("error: ") + e.what();
        result.data = {{"error", {{"code", "InputError"}, {"position", "/"}, {"message", e.what()}}}};
    }
    if (opt.json_out) {
        json row = json::object();
        if (!input.empty())
            row["input"] = input;
        row.update(result.data);
        row["exit"] = result.code;
        out << row.dump() << "\n";
    } else {
        if (header)
            out << "== " << input << "\n";
        (result.code == exit_input ? err : out) << result.text << "\n";
    }
    return result.code;
}

int run_lines(const options& opt, const std::function<outcome(const options&, const std::string&)>& handler,
              std::ostream& out, std::ostream& err) {
    std::vector<input_line> inputs;
    try {
        inputs = read_inputs(opt);
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    int code = exit_ok;
    bool header = inputs.size() > 1 || !opt.file.empty();
    for (const auto& in : inputs)
        code = std::max(code, emit(opt, in.text, header, [&] { return handler(opt, in.text); }, out, err));
    return code;
}

void add_input_options(CLI::App* cmd, options& opt, bool with_system) {
    cmd->add_option("-e,--expr", opt.expr, "Literal input");
    cmd->add_option("file", opt.file, "File with one input per line; '#' starts a comment");
    cmd->add_option("--sig", opt.sig_file, "Signature file (atoms and generators)");
    cmd->add_flag("--json", opt.json_out, "Print one JSON object per input");
    if (with_system)
        cmd->add_option("--system", opt.system, "rep, symrep, symclosed or auto")->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Typechecker, normalizer and coherence checker for a linear calculus with explicit substitutions",
                 "rescalc"};
    app.require_subcommand(1);
    options opt;

    auto* check_cmd = app.add_subcommand("check", "Typecheck judgments and print their derivations");
    add_input_options(check_cmd, opt, true);

    auto* norm_cmd = app.add_subcommand("normalize", "Normalize judgments");
    add_input_options(norm_cmd, opt, true);
    norm_cmd->add_flag("--trace", opt.trace, "Print every step with its measures");

    auto* equal_cmd = app.add_subcommand("equal", "Decide equality of `ctx |- s == t : a`");
    add_input_options(equal_cmd, opt, true);

    auto* meas_cmd = app.add_subcommand("measures", "Print size and eta measures");
    add_input_options(meas_cmd, opt, true);

    auto* sym_cmd = app.add_subcommand("sym", "Extract the permutation of a symrep morphism");
    add_input_options(sym_cmd, opt, false);

    auto* coh_cmd = app.add_subcommand("coherence", "Enumerate normal inhabitants and check coherence");
    coh_cmd->add_option("--ctx", opt.ctx, "Context, e.g. 'x:o, y:o'");
    coh_cmd->add_option("--type", opt.type, "Target type")->required();
    coh_cmd->add_option("--bound", opt.bound, "Term size bound")->capture_default_str();
    coh_cmd->add_option("--system", opt.system, "rep or symrep")->capture_default_str();
    coh_cmd->add_option("--sig", opt.sig_file, "Signature file");
    coh_cmd->add_flag("--json", opt.json_out, "Print a JSON object");

    auto* shuf_cmd = app.add_subcommand("shuffles", "List the shuffles of a block profile");
    shuf_cmd->add_option("profile", opt.profile, "Block sizes, e.g. 2,1")->required();
    shuf_cmd->add_flag("--count", opt.count_only, "Only print the count");
    shuf_cmd->add_flag("--json", opt.json_out, "Print a JSON object");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Error& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_input;
    }

    if (check_cmd->parsed())
        return run_lines(opt, do_check, out, err);
    if (norm_cmd->parsed())
        return run_lines(opt, do_normalize, out, err);
    if (equal_cmd->parsed())
        return run_lines(opt, do_equal, out, err);
    if (meas_cmd->parsed())
        return run_lines(opt, do_measures, out, err);
    if (sym_cmd->parsed())
        return run_lines(opt, do_sym, out, err);
    if (coh_cmd->parsed()) {
        if (opt.system == "auto")
            opt.system = "rep";
        return emit(opt, "", false, [&] { return do_coherence(opt); }, out, err);
    }
    return emit(opt, "", false, [&] { return do_shuffles(opt); }, out, err);
}

} // namespace rescalc::cli
