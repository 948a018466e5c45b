#include "setm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "setm/compiler.hpp"
#include "setm/rec.hpp"
#include "setm/stdlib.hpp"
#include "setm/tapecode.hpp"

namespace setm {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
}

bool is_file(const std::string& s) {
    std::error_code ec;
    return std::filesystem::is_regular_file(s, ec);
}

MachineTable load_machine(const std::string& spec) {
    if (is_file(spec)) return parse_table(slurp(spec));
    auto names = stdlib_names();
    if (std::find(names.begin(), names.end(), spec) != names.end()) return stdlib_machine(spec);
    throw UsageError("'" + spec + "' is neither a table file nor a stdlib machine");
}

// Set literals become codes (one component each); a file argument is read as code text.
Marking load_input(const std::vector<std::string>& inputs, std::uint64_t seed) {
    if (inputs.size() == 1 && is_file(inputs[0])) return parse_code_text(slurp(inputs[0]));
    std::vector<HFSet> sets;
    for (const auto& s : inputs) sets.push_back(HFSet::parse(s));
    return encode_args(sets, seed);
}

std::string decoded_lines(const Marking& x) {
    if (!is_well_formed(x)) return "# not well formed\n";
    std::string out;
    auto v = decode_marking(x);
    for (std::size_t c = 0; c < v.size(); ++c)
        out += "# decode " + std::to_string(c) + ": " + v[c].to_string() + "\n";
    return out;
}

int cmd_run(const std::string& machine, const std::vector<std::string>& inputs, std::uint64_t seed,
            std::uint64_t fuel, bool delim, const std::string& trace_path, std::ostream& out,
            std::ostream& err) {
    const MachineTable m = load_machine(machine);
    Marking x = load_input(inputs, seed);
    if (delim) x = delimit(x);
    std::ofstream trace;
    TraceSink sink;
    if (!trace_path.empty()) {
        trace.open(trace_path);
        if (!trace) throw UsageError("cannot write '" + trace_path + "'");
        sink = [&](const TraceRecord& r) { trace << format_trace(r, m) << '\n'; };
    }
    auto r = run(m, x, fuel, sink);
    if (auto* h = std::get_if<Halted>(&r)) {
        out << code_text(h->final) << "# steps " << h->steps << "\n" << decoded_lines(h->final);
        return exit_ok;
    }
    err << describe(r, m) << "\n";
    return exit_undefined;
}

int cmd_selftest(std::ostream& out) {
    int failures = 0;
    auto check = [&](const std::string& what, bool ok) {
        out << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok) ++failures;
    };
    const auto u2 = enumerate_universe(2);
    bool rt = true;
    for (const auto& x : enumerate_universe(3))
        for (std::uint64_t s = 0; s < 3; ++s)
            rt = rt && decode_basic(encode_tree(x, seeded_chooser(s))) == x;
    check("codec round trip on rank <= 3", rt);
    auto end = run(builtin(MachineKind::end), encode_args({hf_from_numeral(1)}, 0), 100);
    check("end halts on the code of 1", std::holds_alternative<Halted>(end));
    bool dec = true;
    for (const auto& x : u2)
        for (const auto& y : u2) {
            auto r = run(m_decide(DecideKind::member), encode_args({x, y}, 1), 1'000'000);
            auto* h = std::get_if<Halted>(&r);
            dec = dec && h && boolean_value(h->final) == hf_member(x, y);
        }
    check("membership decider on rank <= 2", dec);
    auto rep = equiv_check(derived("vn_succ"), "vn_succ", 2, 2, 1'000'000, 1);
    check("compiled vn_succ agrees with the interpreter", rep.ok());
    return failures == 0 ? exit_ok : exit_undefined;
}

int run_app(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Set Turing machines over hereditarily finite sets", "setm"};
    app.require_subcommand(1);

    // run
    std::string machine, trace_path;
    std::vector<std::string> inputs;
    std::uint64_t seed = 0, fuel = 1'000'000;
    bool delim = false;
    auto* run_cmd = app.add_subcommand("run", "Run a machine table on an input marking");
    run_cmd->add_option("-m,--machine", machine, "Table file or stdlib machine name")->required();
    run_cmd->add_option("-i,--input", inputs, "Set literal per component, or one code file")
        ->required();
    run_cmd->add_option("--seed", seed, "Encoding seed for set literals");
    run_cmd->add_option("--fuel", fuel, "Step budget");
    run_cmd->add_flag("--delimit", delim, "Put ** at the first blank root child of component 0");
    run_cmd->add_option("--trace", trace_path, "Write the step trace to FILE");

    // encode / decode
    std::vector<std::string> enc_inputs;
    std::string dec_input;
    auto* enc_cmd = app.add_subcommand("encode", "Print a code for set literals");
    enc_cmd->add_option("-i,--input", enc_inputs, "Set literal per component")->required();
    enc_cmd->add_option("--seed", seed, "Woo seed");
    auto* dec_cmd = app.add_subcommand("decode", "Decode a code file");
    dec_cmd->add_option("-i,--input", dec_input, "Code file")->required();

    // stdlib
    bool list = false;
    std::string emit;
    auto* std_cmd = app.add_subcommand("stdlib", "List or print library machines");
    std_cmd->add_flag("--list", list, "List machine names");
    std_cmd->add_option("--emit", emit, "Print the table of a machine");

    // rec eval / compile
    std::string term_file, out_file, tier = "REC";
    std::vector<std::string> rec_args;
    auto* rec_cmd = app.add_subcommand("rec", "Set recursive functions");
    rec_cmd->require_subcommand(1);
    auto* eval_cmd = rec_cmd->add_subcommand("eval", "Evaluate a term");
    eval_cmd->add_option("-e,--expr", term_file, "Term file")->required();
    eval_cmd->add_option("-a,--arg", rec_args, "Argument set literal (repeatable)");
    eval_cmd->add_option("--tier", tier, "pREC, minREC or REC");
    eval_cmd->add_option("--seed", seed, "Woo seed");
    eval_cmd->add_option("--fuel", fuel, "Evaluation budget");
    auto* comp_cmd = rec_cmd->add_subcommand("compile", "Compile a term to a table");
    comp_cmd->add_option("-e,--expr", term_file, "Term file")->required();
    comp_cmd->add_option("-o,--output", out_file, "Table file (standard output if absent)");

    // equiv
    std::size_t rank = 2, seeds = 3;
    unsigned threads = 0;
    std::string report;
    std::uint64_t equiv_fuel = 10'000'000;
    auto* eq_cmd = app.add_subcommand("equiv", "Compare a compiled term with the interpreter");
    eq_cmd->add_option("-e,--expr", term_file, "Term file")->required();
    eq_cmd->add_option("--rank", rank, "Rank bound of the argument universe")
        ->check(CLI::Range(0, 3));
    eq_cmd->add_option("--seeds", seeds, "Encoding seeds per tuple");
    eq_cmd->add_option("--fuel", equiv_fuel, "Step budget per run");
    eq_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    eq_cmd->add_option("--report", report, "Write a JSON report to FILE");

    auto* self_cmd = app.add_subcommand("selftest", "Quick internal checks");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*run_cmd)
            return cmd_run(machine, inputs, seed, fuel, delim, trace_path, out, err);
        if (*enc_cmd) {
            out << code_text(load_input(enc_inputs, seed));
            return exit_ok;
        }
        if (*dec_cmd) {
            Marking x = parse_code_text(slurp(dec_input));
            if (!is_well_formed(x)) {
                err << "input is not well formed\n";
                return exit_usage;
            }
            for (const auto& v : decode_marking(x)) out << v.to_string() << "\n";
            return exit_ok;
        }
        if (*std_cmd) {
            if (list)
                for (const auto& n : stdlib_names()) out << n << "\n";
            if (!emit.empty()) out << stdlib_machine(emit).to_stm();
            if (!list && emit.empty()) throw UsageError("stdlib needs --list or --emit NAME");
            return exit_ok;
        }
        if (*eval_cmd) {
            EvalEnv env;
            env.seed = seed;
            env.fuel = fuel;
            env.tier = parse_tier(tier);
            RecTerm t = parse_rec(slurp(term_file), env.tier);
            std::vector<HFSet> a;
            for (const auto& s : rec_args) a.push_back(HFSet::parse(s));
            if (a.size() != t.arity())
                throw UsageError("term has arity " + std::to_string(t.arity()) + " but " +
                                 std::to_string(a.size()) + " arguments were given");
            try {
                out << eval(t, a, env).to_string() << "\n";
            } catch (const EvalError& e) {
                err << e.what() << "\n";
                return exit_undefined;
            }
            return exit_ok;
        }
        if (*comp_cmd) {
            std::string table = compile(parse_rec(slurp(term_file))).to_stm();
            if (out_file.empty()) out << table;
            else spill(out_file, table);
            return exit_ok;
        }
        if (*eq_cmd) {
            RecTerm t = parse_rec(slurp(term_file));
            auto rep = equiv_check(t, term_file, rank, seeds, equiv_fuel, threads);
            if (!report.empty()) spill(report, rep.to_json());
            out << "cases " << rep.cases.size() << " agree " << rep.agreements << " disagree "
                << rep.disagreements << " fuel-out " << rep.fuel_outs << " crash "
                << rep.crashes << " undefined " << rep.undefined << " invariance-errors "
                << rep.invariance_errors << "\n";
            return rep.ok() ? exit_ok : exit_undefined;
        }
        if (*self_cmd) return cmd_selftest(out);
    } catch (const UsageError& e) {
        err << "setm: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "setm: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::runtime_error& e) {
        // parse errors of tables, codes, set literals and terms
        err << "setm: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run_app(args, out, err);
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace setm
