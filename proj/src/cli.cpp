#include "cst/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cst/dgnf.hpp"
#include "cst/encode.hpp"
#include "cst/grammar.hpp"
#include "cst/json_io.hpp"
#include "cst/linear.hpp"
#include "cst/quotient.hpp"
#include "cst/stanley.hpp"

namespace cst {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("write to " + path + " failed");
}

Grammar load_grammar(const std::string& path) { return parse_grammar(slurp(path)); }

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"two-sided bracket decompositions of context-free languages", "cstool"};
    app.require_subcommand(1);
    int rc = 0;

    // --- normalize -----------------------------------------------------------
    auto* normalize = app.add_subcommand("normalize", "rewrite a grammar into a normal form");
    std::string nf_form;
    int nf_order = 1;
    std::string nf_file;
    normalize->add_option("--form", nf_form, "target form")
        ->required()
        ->check(CLI::IsMember({"cnf", "qcnf", "qdgnf", "dgnf"}));
    normalize->add_option("--order", nf_order, "block order for qcnf/qdgnf")
        ->check(CLI::PositiveNumber);
    normalize->add_option("file", nf_file, "grammar file")->required()->check(CLI::ExistingFile);
    normalize->callback([&] {
        Grammar g = load_grammar(nf_file);
        Grammar res;
        if (nf_form == "cnf")
            res = to_cnf(g);
        else if (nf_form == "dgnf")
            res = cnf_to_cubic_dgnf(to_cnf(g), {g.axiom}).g;
        else if (nf_form == "qcnf")
            res = to_q_cnf(g, nf_order).g;
        else
            res = to_q_dgnf(g, nf_order).g;
        out << print_grammar(rename_nonterminals(res));
    });

    // --- cst -----------------------------------------------------------------
    auto* cst_cmd = app.add_subcommand("cst", "two-sided non-erasing decomposition");
    cst_cmd->require_subcommand(1);

    auto* cst_build = cst_cmd->add_subcommand("build", "construct L = rho(D n T)");
    std::string cb_mode = "minimal", cb_file, cb_out;
    bool cb_slt = false;
    cst_build->add_option("--mode", cb_mode, "base selection: smallest usable or letter-driven")
        ->check(CLI::IsMember({"minimal", "paper"}));
    cst_build->add_flag("--slt", cb_slt, "emit the window-testable control variant");
    cst_build->add_option("file", cb_file, "grammar file")->required()->check(CLI::ExistingFile);
    cst_build->add_option("-o,--output", cb_out, "decomposition JSON path")->required();
    cst_build->callback([&] {
        Grammar g = load_grammar(cb_file);
        CstDecomposition d = build_cst(g, cb_mode, cb_slt);
        spill(cb_out, cst_to_json(d));
        out << "wrote " << cb_out << " (mode=" << d.params.mode << " m=" << d.params.m
            << " j=" << bigint_to_string(d.params.j) << " q=" << d.params.q
            << " tStates=" << d.stats.t_states << ")\n";
    });

    auto* cst_verify = cst_cmd->add_subcommand("verify", "compare rho(D n T) with the grammar");
    int cv_maxlen = 0;
    std::string cv_file, cv_json;
    cst_verify->add_option("--maxlen", cv_maxlen, "maximum word length")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cst_verify->add_option("file", cv_file, "grammar file")->required()->check(CLI::ExistingFile);
    cst_verify->add_option("json", cv_json, "decomposition JSON")
        ->required()
        ->check(CLI::ExistingFile);
    cst_verify->callback([&] {
        Grammar g = load_grammar(cv_file);
        CstDecomposition d = cst_from_json(slurp(cv_json));
        VerificationReport rep = verify_cst(g, d, cv_maxlen);
        out << verification_to_json(rep);
        rc = rep.equal ? 0 : 1;
    });

    auto* cst_map = cst_cmd->add_subcommand("map-word", "project a bracket word and test D n T");
    std::string cm_json, cm_word;
    cst_map->add_option("json", cm_json, "decomposition JSON")
        ->required()
        ->check(CLI::ExistingFile);
    cst_map->add_option("word", cm_word, "bracket word as JSON tuples (inline or a file path)")
        ->required();
    cst_map->callback([&] {
        CstDecomposition d = cst_from_json(slurp(cm_json));
        std::string text = cm_word;
        if (std::filesystem::exists(cm_word)) text = slurp(cm_word);
        std::vector<std::string> word = word_from_tuple_json(text);
        std::string image;
        for (const auto& name : word) {
            auto it = d.rho.find(name);
            image += it != d.rho.end() ? it->second : parse_omega_n(name)->x;
        }
        bool member = dyck_check(omega_n_dyck_spec(), word) && d.t.accepts(word);
        out << image << "\n";
        out << "in D∩T: " << (member ? "true" : "false") << "\n";
        rc = 0;
    });

    // --- stanley ---------------------------------------------------------------
    auto* stanley_cmd = app.add_subcommand("stanley", "erasing fixed-alphabet decomposition");
    stanley_cmd->require_subcommand(1);
    auto* stanley_build_cmd = stanley_cmd->add_subcommand("build", "construct L = h(D n R)");
    std::string sb_code = "binary", sb_file, sb_out;
    stanley_build_cmd->add_option("--code", sb_code, "rule-label coding")
        ->check(CLI::IsMember({"unary", "binary"}));
    stanley_build_cmd->add_option("file", sb_file, "grammar file")
        ->required()
        ->check(CLI::ExistingFile);
    stanley_build_cmd->add_option("-o,--output", sb_out, "decomposition JSON path")->required();
    stanley_build_cmd->callback([&] {
        Grammar g = load_grammar(sb_file);
        StanleyDecomposition d = stanley_from_grammar(g, sb_code);
        spill(sb_out, stanley_to_json(d));
        out << "wrote " << sb_out << " (code=" << d.mode << " omega=" << d.stats.omega
            << " width=" << d.width << " rStates=" << d.stats.r_states << ")\n";
    });

    // --- linear ----------------------------------------------------------------
    auto* linear_cmd = app.add_subcommand("linear", "two-sided decomposition for linear grammars");
    linear_cmd->require_subcommand(1);
    auto* linear_build_cmd = linear_cmd->add_subcommand("build", "construct L = g(D n U)");
    std::string lb_file, lb_out;
    linear_build_cmd->add_option("file", lb_file, "grammar file")
        ->required()
        ->check(CLI::ExistingFile);
    linear_build_cmd->add_option("-o,--output", lb_out, "decomposition JSON path")->required();
    linear_build_cmd->callback([&] {
        Grammar g = load_grammar(lb_file);
        LinearDecomposition d = linear_cst_build(g);
        spill(lb_out, linear_to_json(d));
        out << "wrote " << lb_out << " (lambda=" << d.stats.lambda << " n=" << d.stats.n
            << " l=" << d.stats.l << " uStates=" << d.stats.u_states << ")\n";
    });

    // --- metrics ----------------------------------------------------------------
    auto* metrics_cmd = app.add_subcommand("metrics", "size report for one decomposition build");
    std::string mt_mode = "minimal", mt_file;
    bool mt_slt = false;
    metrics_cmd->add_option("--mode", mt_mode, "base selection")
        ->check(CLI::IsMember({"minimal", "paper"}));
    metrics_cmd->add_flag("--slt", mt_slt, "build the window-testable variant");
    metrics_cmd->add_option("file", mt_file, "grammar file")->required()->check(CLI::ExistingFile);
    metrics_cmd->callback([&] {
        Grammar g = load_grammar(mt_file);
        CstDecomposition d = build_cst(g, mt_mode, mt_slt);
        out << metrics_to_json(metrics_for(g, d));
    });

    // --- gen ---------------------------------------------------------------------
    auto* gen_cmd = app.add_subcommand("gen", "generate fixture grammars");
    gen_cmd->require_subcommand(1);
    auto* gen_gruska_cmd = gen_cmd->add_subcommand("gruska", "block-palindrome scaling family");
    int gg_m = 1;
    gen_gruska_cmd->add_option("-m", gg_m, "family index")->required()->check(CLI::PositiveNumber);
    gen_gruska_cmd->callback([&] { out << print_grammar(rename_nonterminals(gen_gruska(gg_m))); });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

} // namespace cst
