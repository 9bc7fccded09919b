#include "mutgen/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mutgen/cohen_poset.hpp"
#include "mutgen/errors.hpp"
#include "mutgen/freeset.hpp"
#include "mutgen/fusion.hpp"
#include "mutgen/random_poset.hpp"
#include "mutgen/superperfect.hpp"
#include "mutgen/thma.hpp"
#include "mutgen/tree_io.hpp"

namespace mutgen {

using nlohmann::json;

namespace {

const std::vector<std::string> kSuperActions{"tf-check", "common-branch", "find-pair", "avoid-meager"};

void add_number(CLI::App* app, const std::string& name, std::optional<std::uint64_t>& target, const std::string& desc)
{
    app->add_option_function<std::uint64_t>(name, [&target](const std::uint64_t& v) { target = v; }, desc);
}

void build_app(CLI::App& app, Invocation& inv)
{
    app.require_subcommand(1, 1);

    auto* fuse = app.add_subcommand("fuse", "perfect tree avoiding coded meager and null sets");
    fuse->add_option("--task", inv.task, "task JSON")->required();
    add_number(fuse, "--rounds", inv.rounds, "split rounds (overrides the task)");
    add_number(fuse, "--seed", inv.seed, "candidate shuffle seed (overrides the task)");
    fuse->add_option("--out", inv.out, "tree output (.txt for text, JSON otherwise)");
    fuse->add_option("--report", inv.report, "report path (stdout when absent)");
    fuse->add_flag("--verify", inv.verify, "brute-force check of the result");

    auto* cohen = app.add_subcommand("cohen", "generic tree through the Cohen-type poset");
    cohen->add_option("--codes", inv.codes, "nowhere dense codes JSON")->required();
    add_number(cohen, "--rounds", inv.rounds, "split rounds");
    cohen->add_option("--out", inv.out, "tree output");
    cohen->add_option("--report", inv.report, "report path");
    cohen->add_flag("--verify", inv.verify, "brute-force check of the result");

    auto* rnd = app.add_subcommand("randomtree", "generic tree through the random-type poset");
    rnd->add_option("--codes", inv.codes, "null codes JSON")->required();
    add_number(rnd, "--rounds", inv.rounds, "split rounds");
    add_number(rnd, "--seed", inv.seed, "candidate shuffle seed");
    rnd->add_option("--out", inv.out, "tree output");
    rnd->add_option("--report", inv.report, "report path");
    rnd->add_flag("--verify", inv.verify, "brute-force check of the result");

    auto* thma = app.add_subcommand("thma", "mutually random tree pipeline");
    thma->add_option("--d", inv.d, "schedule function, e.g. 2n+2")->required();
    add_number(thma, "--levels", inv.levels, "sigma levels");
    add_number(thma, "--r-seed", inv.r_seed, "seed for the random word r");
    thma->add_option("--r-file", inv.r_file, "file holding r as 0/1 characters");
    thma->add_option("--code", inv.code, "null code JSON (empty code when absent)");
    add_number(thma, "--window", inv.window, "claim window (levels+1 by default)");
    add_number(thma, "--seed", inv.seed, "cover spot-check seed");
    thma->add_option("--out", inv.out, "tree output");
    thma->add_option("--report", inv.report, "report path");

    auto* super = app.add_subcommand("super", "superperfect tree algorithms");
    super->add_option("action", inv.action, "tf-check|common-branch|find-pair|avoid-meager")
        ->required()
        ->check(CLI::IsMember(kSuperActions));
    super->add_option("--f", inv.f, "growth function, e.g. k+6");
    super->add_option("--word", inv.word, "comma-separated naturals");
    super->add_option("--tree", inv.tree, "superperfect approximation (text or JSON)");
    super->add_option("--codes", inv.codes, "nowhere dense codes on Baire space JSON");
    add_number(super, "--width", inv.width, "split width / width of the full tree");
    add_number(super, "--depth", inv.depth, "depth of the full tree / of the construction");
    add_number(super, "--length", inv.length, "target length");
    super->add_option("--out", inv.out, "tree output");
    super->add_option("--report", inv.report, "report path");

    auto* free = app.add_subcommand("freeset", "perfect free subset for a prefix-function oracle");
    free->add_option("--oracle", inv.oracle, "builtin:<name> or table:<file>")->required();
    add_number(free, "--m", inv.m, "oracle arity");
    add_number(free, "--rounds", inv.rounds, "split rounds");
    add_number(free, "--depth", inv.depth, "tree depth");
    add_number(free, "--seed", inv.seed, "candidate shuffle seed");
    free->add_option("--out", inv.out, "tree output");
    free->add_option("--report", inv.report, "report path");

    auto* verify = app.add_subcommand("verify", "check a tree against a task");
    verify->add_option("--tree", inv.tree, "tree (text or JSON)")->required();
    verify->add_option("--task", inv.task, "task JSON")->required();
    add_number(verify, "--threshold", inv.threshold, "first null level checked");
    verify->add_option("--report", inv.report, "report path");
}

void need(bool ok, const std::string& what)
{
    if (!ok)
        throw UsageError(what);
}

std::string read_file(const std::string& path, const std::string& flag)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError(flag + ": cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& flag)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw UsageError(flag + ": invalid JSON: " + e.what());
    }
}

bool looks_like_json(const std::string& text)
{
    auto it = std::find_if(text.begin(), text.end(), [](unsigned char c) { return !std::isspace(c); });
    return it != text.end() && (*it == '{' || *it == '[');
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write '" + path + "'");
    out << text;
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <class Tree>
void write_tree(const std::string& path, const Tree& t)
{
    if (path.empty())
        return;
    write_text(path, ends_with(path, ".txt") ? to_text(t) : to_json(t).dump(2) + "\n");
}

FinBinTree load_bin_tree(const std::string& text)
{
    return looks_like_json(text) ? bin_tree_from_json(parse_json(text, "--tree")) : bin_tree_from_text(text);
}

std::string digest_of(const Invocation& inv)
{
    std::ostringstream s;
    s << "sub=" << inv.subcommand << ";action=" << inv.action << ";";
    auto str = [&](const char* name, const std::string& v) {
        if (!v.empty())
            s << name << "=" << v << ";";
    };
    auto num = [&](const char* name, const std::optional<std::uint64_t>& v) {
        if (v)
            s << name << "=" << *v << ";";
    };
    str("d", inv.d);
    str("f", inv.f);
    str("word", inv.word);
    str("oracle", inv.oracle);
    num("rounds", inv.rounds);
    num("levels", inv.levels);
    num("r_seed", inv.r_seed);
    num("m", inv.m);
    num("depth", inv.depth);
    num("width", inv.width);
    num("length", inv.length);
    num("window", inv.window);
    num("threshold", inv.threshold);
    num("seed", inv.seed);
    s << "verify=" << inv.verify << ";";
    auto file = [&](const char* name, const std::string& path) {
        if (!path.empty())
            s << name << "#" << read_file(path, std::string("--") + name) << ";";
    };
    file("task", inv.task);
    file("codes", inv.codes);
    file("code", inv.code);
    file("tree", inv.tree);
    file("r-file", inv.r_file);
    if (inv.oracle.rfind("table:", 0) == 0)
        file("oracle", inv.oracle.substr(6));
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(s.str());
    return hex.str();
}

json code_list(const json& j, const char* key)
{
    if (j.is_object() && j.contains(key))
        return j.at(key);
    if (!j.is_array())
        throw UsageError(std::string("--codes: expected an array or an object with '") + key + "'");
    return j;
}

Check free_tuples_check(const VerifyReport& v)
{
    return {"free-tuples", v.pass, v.counterexample};
}

void run_fuse(const Invocation& inv, RunReport& rep)
{
    FusionTask task = fusion_task_from_json(parse_json(read_file(inv.task, "--task"), "--task"));
    if (inv.rounds)
        task.rounds = *inv.rounds;
    if (inv.seed)
        task.options.seed = *inv.seed;
    const auto res = fuse(task);
    rep.result["fusion"] = to_json(res);
    if (inv.verify) {
        const auto v = verify_free_tuples(res.tree, task, res.null_stage_threshold);
        rep.result["verify"] = to_json(v);
        rep.verdicts.push_back(free_tuples_check(v));
    }
    write_tree(inv.out, res.tree);
}

void run_cohen(const Invocation& inv, RunReport& rep)
{
    need(inv.rounds.has_value(), "cohen: --rounds is required");
    FusionTask task;
    for (const auto& c : code_list(parse_json(read_file(inv.codes, "--codes"), "--codes"), "nd_codes"))
        task.nd_codes.push_back(nd_code_from_json(c));
    task.rounds = *inv.rounds;
    const auto res = generic_tree(task.nd_codes, task.rounds);
    rep.result["fusion"] = to_json(res);
    if (inv.verify) {
        const auto v = verify_free_tuples(res.tree, task, 0);
        rep.result["verify"] = to_json(v);
        rep.verdicts.push_back(free_tuples_check(v));
    }
    write_tree(inv.out, res.tree);
}

void run_random(const Invocation& inv, RunReport& rep)
{
    need(inv.rounds.has_value(), "randomtree: --rounds is required");
    FusionTask task;
    for (const auto& c : code_list(parse_json(read_file(inv.codes, "--codes"), "--codes"), "null_codes"))
        task.null_codes.push_back(null_code_from_json(c));
    task.rounds = *inv.rounds;
    if (inv.seed)
        task.options.seed = *inv.seed;
    const auto run = generic_random_tree(task.null_codes, task.rounds, task.options);
    rep.result["fusion"] = to_json(run.result);
    json chain = json::array();
    for (const auto& p : run.chain)
        chain.push_back(to_json(p));
    rep.result["chain"] = chain;
    json excluded = json::array();
    for (const auto& e : run.excluded)
        excluded.push_back(e ? json(e->to_string()) : json(nullptr));
    rep.result["excluded"] = excluded;
    if (inv.verify) {
        const auto v = verify_free_tuples(run.result.tree, task, run.result.null_stage_threshold);
        rep.result["verify"] = to_json(v);
        rep.verdicts.push_back(free_tuples_check(v));
        Check dec{"chain-decreasing", true, ""};
        for (std::size_t i = 1; i < run.chain.size() && dec.pass; ++i)
            if (!leq(run.chain[i], run.chain[i - 1])) {
                dec.pass = false;
                dec.witness = "step " + std::to_string(i);
            }
        rep.verdicts.push_back(dec);
    }
    write_tree(inv.out, run.result.tree);
}

BitWord read_r_file(const std::string& path)
{
    std::string bits;
    for (char c : read_file(path, "--r-file")) {
        if (c == '0' || c == '1')
            bits += c;
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw UsageError("--r-file: unexpected character '" + std::string(1, c) + "'");
    }
    return BitWord::parse(bits.empty() ? "-" : bits);
}

void run_thma(const Invocation& inv, RunReport& rep)
{
    need(inv.levels.has_value(), "thma: --levels is required");
    need(inv.r_seed.has_value() != !inv.r_file.empty(), "thma: give exactly one of --r-seed and --r-file");
    const auto d = parse_d_expression(inv.d);
    const std::size_t L = *inv.levels;
    const std::size_t window = inv.window ? *inv.window : L + 1;
    const auto sched = build_schedule(d, std::max(L + 1, window));
    const BitWord r = inv.r_seed ? random_word(*inv.r_seed, bits_needed(sched, L)) : read_r_file(inv.r_file);
    const auto sys = build_sigma(r, sched, L);
    const auto closed = close_tree(sys, sched);
    const NullCode code = inv.code.empty()
                              ? NullCode(1, 1, {}, Rational(0), Rational(1, 2))
                              : null_code_from_json(parse_json(read_file(inv.code, "--code"), "--code"));
    const EpsilonSeq eps{code.arity()};
    const auto claims = check_claims(code, sched, eps, window, inv.seed ? *inv.seed : 1);
    const auto m0 = escape_index(r, code, sched, 0);
    const auto m1 = escape_index(r, code, sched, 1);
    const auto mutual = verify_mutual_random(closed.tree, code, sched, L + 1, m0, m1);

    rep.result["schedule"] = to_json(sched);
    rep.result["tree"] = {{"depth", closed.depth}, {"nodes", closed.tree.size()}};
    rep.result["claims"] = to_json(claims);
    rep.result["escape"] = {m0, m1};
    rep.result["mutual"] = to_json(mutual);
    rep.verdicts.push_back({"perfect", closed.perfect, ""});
    std::string failing;
    for (const auto& row : claims.rows)
        if (!row.holds) {
            failing = row.claim + " " + std::to_string(row.index) + "/" + std::to_string(row.j);
            break;
        }
    rep.verdicts.push_back({"claims", claims.pass, claims.pass ? "" : failing});
    rep.verdicts.push_back({"mutual-random", mutual.pass, mutual.counterexample});
    write_tree(inv.out, closed.tree);
}

NatTreeView super_tree(const Invocation& inv, std::optional<FinNatTree>& holder)
{
    const std::size_t width = inv.width ? *inv.width : 3;
    if (!inv.tree.empty()) {
        const auto text = read_file(inv.tree, "--tree");
        holder = looks_like_json(text) ? nat_tree_from_json(parse_json(text, "--tree"), width)
                                       : nat_tree_from_text(text, width);
        return view_of(*holder);
    }
    need(inv.width && inv.depth, "super: give --tree or both --width and --depth");
    return full_nat_tree(*inv.width, *inv.depth);
}

void run_super(const Invocation& inv, RunReport& rep)
{
    if (inv.action == "tf-check") {
        need(!inv.f.empty(), "super tf-check: --f is required");
        need(!inv.word.empty(), "super tf-check: --word is required");
        const auto f = GrowthFn::parse(inv.f);
        const auto sigma = parse_nat_word(inv.word);
        const auto w = tf_nd_witness(f, sigma);
        rep.result["member"] = tf_member(f, sigma);
        rep.result["witness"] = format_nat_word(w);
        rep.verdicts.push_back({"witness-extends", is_prefix(sigma, w), format_nat_word(w)});
        rep.verdicts.push_back({"witness-outside", !tf_member(f, w), format_nat_word(w)});
        return;
    }
    if (inv.action == "avoid-meager") {
        need(!inv.codes.empty(), "super avoid-meager: --codes is required");
        need(inv.depth.has_value(), "super avoid-meager: --depth is required");
        std::vector<NatNdCodePtr> codes;
        for (const auto& c : code_list(parse_json(read_file(inv.codes, "--codes"), "--codes"), "codes"))
            codes.push_back(nat_code_from_json(c));
        const auto res = avoid_meager_superperfect(codes, *inv.depth, inv.width ? *inv.width : 3);
        json commits = json::array();
        for (const auto& c : res.commitments)
            commits.push_back(
                {{"code", c.code}, {"input", format_nat_word(c.input)}, {"output", format_nat_word(c.output)}});
        rep.result["tree"] = to_json(res.tree);
        rep.result["commitments"] = commits;
        Check miss{"avoids-codes", true, ""};
        for (const auto& w : res.tree.maximal_nodes())
            for (std::size_t i = 0; i < codes.size() && miss.pass; ++i)
                if (codes[i]->meets({w})) {
                    miss.pass = false;
                    miss.witness = "code " + std::to_string(i) + " at " + format_nat_word(w);
                }
        rep.verdicts.push_back(miss);
        write_tree(inv.out, res.tree);
        return;
    }
    need(inv.length.has_value(), "super " + inv.action + ": --length is required");
    std::optional<FinNatTree> holder;
    const auto view = super_tree(inv, holder);
    if (inv.action == "common-branch") {
        need(!inv.f.empty(), "super common-branch: --f is required");
        const auto f = GrowthFn::parse(inv.f);
        std::vector<BranchStep> trace;
        const auto sigma = common_branch(f, view, *inv.length, &trace);
        json steps = json::array();
        Check mem{"memberships", true, ""};
        for (const auto& s : trace) {
            steps.push_back({{"sigma", format_nat_word(s.sigma)},
                             {"m", s.m},
                             {"m_used", s.m_used},
                             {"g", s.g},
                             {"f_m", s.f_m}});
            if (mem.pass && !(view.contains(s.sigma) && tf_member(f, s.sigma))) {
                mem.pass = false;
                mem.witness = format_nat_word(s.sigma);
            }
        }
        rep.result["branch"] = format_nat_word(sigma);
        rep.result["trace"] = steps;
        rep.verdicts.push_back(mem);
        return;
    }
    const auto pr = find_pair(view, *inv.length);
    json cps = json::array();
    Check cp{"checkpoints", true, ""};
    for (const auto& c : pr.checkpoints) {
        cps.push_back({{"sigma", format_nat_word(c.sigma)}, {"tau", format_nat_word(c.tau)}, {"holds", c.holds}});
        if (cp.pass && !c.holds) {
            cp.pass = false;
            cp.witness = format_nat_word(c.sigma) + " | " + format_nat_word(c.tau);
        }
    }
    rep.result["sigma"] = format_nat_word(pr.sigma);
    rep.result["tau"] = format_nat_word(pr.tau);
    rep.result["checkpoints"] = cps;
    rep.verdicts.push_back({"distinct", pr.sigma != pr.tau, ""});
    rep.verdicts.push_back({"in-tree", view.contains(pr.sigma) && view.contains(pr.tau), ""});
    rep.verdicts.push_back(cp);
}

PrefixFunctionPtr load_oracle(const Invocation& inv)
{
    need(inv.m.has_value(), "freeset: --m is required");
    if (inv.oracle.rfind("builtin:", 0) == 0)
        return builtin_oracle(inv.oracle.substr(8), *inv.m);
    if (inv.oracle.rfind("table:", 0) == 0) {
        auto f = table_oracle(parse_json(read_file(inv.oracle.substr(6), "--oracle"), "--oracle"));
        need(f->arity() == *inv.m, "--oracle: table arity differs from --m");
        return f;
    }
    throw UsageError("--oracle: expected builtin:<name> or table:<file>");
}

void run_freeset(const Invocation& inv, RunReport& rep)
{
    need(inv.rounds.has_value(), "freeset: --rounds is required");
    need(inv.depth.has_value(), "freeset: --depth is required");
    const auto f = load_oracle(inv);
    FusionOptions opt;
    if (inv.seed)
        opt.seed = *inv.seed;
    const auto res = perfect_free_subset(*f, *inv.rounds, *inv.depth, opt);
    const auto fc = free_check(res.fusion.tree, *f, res.fusion.depth);
    const auto v = verify_free_tuples(res.fusion.tree, res.task, res.fusion.null_stage_threshold);
    rep.result["fusion"] = to_json(res.fusion);
    rep.result["freeness"] = to_json(fc);
    rep.result["verify"] = to_json(v);
    std::string bad;
    for (const auto& t : fc.tuples)
        if (t.verdict == Verdict::violation) {
            bad = to_json(t.args).dump();
            break;
        }
    rep.verdicts.push_back({"no-violations", fc.count(Verdict::violation) == 0, bad});
    rep.verdicts.push_back(free_tuples_check(v));
    write_tree(inv.out, res.fusion.tree);
}

void run_verify(const Invocation& inv, RunReport& rep)
{
    const auto tree = load_bin_tree(read_file(inv.tree, "--tree"));
    const auto task = fusion_task_from_json(parse_json(read_file(inv.task, "--task"), "--task"));
    const auto v = verify_free_tuples(tree, task, inv.threshold ? *inv.threshold : 0);
    rep.result["verify"] = to_json(v);
    rep.verdicts.push_back(free_tuples_check(v));
}

} // namespace

bool RunReport::pass() const
{
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Check& c) { return c.pass; });
}

std::uint64_t fnv1a(const std::string& data, std::uint64_t h)
{
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Invocation parse_invocation(const std::vector<std::string>& args)
{
    static const std::vector<std::string> subs{"fuse", "cohen", "randomtree", "thma", "super", "freeset", "verify"};
    if (!args.empty() && args[0].rfind("-", 0) != 0 && std::find(subs.begin(), subs.end(), args[0]) == subs.end())
        throw UsageError("unknown subcommand '" + args[0] + "'");
    Invocation inv;
    CLI::App app{"Perfect trees avoiding coded small sets", "mutgen"};
    build_app(app, inv);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    inv.subcommand = app.get_subcommands().front()->get_name();
    return inv;
}

RunOutcome execute(const Invocation& inv)
{
    RunOutcome out;
    out.report.subcommand = inv.subcommand + (inv.action.empty() ? "" : " " + inv.action);
    out.report.inputs_digest = digest_of(inv);
    if (inv.subcommand == "fuse")
        run_fuse(inv, out.report);
    else if (inv.subcommand == "cohen")
        run_cohen(inv, out.report);
    else if (inv.subcommand == "randomtree")
        run_random(inv, out.report);
    else if (inv.subcommand == "thma")
        run_thma(inv, out.report);
    else if (inv.subcommand == "super")
        run_super(inv, out.report);
    else if (inv.subcommand == "freeset")
        run_freeset(inv, out.report);
    else if (inv.subcommand == "verify")
        run_verify(inv, out.report);
    else
        throw UsageError("unknown subcommand '" + inv.subcommand + "'");
    out.exit_code = static_cast<int>(out.report.pass() ? ExitCode::pass : ExitCode::verification_failed);
    return out;
}

json to_json(const RunReport& r)
{
    json verdicts = json::array();
    for (const auto& c : r.verdicts)
        verdicts.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    return {{"subcommand", r.subcommand},
            {"inputs_digest", r.inputs_digest},
            {"pass", r.pass()},
            {"verdicts", verdicts},
            {"result", r.result}};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    if (args.empty() || std::find(args.begin(), args.end(), "--help") != args.end() ||
        std::find(args.begin(), args.end(), "-h") != args.end()) {
        Invocation inv;
        CLI::App app{"Perfect trees avoiding coded small sets", "mutgen"};
        build_app(app, inv);
        std::vector<std::string> rev(args.rbegin(), args.rend());
        try {
            app.parse(rev);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return args.empty() ? static_cast<int>(ExitCode::usage) : code;
        }
    }
    try {
        const auto inv = parse_invocation(args);
        const auto res = execute(inv);
        const auto text = to_json(res.report).dump(2) + "\n";
        if (inv.report.empty())
            out << text;
        else
            write_text(inv.report, text);
        return res.exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    }
}

} // namespace mutgen
