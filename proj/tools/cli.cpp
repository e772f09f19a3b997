#include "cli.hpp"

#include "hxplain/benchmarks.hpp"
#include "hxplain/explainer.hpp"
#include "hxplain/model_io.hpp"
#include "hxplain/reconcile.hpp"
#include "hxplain/report.hpp"
#include "hxplain/subsequence.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace hxplain {

namespace {

struct SearchFlags {
    std::optional<int> depth;
    std::string mode = "walks";
    std::optional<std::size_t> budget;
    unsigned jobs = 1;

    void add(CLI::App* cmd, bool with_jobs = true)
    {
        cmd->add_option("--depth", depth, "path length bound (default: the model's depth)")->check(CLI::NonNegativeNumber);
        cmd->add_option("--mode", mode, "path semantics")->check(CLI::IsMember({"walks", "simple"}));
        cmd->add_option("--budget", budget, "maximum number of enumerated paths")->check(CLI::PositiveNumber);
        if (with_jobs)
            cmd->add_option("--jobs", jobs, "worker threads for path checks")->check(CLI::Range(1u, 256u));
    }

    [[nodiscard]] SearchOptions options() const
    {
        SearchOptions o;
        o.depth = depth;
        o.mode = mode == "simple" ? PathMode::Simple : PathMode::Walks;
        o.cap = budget.value_or(default_path_cap());
        o.jobs = jobs;
        return o;
    }
};

struct Output {
    std::string format = "text";
    std::string out;

    void add(CLI::App* cmd)
    {
        cmd->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--out", out, "write the report to this file instead of stdout");
    }

    void emit(const std::string& json_text, std::ostream& os) const
    {
        const std::string body = format == "json" ? json_text : render_text(json_text);
        if (out.empty())
            os << body;
        else
            write_file(out, body);
    }
};

std::string layout_path(const std::string& out)
{
    std::string base = out;
    for (const char* ext : {".lhap.json", ".json"}) {
        const std::string e(ext);
        if (base.size() > e.size() && base.compare(base.size() - e.size(), e.size(), e) == 0) {
            base.resize(base.size() - e.size());
            break;
        }
    }
    return base + ".layout.txt";
}

std::vector<SymbolSeq> path_strings(const PlanningProblem& p, const SearchOptions& o, std::size_t& total)
{
    LocGraph g(p.automaton);
    EnumerateOptions eo;
    eo.mode = o.mode;
    eo.visits = p.required_visits;
    eo.cap = o.cap;
    std::set<SymbolSeq> strings;
    total = for_each_path(g, p.init().location, p.goal.location, o.depth.value_or(p.depth), eo,
                          [&](const AbstractPath& path) {
                              strings.insert(path.locations);
                              return true;
                          });
    return {strings.begin(), strings.end()};
}

std::string join(const SymbolSeq& s)
{
    std::string r;
    for (const auto& x : s) {
        if (!r.empty())
            r += ' ';
        r += x;
    }
    return r;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Explains unsolvable hybrid planning problems and reconciles human and agent models", "hxplain"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "hxplain 0.3.0");

    // explain
    auto* explain = app.add_subcommand("explain", "first unreachable inevitable waypoint");
    std::string model;
    SearchFlags sf;
    Output of;
    explain->add_option("--model", model, "model file")->required();
    sf.add(explain);
    of.add(explain);

    // reconcile
    auto* reconcile_cmd = app.add_subcommand("reconcile", "reconcile a human model with an agent model");
    std::string human, agent;
    SearchFlags rf;
    Output ro;
    reconcile_cmd->add_option("--human", human, "human model file")->required();
    reconcile_cmd->add_option("--agent", agent, "agent model file")->required();
    rf.add(reconcile_cmd);
    ro.add(reconcile_cmd);

    // paths
    auto* paths = app.add_subcommand("paths", "list bounded paths");
    std::string from, to;
    SearchFlags pf;
    paths->add_option("--model", model, "model file")->required();
    paths->add_option("--from", from, "start location (default: initial)");
    paths->add_option("--to", to, "end location (default: goal)");
    pf.add(paths, false);

    // lcs
    auto* lcs = app.add_subcommand("lcs", "common subsequence of the goal path strings");
    bool exact = false;
    SearchFlags lf;
    lcs->add_option("--model", model, "model file")->required();
    lcs->add_flag("--exact", exact, "require the exact multi-sequence DP");
    lf.add(lcs, false);

    // check-path
    auto* check = app.add_subcommand("check-path", "check one path for a run");
    std::string path_text, target = "goal";
    Output co;
    check->add_option("--model", model, "model file")->required();
    check->add_option("--path", path_text, "comma-separated locations and edges")->required();
    check->add_option("--target", target, "goal set or the final location's invariant")
        ->check(CLI::IsMember({"goal", "inv"}));
    co.add(check);

    // reach
    auto* reach = app.add_subcommand("reach", "bounded reachability of a location");
    std::string loc;
    SearchFlags hf;
    Output reo;
    reach->add_option("--model", model, "model file")->required();
    reach->add_option("--loc", loc, "target location")->required();
    hf.add(reach);
    reo.add(reach);

    // gen
    auto* gen = app.add_subcommand("gen", "write a benchmark model");
    std::string bench, gen_out;
    std::vector<std::string> params;
    bool list_params = false;
    gen->add_option("--bench", bench, "benchmark family")->required()->check(CLI::IsMember(benchmark_families()));
    gen->add_option("params", params, "family parameters as key=value");
    gen->add_option("--out", gen_out, "model file (a .layout.txt sidecar is written next to it)");
    gen->add_flag("--list-params", list_params, "print the family's parameters and defaults");

    // validate
    auto* validate = app.add_subcommand("validate", "parse and validate a model file");
    validate->add_option("--model", model, "model file")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    std::ostringstream buf; // stdout is written once, at the end
    int code = kExitOk;
    try {
        if (*explain) {
            ModelDocument doc = load_model(model);
            std::string name = doc.metadata.count("name") ? doc.metadata.at("name") : model;
            auto rep = explain_unsolvability(doc.problem, sf.options(), name);
            of.emit(explain_report_json(rep), buf);
            if (rep.outcome == ExplainOutcome::Inconclusive)
                code = kExitBudget;
        } else if (*reconcile_cmd) {
            ModelPair pair{load_model(human).problem, load_model(agent).problem};
            auto rep = reconcile(pair, rf.options());
            ro.emit(reconcile_report_json(rep), buf);
        } else if (*paths) {
            ModelDocument doc = load_model(model);
            const auto& p = doc.problem;
            LocGraph g(p.automaton);
            SearchOptions o = pf.options();
            EnumerateOptions eo;
            eo.mode = o.mode;
            eo.cap = o.cap;
            if (from.empty())
                from = p.init().location;
            if (to.empty())
                to = p.goal.location;
            if (from == p.init().location && to == p.goal.location)
                eo.visits = p.required_visits;
            (void)g.require(from);
            (void)g.require(to);
            std::size_t n = for_each_path(g, from, to, o.depth.value_or(p.depth), eo, [&](const AbstractPath& path) {
                buf << path.str() << "\n";
                return true;
            });
            buf << n << " paths\n";
        } else if (*lcs) {
            ModelDocument doc = load_model(model);
            SearchOptions o = lf.options();
            std::size_t total = 0;
            auto seqs = path_strings(doc.problem, o, total);
            if (seqs.empty()) {
                buf << "no path from " << doc.problem.init().location << " to " << doc.problem.goal.location << "\n";
            } else {
                const bool fits = lcs_multi_fits(seqs);
                SymbolSeq c;
                if (exact || fits)
                    c = lcs_multi_exact(seqs);
                else
                    c = common_subsequence_fold(seqs);
                buf << "lcs: " << join(c) << "\n";
                buf << "length: " << c.size() << "\n";
                buf << "exact: " << ((exact || fits) ? "yes" : "no") << "\n";
                buf << "paths: " << total << " enumerated, " << seqs.size() << " distinct\n";
            }
        } else if (*check) {
            ModelDocument doc = load_model(model);
            const auto& p = doc.problem;
            AbstractPath path = parse_path(path_text);
            const auto& last = path.locations.back();
            if (!p.automaton.locations.count(last))
                throw PathMismatch("unknown location " + last);
            const auto& tgt = target == "goal" ? p.goal.constraints : p.automaton.location(last).invariant;
            if (target == "goal" && last != p.goal.location)
                throw PathMismatch("path ends at " + last + ", not at the goal location " + p.goal.location);
            EncodedPath enc = encode_path(p, path, tgt);
            auto r = check_path(p, path, tgt);
            co.emit(check_path_report_json(path, target, r, enc), buf);
        } else if (*reach) {
            ModelDocument doc = load_model(model);
            if (!doc.problem.automaton.locations.count(loc))
                throw PathMismatch("unknown location " + loc);
            SearchOptions o = hf.options();
            auto r = reach_subproblem(doc.problem, loc, o);
            PlanningProblem shown = doc.problem;
            shown.depth = o.depth.value_or(shown.depth);
            reo.emit(reach_report_json(shown, loc, r), buf);
            if (r.kind == ReachKind::Budget)
                code = kExitBudget;
        } else if (*gen) {
            if (list_params) {
                for (const auto& [k, v] : benchmark_defaults(bench))
                    buf << k << "=" << v << "\n";
            } else {
                BenchmarkSpec spec{bench, {}};
                for (const auto& kv : params) {
                    auto eq = kv.find('=');
                    if (eq == std::string::npos || eq == 0) {
                        err << "hxplain: parameter '" << kv << "' is not key=value\n";
                        return kExitUsage;
                    }
                    spec.parameters[kv.substr(0, eq)] = kv.substr(eq + 1);
                }
                ModelDocument doc = generate_benchmark(spec);
                if (gen_out.empty()) {
                    buf << serialize_model(doc);
                } else {
                    save_model(doc, gen_out);
                    write_file(layout_path(gen_out), benchmark_layout(spec));
                    const auto& a = doc.problem.automaton;
                    buf << "wrote " << gen_out << " (" << a.locations.size() << " locations, " << a.edges.size()
                        << " transitions)\n";
                }
            }
        } else if (*validate) {
            ModelDocument doc = load_model(model);
            const auto& a = doc.problem.automaton;
            buf << "valid: " << a.locations.size() << " locations, " << a.edges.size() << " transitions, "
                << a.variables.size() << " variables\n";
        }
    } catch (const InvalidSpec& e) {
        err << "hxplain: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        out << buf.str();
        err << "hxplain: " << e.what() << "\n";
        return kExitBudget;
    } catch (const InvariantViolation& e) {
        err << "hxplain: internal invariant violated: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        err << "hxplain: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "hxplain: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    out << buf.str();
    return code;
}

} // namespace hxplain
