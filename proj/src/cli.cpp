#include "flagein/cli.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "flagein/oracle.hpp"

namespace flagein::cli {

namespace {

using nlohmann::json;

std::vector<int> parse_partition(const std::string& text) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string::npos) j = text.size();
        std::string tok = text.substr(i, j - i);
        if (tok.empty()) throw std::invalid_argument("partition: empty entry");
        for (char ch : tok)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw std::invalid_argument("partition: bad entry '" + tok + "'");
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("partition: entry '" + tok + "' out of range");
        }
        i = j + 1;
    }
    if (out.empty()) throw std::invalid_argument("partition: empty");
    return out;
}

std::map<std::string, double> parse_metric_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("metric: invalid JSON at byte " + std::to_string(e.byte) + ": " +
                                    e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("metric: expected a JSON object");
    std::map<std::string, double> out;
    for (const auto& [key, val] : j.items()) {
        if (!val.is_number()) throw std::invalid_argument("metric: value of '" + key + "' not a number");
        out[key] = val.get<double>();
    }
    return out;
}

}  // namespace

Ansatz parse_ansatz(const std::string& text, const PolySystem& sys) {
    struct Clause {
        std::string target;
        std::optional<Rational> value;  // nullopt = '*' (merge without fixing)
        std::size_t pos;
    };
    std::vector<Clause> clauses;
    std::size_t i = 0;
    auto fail = [&](const std::string& what, std::size_t pos) {
        throw std::invalid_argument("ansatz: " + what + " at position " + std::to_string(pos));
    };
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        std::size_t eq = text.find('=', i);
        if (eq == std::string::npos) fail("expected '='", i);
        std::string target = text.substr(start, eq - start);
        while (!target.empty() && std::isspace(static_cast<unsigned char>(target.back())))
            target.pop_back();
        if (target.empty()) fail("empty target", start);
        std::size_t end = text.find(',', eq + 1);
        if (end == std::string::npos) end = text.size();
        std::string value = text.substr(eq + 1, end - eq - 1);
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.front())))
            value.erase(value.begin());
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
        if (value.empty()) fail("empty value", eq + 1);
        Clause c;
        c.target = target;
        c.pos = start;
        if (value != "*") {
            try {
                c.value = Rational::parse(value);
            } catch (const std::exception&) {
                fail("bad value '" + value + "'", eq + 1);
            }
            if (!(*c.value > Rational(0))) fail("value must be positive", eq + 1);
        }
        clauses.push_back(std::move(c));
        i = end + 1;
    }

    auto kind_of = [](const std::string& var) -> char {
        // classify a t-root key: g for d<i>-d<j>, f for d<i>+d<j>, h for 2d<i>
        if (var.size() >= 2 && var[0] == '2' && var[1] == 'd') return 'h';
        if (!var.empty() && var[0] == 'd') {
            if (var.find('-') != std::string::npos) return 'g';
            if (var.find('+') != std::string::npos) return 'f';
        }
        return '?';
    };

    std::vector<std::string> lambda_vars(sys.vars.begin(), sys.vars.end() - 1);
    std::map<std::string, int> individual;  // var -> clause index
    std::map<char, int> class_clause;       // g/f/h -> clause index
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
        const std::string& t = clauses[ci].target;
        if (t == "g" || t == "f" || t == "h") {
            if (class_clause.count(t[0]))
                throw std::invalid_argument("ansatz: duplicate class clause '" + t + "' at position " +
                                            std::to_string(clauses[ci].pos));
            class_clause[t[0]] = static_cast<int>(ci);
        } else {
            if (std::find(lambda_vars.begin(), lambda_vars.end(), t) == lambda_vars.end())
                throw std::invalid_argument("ansatz: unknown variable '" + t + "' at position " +
                                            std::to_string(clauses[ci].pos));
            if (individual.count(t))
                throw std::invalid_argument("ansatz: duplicate clause for '" + t + "' at position " +
                                            std::to_string(clauses[ci].pos));
            individual[t] = static_cast<int>(ci);
        }
    }

    Ansatz ansatz;
    for (const auto& [var, ci] : individual)
        ansatz.classes.push_back(Ansatz::Class{var, {var}, clauses[ci].value});
    for (const auto& [kind, ci] : class_clause) {
        Ansatz::Class cls;
        cls.name = std::string(1, kind);
        cls.value = clauses[ci].value;
        for (const std::string& var : lambda_vars)
            if (kind_of(var) == kind && !individual.count(var)) cls.members.push_back(var);
        if (!cls.members.empty()) ansatz.classes.push_back(std::move(cls));
    }
    return ansatz;
}

namespace {

json solve_config_json(const SolveConfig& cfg) {
    json j;
    j["normalization"] = cfg.normalization == SolveConfig::Normalization::first_lambda_one
                             ? "first_lambda_one"
                             : "unit_volume";
    j["starts"] = cfg.starts;
    j["grid"] = {cfg.grid_lo, cfg.grid_hi};
    j["tol"] = cfg.tol;
    j["dedup_tol"] = cfg.dedup_tol;
    j["seed"] = cfg.seed;
    return j;
}

json descriptor_json(const Flag& flag) {
    json j;
    j["family"] = std::string(1, family_tag(flag.family().family));
    j["partition"] = flag.partition();
    return j;
}

CliResult finish_json(const json& j) {
    CliResult res;
    res.out = j.dump(2) + "\n";
    return res;
}

CliResult run_describe(const CliRequest& req, const Flag& flag) {
    if (req.format == "json") return finish_json(flag.describe_json());
    CliResult res;
    res.out = flag.describe_text();
    return res;
}

CliResult run_system(const CliRequest& req, const Flag& flag) {
    PolySystem sys = assemble(flag);
    if (req.ansatz) sys = specialize(sys, parse_ansatz(*req.ansatz, sys));
    CliResult res;
    if (req.format == "json")
        return finish_json(sys.to_json());
    else if (req.format == "latex")
        res.out = sys.latex();
    else
        res.out = sys.text();
    return res;
}

CliResult run_verify(const CliRequest& req, const Flag& flag) {
    if (req.metrics.size() != 1)
        throw std::invalid_argument("verify needs exactly one --metric");
    InvariantMetric metric = InvariantMetric::from_map(flag, parse_metric_json(req.metrics[0]));
    RicciReport rep = ricci_report(flag, metric, true);
    json j = rep.to_json();
    j["einstein"] = rep.residual < req.verify_tol;
    j["tol"] = req.verify_tol;
    if (req.oracle) {
        OracleEvaluator oracle(flag);
        json arr = json::array();
        double max_rel = 0;
        for (int i = 0; i < flag.summand_count(); ++i) {
            const Root& rep_root = flag.summands()[i].fiber.front();
            double direct = ricci_component(flag, metric, rep_root);
            double via_matrix = oracle.ricci(metric, rep_root);
            max_rel = std::max(max_rel, std::abs(direct - via_matrix) / std::max(std::abs(direct), 1e-300));
            json je;
            je["key"] = flag.summands()[i].key;
            je["ric"] = direct;
            je["oracle"] = via_matrix;
            arr.push_back(je);
        }
        j["oracle"] = arr;
        j["oracle_max_rel_dev"] = max_rel;
    }
    if (req.format == "json") return finish_json(j);
    CliResult res;
    std::ostringstream os;
    os << "summand  lambda        ric           ratio\n";
    for (const SummandRicci& s : rep.summands)
        os << s.key << "  " << s.lambda << "  " << s.ric << "  " << s.ratio << "\n";
    os << "c_estimate = " << rep.c_estimate << ", residual = " << rep.residual << "\n";
    os << "S = " << rep.scalar_curvature << ", V = " << rep.volume << ", H = " << rep.h_invariant
       << "\n";
    os << "einstein (tol " << req.verify_tol << "): " << (rep.residual < req.verify_tol ? "yes" : "no")
       << "\n";
    if (j.contains("oracle_max_rel_dev"))
        os << "oracle max relative deviation: " << j["oracle_max_rel_dev"].get<double>() << "\n";
    res.out = os.str();
    return res;
}

CliResult run_solve(const CliRequest& req, const Flag& flag) {
    std::optional<Ansatz> ansatz;
    if (req.ansatz) {
        PolySystem sys = assemble(flag);
        ansatz = parse_ansatz(*req.ansatz, sys);
    }
    std::vector<SolutionRecord> records = multistart_solve(flag, ansatz, req.solve);
    auto matrix = classify_solutions(flag, records);
    json j;
    j["descriptor"] = descriptor_json(flag);
    j["config"] = solve_config_json(req.solve);
    if (req.ansatz) j["ansatz"] = *req.ansatz;
    json recs = json::array();
    for (const SolutionRecord& r : records) recs.push_back(r.to_json());
    j["records"] = recs;
    j["classification"] = matrix;
    if (req.format == "json") return finish_json(j);
    CliResult res;
    std::ostringstream os;
    os << records.size() << " solution(s)\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        os << "#" << i << "  c = " << records[i].c << "  H = " << records[i].h_invariant
           << "  residual = " << records[i].residual << "\n";
        for (const auto& [key, val] : records[i].lambdas) os << "    " << key << " = " << val << "\n";
        for (const std::string& a : records[i].annotations) os << "    [" << a << "]\n";
    }
    for (std::size_t i = 0; i < records.size(); ++i)
        for (std::size_t k = i + 1; k < records.size(); ++k)
            os << "#" << i << " vs #" << k << ": " << matrix[i][k] << "\n";
    res.out = os.str();
    return res;
}

CliResult run_invariants(const CliRequest& req, const Flag& flag) {
    if (req.metrics.empty()) throw std::invalid_argument("invariants needs at least one --metric");
    std::vector<SolutionRecord> records;
    json arr = json::array();
    for (const std::string& mtext : req.metrics) {
        InvariantMetric metric = InvariantMetric::from_map(flag, parse_metric_json(mtext));
        RicciReport rep = ricci_report(flag, metric);
        SolutionRecord rec = evaluate_candidate(flag, metric, "numeric");
        records.push_back(rec);
        json je;
        je["lambdas"] = metric.to_map(flag);
        je["c_estimate"] = rep.c_estimate;
        je["residual"] = rep.residual;
        je["scalar_curvature"] = rep.scalar_curvature;
        je["volume"] = rep.volume;
        je["h_invariant"] = rep.h_invariant;
        je["volume_normalized_c"] = rec.volume_normalized_c;
        arr.push_back(je);
    }
    json j;
    j["descriptor"] = descriptor_json(flag);
    j["metrics"] = arr;
    j["classification"] = classify_solutions(flag, records);
    if (req.format == "json") return finish_json(j);
    CliResult res;
    std::ostringstream os;
    for (std::size_t i = 0; i < records.size(); ++i)
        os << "#" << i << "  c_est = " << records[i].c << "  H = " << records[i].h_invariant
           << "  residual = " << records[i].residual << "\n";
    auto matrix = classify_solutions(flag, records);
    for (std::size_t i = 0; i < records.size(); ++i)
        for (std::size_t k = i + 1; k < records.size(); ++k)
            os << "#" << i << " vs #" << k << ": " << matrix[i][k] << "\n";
    res.out = os.str();
    return res;
}

}  // namespace

CliResult run(const CliRequest& request) {
    try {
        if (request.format != "text" && request.format != "json" && request.format != "latex")
            throw std::invalid_argument("format must be text, json or latex");
        Flag flag = Flag::from_strings(request.family, request.partition);
        if (request.command == "describe") return run_describe(request, flag);
        if (request.command == "system") return run_system(request, flag);
        if (request.command == "verify") return run_verify(request, flag);
        if (request.command == "solve") return run_solve(request, flag);
        if (request.command == "invariants") return run_invariants(request, flag);
        throw std::invalid_argument("unknown command '" + request.command + "'");
    } catch (const std::invalid_argument& e) {
        CliResult res;
        res.exit_code = 2;
        res.err = std::string("error: ") + e.what() + "\n";
        return res;
    } catch (const std::exception& e) {
        CliResult res;
        res.exit_code = 3;
        res.err = std::string("internal error: ") + e.what() + "\n";
        return res;
    }
}

int main_entry(const std::vector<std::string>& args, std::string& out, std::string& err) {
    CLI::App app{"invariant Einstein metrics on Sp(n)/U(n_1)x...xU(n_s) and SO(2n)/U(n_1)x...xU(n_s)"};
    app.require_subcommand(1);

    CliRequest req;
    std::string partition_text;
    std::string normalization = "first_lambda_one";
    std::string ansatz_text;
    CLI::Option* ansatz_opt_system = nullptr;
    CLI::Option* ansatz_opt_solve = nullptr;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", req.family, "family tag, C or D")->required();
        sub->add_option("--partition", partition_text, "comma list n1,n2,...")->required();
        sub->add_option("--format", req.format, "text | json | latex");
    };

    CLI::App* describe = app.add_subcommand("describe", "root split, t-roots and isotropy summands");
    add_common(describe);

    CLI::App* system = app.add_subcommand("system", "assembled Einstein system");
    add_common(system);
    ansatz_opt_system = system->add_option("--ansatz", ansatz_text, "constraints, e.g. g=1,f=1,h=*");

    CLI::App* verify = app.add_subcommand("verify", "Ricci report for a given metric");
    add_common(verify);
    verify->add_option("--metric", req.metrics, "JSON map of t-root keys to positive values");
    verify->add_flag("--oracle", req.oracle, "cross-check against the matrix realization (rank <= 8)");
    verify->add_option("--tol", req.verify_tol, "Einstein residual threshold");

    CLI::App* solve = app.add_subcommand("solve", "multistart Newton solve + classification");
    add_common(solve);
    ansatz_opt_solve = solve->add_option("--ansatz", ansatz_text, "constraints, e.g. g=1,f=1");
    solve->add_option("--starts", req.solve.starts, "number of start points");
    solve->add_option("--seed", req.solve.seed, "start-point seed");
    solve->add_option("--tol", req.solve.tol, "residual threshold");
    solve->add_option("--dedup-tol", req.solve.dedup_tol, "solution identification distance");
    solve->add_option("--grid-lo", req.solve.grid_lo, "start grid lower bound");
    solve->add_option("--grid-hi", req.solve.grid_hi, "start grid upper bound");
    solve->add_option("--threads", req.solve.threads, "worker cap (0: FLAGEIN_THREADS or hardware)");
    solve->add_option("--normalization", normalization, "first_lambda_one | unit_volume");

    CLI::App* invariants = app.add_subcommand("invariants", "volume, scalar curvature, H per metric");
    add_common(invariants);
    invariants->add_option("--metric", req.metrics, "JSON metric (repeatable)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out = app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err = std::string("error: ") + e.what() + "\n";
        return 2;
    }

    try {
        req.partition = parse_partition(partition_text);
        if (normalization == "first_lambda_one")
            req.solve.normalization = SolveConfig::Normalization::first_lambda_one;
        else if (normalization == "unit_volume")
            req.solve.normalization = SolveConfig::Normalization::unit_volume;
        else
            throw std::invalid_argument("normalization must be first_lambda_one or unit_volume");
    } catch (const std::invalid_argument& e) {
        err = std::string("error: ") + e.what() + "\n";
        return 2;
    }

    for (CLI::App* sub : {describe, system, verify, solve, invariants})
        if (sub->parsed()) req.command = sub->get_name();
    if ((ansatz_opt_system && ansatz_opt_system->count() > 0) ||
        (ansatz_opt_solve && ansatz_opt_solve->count() > 0))
        req.ansatz = ansatz_text;

    CliResult res = run(req);
    out = res.out;
    err = res.err;
    return res.exit_code;
}

}  // namespace flagein::cli
