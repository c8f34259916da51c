// Command-line front end: parse .bw workspaces, evaluate relations and
// closures, build witness chains, and reproduce the built-in examples.

#include "birnbaum/errors.hpp"
#include "birnbaum/freq_examples.hpp"
#include "birnbaum/methods.hpp"
#include "birnbaum/relations.hpp"
#include "birnbaum/report.hpp"
#include "birnbaum/statistics.hpp"
#include "birnbaum/workspace.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

using nlohmann::json;
using namespace birnbaum;

namespace {

struct Output {
    bool as_json = false;
    json j{{"command", ""},
           {"inputs", json::object()},
           {"values", json::object()},
           {"witnesses", json::object()},
           {"warnings", json::array()}};
    std::string text;

    void line(const std::string& s) { text += s + "\n"; }
    void warn(const std::string& s) {
        j["warnings"].push_back(s);
        text += "warning: " + s + "\n";
    }
    void emit() const {
        if (as_json)
            std::cout << j.dump(2) << "\n";
        else
            std::cout << text;
    }
};

std::size_t ancillary_cap() {
    if (const char* env = std::getenv("BW_ANCILLARY_CAP")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end && *end == '\0' && cap > 0) return static_cast<std::size_t>(cap);
    }
    return 12;
}

Rational parse_rational_arg(const std::string& text, const std::string& what) {
    auto q = Rational::parse(text);
    if (!q) fail(Errc::validation_error, what + " '" + text + "' is not an integer or a/b");
    return *q;
}

std::string block_text(const std::vector<std::string>& block) {
    std::string s = "{";
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (i) s += ",";
        s += block[i];
    }
    return s + "}";
}

json witness_json(const RelationWitness& w) {
    json out{{"text", w.text}};
    if (w.constant) out["constant"] = w.constant->str();
    if (!w.block.empty()) out["block"] = w.block;
    if (w.component) out["component"] = *w.component;
    if (w.statistic_id) out["statistic"] = *w.statistic_id;
    return out;
}

void print_experiment(Output& out, const Experiment& e) {
    out.line("experiment " + e.id);
    std::string params = "  params:";
    for (const auto& p : e.params) params += " " + p;
    out.line(params);
    std::string outcomes = "  outcomes:";
    for (const auto& o : e.outcomes) outcomes += " " + o;
    out.line(outcomes);
    json rows = json::object();
    for (std::size_t p = 0; p < e.params.size(); ++p) {
        std::string row = "  row " + e.params[p] + ":";
        for (const auto& q : e.pmf[p]) row += " " + q.str();
        out.line(row);
        json r = json::array();
        for (const auto& q : e.pmf[p]) r.push_back(q.str());
        rows[e.params[p]] = r;
    }
    out.j["values"]["experiment"] = {
        {"id", e.id}, {"params", e.params}, {"outcomes", e.outcomes}, {"pmf", rows}};
}

const Workspace& need_workspace(const std::optional<Workspace>& w) {
    if (!w) fail(Errc::unresolved_reference, "this command needs --workspace <file.bw>");
    return *w;
}

std::set<RelationKind> parse_kinds(const std::string& csv) {
    std::set<RelationKind> kinds;
    std::string token;
    std::istringstream in(csv);
    while (std::getline(in, token, ',')) {
        auto k = parse_relation(token);
        if (!k) fail(Errc::validation_error, "unknown relation kind '" + token + "'");
        kinds.insert(*k);
    }
    return kinds;
}

std::string base_name(const InferenceBase& b) {
    return b.experiment->id + ":" + b.outcome;
}

// ---------------------------------------------------------------- commands

void cmd_validate(Output& out, const Workspace& w) {
    for (const auto& id : w.experiment_order) {
        const Experiment& e = *w.experiments.at(id);
        out.line("experiment " + id + ": " + std::to_string(e.params.size()) + " params, " +
                 std::to_string(e.outcomes.size()) + " outcomes - ok");
    }
    out.line(std::to_string(w.statistics.size()) + " statistics, " +
             std::to_string(w.universes.size()) + " universes - all references resolve");
    out.j["values"] = {{"experiments", w.experiment_order},
                       {"statistics", w.statistics.size()},
                       {"universes", w.universes.size()},
                       {"ok", true}};
}

void cmd_suff_min(Output& out, const Workspace& w, const std::string& exp_id) {
    ExperimentPtr e = w.find_experiment(exp_id);
    StatisticPartition t = minimal_sufficient(*e);
    SufficiencyCheck check = is_sufficient(*e, t);
    out.line("minimal sufficient partition of " + exp_id + " (" +
             std::to_string(t.blocks.size()) + " blocks):");
    json blocks = json::array();
    for (const auto& b : t.blocks) {
        out.line("  " + block_text(b));
        blocks.push_back(b);
    }
    out.line(std::string("certified sufficient: ") + (check.sufficient ? "true" : "false"));
    out.j["inputs"] = {{"experiment", exp_id}};
    out.j["values"] = {{"blocks", blocks}, {"sufficient", check.sufficient}};
    json table = json::object();
    for (std::size_t b = 0; b < check.conditional_table.size(); ++b) {
        json entry = json::object();
        for (const auto& [outcome, conditional] : check.conditional_table[b])
            entry[outcome] = conditional.str();
        table[std::to_string(b)] = entry;
    }
    out.j["witnesses"]["conditional_table"] = table;
}

void cmd_ancillaries(Output& out, const Workspace& w, const std::string& exp_id) {
    ExperimentPtr e = w.find_experiment(exp_id);
    auto partitions = enumerate_ancillaries(*e, ancillary_cap());
    out.line(std::to_string(partitions.size()) + " nontrivial ancillary partitions of " + exp_id);
    json list = json::array();
    for (const auto& t : partitions) {
        std::string s;
        json blocks = json::array();
        for (const auto& b : t.blocks) {
            if (!s.empty()) s += " ";
            s += block_text(b);
            blocks.push_back(b);
        }
        out.line("  " + s);
        list.push_back(blocks);
    }
    out.j["inputs"] = {{"experiment", exp_id}};
    out.j["values"]["ancillaries"] = list;
}

void cmd_condition(Output& out, const Workspace& w, const std::string& exp_id,
                   const std::string& stat_id, const std::string& block_ref) {
    ExperimentPtr e = w.find_experiment(exp_id);
    const WorkspaceStatistic& stat = w.find_statistic(stat_id);
    if (stat.experiment_id != exp_id)
        fail(Errc::unresolved_reference,
             "statistic '" + stat_id + "' is defined on '" + stat.experiment_id + "', not '" +
                 exp_id + "'");
    std::optional<std::size_t> index;
    for (std::size_t b = 0; b < stat.block_ids.size(); ++b)
        if (stat.block_ids[b] == block_ref) index = b;
    if (!index) {
        for (std::size_t b = 0; b < stat.partition.blocks.size() && !index; ++b)
            for (const auto& label : stat.partition.blocks[b])
                if (label == block_ref) index = b;
    }
    if (!index)
        fail(Errc::empty_block, "no block of '" + stat_id + "' is named or contains '" +
                                    block_ref + "'");
    Experiment conditioned =
        condition(*e, stat.partition, *index, exp_id + "|" + stat_id + "=" + block_ref);
    print_experiment(out, conditioned);
    out.j["inputs"] = {{"experiment", exp_id}, {"statistic", stat_id}, {"block", block_ref}};
}

void cmd_relate(Output& out, const Workspace& w, const std::string& kind_name,
                const std::string& base_a, const std::string& base_b) {
    auto kind = parse_relation(kind_name);
    if (!kind) fail(Errc::validation_error, "unknown relation kind '" + kind_name + "'");
    InferenceBase a = w.resolve_base(base_a);
    InferenceBase b = w.resolve_base(base_b);
    RelationResult r = related(*kind, a, b);
    if (r.related)
        out.line("related: true (" + r.witness.text + ")");
    else
        out.line("related: false");
    out.j["inputs"] = {{"kind", kind_name}, {"a", base_a}, {"b", base_b}};
    out.j["values"]["related"] = r.related;
    if (r.related) out.j["witnesses"]["relation"] = witness_json(r.witness);
}

void cmd_closure(Output& out, const Workspace& w, const std::string& universe_id,
                 const std::string& kinds_csv) {
    Universe u = w.build_universe(universe_id);
    std::set<RelationKind> kinds = parse_kinds(kinds_csv);
    ClosureResult result = closure(u, kinds);

    out.line("universe " + universe_id + ": " + std::to_string(u.size()) + " bases, " +
             std::to_string(result.edges.size()) + " direct edges, " +
             std::to_string(result.classes.size()) + " classes");
    json classes = json::array();
    for (const auto& cls : result.classes) {
        std::string names;
        json members = json::array();
        for (std::size_t i : cls) {
            if (!names.empty()) names += ", ";
            names += base_name(u.base(i));
            members.push_back(base_name(u.base(i)));
        }
        out.line("  class {" + names + "}");
        classes.push_back(members);
    }
    json edges = json::array();
    std::set<std::pair<std::size_t, std::size_t>> direct;
    for (const auto& edge : result.edges) {
        out.line("  edge " + base_name(u.base(edge.a)) + " -" + relation_name(edge.kind) + "- " +
                 base_name(u.base(edge.b)) + " (" + edge.witness.text + ")");
        edges.push_back({{"a", base_name(u.base(edge.a))},
                         {"b", base_name(u.base(edge.b))},
                         {"kind", relation_name(edge.kind)},
                         {"witness", witness_json(edge.witness)}});
        direct.emplace(edge.a, edge.b);
    }
    std::size_t in_class_pairs = 0;
    for (const auto& cls : result.classes)
        in_class_pairs += cls.size() * (cls.size() - 1) / 2;
    if (in_class_pairs > direct.size())
        out.line("  note: relation not transitive here; closure added " +
                 std::to_string(in_class_pairs - direct.size()) + " pair(s)");
    out.j["inputs"] = {{"universe", universe_id}, {"kinds", kinds_csv}};
    out.j["values"] = {{"classes", classes},
                       {"direct_edges", result.edges.size()},
                       {"closure_added_pairs", in_class_pairs - direct.size()}};
    out.j["witnesses"]["edges"] = edges;
}

void cmd_chain(Output& out, const Workspace& w, const std::string& base_a,
               const std::string& base_b) {
    InferenceBase a = w.resolve_base(base_a);
    InferenceBase b = w.resolve_base(base_b);
    WitnessChain chain = birnbaum_chain(a, b);
    out.line("proportionality constant c = " + display(chain.constant));
    if (chain.steps.empty()) {
        out.line("identical inference bases: empty chain");
    } else {
        for (const auto& step : chain.steps)
            out.line("  " + base_name(step.from) + " -" + relation_name(step.kind) + "- " +
                     base_name(step.to) + " (" + step.witness.text + ")");
        if (chain.block_conditional)
            out.line("sufficient block " + block_text(chain.sufficient_block) +
                     " with conditional " + display(*chain.block_conditional));
        out.line(std::string("all steps re-verified: ") + (chain.verified ? "true" : "false"));
    }
    out.j["inputs"] = {{"a", base_a}, {"b", base_b}};
    out.j["values"] = {{"constant", chain.constant.str()},
                       {"steps", chain.steps.size()},
                       {"verified", chain.verified}};
    if (chain.block_conditional)
        out.j["values"]["block_conditional"] = chain.block_conditional->str();
    json steps = json::array();
    for (const auto& step : chain.steps)
        steps.push_back({{"from", base_name(step.from)},
                         {"to", base_name(step.to)},
                         {"kind", relation_name(step.kind)},
                         {"witness", witness_json(step.witness)}});
    out.j["witnesses"]["steps"] = steps;
}

void cmd_verify_birnbaum(Output& out, const Workspace& w, const std::string& universe_id,
                         int depth) {
    Universe u = w.build_universe(universe_id);
    VerifyBirnbaumReport report = verify_birnbaum(u, depth);
    out.line("universe " + universe_id + ": " + std::to_string(report.original_size) +
             " bases, " + std::to_string(report.l_pairs.size()) + " L-related pairs, augmented " +
             "to " + std::to_string(report.augmented_size));
    json pairs = json::array();
    for (const auto& pair : report.l_pairs) {
        out.line("  " + base_name(u.base(pair.a)) + " ~L~ " + base_name(u.base(pair.b)) +
                 " (c = " + pair.constant.str() + "; chain " +
                 (pair.chain.verified ? "verified" : "FAILED") + ")");
        pairs.push_back({{"a", base_name(u.base(pair.a))},
                         {"b", base_name(u.base(pair.b))},
                         {"c", pair.constant.str()},
                         {"verified", pair.chain.verified}});
    }
    out.line(std::string("restricted {S,C}-closure equals L-closure: ") +
             (report.complete ? "true" : "false"));
    out.line(std::string("soundness ({S,C} never crosses an L-class): ") +
             (report.sound ? "true" : "false"));
    out.j["inputs"] = {{"universe", universe_id}, {"depth", depth}};
    out.j["values"] = {{"l_pairs", pairs},
                       {"complete", report.complete},
                       {"sound", report.sound},
                       {"augmented_size", report.augmented_size}};
}

void print_allocation(Output& out, const std::string& label, const AllocationResult& r) {
    out.line(label + ": alpha = (" + format_double(r.alpha1) + ", " + format_double(r.alpha2) +
             "), power = (" + format_double(r.power1) + ", " + format_double(r.power2) +
             "), avg alpha = " + format_double(r.avg_alpha) + ", avg power = " +
             format_double(r.avg_power) +
             (r.lr_cutoff ? ", lr cutoff = " + format_double(*r.lr_cutoff) : ""));
    json entry{{"alpha1", r.alpha1},       {"alpha2", r.alpha2}, {"power1", r.power1},
               {"power2", r.power2},       {"avg_alpha", r.avg_alpha},
               {"avg_power", r.avg_power}};
    if (r.lr_cutoff) entry["lr_cutoff"] = *r.lr_cutoff;
    out.j["values"][label] = entry;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact engine for sufficiency/conditionality/likelihood relations"};
    app.require_subcommand(1);

    std::string workspace_path;
    bool as_json = false;
    app.add_option("-w,--workspace", workspace_path, "path to a .bw workspace file");
    app.add_flag("--json", as_json, "machine-readable output");

    // workspace commands
    auto* sc_validate = app.add_subcommand("validate", "validate the workspace");

    std::string exp_id;
    auto* sc_suffmin = app.add_subcommand("suff-min", "minimal sufficient partition");
    sc_suffmin->add_option("experiment", exp_id)->required();

    auto* sc_anc = app.add_subcommand("ancillaries", "enumerate ancillary partitions");
    sc_anc->add_option("experiment", exp_id)->required();

    std::string stat_id, block_ref;
    auto* sc_cond = app.add_subcommand("condition", "conditional experiment given a block");
    sc_cond->add_option("experiment", exp_id)->required();
    sc_cond->add_option("statistic", stat_id)->required();
    sc_cond->add_option("block", block_ref)->required();

    std::string kind_name, base_a, base_b;
    auto* sc_relate = app.add_subcommand("relate", "check one relation on a pair of bases");
    sc_relate->add_option("kind", kind_name, "S, C, A, or L")
        ->required()
        ->check(CLI::IsMember({"S", "C", "A", "L"}));
    sc_relate->add_option("a", base_a, "<experiment>:<outcome>")->required();
    sc_relate->add_option("b", base_b, "<experiment>:<outcome>")->required();

    std::string universe_id, kinds_csv = "S,C";
    auto* sc_closure = app.add_subcommand("closure", "equivalence closure over a universe");
    sc_closure->add_option("universe", universe_id)->required();
    sc_closure->add_option("--kinds", kinds_csv, "comma-separated relation kinds (default S,C)");

    auto* sc_chain = app.add_subcommand("chain", "witness chain between L-related bases");
    sc_chain->add_option("a", base_a, "<experiment>:<outcome>")->required();
    sc_chain->add_option("b", base_b, "<experiment>:<outcome>")->required();

    int depth = 1;
    auto* sc_verify = app.add_subcommand("verify-birnbaum",
                                         "check closure({S,C}) = closure({L}) on a universe");
    sc_verify->add_option("universe", universe_id)->required();
    sc_verify->add_option("--depth", depth, "augmentation rounds (default 1)");

    // method commands
    std::string pv_kind, theta0_text = "1/2";
    long n_trials = 0, k_failures = 0, successes = -1, failures = -1, smax = 24;
    auto* sc_pvalue = app.add_subcommand("pvalue", "one-sided exact p-values");
    sc_pvalue->add_option("family", pv_kind, "binom, negbinom, or mixture")
        ->required()
        ->check(CLI::IsMember({"binom", "negbinom", "mixture"}));
    sc_pvalue->add_option("--n", n_trials, "binomial trials");
    sc_pvalue->add_option("--k", k_failures, "negative-binomial failure target");
    sc_pvalue->add_option("--theta0", theta0_text, "null success probability (rational)");
    sc_pvalue->add_option("--successes", successes, "observed successes")->required();
    sc_pvalue->add_option("--failures", failures, "observed failures (mixture only)");

    auto* sc_audit = app.add_subcommand("audit-mayo", "method-vs-inference audit on the mixture");
    sc_audit->add_option("--n", n_trials, "binomial trials")->required();
    sc_audit->add_option("--k", k_failures, "negative-binomial failure target")->required();
    sc_audit->add_option("--theta0", theta0_text, "null success probability (rational)");
    sc_audit->add_option("--successes", successes, "observed successes")->required();
    sc_audit->add_option("--failures", failures, "observed failures (default k)");
    sc_audit->add_option("--smax", smax, "truncation bound for the mixture experiment");

    std::string theta_text, conditioning_name, eps_text;
    auto* sc_cov = app.add_subcommand("coverage-ex3", "coverage of C = {X} in the one-draw model");
    sc_cov->add_option("theta", theta_text, "rational in [0,1)")->required();
    sc_cov->add_option("conditioning", conditioning_name,
                       "unconditional | given-x-positive | given-x-zero")
        ->required()
        ->check(CLI::IsMember({"unconditional", "given-x-positive", "given-x-zero"}));

    auto* sc_twopoint = app.add_subcommand("twopoint", "two-point translation model analysis");
    sc_twopoint->add_option("epsilon", eps_text, "tilt, rational in [0,1]")->required();
    sc_twopoint->add_option("theta", theta_text, "rational location")->required();

    double sigma1 = 0.1, sigma2 = 0.05, mu0 = 1.0, mu1 = 1.1, alpha = 0.05;
    long np_n = 1;
    std::string sweep;
    auto* sc_np = app.add_subcommand("np-mixture",
                                     "equal-level vs optimal allocation for two instruments");
    sc_np->add_option("sigma1", sigma1)->required();
    sc_np->add_option("sigma2", sigma2)->required();
    sc_np->add_option("mu0", mu0)->required();
    sc_np->add_option("mu1", mu1)->required();
    sc_np->add_option("n", np_n)->required();
    sc_np->add_option("alpha", alpha)->required();
    sc_np->add_option("--sweep-n", sweep, "range a..b of sample sizes to sweep");

    auto* sc_report = app.add_subcommand("paper-report", "run every built-in example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Output out;
    out.as_json = as_json;

    try {
        std::optional<Workspace> w;
        if (!workspace_path.empty()) w = parse_workspace(workspace_path);

        if (sc_validate->parsed()) {
            out.j["command"] = "validate";
            cmd_validate(out, need_workspace(w));
        } else if (sc_suffmin->parsed()) {
            out.j["command"] = "suff-min";
            cmd_suff_min(out, need_workspace(w), exp_id);
        } else if (sc_anc->parsed()) {
            out.j["command"] = "ancillaries";
            cmd_ancillaries(out, need_workspace(w), exp_id);
        } else if (sc_cond->parsed()) {
            out.j["command"] = "condition";
            cmd_condition(out, need_workspace(w), exp_id, stat_id, block_ref);
        } else if (sc_relate->parsed()) {
            out.j["command"] = "relate";
            cmd_relate(out, need_workspace(w), kind_name, base_a, base_b);
        } else if (sc_closure->parsed()) {
            out.j["command"] = "closure";
            cmd_closure(out, need_workspace(w), universe_id, kinds_csv);
        } else if (sc_chain->parsed()) {
            out.j["command"] = "chain";
            cmd_chain(out, need_workspace(w), base_a, base_b);
        } else if (sc_verify->parsed()) {
            out.j["command"] = "verify-birnbaum";
            cmd_verify_birnbaum(out, need_workspace(w), universe_id, depth);
        } else if (sc_pvalue->parsed()) {
            out.j["command"] = "pvalue";
            Rational theta0 = parse_rational_arg(theta0_text, "theta0");
            Rational value;
            if (pv_kind == "binom") {
                value = binom_pvalue({n_trials, theta0}, successes);
            } else if (pv_kind == "negbinom") {
                value = negbinom_pvalue({k_failures, theta0}, successes);
            } else if (pv_kind == "mixture") {
                if (failures < 0) failures = k_failures;
                value = mixture_pvalue({n_trials, theta0}, {k_failures, theta0}, successes,
                                       failures);
            } else {
                fail(Errc::validation_error, "family must be binom, negbinom, or mixture");
            }
            out.line(display(value));
            out.j["inputs"] = {{"family", pv_kind},
                               {"n", n_trials},
                               {"k", k_failures},
                               {"theta0", theta0.str()},
                               {"successes", successes}};
            out.j["values"] = {{"pvalue", value.str()}, {"decimal", value.decimal()}};
        } else if (sc_audit->parsed()) {
            out.j["command"] = "audit-mayo";
            Rational theta0 = parse_rational_arg(theta0_text, "theta0");
            if (failures < 0) failures = k_failures;
            MethodAuditReport r =
                audit_sp2_wcp({n_trials, theta0}, {k_failures, theta0}, successes, failures, smax);
            out.line(r.convention);
            out.line("M(binomial) = " + display(r.m_binom));
            out.line("M(negative binomial) = " + display(r.m_negbinom));
            out.line("M(mixture,(1,x)) = " + display(r.m_mix_tag1));
            out.line("M(mixture,(2,x)) = " + display(r.m_mix_tag2));
            out.line("Ev(mixture,(1,x)) = M(binomial) = " + display(r.ev_mix_tag1));
            out.line("Ev(mixture,(2,x)) = M(negative binomial) = " + display(r.ev_mix_tag2));
            out.line("component likelihood proportionality c = " + display(r.proportionality));
            out.line("sufficient block: " + block_text(r.sufficient_block));
            out.line(std::string("SP2 (method constant on block): ") +
                     (r.sp2_check ? "true" : "false"));
            out.line(std::string("WCP (conditional reporting): ") +
                     (r.wcp_check ? "true" : "false"));
            out.line(std::string("LP (equal inference on the pair): ") +
                     (r.lp_check ? "true" : "false"));
            out.line(r.narrative);
            out.j["inputs"] = {{"n", n_trials},
                               {"k", k_failures},
                               {"theta0", theta0.str()},
                               {"successes", successes},
                               {"failures", failures}};
            out.j["values"] = {{"m_binom", r.m_binom.str()},
                               {"m_negbinom", r.m_negbinom.str()},
                               {"m_mixture", r.m_mix_tag1.str()},
                               {"sp2", r.sp2_check},
                               {"wcp", r.wcp_check},
                               {"lp", r.lp_check},
                               {"proportionality", r.proportionality.str()}};
            out.j["values"]["convention"] = r.convention;
            out.j["witnesses"]["sufficient_block"] = r.sufficient_block;
        } else if (sc_cov->parsed()) {
            out.j["command"] = "coverage-ex3";
            Rational theta = parse_rational_arg(theta_text, "theta");
            auto conditioning = parse_ex3_conditioning(conditioning_name);
            if (!conditioning)
                fail(Errc::validation_error,
                     "conditioning must be unconditional, given-x-positive, or given-x-zero");
            Rational value = example3_coverage(theta, *conditioning);
            out.line("coverage = " + display(value));
            out.j["inputs"] = {{"theta", theta.str()}, {"conditioning", conditioning_name}};
            out.j["values"] = {{"coverage", value.str()}, {"decimal", value.decimal()}};
        } else if (sc_twopoint->parsed()) {
            out.j["command"] = "twopoint";
            TwoPointModel model{parse_rational_arg(eps_text, "epsilon"),
                                parse_rational_arg(theta_text, "theta")};
            Example4Analysis a = example4_analysis(model);
            auto cond_text = [](const CondValue& v) {
                return v.defined ? display(v.value) : std::string("undefined");
            };
            out.line("P(T=theta) = " + display(a.closed_form.unconditional));
            out.line("P(T=theta | X(1)!=X(2)) = " + cond_text(a.closed_form.given_distinct));
            out.line("P(T=theta | tie, minus-only region) = " +
                     cond_text(a.closed_form.tie_only_minus));
            out.line("P(T=theta | tie, plus-only region) = " +
                     cond_text(a.closed_form.tie_only_plus));
            out.line("P(T=theta | tie, both regions) = " +
                     cond_text(a.closed_form.tie_intersection));
            out.line("P(T=theta | D=1) = " + cond_text(a.closed_form.given_d1));
            out.line("P(T=theta | D=0) = " + cond_text(a.closed_form.given_d0));
            out.line(std::string("D ancillary: ") + (a.d_ancillary ? "true" : "false"));
            out.line(std::string("A-sets disjoint: ") + (a.a_sets_disjoint ? "true" : "false"));
            out.line("modified estimator coverage = " +
                     display(a.closed_form.modified_unconditional));
            out.line(std::string("enumeration oracle agrees: ") +
                     (a.oracle_agrees ? "true" : "false"));
            auto cond_json = [](const CondValue& v) -> json {
                if (!v.defined) return {{"defined", false}, {"event_prob", v.event_prob.str()}};
                return {{"defined", true},
                        {"value", v.value.str()},
                        {"event_prob", v.event_prob.str()}};
            };
            out.j["inputs"] = {{"epsilon", model.epsilon.str()}, {"theta", model.theta.str()}};
            out.j["values"] = {{"unconditional", a.closed_form.unconditional.str()},
                               {"given_distinct", cond_json(a.closed_form.given_distinct)},
                               {"tie_only_minus", cond_json(a.closed_form.tie_only_minus)},
                               {"tie_only_plus", cond_json(a.closed_form.tie_only_plus)},
                               {"tie_intersection", cond_json(a.closed_form.tie_intersection)},
                               {"given_d1", cond_json(a.closed_form.given_d1)},
                               {"given_d0", cond_json(a.closed_form.given_d0)},
                               {"d_ancillary", a.d_ancillary},
                               {"a_sets_disjoint", a.a_sets_disjoint},
                               {"oracle_agrees", a.oracle_agrees}};
        } else if (sc_np->parsed()) {
            out.j["command"] = "np-mixture";
            out.j["inputs"] = {{"sigma1", sigma1}, {"sigma2", sigma2}, {"mu0", mu0},
                               {"mu1", mu1},       {"n", np_n},        {"alpha", alpha}};
            long lo = np_n, hi = np_n;
            if (!sweep.empty()) {
                auto dots = sweep.find("..");
                if (dots == std::string::npos)
                    fail(Errc::validation_error, "--sweep-n wants a range like 1..10");
                lo = std::stol(sweep.substr(0, dots));
                hi = std::stol(sweep.substr(dots + 2));
                if (lo < 1 || hi < lo) fail(Errc::validation_error, "bad sweep range");
            }
            for (long n = lo; n <= hi; ++n) {
                InstrumentSpec inst1{sigma1, mu0, mu1, n};
                InstrumentSpec inst2{sigma2, mu0, mu1, n};
                if (lo != hi) out.line("n = " + std::to_string(n));
                print_allocation(out, "equal-level(n=" + std::to_string(n) + ")",
                                 equal_level_test(inst1, inst2, alpha));
                print_allocation(out, "optimal(n=" + std::to_string(n) + ")",
                                 optimal_mixture_test(inst1, inst2, alpha));
            }
            ProductionLineReference ref = production_line_reference();
            out.warn("reference values (conditional power " +
                     format_double(ref.conditional_power, 3) + ", optimal power " +
                     format_double(ref.optimal_power, 3) + ", alphas " +
                     format_double(ref.alpha_old, 3) + "/" + format_double(ref.alpha_new, 3) +
                     ") are unreconciled with the z-test model");
        } else if (sc_report->parsed()) {
            PaperReport report = paper_report();
            if (as_json) {
                std::cout << report.json.dump(2) << "\n";
            } else {
                std::cout << report.text;
            }
            return 0;
        }
        out.emit();
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
