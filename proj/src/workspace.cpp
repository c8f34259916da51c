#include "birnbaum/workspace.hpp"

#include "birnbaum/errors.hpp"

#include <fstream>
#include <sstream>

namespace birnbaum {

ExperimentPtr Workspace::find_experiment(const std::string& id) const {
    auto it = experiments.find(id);
    if (it == experiments.end())
        fail(Errc::unresolved_reference, "no experiment '" + id + "' in workspace");
    return it->second;
}

const WorkspaceStatistic& Workspace::find_statistic(const std::string& id) const {
    for (const auto& s : statistics)
        if (s.id == id) return s;
    fail(Errc::unresolved_reference, "no statistic '" + id + "' in workspace");
}

const UniverseDef& Workspace::find_universe_def(const std::string& id) const {
    for (const auto& u : universes)
        if (u.id == id) return u;
    fail(Errc::unresolved_reference, "no universe '" + id + "' in workspace");
}

Universe Workspace::build_universe(const std::string& id) const {
    const UniverseDef& def = find_universe_def(id);
    Universe u;
    for (const auto& [exp_id, outcome] : def.bases)
        u.add(make_base(find_experiment(exp_id), outcome));
    return u;
}

InferenceBase Workspace::resolve_base(const std::string& spec) const {
    auto colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size())
        fail(Errc::unresolved_reference,
             "base '" + spec + "' is not of the form <experiment>:<outcome>");
    return make_base(find_experiment(spec.substr(0, colon)), spec.substr(colon + 1));
}

bool workspace_equal(const Workspace& a, const Workspace& b) {
    if (a.experiment_order != b.experiment_order) return false;
    if (a.mixtures != b.mixtures) return false;
    if (a.statistics != b.statistics) return false;
    if (a.universes != b.universes) return false;
    if (a.experiments.size() != b.experiments.size()) return false;
    for (const auto& [id, e] : a.experiments) {
        auto it = b.experiments.find(id);
        if (it == b.experiments.end() || !(*e == *it->second)) return false;
    }
    return true;
}

namespace {

struct Parser {
    std::string source;
    std::vector<std::pair<int, std::vector<std::string>>> lines; // (line number, tokens)
    std::size_t pos = 0;

    [[noreturn]] void error(int line, const std::string& message) const {
        fail(Errc::parse_error, source + ":" + std::to_string(line) + ": " + message);
    }

    bool done() const { return pos >= lines.size(); }
    int line() const { return lines[pos].first; }
    const std::vector<std::string>& tokens() const { return lines[pos].second; }
    const std::string& keyword() const { return tokens()[0]; }
};

std::vector<std::string> tokenize(const std::string& raw) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : raw) {
        if (ch == '#') break;
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

Rational parse_prob(const Parser& p, int line, const std::string& token) {
    auto q = Rational::parse(token);
    if (!q) p.error(line, "'" + token + "' is not an integer or a/b fraction");
    return *q;
}

} // namespace

Workspace parse_workspace_text(std::string_view text, const std::string& source_name) {
    Parser p;
    p.source = source_name;
    {
        std::istringstream in{std::string(text)};
        std::string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            auto tokens = tokenize(raw);
            if (!tokens.empty()) p.lines.emplace_back(number, std::move(tokens));
        }
    }

    Workspace w;
    auto require_new_id = [&](int line, const std::string& id) {
        if (w.experiments.count(id))
            p.error(line, "duplicate experiment id '" + id + "'");
    };

    while (!p.done()) {
        const int line = p.line();
        const auto& head = p.tokens();

        if (p.keyword() == "experiment") {
            if (head.size() != 2) p.error(line, "expected: experiment <id>");
            const std::string id = head[1];
            require_new_id(line, id);
            ++p.pos;

            std::vector<std::string> params, outcomes;
            std::vector<std::pair<std::string, std::vector<Rational>>> rows;
            while (!p.done()) {
                const auto& t = p.tokens();
                const int l = p.line();
                if (t[0] == "params") {
                    params.assign(t.begin() + 1, t.end());
                    ++p.pos;
                } else if (t[0] == "outcomes") {
                    outcomes.assign(t.begin() + 1, t.end());
                    ++p.pos;
                } else if (t[0] == "row") {
                    if (t.size() < 3) p.error(l, "expected: row <param> <p1> <p2> ...");
                    std::vector<Rational> row;
                    Rational sum;
                    for (std::size_t i = 2; i < t.size(); ++i) {
                        row.push_back(parse_prob(p, l, t[i]));
                        if (row.back().sign() < 0)
                            fail(Errc::validation_error,
                                 p.source + ":" + std::to_string(l) + ": NEGATIVE_PROB: " +
                                     row.back().str() + " in row for '" + t[1] + "'");
                        sum += row.back();
                    }
                    if (!sum.is_one())
                        fail(Errc::validation_error,
                             p.source + ":" + std::to_string(l) + ": ROW_SUM: row for '" + t[1] +
                                 "' sums to " + sum.str() + ", expected 1");
                    rows.emplace_back(t[1], std::move(row));
                    ++p.pos;
                } else {
                    break;
                }
            }
            if (params.empty()) p.error(line, "experiment '" + id + "' has no params line");
            if (outcomes.empty()) p.error(line, "experiment '" + id + "' has no outcomes line");
            std::vector<std::vector<Rational>> pmf;
            for (const auto& param : params) {
                bool found = false;
                for (auto& [label, row] : rows) {
                    if (label == param) {
                        if (found) p.error(line, "duplicate row for parameter '" + param + "'");
                        pmf.push_back(row);
                        found = true;
                    }
                }
                if (!found) p.error(line, "missing row for parameter '" + param + "'");
            }
            if (rows.size() != params.size())
                p.error(line, "experiment '" + id + "' has a row for an unknown parameter");
            try {
                w.experiments.emplace(id, validate_experiment_ptr(id, std::move(params),
                                                                  std::move(outcomes),
                                                                  std::move(pmf)));
            } catch (const Error& e) {
                fail(Errc::validation_error,
                     p.source + ":" + std::to_string(line) + ": " + e.what());
            }
            w.experiment_order.push_back(id);

        } else if (p.keyword() == "statistic") {
            if (head.size() != 4 || head[2] != "on")
                p.error(line, "expected: statistic <id> on <experiment>");
            WorkspaceStatistic s;
            s.id = head[1];
            s.experiment_id = head[3];
            s.partition.id = s.id;
            for (const auto& existing : w.statistics)
                if (existing.id == s.id) p.error(line, "duplicate statistic id '" + s.id + "'");
            ++p.pos;
            while (!p.done() && p.keyword() == "block") {
                const auto& t = p.tokens();
                if (t.size() < 3) p.error(p.line(), "expected: block <id> <outcome> ...");
                s.block_ids.push_back(t[1]);
                s.partition.blocks.emplace_back(t.begin() + 2, t.end());
                ++p.pos;
            }
            if (s.partition.blocks.empty())
                p.error(line, "statistic '" + s.id + "' has no blocks");
            w.statistics.push_back(std::move(s));

        } else if (p.keyword() == "universe") {
            if (head.size() != 2) p.error(line, "expected: universe <id>");
            UniverseDef u;
            u.id = head[1];
            for (const auto& existing : w.universes)
                if (existing.id == u.id) p.error(line, "duplicate universe id '" + u.id + "'");
            ++p.pos;
            while (!p.done() && p.keyword() == "base") {
                const auto& t = p.tokens();
                if (t.size() != 3) p.error(p.line(), "expected: base <experiment> <outcome>");
                u.bases.emplace_back(t[1], t[2]);
                ++p.pos;
            }
            w.universes.push_back(std::move(u));

        } else if (p.keyword() == "mixture") {
            // mixture <id> of <e1> <e2> weight <w>
            if (head.size() != 7 || head[2] != "of" || head[5] != "weight")
                p.error(line, "expected: mixture <id> of <e1> <e2> weight <a/b>");
            MixtureDef m;
            m.id = head[1];
            m.first = head[3];
            m.second = head[4];
            m.weight = parse_prob(p, line, head[6]);
            require_new_id(line, m.id);
            w.mixtures.push_back(m);
            w.experiment_order.push_back(m.id);
            ++p.pos;

        } else {
            p.error(line, "unknown directive '" + p.keyword() + "'");
        }
    }

    // Resolve references: mixtures first (they register experiments), then
    // statistics and universes.
    for (const auto& m : w.mixtures) {
        auto it1 = w.experiments.find(m.first);
        auto it2 = w.experiments.find(m.second);
        if (it1 == w.experiments.end())
            fail(Errc::unresolved_reference,
                 "mixture '" + m.id + "' refers to unknown experiment '" + m.first + "'");
        if (it2 == w.experiments.end())
            fail(Errc::unresolved_reference,
                 "mixture '" + m.id + "' refers to unknown experiment '" + m.second + "'");
        w.experiments.emplace(m.id, make_mixture(it1->second, it2->second, m.weight, m.id).base);
    }
    for (auto& s : w.statistics) {
        auto it = w.experiments.find(s.experiment_id);
        if (it == w.experiments.end())
            fail(Errc::unresolved_reference,
                 "statistic '" + s.id + "' refers to unknown experiment '" + s.experiment_id +
                     "'");
        check_partition(*it->second, s.partition);
    }
    for (const auto& u : w.universes) {
        for (const auto& [exp_id, outcome] : u.bases) {
            auto it = w.experiments.find(exp_id);
            if (it == w.experiments.end())
                fail(Errc::unresolved_reference,
                     "universe '" + u.id + "' refers to unknown experiment '" + exp_id + "'");
            if (!it->second->outcome_index(outcome))
                fail(Errc::unresolved_reference, "universe '" + u.id + "' refers to outcome '" +
                                                     outcome + "' not in '" + exp_id + "'");
        }
        w.build_universe(u.id); // rejects duplicate bases
    }
    return w;
}

Workspace parse_workspace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        fail(Errc::parse_error, "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_workspace_text(buffer.str(), path.filename().string());
}

std::string serialize_workspace(const Workspace& w) {
    std::ostringstream out;
    bool first = true;
    auto gap = [&] {
        if (!first) out << "\n";
        first = false;
    };

    for (const auto& id : w.experiment_order) {
        const MixtureDef* mix = nullptr;
        for (const auto& m : w.mixtures)
            if (m.id == id) mix = &m;
        gap();
        if (mix) {
            out << "mixture " << mix->id << " of " << mix->first << " " << mix->second
                << " weight " << mix->weight.str() << "\n";
            continue;
        }
        const Experiment& e = *w.experiments.at(id);
        out << "experiment " << e.id << "\n  params";
        for (const auto& param : e.params) out << " " << param;
        out << "\n  outcomes";
        for (const auto& outcome : e.outcomes) out << " " << outcome;
        out << "\n";
        for (std::size_t p = 0; p < e.params.size(); ++p) {
            out << "  row " << e.params[p];
            for (const auto& q : e.pmf[p]) out << " " << q.str();
            out << "\n";
        }
    }
    for (const auto& s : w.statistics) {
        gap();
        out << "statistic " << s.id << " on " << s.experiment_id << "\n";
        for (std::size_t b = 0; b < s.partition.blocks.size(); ++b) {
            out << "  block " << s.block_ids[b];
            for (const auto& outcome : s.partition.blocks[b]) out << " " << outcome;
            out << "\n";
        }
    }
    for (const auto& u : w.universes) {
        gap();
        out << "universe " << u.id << "\n";
        for (const auto& [exp_id, outcome] : u.bases)
            out << "  base " << exp_id << " " << outcome << "\n";
    }
    return out.str();
}

} // namespace birnbaum
