#include "birnbaum/relations.hpp"

#include "birnbaum/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace birnbaum {

const char* relation_name(RelationKind kind) {
    switch (kind) {
        case RelationKind::S: return "S";
        case RelationKind::C: return "C";
        case RelationKind::A: return "A";
        case RelationKind::L: return "L";
    }
    return "?";
}

std::optional<RelationKind> parse_relation(std::string_view name) {
    if (name == "S") return RelationKind::S;
    if (name == "C") return RelationKind::C;
    if (name == "A") return RelationKind::A;
    if (name == "L") return RelationKind::L;
    return std::nullopt;
}

namespace {

std::string block_text(const std::vector<std::string>& block) {
    std::string s = "{";
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (i) s += ",";
        s += block[i];
    }
    return s + "}";
}

bool same_experiment(const InferenceBase& a, const InferenceBase& b) {
    return a.experiment->id == b.experiment->id &&
           a.experiment->same_distribution(*b.experiment);
}

RelationResult check_s(const InferenceBase& a, const InferenceBase& b) {
    RelationResult r;
    if (!same_experiment(a, b)) return r;
    StatisticPartition minsuf = minimal_sufficient(*a.experiment);
    std::size_t ba = block_containing(minsuf, a.outcome);
    std::size_t bb = block_containing(minsuf, b.outcome);
    if (ba != bb) return r;
    r.related = true;
    r.witness.block = minsuf.blocks[ba];
    r.witness.statistic_id = minsuf.id;
    r.witness.text = "sufficient statistic " + minsuf.id + " with T(x)=T(x') on block " +
                     block_text(r.witness.block);
    return r;
}

// Does `mix` decompose as a mixture whose component j is `comp`? All outcome
// labels of `mix` must carry (1,.)/(2,.) tags, the j-tagged labels must strip
// to exactly comp's outcome set, and p_mix((j,x)) = w * p_comp(x) for every
// parameter with one weight w. Returns w.
std::optional<Rational> mixture_component_weight(const Experiment& mix, const Experiment& comp,
                                                 int j) {
    std::size_t tagged = 0, other = 0;
    std::vector<std::pair<std::size_t, std::size_t>> cols; // (mix col, comp col)
    for (std::size_t x = 0; x < mix.outcomes.size(); ++x) {
        auto tag = parse_tagged_outcome(mix.outcomes[x]);
        if (!tag) return std::nullopt;
        if (tag->first != j) {
            ++other;
            continue;
        }
        ++tagged;
        auto c = comp.outcome_index(tag->second);
        if (!c) return std::nullopt;
        cols.emplace_back(x, *c);
    }
    if (tagged != comp.outcomes.size() || other == 0) return std::nullopt;

    std::optional<Rational> w;
    for (auto [mx, cx] : cols) {
        for (std::size_t p = 0; p < mix.params.size(); ++p) {
            const Rational& pm = mix.pmf[p][mx];
            const Rational& pc = comp.pmf[p][cx];
            if (pc.is_zero()) {
                if (!pm.is_zero()) return std::nullopt;
                continue;
            }
            Rational ratio = pm / pc;
            if (!w)
                w = ratio;
            else if (*w != ratio)
                return std::nullopt;
        }
    }
    if (!w || w->sign() <= 0 || *w >= Rational(1)) return std::nullopt;
    return w;
}

// One orientation of C/A-via-mixture: `ma` observed at a tagged outcome whose
// component experiment and outcome match `cb`. For C the weight must be 1/2.
RelationResult check_mixture_oriented(const InferenceBase& ma, const InferenceBase& cb,
                                      bool require_half) {
    RelationResult r;
    auto tag = parse_tagged_outcome(ma.outcome);
    if (!tag || tag->second != cb.outcome) return r;
    auto w = mixture_component_weight(*ma.experiment, *cb.experiment, tag->first);
    if (!w) return r;
    if (require_half && *w != Rational(1, 2)) return r;
    r.related = true;
    r.witness.component = tag->first;
    r.witness.constant = *w;
    r.witness.text = "mixture " + ma.experiment->id + " with weight " + w->str() +
                     " on component " + std::to_string(tag->first) + " = " + cb.experiment->id;
    return r;
}

RelationResult check_c(const InferenceBase& a, const InferenceBase& b) {
    RelationResult r = check_mixture_oriented(a, b, /*require_half=*/true);
    if (!r.related) r = check_mixture_oriented(b, a, /*require_half=*/true);
    return r;
}

// One orientation of conditional A: is `cond`'s experiment the restriction of
// `full`'s to an ancillary block containing the common outcome? The candidate
// block is pinned to cond's outcome set; it extends to the two-block ancillary
// partition {B, complement} exactly when its probability is parameter-free.
RelationResult check_conditional_oriented(const InferenceBase& full, const InferenceBase& cond) {
    RelationResult r;
    if (full.outcome != cond.outcome) return r;
    const Experiment& fe = *full.experiment;
    const Experiment& ce = *cond.experiment;
    if (ce.outcomes.size() > fe.outcomes.size()) return r;

    std::vector<std::size_t> cols(ce.outcomes.size());
    for (std::size_t c = 0; c < ce.outcomes.size(); ++c) {
        auto fx = fe.outcome_index(ce.outcomes[c]);
        if (!fx) return r;
        cols[c] = *fx;
    }

    // parameter-free block probability
    Rational w;
    for (std::size_t p = 0; p < fe.params.size(); ++p) {
        Rational sum;
        for (std::size_t fx : cols) sum += fe.pmf[p][fx];
        if (p == 0)
            w = sum;
        else if (sum != w)
            return r;
    }
    if (w.is_zero()) return r;

    for (std::size_t c = 0; c < ce.outcomes.size(); ++c)
        for (std::size_t p = 0; p < fe.params.size(); ++p)
            if (fe.pmf[p][cols[c]] != w * ce.pmf[p][c]) return r;

    r.related = true;
    r.witness.constant = w;
    r.witness.block = ce.outcomes;
    r.witness.statistic_id = "{block,complement}";
    r.witness.text = "conditioning " + fe.id + " on ancillary block " +
                     block_text(ce.outcomes) + " (probability " + w.str() + ") yields " + ce.id;
    return r;
}

RelationResult check_a(const InferenceBase& a, const InferenceBase& b) {
    RelationResult r = check_conditional_oriented(a, b);
    if (!r.related) r = check_conditional_oriented(b, a);
    if (!r.related) r = check_mixture_oriented(a, b, /*require_half=*/false);
    if (!r.related) r = check_mixture_oriented(b, a, /*require_half=*/false);
    return r;
}

RelationResult check_l(const InferenceBase& a, const InferenceBase& b) {
    RelationResult r;
    auto c = proportionality_constant(a, b);
    if (!c) return r;
    r.related = true;
    r.witness.constant = *c;
    r.witness.text = "likelihoods proportional with c = " + c->str();
    return r;
}

} // namespace

RelationResult related(RelationKind kind, const InferenceBase& a, const InferenceBase& b) {
    if (a.experiment->params != b.experiment->params)
        fail(Errc::param_mismatch, "experiments '" + a.experiment->id + "' and '" +
                                       b.experiment->id + "' have different parameter lists");
    switch (kind) {
        case RelationKind::S: return check_s(a, b);
        case RelationKind::C: return check_c(a, b);
        case RelationKind::A: return check_a(a, b);
        case RelationKind::L: return check_l(a, b);
    }
    return {};
}

std::size_t Universe::add(InferenceBase base) {
    const std::string& id = base.experiment->id;
    auto it = experiments_.find(id);
    if (it == experiments_.end()) {
        experiments_.emplace(id, base.experiment);
    } else if (it->second != base.experiment && !(*it->second == *base.experiment)) {
        fail(Errc::duplicate_label,
             "universe already holds a different experiment with id '" + id + "'");
    }
    for (const auto& existing : bases_)
        if (existing == base)
            fail(Errc::duplicate_label,
                 "duplicate inference base (" + id + ", " + base.outcome + ")");
    base.outcome_idx(); // validates membership
    bases_.push_back(std::move(base));
    return bases_.size() - 1;
}

ExperimentPtr Universe::experiment(const std::string& id) const {
    auto it = experiments_.find(id);
    return it == experiments_.end() ? nullptr : it->second;
}

bool Universe::contains(const std::string& experiment_id, const std::string& outcome) const {
    return std::any_of(bases_.begin(), bases_.end(), [&](const InferenceBase& b) {
        return b.experiment->id == experiment_id && b.outcome == outcome;
    });
}

std::size_t ClosureResult::class_of(std::size_t base_index) const {
    for (std::size_t k = 0; k < classes.size(); ++k)
        for (std::size_t member : classes[k])
            if (member == base_index) return k;
    fail(Errc::validation_error, "base index out of range in closure result");
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]]; // path halving
            i = parent[i];
        }
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<std::vector<std::size_t>> components(UnionFind& uf, std::size_t n) {
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> classes;
    classes.reserve(by_root.size());
    for (auto& [root, members] : by_root) classes.push_back(std::move(members));
    return classes; // map order = lowest member index order
}

// Restricts a class partition of 0..n_total-1 to indices < n_keep.
std::vector<std::vector<std::size_t>> restrict_classes(
    const std::vector<std::vector<std::size_t>>& classes, std::size_t n_keep) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& cls : classes) {
        std::vector<std::size_t> kept;
        for (std::size_t i : cls)
            if (i < n_keep) kept.push_back(i);
        if (!kept.empty()) out.push_back(std::move(kept));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

} // namespace

ClosureResult closure(const Universe& u, const std::set<RelationKind>& kinds) {
    ClosureResult result;
    result.kinds_used = kinds;
    UnionFind uf(u.size());

    static constexpr RelationKind order[] = {RelationKind::S, RelationKind::C, RelationKind::A,
                                             RelationKind::L};
    for (RelationKind kind : order) {
        if (!kinds.count(kind)) continue;
        for (std::size_t i = 0; i < u.size(); ++i) {
            for (std::size_t j = i + 1; j < u.size(); ++j) {
                const InferenceBase& a = u.base(i);
                const InferenceBase& b = u.base(j);
                if (a.experiment->params != b.experiment->params) continue;
                RelationResult r = related(kind, a, b);
                if (r.related) {
                    result.edges.push_back({i, j, kind, std::move(r.witness)});
                    uf.unite(i, j);
                }
            }
        }
    }
    result.classes = components(uf, u.size());
    return result;
}

WitnessChain birnbaum_chain(const InferenceBase& a, const InferenceBase& b) {
    WitnessChain chain;
    if (a.experiment->params != b.experiment->params)
        fail(Errc::not_l_related, "bases (" + a.experiment->id + ", " + a.outcome + ") and (" +
                                      b.experiment->id + ", " + b.outcome +
                                      ") have different parameter lists");
    auto c = proportionality_constant(a, b);
    if (!c)
        fail(Errc::not_l_related, "bases (" + a.experiment->id + ", " + a.outcome + ") and (" +
                                      b.experiment->id + ", " + b.outcome +
                                      ") do not have proportional likelihoods");
    chain.constant = *c;
    if (a == b) {
        chain.verified = true; // empty chain: identical base
        return chain;
    }

    MixtureExperiment mix = make_mixture(a.experiment, b.experiment, Rational(1, 2));
    InferenceBase mix_a = make_base(mix.base, tagged_outcome(1, a.outcome));
    InferenceBase mix_b = make_base(mix.base, tagged_outcome(2, b.outcome));

    auto step = [](InferenceBase from, InferenceBase to, RelationKind kind) {
        RelationResult r = related(kind, from, to);
        if (!r.related)
            fail(Errc::validation_error,
                 "chain step failed re-verification: " + std::string(relation_name(kind)) +
                     " between (" + from.experiment->id + ", " + from.outcome + ") and (" +
                     to.experiment->id + ", " + to.outcome + ")");
        return ChainStep{std::move(from), std::move(to), kind, std::move(r.witness)};
    };

    chain.steps.push_back(step(a, mix_a, RelationKind::C));
    chain.steps.push_back(step(mix_a, mix_b, RelationKind::S));
    chain.steps.push_back(step(mix_b, b, RelationKind::C));

    // The canonical witness block is the tagged pair itself. Splitting it out
    // of its minimal-sufficient block is a refinement, so the refined
    // partition is still sufficient; certify it and read the parameter-free
    // conditional of (1,x_a) from the certificate.
    chain.sufficient_block = {mix_a.outcome, mix_b.outcome};
    StatisticPartition witness = minimal_sufficient(*mix.base);
    std::size_t blk = block_containing(witness, mix_a.outcome);
    std::vector<std::string> rest;
    for (const auto& label : witness.blocks[blk])
        if (label != mix_a.outcome && label != mix_b.outcome) rest.push_back(label);
    witness.blocks[blk] = chain.sufficient_block;
    if (!rest.empty()) witness.blocks.push_back(std::move(rest));
    witness.id = "pair-block(" + mix.base->id + ")";

    SufficiencyCheck cert = is_sufficient(*mix.base, witness);
    if (cert.sufficient) {
        for (const auto& [label, conditional] : cert.conditional_table[blk])
            if (label == mix_a.outcome) chain.block_conditional = conditional;
    }
    chain.mixture = std::move(mix);
    chain.verified = cert.sufficient && chain.block_conditional.has_value();
    return chain;
}

namespace {

bool same_partition(const std::vector<std::vector<std::size_t>>& a,
                    const std::vector<std::vector<std::size_t>>& b) {
    return a == b; // both canonical: classes sorted by lowest member, members ascending
}

bool refines(const std::vector<std::vector<std::size_t>>& fine,
             const std::vector<std::vector<std::size_t>>& coarse) {
    std::map<std::size_t, std::size_t> coarse_class;
    for (std::size_t k = 0; k < coarse.size(); ++k)
        for (std::size_t i : coarse[k]) coarse_class[i] = k;
    for (const auto& cls : fine) {
        for (std::size_t i = 1; i < cls.size(); ++i)
            if (coarse_class.at(cls[i]) != coarse_class.at(cls[0])) return false;
    }
    return true;
}

} // namespace

VerifyBirnbaumReport verify_birnbaum(const Universe& u, int depth) {
    VerifyBirnbaumReport report;
    report.original_size = u.size();
    report.chains_verified = true;

    ClosureResult l_closure = closure(u, {RelationKind::L});
    report.l_classes = l_closure.classes;

    Universe augmented;
    for (const auto& base : u.bases()) augmented.add(base);

    std::size_t frontier_start = 0;
    for (int d = 0; d < depth; ++d) {
        const std::size_t frontier_end = augmented.size();
        if (frontier_start == frontier_end) break;
        for (std::size_t i = 0; i < frontier_end; ++i) {
            for (std::size_t j = std::max(i + 1, frontier_start); j < frontier_end; ++j) {
                const InferenceBase& a = augmented.base(i);
                const InferenceBase& b = augmented.base(j);
                if (a.experiment->params != b.experiment->params) continue;
                auto c = proportionality_constant(a, b);
                if (!c) continue;

                WitnessChain chain = birnbaum_chain(a, b);
                report.chains_verified = report.chains_verified && chain.verified;
                if (chain.mixture) {
                    for (const ChainStep& s : chain.steps) {
                        if (!augmented.contains(s.to.experiment->id, s.to.outcome))
                            augmented.add(s.to);
                    }
                }
                if (i < u.size() && j < u.size())
                    report.l_pairs.push_back({i, j, *c, std::move(chain)});
            }
        }
        frontier_start = frontier_end;
    }
    report.augmented_size = augmented.size();

    ClosureResult sc = closure(augmented, {RelationKind::S, RelationKind::C});
    report.sc_classes_restricted = restrict_classes(sc.classes, u.size());
    report.complete = same_partition(report.sc_classes_restricted, report.l_classes);
    report.sound = refines(report.sc_classes_restricted, report.l_classes);
    return report;
}

} // namespace birnbaum
