#include "birnbaum/statistics.hpp"

#include "birnbaum/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace birnbaum {

void check_partition(const Experiment& e, const StatisticPartition& t) {
    std::set<std::string_view> seen;
    std::size_t total = 0;
    for (const auto& block : t.blocks) {
        if (block.empty())
            fail(Errc::not_a_partition, "statistic '" + t.id + "' has an empty block");
        for (const auto& label : block) {
            if (!e.outcome_index(label))
                fail(Errc::not_a_partition, "statistic '" + t.id + "' mentions unknown outcome '" +
                                                label + "'");
            if (!seen.insert(label).second)
                fail(Errc::not_a_partition,
                     "statistic '" + t.id + "' repeats outcome '" + label + "'");
            ++total;
        }
    }
    if (total != e.outcomes.size())
        fail(Errc::not_a_partition, "statistic '" + t.id + "' covers " + std::to_string(total) +
                                        " of " + std::to_string(e.outcomes.size()) + " outcomes");
}

std::size_t block_containing(const StatisticPartition& t, std::string_view outcome) {
    for (std::size_t b = 0; b < t.blocks.size(); ++b)
        for (const auto& label : t.blocks[b])
            if (label == outcome) return b;
    fail(Errc::empty_block, "no block of '" + t.id + "' contains outcome '" +
                                std::string(outcome) + "'");
}

namespace {

Rational block_probability(const Experiment& e, const std::vector<std::string>& block,
                           std::size_t param) {
    Rational sum;
    for (const auto& label : block) sum += e.pmf[param][*e.outcome_index(label)];
    return sum;
}

} // namespace

SufficiencyCheck is_sufficient(const Experiment& e, const StatisticPartition& t) {
    check_partition(e, t);
    SufficiencyCheck result;
    result.sufficient = true;
    result.conditional_table.resize(t.blocks.size());

    for (std::size_t b = 0; b < t.blocks.size(); ++b) {
        const auto& block = t.blocks[b];
        std::vector<Rational> probs(e.params.size());
        for (std::size_t p = 0; p < e.params.size(); ++p)
            probs[p] = block_probability(e, block, p);

        for (const auto& label : block) {
            std::size_t x = *e.outcome_index(label);
            std::optional<Rational> common;
            std::size_t common_param = 0;
            for (std::size_t p = 0; p < e.params.size(); ++p) {
                if (probs[p].is_zero()) continue;
                Rational cond = e.pmf[p][x] / probs[p];
                if (!common) {
                    common = cond;
                    common_param = p;
                } else if (*common != cond) {
                    result.sufficient = false;
                    result.conditional_table.clear();
                    result.counterexample = SufficiencyCheck::CounterExample{
                        b, label, e.params[common_param], e.params[p], *common, cond};
                    return result;
                }
            }
            // every block holds an outcome alive under some parameter
            result.conditional_table[b].emplace_back(label, *common);
        }
    }
    return result;
}

AncillarityCheck is_ancillary(const Experiment& e, const StatisticPartition& t) {
    check_partition(e, t);
    AncillarityCheck result;
    result.ancillary = true;

    for (std::size_t b = 0; b < t.blocks.size(); ++b) {
        Rational first = block_probability(e, t.blocks[b], 0);
        for (std::size_t p = 1; p < e.params.size(); ++p) {
            Rational prob = block_probability(e, t.blocks[b], p);
            if (prob != first) {
                result.ancillary = false;
                result.block_probs.clear();
                result.counterexample =
                    AncillarityCheck::CounterExample{b, e.params[0], e.params[p], first, prob};
                return result;
            }
        }
        result.block_probs.push_back(first);
    }
    return result;
}

StatisticPartition minimal_sufficient(const Experiment& e) {
    // Outcomes grouped by proportional likelihood vectors; the canonical form
    // divides by the first nonzero entry so proportional vectors coincide.
    std::map<std::vector<Rational>, std::size_t> block_of;
    StatisticPartition t;
    t.id = "minsuf(" + e.id + ")";

    for (std::size_t x = 0; x < e.outcomes.size(); ++x) {
        std::vector<Rational> canon;
        canon.reserve(e.params.size());
        const Rational* pivot = nullptr;
        for (std::size_t p = 0; p < e.params.size() && !pivot; ++p)
            if (!e.pmf[p][x].is_zero()) pivot = &e.pmf[p][x];
        for (std::size_t p = 0; p < e.params.size(); ++p)
            canon.push_back(e.pmf[p][x] / *pivot);

        auto [it, inserted] = block_of.try_emplace(std::move(canon), t.blocks.size());
        if (inserted) t.blocks.emplace_back();
        t.blocks[it->second].push_back(e.outcomes[x]);
    }
    return t;
}

namespace {

// Restricted growth strings: a[0] = 0, a[i] <= max(a[0..i-1]) + 1.
// Enumerates set partitions in lexicographic RGS order.
struct RgsEnumerator {
    std::vector<int> a;
    std::vector<int> maxima; // maxima[i] = max(a[0..i])

    explicit RgsEnumerator(std::size_t n) : a(n, 0), maxima(n, 0) {}

    bool next() {
        const std::size_t n = a.size();
        for (std::size_t i = n - 1; i > 0; --i) {
            if (a[i] <= maxima[i - 1]) {
                ++a[i];
                maxima[i] = std::max(maxima[i - 1], a[i]);
                for (std::size_t j = i + 1; j < n; ++j) {
                    a[j] = 0;
                    maxima[j] = maxima[j - 1];
                }
                return true;
            }
        }
        return false;
    }
};

} // namespace

namespace {

// Shared by both numeric paths: enumerate RGS, filter with `is_theta_free`,
// materialize survivors.
template <typename ThetaFree>
std::vector<StatisticPartition> collect_ancillaries(const Experiment& e, std::size_t n,
                                                    ThetaFree&& is_theta_free) {
    std::vector<StatisticPartition> found;
    RgsEnumerator rgs(n);
    while (rgs.next()) { // skips the initial all-zero string = one-block partition
        const int nblocks = rgs.maxima[n - 1] + 1;
        if (!is_theta_free(rgs.a, nblocks)) continue;
        StatisticPartition t;
        t.id = "anc" + std::to_string(found.size() + 1);
        t.blocks.resize(static_cast<std::size_t>(nblocks));
        for (std::size_t x = 0; x < n; ++x)
            t.blocks[static_cast<std::size_t>(rgs.a[x])].push_back(e.outcomes[x]);
        found.push_back(std::move(t));
    }
    return found;
}

} // namespace

std::vector<StatisticPartition> enumerate_ancillaries(const Experiment& e,
                                                      std::size_t max_outcomes) {
    const std::size_t n = e.outcomes.size();
    if (n > max_outcomes)
        fail(Errc::too_large, "experiment '" + e.id + "' has " + std::to_string(n) +
                                  " outcomes, enumeration cap is " + std::to_string(max_outcomes));

    // Common-denominator integer pmf so block sums are plain integer adds.
    mpz_class lcm = 1;
    for (const auto& row : e.pmf)
        for (const auto& q : row)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.den().get_mpz_t());
    const std::size_t np = e.params.size();

    if (lcm.fits_slong_p()) {
        // numerator sums are bounded by the common denominator, so they fit too
        std::vector<std::vector<long>> num(np, std::vector<long>(n));
        for (std::size_t p = 0; p < np; ++p)
            for (std::size_t x = 0; x < n; ++x)
                num[p][x] =
                    mpz_class(e.pmf[p][x].num() * (lcm / e.pmf[p][x].den())).get_si();
        return collect_ancillaries(e, n, [&](const std::vector<int>& a, int nblocks) {
            for (int b = 0; b < nblocks; ++b) {
                long first = 0;
                for (std::size_t x = 0; x < n; ++x)
                    if (a[x] == b) first += num[0][x];
                for (std::size_t p = 1; p < np; ++p) {
                    long sum = 0;
                    for (std::size_t x = 0; x < n; ++x)
                        if (a[x] == b) sum += num[p][x];
                    if (sum != first) return false;
                }
            }
            return true;
        });
    }

    std::vector<std::vector<mpz_class>> num(np, std::vector<mpz_class>(n));
    for (std::size_t p = 0; p < np; ++p)
        for (std::size_t x = 0; x < n; ++x)
            num[p][x] = e.pmf[p][x].num() * (lcm / e.pmf[p][x].den());
    std::vector<mpz_class> sums(np);
    return collect_ancillaries(e, n, [&](const std::vector<int>& a, int nblocks) {
        for (int b = 0; b < nblocks; ++b) {
            sums[0] = 0;
            for (std::size_t x = 0; x < n; ++x)
                if (a[x] == b) sums[0] += num[0][x];
            for (std::size_t p = 1; p < np; ++p) {
                sums[p] = 0;
                for (std::size_t x = 0; x < n; ++x)
                    if (a[x] == b) sums[p] += num[p][x];
                if (sums[p] != sums[0]) return false;
            }
        }
        return true;
    });
}

Experiment condition(const Experiment& e, const StatisticPartition& t, std::size_t block_index,
                     std::string result_id) {
    auto check = is_ancillary(e, t);
    if (!check.ancillary) {
        const auto& ce = *check.counterexample;
        fail(Errc::not_ancillary, "statistic '" + t.id + "' is not ancillary for '" + e.id +
                                      "': block " + std::to_string(ce.block) +
                                      " has probability " + ce.prob_a.str() + " under '" +
                                      ce.param_a + "' but " + ce.prob_b.str() + " under '" +
                                      ce.param_b + "'");
    }
    if (block_index >= t.blocks.size())
        fail(Errc::empty_block, "statistic '" + t.id + "' has no block " +
                                    std::to_string(block_index));
    const Rational& w = check.block_probs[block_index];
    if (w.is_zero())
        fail(Errc::empty_block, "block " + std::to_string(block_index) + " of '" + t.id +
                                    "' has probability 0");

    std::set<std::string_view> members(t.blocks[block_index].begin(),
                                       t.blocks[block_index].end());
    if (result_id.empty())
        result_id = e.id + "|" + t.id + "=" + std::to_string(block_index);

    std::vector<std::string> outcomes;
    std::vector<std::size_t> cols;
    for (std::size_t x = 0; x < e.outcomes.size(); ++x) {
        if (members.count(e.outcomes[x])) {
            outcomes.push_back(e.outcomes[x]);
            cols.push_back(x);
        }
    }
    std::vector<std::vector<Rational>> pmf(e.params.size());
    for (std::size_t p = 0; p < e.params.size(); ++p)
        for (std::size_t c : cols) pmf[p].push_back(e.pmf[p][c] / w);

    return validate_experiment(std::move(result_id), e.params, std::move(outcomes),
                               std::move(pmf));
}

} // namespace birnbaum
