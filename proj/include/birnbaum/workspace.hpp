#pragma once

#include "birnbaum/experiment.hpp"
#include "birnbaum/relations.hpp"
#include "birnbaum/statistics.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace birnbaum {

/// A named statistic bound to an experiment. Block ids name the partition
/// blocks on the command line.
struct WorkspaceStatistic {
    std::string id;
    std::string experiment_id;
    std::vector<std::string> block_ids;
    StatisticPartition partition; // partition.id == id

    friend bool operator==(const WorkspaceStatistic&, const WorkspaceStatistic&) = default;
};

struct UniverseDef {
    std::string id;
    std::vector<std::pair<std::string, std::string>> bases; // (experiment id, outcome)

    friend bool operator==(const UniverseDef&, const UniverseDef&) = default;
};

struct MixtureDef {
    std::string id;
    std::string first, second;
    Rational weight;

    friend bool operator==(const MixtureDef&, const MixtureDef&) = default;
};

/// Parsed and fully validated .bw file: experiments (including materialized
/// mixtures), statistics, and universes, with all cross-references resolved.
struct Workspace {
    std::vector<std::string> experiment_order; // declaration order, mixtures included
    std::map<std::string, ExperimentPtr> experiments;
    std::vector<MixtureDef> mixtures;
    std::vector<WorkspaceStatistic> statistics;
    std::vector<UniverseDef> universes;

    ExperimentPtr find_experiment(const std::string& id) const;
    const WorkspaceStatistic& find_statistic(const std::string& id) const;
    const UniverseDef& find_universe_def(const std::string& id) const;
    Universe build_universe(const std::string& id) const;
    InferenceBase resolve_base(const std::string& spec) const; // "<exp>:<outcome>"
};

bool workspace_equal(const Workspace& a, const Workspace& b);

Workspace parse_workspace_text(std::string_view text, const std::string& source_name = "<text>");
Workspace parse_workspace(const std::filesystem::path& path);

/// Canonical text form; parse(serialize(w)) reproduces w field-by-field.
std::string serialize_workspace(const Workspace& w);

} // namespace birnbaum
