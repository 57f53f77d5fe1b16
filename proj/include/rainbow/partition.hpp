#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/regularity.hpp"

namespace rainbow {

/// A random partition of [universe] where element lands in part i with
/// probability p_i independently; unassigned (part -1) exactly when
/// sum p_i < 1. Reproducible from the recorded seed.
struct Partition {
    int universe = 0;
    std::vector<int> part_of; // element -> part index or -1
    std::vector<double> probs;
    std::uint64_t seed = 0;

    int parts() const { return static_cast<int>(probs.size()); }
    std::vector<long long> sizes() const;
    std::vector<std::vector<int>> groups() const;
};

Partition random_partition(int universe, const std::vector<double>& probs, std::uint64_t seed);

void write_partition(std::ostream& out, const Partition& p);
Partition read_partition(std::istream& in);

struct QrToSrReport {
    QuasirandomReport input_check;
    long long edges_removed = 0;
    bool cleaned_codegree_ok = false; // every surviving edge within the (d^2 +- zeta) n
                                      // codegree band and zeta-n mono-codegree cap
    int attempts = 0;
    bool sizes_ok = false;            // (A1)
    bool superregular_ok = false;     // (A2), sampled surrogate
    bool edge_codegree_ok = false;    // (A3)
    bool within_part_ok = false;      // (A4)
    std::vector<std::string> failures; // one entry per failed attempt
    bool passed = false;
};

struct QrToSrResult {
    EdgeColouredGraph graph; // cleaned quasirandom subgraph
    Partition partition;
    QrToSrReport report;
};

/// Cleans the graph, then resamples vertex partitions until the partition
/// conditions (A1)-(A4) hold. Throws NotQuasirandomError when the input
/// fails its quasirandomness check and RetriesExhaustedError (carrying the
/// failing condition) when no sample passes.
QrToSrResult qr_to_sr(const EdgeColouredGraph& g, const std::vector<double>& probs, double zeta,
                      double d, int max_retries, std::uint64_t seed);

struct PartitionEdgeStats {
    int parts = 0;
    std::vector<std::vector<long long>> counts; // [i][j]; [i][i] is e(G[V_i])
    long long unassigned_incident = 0;          // edges touching an unassigned vertex
    bool per_colour = false;
    std::vector<std::vector<std::vector<long long>>> colour_counts; // colour -> matrix

    long long cross(int i, int j) const { return counts[i][j]; }
    long long within(int i) const { return counts[i][i]; }
};

PartitionEdgeStats partition_edge_stats(const EdgeColouredGraph& g, const Partition& vp,
                                        bool per_colour = false);

struct ColourPartitionStats {
    long long count = 0;    // members entirely coloured inside I_j
    double prediction = 0;  // p_j^h |F|
    bool hypotheses_ok = true;
    std::string violation;
};

/// Counts members of a rainbow F-copy family (edge-id lists) whose colours
/// all fall in part j of a colour partition. Hypothesis violations (member
/// not rainbow, anchor set not independent) are reported, not fatal.
ColourPartitionStats colour_partition_stats(const EdgeColouredGraph& g,
                                            const std::vector<std::vector<int>>& family,
                                            const std::vector<int>& anchor_set,
                                            const Partition& colour_partition, int j);

} // namespace rainbow
