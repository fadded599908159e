#pragma once
// Per-publication entity graphs, non-informative-vertex excision, and the
// monthly snapshot series over a sliding window.

#include <filesystem>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "semimpact/corpus.hpp"
#include "semimpact/date.hpp"

namespace semimpact {

using EdgeKey = std::pair<EntityId, EntityId>;

struct PublicationGraph {
    std::string pub_id;
    Date posted_at;
    std::map<EntityId, EntityType> vertices;
    std::map<EdgeKey, double> edges;

    bool empty() const { return edges.empty(); }
    double edge_weight(const EdgeKey& e) const {
        auto it = edges.find(e);
        return it == edges.end() ? 0.0 : it->second;
    }
};

struct SnapshotVertex {
    EntityType type;
    Date first_seen;  // earliest contributing posting date

    auto operator<=>(const SnapshotVertex&) const = default;
};

// Reduced global entity graph at a month-end date.
struct Snapshot {
    Date as_of;
    int window_months = 120;
    std::map<EntityId, SnapshotVertex> vertices;
    std::map<EdgeKey, double> edges;
    std::map<EntityId, int> communities;
    std::map<int, int> community_sizes;

    // Publications with posted_at in (window_start_exclusive, as_of] contribute.
    Date window_start_exclusive() const { return as_of.add_months_eom(-window_months); }
    bool in_window(Date posted) const {
        return posted > window_start_exclusive() && posted <= as_of;
    }
    bool has_vertex(const EntityId& v) const { return vertices.count(v) > 0; }
    double edge_weight(const EdgeKey& e) const {
        auto it = edges.find(e);
        return it == edges.end() ? 0.0 : it->second;
    }
};

struct SnapshotSeries {
    std::vector<Snapshot> snapshots;  // strictly increasing month-end dates

    const Snapshot* at(Date as_of) const;
    const Snapshot& front() const { return snapshots.front(); }
    const Snapshot& back() const { return snapshots.back(); }
    bool empty() const { return snapshots.empty(); }
};

// One directed edge of weight 1 per distinct (subject, object) pair; relation
// labels are dropped.
PublicationGraph build_publication_graph(const Publication& pub);

// Removes all non-informative vertices. Every surviving ordered pair (a, b)
// connected in the input by a path whose interior vertices are all
// non-informative gains that path's series weight (sum of inverse edge
// weights, inverted); parallel contributions and pre-existing edges sum.
// Self-loops produced by the transform are discarded.
PublicationGraph excise_noninformative(const PublicationGraph& g);

// Union of excised publication graphs posted in the trailing window; parallel
// edges sum, first_seen is the earliest contributing posting date. Communities
// are left unassigned.
Snapshot build_snapshot(std::span<const Publication> corpus, Date as_of, int window_months = 120);

// Same union, over graphs excised once by the caller.
Snapshot build_snapshot_from_graphs(std::span<const PublicationGraph> excised, Date as_of,
                                    int window_months = 120);

// One snapshot per month-end in [start, end]. Communities are assigned by the
// caller (see communities.hpp).
SnapshotSeries build_series(std::span<const Publication> corpus, Date start, Date end,
                            int window_months = 120, int threads = 1);

std::vector<PublicationGraph> excise_corpus(std::span<const Publication> corpus, int threads = 1);

// Snapshot cache files (one JSON per month-end).
void save_snapshot(const Snapshot& snap, const std::filesystem::path& path);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace semimpact
