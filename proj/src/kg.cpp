#include "semimpact/kg.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>

#include <json.hpp>

#include "semimpact/errors.hpp"
#include "semimpact/parallel.hpp"

namespace semimpact {

using nlohmann::json;

const Snapshot* SnapshotSeries::at(Date as_of) const {
    auto it = std::lower_bound(snapshots.begin(), snapshots.end(), as_of,
                               [](const Snapshot& s, Date d) { return s.as_of < d; });
    if (it == snapshots.end() || it->as_of != as_of) return nullptr;
    return &*it;
}

PublicationGraph build_publication_graph(const Publication& pub) {
    PublicationGraph g;
    g.pub_id = pub.pub_id;
    g.posted_at = pub.posted_at;
    for (const auto& t : pub.triples) {
        g.vertices.emplace(t.subject, t.subject_type);
        g.vertices.emplace(t.object, t.object_type);
        g.edges[{t.subject, t.object}] = 1.0;  // duplicates collapse
    }
    return g;
}

PublicationGraph excise_noninformative(const PublicationGraph& g) {
    PublicationGraph out;
    out.pub_id = g.pub_id;
    out.posted_at = g.posted_at;

    auto informative = [&](const EntityId& v) {
        return !g.vertices.at(v).is_non_informative();
    };
    for (const auto& [v, type] : g.vertices) {
        if (!type.is_non_informative()) out.vertices.emplace(v, type);
    }

    // Sorted out-adjacency keeps path enumeration deterministic.
    std::map<EntityId, std::vector<std::pair<EntityId, double>>> adj;
    for (const auto& [e, w] : g.edges) adj[e.first].emplace_back(e.second, w);

    // Direct edges between surviving vertices carry over unchanged.
    for (const auto& [e, w] : g.edges) {
        if (informative(e.first) && informative(e.second)) out.edges[e] += w;
    }

    // Each path a -> (non-informative interior) -> b contributes the series
    // weight (sum of inverse edge weights, inverted); contributions to the
    // same pair sum. Interiors are simple (no repeated vertex).
    for (const auto& [a, type] : out.vertices) {
        auto it = adj.find(a);
        if (it == adj.end()) continue;
        std::set<EntityId> on_path;
        std::function<void(const EntityId&, double)> walk = [&](const EntityId& u,
                                                                double inv_sum) {
            on_path.insert(u);
            auto uit = adj.find(u);
            if (uit != adj.end()) {
                for (const auto& [y, w] : uit->second) {
                    double inv = inv_sum + 1.0 / w;
                    if (informative(y)) {
                        if (y != a) out.edges[{a, y}] += 1.0 / inv;  // drop produced self-loops
                    } else if (!on_path.count(y)) {
                        walk(y, inv);
                    }
                }
            }
            on_path.erase(u);
        };
        for (const auto& [u, w] : it->second) {
            if (!informative(u)) walk(u, 1.0 / w);
        }
    }
    return out;
}

Snapshot build_snapshot_from_graphs(std::span<const PublicationGraph> excised, Date as_of,
                                    int window_months) {
    if (!as_of.is_month_end()) {
        throw ConfigError("snapshot date " + as_of.to_string() + " is not a month-end");
    }
    Snapshot snap;
    snap.as_of = as_of;
    snap.window_months = window_months;
    for (const auto& g : excised) {
        if (!snap.in_window(g.posted_at)) continue;
        for (const auto& [v, type] : g.vertices) {
            auto [it, inserted] = snap.vertices.emplace(v, SnapshotVertex{type, g.posted_at});
            if (!inserted && g.posted_at < it->second.first_seen) {
                it->second.first_seen = g.posted_at;
            }
        }
        for (const auto& [e, w] : g.edges) snap.edges[e] += w;
    }
    return snap;
}

Snapshot build_snapshot(std::span<const Publication> corpus, Date as_of, int window_months) {
    std::vector<PublicationGraph> graphs;
    graphs.reserve(corpus.size());
    for (const auto& pub : corpus) {
        if (pub.posted_at > as_of) continue;
        graphs.push_back(excise_noninformative(build_publication_graph(pub)));
    }
    return build_snapshot_from_graphs(graphs, as_of, window_months);
}

std::vector<PublicationGraph> excise_corpus(std::span<const Publication> corpus, int threads) {
    std::vector<PublicationGraph> graphs(corpus.size());
    parallel_for(corpus.size(), threads, [&](std::size_t i) {
        graphs[i] = excise_noninformative(build_publication_graph(corpus[i]));
    });
    return graphs;
}

SnapshotSeries build_series(std::span<const Publication> corpus, Date start, Date end,
                            int window_months, int threads) {
    if (end < start) throw ConfigError("series end date before start date");
    std::vector<Date> month_ends;
    for (Date d = start.end_of_month(); d <= end; d = d.add_months_eom(1)) {
        month_ends.push_back(d);
    }
    auto graphs = excise_corpus(corpus, threads);

    SnapshotSeries series;
    series.snapshots.resize(month_ends.size());
    parallel_for(month_ends.size(), threads, [&](std::size_t i) {
        series.snapshots[i] = build_snapshot_from_graphs(graphs, month_ends[i], window_months);
    });
    return series;
}

void save_snapshot(const Snapshot& snap, const std::filesystem::path& path) {
    json j = json::object();
    j["as_of"] = snap.as_of.to_string();
    j["window_months"] = snap.window_months;
    json verts = json::array();
    for (const auto& [v, info] : snap.vertices) {
        verts.push_back({v.to_string(), info.type.code, info.first_seen.to_string()});
    }
    j["vertices"] = std::move(verts);
    json edges = json::array();
    for (const auto& [e, w] : snap.edges) {
        edges.push_back({e.first.to_string(), e.second.to_string(), w});
    }
    j["edges"] = std::move(edges);
    json comms = json::array();
    for (const auto& [v, label] : snap.communities) {
        comms.push_back({v.to_string(), label});
    }
    j["communities"] = std::move(comms);

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write snapshot file: " + path.string());
    out << j.dump() << "\n";
}

Snapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open snapshot file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DataError("snapshot file " + path.string() + ": " + e.what());
    }
    Snapshot snap;
    snap.as_of = Date::parse(j.at("as_of").get<std::string>());
    snap.window_months = j.at("window_months").get<int>();
    for (const auto& v : j.at("vertices")) {
        snap.vertices.emplace(EntityId::parse(v.at(0).get<std::string>()),
                              SnapshotVertex{EntityType{v.at(1).get<std::string>()},
                                             Date::parse(v.at(2).get<std::string>())});
    }
    for (const auto& e : j.at("edges")) {
        snap.edges[{EntityId::parse(e.at(0).get<std::string>()),
                    EntityId::parse(e.at(1).get<std::string>())}] = e.at(2).get<double>();
    }
    for (const auto& c : j.at("communities")) {
        snap.communities[EntityId::parse(c.at(0).get<std::string>())] = c.at(1).get<int>();
    }
    for (const auto& [v, label] : snap.communities) snap.community_sizes[label] += 1;
    return snap;
}

}  // namespace semimpact
