#include "semimpact/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "semimpact/errors.hpp"
#include "semimpact/rng.hpp"

namespace semimpact {

using nlohmann::json;

EntityId EntityId::parse(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == s.size()) {
        throw DataError("entity id must be 'ns:local', got '" + s + "'");
    }
    return EntityId{s.substr(0, pos), s.substr(pos + 1)};
}

std::int64_t CitationRecord::three_year_sum(Date posted) const {
    std::int64_t sum = 0;
    for (int y = posted.year() + 1; y <= posted.year() + 3; ++y) {
        auto it = citations_by_year.find(y);
        if (it != citations_by_year.end()) sum += it->second;
    }
    return sum;
}

void SynthConfig::validate() const {
    if (n_entities <= 0) throw ConfigError("synth: n_entities must be positive");
    if (n_publications <= 0) throw ConfigError("synth: n_publications must be positive");
    if (end < start) throw ConfigError("synth: end date before start date");
    if (triples_per_pub_min < 0) throw ConfigError("synth: triples_per_pub_min must be >= 0");
    if (triples_per_pub_mean < triples_per_pub_min) {
        throw ConfigError("synth: triples_per_pub_mean below triples_per_pub_min");
    }
    if (t0_fraction < 0.0 || t0_fraction >= 1.0) {
        throw ConfigError("synth: t0_fraction must be in [0, 1)");
    }
    if (shock) {
        if (shock->duration_months <= 0 || shock->n_shock_entities <= 0 || shock->intensity <= 0) {
            throw ConfigError("synth: shock parameters must be positive");
        }
        if (shock->start < start || shock->start > end) {
            throw ConfigError("synth: shock window must lie inside the corpus date range");
        }
        if (shock->n_shock_entities >= n_entities) {
            throw ConfigError("synth: n_shock_entities must be smaller than n_entities");
        }
    }
}

namespace {

Triple parse_triple(const json& jt) {
    return Triple{
        EntityId::parse(jt.at("s").get<std::string>()),
        EntityType{jt.at("st").get<std::string>()},
        jt.at("r").get<std::string>(),
        EntityId::parse(jt.at("o").get<std::string>()),
        EntityType{jt.at("ot").get<std::string>()},
    };
}

json triple_to_json(const Triple& t) {
    json jt = json::object();
    jt["s"] = t.subject.to_string();
    jt["st"] = t.subject_type.code;
    jt["r"] = t.relation;
    jt["o"] = t.object.to_string();
    jt["ot"] = t.object_type.code;
    return jt;
}

}  // namespace

std::vector<Publication> load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file: " + path.string());

    std::vector<Publication> corpus;
    std::unordered_map<std::string, int> first_line;  // pub_id -> line number
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Publication pub;
        try {
            json j = json::parse(line);
            pub.pub_id = j.at("pub_id").get<std::string>();
            pub.posted_at = Date::parse(j.at("posted_at").get<std::string>());
            if (j.contains("doi") && !j.at("doi").is_null()) {
                pub.doi = j.at("doi").get<std::string>();
            }
            for (const auto& jt : j.at("triples")) pub.triples.push_back(parse_triple(jt));
        } catch (const DataError&) {
            throw;
        } catch (const std::exception& e) {
            throw DataError("corpus line " + std::to_string(line_no) + ": " + e.what());
        }
        auto [it, inserted] = first_line.emplace(pub.pub_id, line_no);
        if (!inserted) {
            throw DataError("duplicate pub_id '" + pub.pub_id + "' on lines " +
                            std::to_string(it->second) + " and " + std::to_string(line_no));
        }
        corpus.push_back(std::move(pub));
    }
    std::stable_sort(corpus.begin(), corpus.end(), [](const Publication& a, const Publication& b) {
        return std::tie(a.posted_at, a.pub_id) < std::tie(b.posted_at, b.pub_id);
    });
    return corpus;
}

void save_corpus(const std::vector<Publication>& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write corpus file: " + path.string());
    for (const auto& pub : corpus) {
        json j = json::object();
        j["pub_id"] = pub.pub_id;
        j["posted_at"] = pub.posted_at.to_string();
        j["doi"] = pub.doi ? json(*pub.doi) : json(nullptr);
        json jts = json::array();
        for (const auto& t : pub.triples) jts.push_back(triple_to_json(t));
        j["triples"] = std::move(jts);
        out << j.dump() << "\n";
    }
}

std::map<std::string, CitationRecord> load_citations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open citations file: " + path.string());

    std::map<std::string, CitationRecord> result;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        CitationRecord rec;
        try {
            json j = json::parse(line);
            rec.pub_id = j.at("pub_id").get<std::string>();
            rec.total_citations = j.at("total_citations").get<std::int64_t>();
            if (j.contains("citations_by_year") && !j.at("citations_by_year").is_null()) {
                for (const auto& [year_str, count] : j.at("citations_by_year").items()) {
                    rec.citations_by_year[std::stoi(year_str)] = count.get<std::int64_t>();
                }
            }
            if (j.contains("journal") && !j.at("journal").is_null()) {
                rec.journal = j.at("journal").get<std::string>();
            }
        } catch (const std::exception& e) {
            throw DataError("citations line " + std::to_string(line_no) + ": " + e.what());
        }
        if (rec.total_citations < 0) {
            throw DataError("citations line " + std::to_string(line_no) +
                            ": negative total_citations");
        }
        for (const auto& [year, count] : rec.citations_by_year) {
            if (count < 0) {
                throw DataError("citations line " + std::to_string(line_no) +
                                ": negative count for year " + std::to_string(year));
            }
        }
        result[rec.pub_id] = std::move(rec);
    }
    return result;
}

void save_citations(const std::vector<CitationRecord>& records,
                    const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write citations file: " + path.string());
    for (const auto& rec : records) {
        json j = json::object();
        j["pub_id"] = rec.pub_id;
        j["total_citations"] = rec.total_citations;
        json by_year = json::object();
        for (const auto& [year, count] : rec.citations_by_year) {
            by_year[std::to_string(year)] = count;
        }
        j["citations_by_year"] = std::move(by_year);
        j["journal"] = rec.journal ? json(*rec.journal) : json(nullptr);
        out << j.dump() << "\n";
    }
}

bool is_shock_entity(const EntityId& id) {
    return id.ns == "synth" && id.id.rfind("shock", 0) == 0;
}

namespace {

// Prefix-sum tree over per-entity sampling masses: O(log n) update and
// weighted draw.
class MassTree {
public:
    explicit MassTree(std::size_t n) : n_(n), tree_(n + 1, 0.0) {}

    void add(std::size_t i, double delta) {
        for (std::size_t k = i + 1; k <= n_; k += k & (~k + 1)) tree_[k] += delta;
    }

    double total() const {
        double sum = 0.0;
        for (std::size_t k = n_; k > 0; k -= k & (~k + 1)) sum += tree_[k];
        return sum;
    }

    // Smallest index whose cumulative mass exceeds `target`.
    std::size_t find(double target) const {
        std::size_t pos = 0;
        std::size_t step = 1;
        while ((step << 1) <= n_) step <<= 1;
        for (; step > 0; step >>= 1) {
            std::size_t next = pos + step;
            if (next <= n_ && tree_[next] < target) {
                target -= tree_[next];
                pos = next;
            }
        }
        return pos < n_ ? pos : n_ - 1;
    }

private:
    std::size_t n_;
    std::vector<double> tree_;
};

}  // namespace

std::vector<Publication> generate_synthetic(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    const int n = cfg.n_entities;
    const int n_t0 = static_cast<int>(std::lround(cfg.t0_fraction * n));
    const int n_shock = cfg.shock ? cfg.shock->n_shock_entities : 0;

    // Entity table: [0, n_t0) non-informative, [n - n_shock, n) shock-tagged.
    std::vector<EntityId> ids(n);
    std::vector<EntityType> types(n);
    static const char* kTypeCodes[] = {"E1", "E2", "E3"};
    for (int i = 0; i < n; ++i) {
        char buf[32];
        if (i < n_t0) {
            std::snprintf(buf, sizeof(buf), "h%04d", i);
            types[i] = EntityType::non_informative();
        } else if (i >= n - n_shock) {
            std::snprintf(buf, sizeof(buf), "shock%02d", i - (n - n_shock));
            types[i] = EntityType{kTypeCodes[i % 3]};
        } else {
            std::snprintf(buf, sizeof(buf), "e%04d", i);
            types[i] = EntityType{kTypeCodes[i % 3]};
        }
        ids[i] = EntityId{"synth", buf};
    }

    // Posting dates: uniform over the corpus range, then sorted so the
    // preferential-attachment state evolves in calendar order.
    const int span_days = cfg.end - cfg.start + 1;
    std::vector<Date> dates(cfg.n_publications, cfg.start);
    for (auto& d : dates) {
        d = cfg.start.add_days(static_cast<int>(rng.uniform_index(span_days)));
    }
    std::sort(dates.begin(), dates.end());

    std::vector<double> counts(n, 0.0);  // endpoint appearances so far
    auto base_mass = [&](int i) { return 1.0 + cfg.preferential_attachment_weight * counts[i]; };
    auto multiplier = [&](int i, bool in_shock) {
        return (in_shock && i >= n - n_shock) ? cfg.shock->intensity : 1.0;
    };

    MassTree tree(n);
    bool tree_in_shock = false;
    for (int i = 0; i < n; ++i) tree.add(i, base_mass(i));

    auto rebuild_tree = [&](bool in_shock) {
        tree = MassTree(n);
        for (int i = 0; i < n; ++i) tree.add(i, base_mass(i) * multiplier(i, in_shock));
        tree_in_shock = in_shock;
    };

    static const int kRelationVocab = 5;
    std::vector<Publication> corpus;
    corpus.reserve(cfg.n_publications);
    for (int p = 0; p < cfg.n_publications; ++p) {
        const Date posted = dates[p];
        const bool in_shock = cfg.shock && cfg.shock->active(posted);
        if (in_shock != tree_in_shock) rebuild_tree(in_shock);

        char idbuf[24];
        std::snprintf(idbuf, sizeof(idbuf), "p%06d", p);
        Publication pub;
        pub.pub_id = idbuf;
        pub.posted_at = posted;

        double extra = cfg.triples_per_pub_mean - cfg.triples_per_pub_min;
        int n_triples = cfg.triples_per_pub_min + rng.poisson(extra);
        for (int t = 0; t < n_triples; ++t) {
            auto draw = [&]() { return static_cast<int>(tree.find(rng.uniform() * tree.total())); };
            int s = draw();
            int o = draw();
            for (int attempt = 0; o == s && attempt < 10; ++attempt) o = draw();
            char rel[8];
            std::snprintf(rel, sizeof(rel), "r%d", static_cast<int>(rng.uniform_index(kRelationVocab)));
            pub.triples.push_back(Triple{ids[s], types[s], rel, ids[o], types[o]});
            for (int i : {s, o}) {
                counts[i] += 1.0;
                tree.add(i, cfg.preferential_attachment_weight * multiplier(i, in_shock));
            }
        }
        corpus.push_back(std::move(pub));
    }
    return corpus;
}

}  // namespace semimpact
