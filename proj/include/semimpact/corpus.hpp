#pragma once
// Publication/triple data model, JSONL ingestion, and the seeded synthetic
// corpus generator used for desk-scale experiments.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semimpact/date.hpp"

namespace semimpact {

// Namespaced entity identifier, serialized as "ns:local".
struct EntityId {
    std::string ns;
    std::string id;

    std::string to_string() const { return ns + ":" + id; }

    // Splits on the first ':'. Both parts must be non-empty.
    static EntityId parse(const std::string& s);

    auto operator<=>(const EntityId&) const = default;
};

// Open vocabulary of type codes with one distinguished non-informative tag.
struct EntityType {
    std::string code;

    static constexpr const char* kNonInformative = "T0";
    static EntityType non_informative() { return EntityType{kNonInformative}; }
    bool is_non_informative() const { return code == kNonInformative; }

    auto operator<=>(const EntityType&) const = default;
};

struct Triple {
    EntityId subject;
    EntityType subject_type;
    std::string relation;  // may be empty (unlabeled)
    EntityId object;
    EntityType object_type;

    bool is_self_loop() const { return subject == object; }

    auto operator<=>(const Triple&) const = default;
};

struct Publication {
    std::string pub_id;
    Date posted_at;
    std::vector<Triple> triples;
    std::optional<std::string> doi;
};

struct CitationRecord {
    std::string pub_id;
    std::int64_t total_citations = 0;
    std::map<int, std::int64_t> citations_by_year;
    std::optional<std::string> journal;

    // Citations accumulated over the three calendar years following `posted`.
    std::int64_t three_year_sum(Date posted) const;
};

struct ShockConfig {
    Date start;
    int duration_months = 1;
    int n_shock_entities = 1;
    double intensity = 1.0;  // sampling-mass multiplier inside the window

    Date end_exclusive() const { return start.add_months_eom(duration_months - 1).add_days(1); }
    bool active(Date d) const { return d >= start && d < end_exclusive(); }
};

struct SynthConfig {
    int n_entities = 100;
    int n_publications = 100;
    Date start;
    Date end;
    double triples_per_pub_mean = 4.0;
    int triples_per_pub_min = 1;
    double preferential_attachment_weight = 1.0;
    double t0_fraction = 0.1;  // share of entities carrying the non-informative tag
    std::optional<ShockConfig> shock;
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

// Returns publications sorted by (posted_at, pub_id). Throws DataError with
// line numbers for malformed lines and duplicate pub_ids.
std::vector<Publication> load_corpus(const std::filesystem::path& path);

// Writes one canonical JSON object per line (field order fixed).
void save_corpus(const std::vector<Publication>& corpus, const std::filesystem::path& path);

// Keyed by pub_id; unmatched records are kept (the join happens downstream).
std::map<std::string, CitationRecord> load_citations(const std::filesystem::path& path);

void save_citations(const std::vector<CitationRecord>& records, const std::filesystem::path& path);

// Deterministic function of the config. Entity mentions are drawn with mass
// 1 + preferential_attachment_weight * (appearances so far); publications
// inside a configured shock window draw the designated shock entities with
// intensity-multiplied mass.
std::vector<Publication> generate_synthetic(const SynthConfig& cfg);

// Designated shock entities carry this local-id prefix (namespace "synth").
bool is_shock_entity(const EntityId& id);

}  // namespace semimpact
