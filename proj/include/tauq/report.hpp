#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tauq/algebra.hpp"
#include "tauq/census.hpp"
#include "tauq/classifier.hpp"
#include "tauq/representation.hpp"

namespace tauq {

inline constexpr int kReportSchema = 1;

struct PairCount {
    std::string source;
    std::string target;
    int count = 0;
};

struct NamedWitness {
    std::string f;
    std::string e;
    int layer = 0;
};

/// Analysis report. Optional sections are JSON objects so that the document
/// round-trips without loss; key order is fixed by the serializer.
struct Report {
    int schema = kReportSchema;
    std::string command;
    std::string input_digest;  // sha256 of the input bytes
    std::string field;
    std::vector<std::string> vertex_order;
    bool connected = true;
    std::vector<std::string> sources;
    std::vector<std::string> sinks;
    std::vector<std::string> nodes;
    int nilpotency_bound = 0;
    int dimension = 0;
    bool distributive = true;
    std::optional<NamedWitness> distributivity_witness;
    std::vector<PairCount> relation_counts;
    int relation_total = 0;
    std::optional<nlohmann::json> classification;
    std::optional<nlohmann::json> brick_family;
    std::optional<nlohmann::json> census;
    std::vector<Report> components;  // per component with --allow-disconnected
    std::vector<std::string> warnings;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string render_text(const Report& r);

std::string sha256_hex(std::string_view data);

/// build_algebra, find_nodes, is_distributive, minimal_relation_count.
Report analyze(const BoundQuiver& bq, std::string command = "analyze", std::string digest = "");

nlohmann::json classification_json(const BoundQuiver& bq, const ClassificationResult& r);
nlohmann::json brick_family_json(const BrickFamily& f);
nlohmann::json census_json(const CensusResult& c);
nlohmann::json representation_json(const Representation& m);

}  // namespace tauq
