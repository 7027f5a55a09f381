#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tauq/algebra.hpp"
#include "tauq/quiver.hpp"
#include "tauq/representation.hpp"
#include "tauq/structure.hpp"

namespace tauq {

enum class Family { A, B, C, D, E, GluedOf, AcyclicAtilde, Barbell, Unrecognized };
std::string to_string(Family f);

/// "A(1,1)", "GluedOf(C(2))", "AcyclicAtilde(3)", "Barbell", "Unrecognized".
struct FamilyTag {
    Family family = Family::Unrecognized;
    Family base = Family::Unrecognized;  // the glued family for GluedOf
    std::vector<int> parameters;
    std::string name() const;
};

enum class CertificateKind { None, NodeList, ThreeRelations, SinkOrSource, BrickFamilyWitness, QuotientWitness };
std::string to_string(CertificateKind k);

struct Certificates {
    CertificateKind primary = CertificateKind::None;
    std::vector<std::string> sources;
    std::vector<std::string> sinks;
    std::vector<std::string> nodes;
    int relation_count = 0;                       // |R|
    std::vector<std::string> minimal_relations;   // minimized generating set used below
    /// Some minimized generator is a monomial of length >= 3; evaluated on
    /// the generating set computed here, which need not be canonical.
    bool non_quadratic_monomial = false;
    std::string monomial_caveat;
    /// (source or sink) <=> tau-infinite; (node or |R| = 3) <=> finite;
    /// (node or non-quadratic monomial) <=> finite.
    bool sink_source_consistent = true;
    bool node_or_three_consistent = true;
    bool node_or_monomial_consistent = true;
};

struct ProbeWitness {
    std::vector<std::string> killed_arrows;  // empty: the algebra itself
    std::vector<std::string> component;      // vertices of the witnessing component
    FamilyTag family;
};

struct BiserialReport {
    bool special_biserial = false;
    bool gentle = false;
    bool at_most_two_relations = false;  // |R| <= 2
};

struct ClassificationResult {
    FamilyTag family;
    FamilyTag core;  // for GluedOf: the node-free family; otherwise equal to family
    std::vector<ResolutionStep> resolution_log;
    /// canonical model id -> input id, for vertices and arrows of the core
    std::map<std::string, std::string> vertex_map;
    std::map<std::string, std::string> arrow_map;
    Tri tau = Tri::Unknown;  // True = tau-tilting infinite
    Certificates certificates;
    Tri preprojective = Tri::Unknown;
    std::optional<BrickFamily> witness;
    std::optional<ProbeWitness> probe;
    std::optional<BiserialReport> biserial;
    std::vector<std::string> notes;
};

/// Resolves all nodes, then matches the node-free core against the canonical
/// families up to bound-quiver isomorphism with relation rescaling.
ClassificationResult match_family(const BoundQuiver& bq);

/// Matches a single node-free bound quiver; no resolution.
std::optional<ClassificationResult> match_core(const BoundQuiver& bq);

/// Special biserial: at most two arrows in and out per vertex; for each arrow
/// b at most one a with b.a not in I and at most one c with c.b not in I.
bool is_special_biserial(const AlgebraBasis& ab);
/// Special biserial, I generated by length-2 paths, and for each arrow b at
/// most one a with b.a in I and at most one c with c.b in I.
bool is_gentle(const AlgebraBasis& ab);

/// Acyclic Atilde_m or barbell recognition. Throws PreconditionError when bq
/// is not special biserial.
ClassificationResult classify_biserial(const BoundQuiver& bq);

Tri preprojective_flag(const ClassificationResult& r);

/// Searches quotients by arrow subsets of size <= budget, smallest first then
/// lexicographic, for a component recognised as tau-infinite.
std::optional<ProbeWitness> sufficient_tau_infinite_probe(const BoundQuiver& bq, int budget);

struct DecideOptions {
    int probe_budget = 0;  // < 0 disables the probe
    std::optional<Field> witness_field;
    int witness_count = 0;  // 0: one member per field element
};

/// Full classification with verdict, certificates and optional witnesses.
ClassificationResult decide_tau(const BoundQuiver& bq, const DecideOptions& options = {});

}  // namespace tauq
