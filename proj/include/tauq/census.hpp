#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tauq/quiver.hpp"
#include "tauq/representation.hpp"

namespace tauq {

struct CensusOptions {
    /// Maximum number of matrix tuples examined (after pivot reduction).
    std::uint64_t budget = 10000000;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct CensusResult {
    Field field;
    std::vector<int> dims;
    std::string pivot_arrow;           // empty when every arrow space is zero
    std::uint64_t pivot_classes = 0;   // pivot normal forms kept
    std::uint64_t candidates = 0;      // tuples examined
    std::uint64_t satisfying = 0;      // tuples satisfying the relations
    std::uint64_t bricks = 0;          // tuples that are bricks
    /// One brick per isomorphism class: the lexicographically least matrix
    /// tuple (arrows in id order, entries row-major, earlier entries more
    /// significant, residues 0..p-1).
    std::vector<Representation> classes;
};

/// Enumerates brick isomorphism classes of dimension vector d over F_p.
/// The first arrow with a nonzero matrix space is fixed to the least element
/// of its GL-orbit, which keeps every class and its least tuple. Throws
/// BudgetError when the reduced search space exceeds the budget and
/// PreconditionError for non-prime fields or bad dimension vectors.
CensusResult enumerate_bricks(const BoundQuiver& bq, const std::vector<int>& d, const Field& field,
                              const CensusOptions& options = {});

/// Ordered-tuple key of a representation over F_p, as used by the census.
std::vector<std::uint32_t> tuple_key(const Representation& m);

}  // namespace tauq
