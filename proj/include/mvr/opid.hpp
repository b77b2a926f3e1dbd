/// @file opid.hpp
/// @brief Operation identifiers: replica ids and Lamport-clock OpIds.

#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace mvr {

/// Unique identifier of a replica. Ordered by lexicographic byte comparison.
struct ReplicaId {
    std::string id;

    auto operator<=>(const ReplicaId&) const = default;
};

/// Globally unique logical timestamp of an operation.
///
/// OpIds impose a total order over all operations: the Lamport counter is
/// compared first, and equal counters are broken by the replica id, the
/// lexicographically greater byte-string ranking higher. This order is a
/// linear extension of the happens-before relation, since every operation's
/// counter strictly exceeds the counters of its causal predecessors.
struct OpId {
    std::uint64_t counter = 0;  ///< Lamport counter.
    ReplicaId replica;          ///< Originating replica.

    auto operator<=>(const OpId&) const = default;
};

/// Total order on OpIds: counter first, then replica id bytes.
inline std::strong_ordering compare_opids(const OpId& a, const OpId& b) {
    return a <=> b;
}

inline std::string to_string(const OpId& id) {
    return "(" + std::to_string(id.counter) + "," + id.replica.id + ")";
}

}  // namespace mvr
