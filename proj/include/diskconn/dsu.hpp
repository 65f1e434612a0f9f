#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "diskconn/geometry.hpp"

namespace diskconn {

// Disjoint-set forest over site ids: union by rank, full path compression.
// find() mutates (compression), so all operations require exclusive access.
class DsuForest {
public:
    // Rejects (returns false) if the id is already present.
    bool make_set(SiteId id);

    // Representative of id's set, or nothing for an unknown id.
    std::optional<SiteId> find(SiteId id);

    // Rejects (returns false) if either id is unknown. Uniting an element
    // with itself or its own set is a no-op.
    bool unite(SiteId a, SiteId b);

    bool contains(SiteId id) const { return nodes_.count(id) != 0; }
    std::size_t size() const { return nodes_.size(); }
    std::size_t set_count() const { return set_count_; }

    // Parent hops walked by find() so far; exposed for the amortized-cost
    // sanity checks.
    std::uint64_t find_calls() const { return find_calls_; }
    std::uint64_t find_steps() const { return find_steps_; }

private:
    struct Node {
        SiteId parent;
        std::uint8_t rank;
    };

    SiteId root_of(SiteId id);

    std::unordered_map<SiteId, Node> nodes_;
    std::size_t set_count_ = 0;
    std::uint64_t find_calls_ = 0;
    std::uint64_t find_steps_ = 0;
};

}  // namespace diskconn
