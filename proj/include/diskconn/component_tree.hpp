#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "diskconn/awnn.hpp"
#include "diskconn/geometry.hpp"

namespace diskconn {

// Heap-style node index: root 0, children of i are 2i+1 and 2i+2. Expanding
// the tree re-roots it, so node ids are only stable between expansions.
using NodeId = std::uint32_t;

// Observable outcome of one site insertion.
struct MergeReport {
    SiteId inserted = 0;
    std::vector<NodeId> intersected_components;  // leaf ids, ascending
    std::vector<SiteId> representatives;         // one pre-merge member per intersected leaf
    NodeId target_leaf = 0;
    std::size_t sites_moved = 0;
    bool expanded = false;
};

struct TreeStats {
    std::uint64_t awnn_inserts = 0;
    std::uint64_t awnn_deletes = 0;
    std::uint64_t awnn_queries = 0;
    std::uint64_t sites_moved = 0;
    std::uint64_t expansions = 0;
};

enum class AuditKind {
    site_placement,        // a site not in exactly one leaf, or site table drift
    leaf_connectivity,     // a stored component is not connected
    cross_leaf_adjacency,  // an edge between two different leaves' components
    awnn_contents,         // a node's AWNN disagrees with its subtree's leaves
    queue_state,           // queue differs from the set of empty leaves
    tree_shape,            // not a complete binary tree of the stated height
};

struct AuditViolation {
    AuditKind kind;
    std::string detail;
};

std::string_view audit_kind_name(AuditKind kind);

// Component tree over the current connected components of a disk graph:
// a complete binary tree whose leaves hold the components, where every node
// keeps an AWNN over all sites below it (weight = -radius), plus the FIFO
// queue of empty leaves. Single writer; find_intersected_components is safe
// to share only while no mutation is in flight.
class ComponentTree {
public:
    explicit ComponentTree(AwnnKind kind = AwnnKind::scan);

    unsigned height() const { return height_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t leaf_count() const { return components_.size(); }
    std::size_t site_count() const { return sites_.size(); }
    AwnnKind awnn_kind() const { return kind_; }

    bool is_leaf(NodeId id) const { return id >= first_leaf_; }
    NodeId leaf_node(std::size_t leaf_number) const { return first_leaf_ + static_cast<NodeId>(leaf_number); }

    std::span<const SiteId> leaf_component(NodeId leaf) const;
    std::size_t empty_leaf_count() const { return queue_.size(); }
    std::vector<NodeId> empty_leaves() const;  // in queue (FIFO) order

    bool contains(SiteId id) const { return sites_.count(id) != 0; }
    std::optional<Site> site(SiteId id) const;
    std::optional<NodeId> site_leaf(SiteId id) const;
    std::uint32_t site_move_count(SiteId id) const;

    // Doubles the tree: the old tree becomes one child of a new root, the
    // other child is an empty subtree of equal size. Rejects (returns false)
    // while empty leaves remain.
    bool expand_tree();

    // Places a connected component that intersects nothing already stored
    // into the first empty leaf, expanding first if none is free. The caller
    // guarantees isolation and connectedness; audit() detects breaches after
    // the fact. Rejects on an empty set or a duplicate id.
    std::optional<NodeId> insert_isolated_component(std::span<const Site> component);

    // Leaf ids of all components whose disks intersect D_s, ascending.
    std::vector<NodeId> find_intersected_components(const Site& s) const;

    // Full insertion: find intersected components; either start a new
    // singleton component or extend the largest one found (ties to the
    // smallest leaf index) and fold the others into it. Rejects duplicates.
    std::optional<MergeReport> insert_site(const Site& s);

    NodeId lca(NodeId a, NodeId b) const;

    // Checks Invariants 1 and 2, queue exactness, component connectedness,
    // cross-component non-adjacency, and tree shape against the given site
    // universe. Violations are data, not errors.
    std::vector<AuditViolation> audit(std::span<const Site> universe) const;

    TreeStats stats() const;

    const Awnn& awnn_at(NodeId id) const { return *nodes_[id]; }
    Awnn& awnn_at(NodeId id) { return *nodes_[id]; }  // inspection/fault-injection hook

private:
    struct StoredSite {
        Site site;
        std::uint32_t leaf_number;
        std::uint32_t moves;
    };

    static NodeId parent_of(NodeId id) { return (id - 1) / 2; }
    std::uint32_t leaf_number_of(NodeId leaf) const { return leaf - first_leaf_; }
    std::optional<AwnnResult> query_node(NodeId id, Point q) const;
    void collect_intersected(NodeId id, const Site& s, std::vector<NodeId>& out) const;
    void insert_on_path(const Site& s, NodeId leaf);
    void move_component(NodeId from_leaf, NodeId to_leaf);

    AwnnKind kind_;
    unsigned height_ = 0;
    NodeId first_leaf_ = 0;
    std::vector<std::unique_ptr<Awnn>> nodes_;      // 2^(height+1) - 1 slots
    std::vector<std::vector<SiteId>> components_;   // by leaf number
    std::deque<std::uint32_t> queue_;               // empty leaf numbers, FIFO
    std::unordered_map<SiteId, StoredSite> sites_;

    std::uint64_t awnn_inserts_ = 0;
    std::uint64_t awnn_deletes_ = 0;
    mutable std::atomic<std::uint64_t> awnn_queries_{0};
    std::uint64_t sites_moved_ = 0;
    std::uint64_t expansions_ = 0;
};

}  // namespace diskconn
