#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "diskconn/component_tree.hpp"
#include "diskconn/dsu.hpp"
#include "diskconn/geometry.hpp"

namespace diskconn {

struct InsertResult {
    SiteId id = 0;
    MergeReport report;
};

struct ConnectivityStats {
    std::uint64_t insertions = 0;
    std::uint64_t queries = 0;
    std::uint64_t awnn_inserts = 0;
    std::uint64_t awnn_deletes = 0;
    std::uint64_t awnn_queries = 0;
    std::uint64_t sites_moved = 0;
    std::uint64_t expansions = 0;
    unsigned height = 0;
};

// Insertion-only connectivity over disks in the plane. The component tree
// maintains the components and finds everything a new disk touches; the
// union-find forest carries the same partition so pair queries cost almost
// nothing. Single writer; connected() compresses paths, so it is a mutation
// too.
class DiskConnectivity {
public:
    explicit DiskConnectivity(AwnnKind kind = AwnnKind::scan);

    // Stores a new disk under the next free id. Rejects non-finite
    // coordinates and radii that are not strictly positive.
    std::optional<InsertResult> insert(Point center, double radius);

    // std::nullopt when either id is unknown.
    std::optional<bool> connected(SiteId a, SiteId b);

    std::size_t size() const { return sites_.size(); }
    std::size_t component_count() const { return dsu_.set_count(); }
    const std::vector<Site>& sites() const { return sites_; }
    const ComponentTree& tree() const { return tree_; }
    const DsuForest& dsu() const { return dsu_; }

    ConnectivityStats stats() const;

private:
    ComponentTree tree_;
    DsuForest dsu_;
    std::vector<Site> sites_;
    SiteId next_id_ = 0;
    std::uint64_t insertions_ = 0;
    std::uint64_t queries_ = 0;
};

}  // namespace diskconn
