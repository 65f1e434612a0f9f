#include "diskconn/dsu.hpp"

namespace diskconn {

bool DsuForest::make_set(SiteId id) {
    if (nodes_.count(id)) return false;
    nodes_.emplace(id, Node{id, 0});
    ++set_count_;
    return true;
}

SiteId DsuForest::root_of(SiteId id) {
    ++find_calls_;
    SiteId root = id;
    while (true) {
        const SiteId parent = nodes_[root].parent;
        if (parent == root) break;
        root = parent;
        ++find_steps_;
    }
    // Full compression: repoint everything on the walked path at the root.
    while (id != root) {
        SiteId& parent = nodes_[id].parent;
        const SiteId next = parent;
        parent = root;
        id = next;
    }
    return root;
}

std::optional<SiteId> DsuForest::find(SiteId id) {
    if (!nodes_.count(id)) return std::nullopt;
    return root_of(id);
}

bool DsuForest::unite(SiteId a, SiteId b) {
    if (!nodes_.count(a) || !nodes_.count(b)) return false;
    SiteId ra = root_of(a);
    SiteId rb = root_of(b);
    if (ra == rb) return true;
    Node& na = nodes_[ra];
    Node& nb = nodes_[rb];
    if (na.rank < nb.rank) std::swap(ra, rb);
    nodes_[rb].parent = ra;
    if (na.rank == nb.rank) ++nodes_[ra].rank;
    --set_count_;
    return true;
}

}  // namespace diskconn
