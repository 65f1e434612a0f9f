#include "diskconn/connectivity.hpp"

namespace diskconn {

DiskConnectivity::DiskConnectivity(AwnnKind kind) : tree_(kind) {}

std::optional<InsertResult> DiskConnectivity::insert(Point center, double radius) {
    const Site s{next_id_, center, radius};
    if (!site_is_valid(s)) return std::nullopt;

    auto report = tree_.insert_site(s);
    if (!report) return std::nullopt;

    ++next_id_;
    ++insertions_;
    sites_.push_back(s);
    dsu_.make_set(s.id);
    // One union per swallowed component keeps the forest's set count equal to
    // the tree's live component count.
    for (SiteId representative : report->representatives) dsu_.unite(s.id, representative);
    return InsertResult{s.id, std::move(*report)};
}

std::optional<bool> DiskConnectivity::connected(SiteId a, SiteId b) {
    ++queries_;
    auto ra = dsu_.find(a);
    auto rb = dsu_.find(b);
    if (!ra || !rb) return std::nullopt;
    return *ra == *rb;
}

ConnectivityStats DiskConnectivity::stats() const {
    const TreeStats t = tree_.stats();
    ConnectivityStats s;
    s.insertions = insertions_;
    s.queries = queries_;
    s.awnn_inserts = t.awnn_inserts;
    s.awnn_deletes = t.awnn_deletes;
    s.awnn_queries = t.awnn_queries;
    s.sites_moved = t.sites_moved;
    s.expansions = t.expansions;
    s.height = tree_.height();
    return s;
}

}  // namespace diskconn
