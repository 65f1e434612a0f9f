#include "diskconn/component_tree.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <unordered_set>

namespace diskconn {

namespace {

unsigned depth_of(NodeId id) {
    return static_cast<unsigned>(std::bit_width(static_cast<std::uint32_t>(id) + 1u)) - 1u;
}

std::string describe_site(SiteId id) {
    return "site " + std::to_string(id);
}

}  // namespace

std::string_view audit_kind_name(AuditKind kind) {
    switch (kind) {
        case AuditKind::site_placement: return "site_placement";
        case AuditKind::leaf_connectivity: return "leaf_connectivity";
        case AuditKind::cross_leaf_adjacency: return "cross_leaf_adjacency";
        case AuditKind::awnn_contents: return "awnn_contents";
        case AuditKind::queue_state: return "queue_state";
        case AuditKind::tree_shape: return "tree_shape";
    }
    return "unknown";
}

ComponentTree::ComponentTree(AwnnKind kind) : kind_(kind) {
    nodes_.push_back(make_awnn(kind_));
    components_.emplace_back();
    queue_.push_back(0);
}

std::span<const SiteId> ComponentTree::leaf_component(NodeId leaf) const {
    return components_[leaf_number_of(leaf)];
}

std::vector<NodeId> ComponentTree::empty_leaves() const {
    std::vector<NodeId> out;
    out.reserve(queue_.size());
    for (std::uint32_t leaf_number : queue_) out.push_back(leaf_node(leaf_number));
    return out;
}

std::optional<Site> ComponentTree::site(SiteId id) const {
    auto it = sites_.find(id);
    if (it == sites_.end()) return std::nullopt;
    return it->second.site;
}

std::optional<NodeId> ComponentTree::site_leaf(SiteId id) const {
    auto it = sites_.find(id);
    if (it == sites_.end()) return std::nullopt;
    return leaf_node(it->second.leaf_number);
}

std::uint32_t ComponentTree::site_move_count(SiteId id) const {
    auto it = sites_.find(id);
    return it == sites_.end() ? 0 : it->second.moves;
}

bool ComponentTree::expand_tree() {
    if (!queue_.empty()) return false;

    const std::size_t old_node_count = nodes_.size();
    const std::size_t old_leaf_count = components_.size();
    std::vector<std::unique_ptr<Awnn>> grown(2 * old_node_count + 1);
    // The old tree becomes the left child of the new root: node i at depth d
    // moves to i + 2^d, which keeps leaf numbers stable.
    for (std::size_t i = 0; i < old_node_count; ++i)
        grown[i + (std::size_t{1} << depth_of(static_cast<NodeId>(i)))] = std::move(nodes_[i]);
    for (auto& slot : grown)
        if (!slot) slot = make_awnn(kind_);
    nodes_ = std::move(grown);

    ++height_;
    first_leaf_ = static_cast<NodeId>(nodes_.size() / 2);
    components_.resize(2 * old_leaf_count);
    for (std::size_t leaf_number = old_leaf_count; leaf_number < components_.size(); ++leaf_number)
        queue_.push_back(static_cast<std::uint32_t>(leaf_number));

    // The new root starts from a fresh structure holding a copy of the old
    // root's entries; the copies count as insertions.
    for (const AwnnEntry& e : nodes_[1]->entries()) {
        nodes_[0]->insert(e);
        ++awnn_inserts_;
    }
    ++expansions_;
    return true;
}

std::optional<AwnnResult> ComponentTree::query_node(NodeId id, Point q) const {
    awnn_queries_.fetch_add(1, std::memory_order_relaxed);
    return nodes_[id]->nearest(q);
}

void ComponentTree::insert_on_path(const Site& s, NodeId leaf) {
    const AwnnEntry entry{s.id, s.center, -s.radius};
    NodeId node = leaf;
    while (true) {
        nodes_[node]->insert(entry);
        ++awnn_inserts_;
        if (node == 0) break;
        node = parent_of(node);
    }
}

std::optional<NodeId> ComponentTree::insert_isolated_component(std::span<const Site> component) {
    if (component.empty()) return std::nullopt;
    std::unordered_set<SiteId> fresh;
    for (const Site& s : component) {
        if (sites_.count(s.id) || !fresh.insert(s.id).second) return std::nullopt;
    }

    if (queue_.empty()) expand_tree();
    const std::uint32_t leaf_number = queue_.front();
    queue_.pop_front();
    const NodeId leaf = leaf_node(leaf_number);

    for (const Site& s : component) {
        components_[leaf_number].push_back(s.id);
        sites_.emplace(s.id, StoredSite{s, leaf_number, 0});
        insert_on_path(s, leaf);
    }
    return leaf;
}

std::vector<NodeId> ComponentTree::find_intersected_components(const Site& s) const {
    std::vector<NodeId> out;
    auto hit = query_node(0, s.center);
    if (!hit || hit->value > s.radius) return out;
    collect_intersected(0, s, out);
    return out;
}

void ComponentTree::collect_intersected(NodeId id, const Site& s, std::vector<NodeId>& out) const {
    if (is_leaf(id)) {
        out.push_back(id);
        return;
    }
    for (NodeId child : {static_cast<NodeId>(2 * id + 1), static_cast<NodeId>(2 * id + 2)}) {
        auto hit = query_node(child, s.center);
        if (hit && hit->value <= s.radius) collect_intersected(child, s, out);
    }
}

std::optional<MergeReport> ComponentTree::insert_site(const Site& s) {
    if (sites_.count(s.id)) return std::nullopt;

    MergeReport report;
    report.inserted = s.id;

    std::vector<NodeId> hits = find_intersected_components(s);
    if (hits.empty()) {
        const bool will_expand = queue_.empty();
        auto leaf = insert_isolated_component(std::span<const Site>(&s, 1));
        assert(leaf.has_value());
        report.target_leaf = *leaf;
        report.expanded = will_expand;
        return report;
    }

    // Largest intersected component wins; hits are ascending, so the scan
    // keeps the smallest leaf index among size ties.
    NodeId target = hits.front();
    std::size_t target_size = components_[leaf_number_of(target)].size();
    for (std::size_t i = 1; i < hits.size(); ++i) {
        const std::size_t size = components_[leaf_number_of(hits[i])].size();
        if (size > target_size) {
            target = hits[i];
            target_size = size;
        }
    }
    report.intersected_components = hits;
    report.target_leaf = target;
    for (NodeId leaf : hits)
        report.representatives.push_back(components_[leaf_number_of(leaf)].front());

    const std::uint32_t target_number = leaf_number_of(target);
    components_[target_number].push_back(s.id);
    sites_.emplace(s.id, StoredSite{s, target_number, 0});
    insert_on_path(s, target);

    // Clean-up: fold every other intersected component into the target.
    for (NodeId leaf : hits) {
        if (leaf == target) continue;
        report.sites_moved += components_[leaf_number_of(leaf)].size();
        move_component(leaf, target);
        queue_.push_back(leaf_number_of(leaf));
    }
    return report;
}

void ComponentTree::move_component(NodeId from_leaf, NodeId to_leaf) {
    const NodeId stop = lca(from_leaf, to_leaf);
    std::vector<SiteId>& from = components_[leaf_number_of(from_leaf)];
    std::vector<SiteId>& to = components_[leaf_number_of(to_leaf)];

    // Sites stay registered in the lca and above throughout; only the two
    // half-open paths below it change.
    for (NodeId node = from_leaf; node != stop; node = parent_of(node)) {
        for (SiteId id : from) {
            nodes_[node]->erase(id);
            ++awnn_deletes_;
        }
    }
    for (NodeId node = to_leaf; node != stop; node = parent_of(node)) {
        for (SiteId id : from) {
            StoredSite& stored = sites_.at(id);
            nodes_[node]->insert(AwnnEntry{id, stored.site.center, -stored.site.radius});
            ++awnn_inserts_;
        }
    }
    for (SiteId id : from) {
        StoredSite& stored = sites_.at(id);
        stored.leaf_number = leaf_number_of(to_leaf);
        ++stored.moves;
        ++sites_moved_;
        to.push_back(id);
    }
    from.clear();
}

NodeId ComponentTree::lca(NodeId a, NodeId b) const {
    while (a != b) {
        if (a > b)
            a = parent_of(a);
        else
            b = parent_of(b);
    }
    return a;
}

std::vector<AuditViolation> ComponentTree::audit(std::span<const Site> universe) const {
    std::vector<AuditViolation> out;
    auto report = [&out](AuditKind kind, std::string detail) {
        out.push_back(AuditViolation{kind, std::move(detail)});
    };

    // (f) complete tree of the stated height.
    const std::size_t expected_nodes = (std::size_t{2} << height_) - 1;
    if (nodes_.size() != expected_nodes)
        report(AuditKind::tree_shape, "node count " + std::to_string(nodes_.size()) +
                                          " for height " + std::to_string(height_));
    if (components_.size() != (std::size_t{1} << height_))
        report(AuditKind::tree_shape, "leaf count " + std::to_string(components_.size()) +
                                          " for height " + std::to_string(height_));
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (!nodes_[i]) report(AuditKind::tree_shape, "missing awnn at node " + std::to_string(i));
    if (!out.empty()) return out;  // shape violations make the rest unreadable

    std::unordered_map<SiteId, const Site*> expected_sites;
    for (const Site& s : universe) expected_sites.emplace(s.id, &s);

    // (a) every universe site in exactly one leaf, and only universe sites.
    std::unordered_map<SiteId, std::size_t> seen;
    for (std::size_t leaf_number = 0; leaf_number < components_.size(); ++leaf_number)
        for (SiteId id : components_[leaf_number]) ++seen[id];
    for (const Site& s : universe) {
        auto it = seen.find(s.id);
        const std::size_t count = it == seen.end() ? 0 : it->second;
        if (count != 1)
            report(AuditKind::site_placement,
                   describe_site(s.id) + " stored in " + std::to_string(count) + " leaves");
    }
    for (const auto& [id, count] : seen)
        if (!expected_sites.count(id))
            report(AuditKind::site_placement, describe_site(id) + " not in the universe");

    // site table must mirror the leaves.
    if (sites_.size() != universe.size())
        report(AuditKind::site_placement,
               "site table holds " + std::to_string(sites_.size()) + " of " +
                   std::to_string(universe.size()) + " sites");
    for (std::size_t leaf_number = 0; leaf_number < components_.size(); ++leaf_number) {
        for (SiteId id : components_[leaf_number]) {
            auto it = sites_.find(id);
            if (it == sites_.end())
                report(AuditKind::site_placement, describe_site(id) + " missing from site table");
            else if (it->second.leaf_number != leaf_number)
                report(AuditKind::site_placement, describe_site(id) + " table leaf " +
                                                      std::to_string(it->second.leaf_number) +
                                                      " != " + std::to_string(leaf_number));
        }
    }

    auto stored_site = [&](SiteId id) -> const Site* {
        auto it = sites_.find(id);
        return it == sites_.end() ? nullptr : &it->second.site;
    };

    // (b) each stored component is connected under disk intersection.
    for (std::size_t leaf_number = 0; leaf_number < components_.size(); ++leaf_number) {
        const std::vector<SiteId>& comp = components_[leaf_number];
        if (comp.size() < 2) continue;
        std::vector<const Site*> members;
        members.reserve(comp.size());
        for (SiteId id : comp) {
            const Site* s = stored_site(id);
            if (s) members.push_back(s);
        }
        if (members.size() != comp.size()) continue;  // already reported above
        std::vector<char> reached(members.size(), 0);
        std::vector<std::size_t> frontier{0};
        reached[0] = 1;
        std::size_t reach_count = 1;
        while (!frontier.empty()) {
            const std::size_t u = frontier.back();
            frontier.pop_back();
            for (std::size_t v = 0; v < members.size(); ++v) {
                if (reached[v] || !disks_intersect(*members[u], *members[v])) continue;
                reached[v] = 1;
                ++reach_count;
                frontier.push_back(v);
            }
        }
        if (reach_count != members.size())
            report(AuditKind::leaf_connectivity,
                   "leaf " + std::to_string(leaf_node(leaf_number)) + " splits into >1 piece");
    }

    // (c) no edge between different leaves' components.
    for (std::size_t a = 0; a < components_.size(); ++a) {
        for (std::size_t b = a + 1; b < components_.size(); ++b) {
            bool touched = false;
            for (SiteId ia : components_[a]) {
                const Site* sa = stored_site(ia);
                if (!sa) continue;
                for (SiteId ib : components_[b]) {
                    const Site* sb = stored_site(ib);
                    if (sb && disks_intersect(*sa, *sb)) {
                        report(AuditKind::cross_leaf_adjacency,
                               describe_site(ia) + " (leaf " + std::to_string(leaf_node(a)) +
                                   ") intersects " + describe_site(ib) + " (leaf " +
                                   std::to_string(leaf_node(b)) + ")");
                        touched = true;
                        break;
                    }
                }
                if (touched) break;
            }
        }
    }

    // (d) every node's AWNN holds exactly its subtree's sites, weighted -r.
    for (NodeId node = 0; node < nodes_.size(); ++node) {
        const unsigned depth = depth_of(node);
        const std::size_t width = std::size_t{1} << (height_ - depth);
        const std::size_t begin = (node - ((NodeId{1} << depth) - 1)) * width;
        std::vector<SiteId> expected;
        for (std::size_t leaf_number = begin; leaf_number < begin + width; ++leaf_number)
            expected.insert(expected.end(), components_[leaf_number].begin(),
                            components_[leaf_number].end());
        std::sort(expected.begin(), expected.end());

        std::vector<AwnnEntry> held = nodes_[node]->entries();
        std::vector<SiteId> actual;
        actual.reserve(held.size());
        for (const AwnnEntry& e : held) actual.push_back(e.site_id);
        std::sort(actual.begin(), actual.end());

        if (expected != actual) {
            report(AuditKind::awnn_contents,
                   "node " + std::to_string(node) + " awnn holds " + std::to_string(actual.size()) +
                       " sites, subtree holds " + std::to_string(expected.size()));
            continue;
        }
        for (const AwnnEntry& e : held) {
            const Site* s = stored_site(e.site_id);
            if (!s) continue;
            if (e.center.x != s->center.x || e.center.y != s->center.y || e.weight != -s->radius)
                report(AuditKind::awnn_contents, "node " + std::to_string(node) + " entry for " +
                                                     describe_site(e.site_id) + " is stale");
        }
    }

    // (e) queue == set of empty leaves, each exactly once.
    std::unordered_set<std::uint32_t> queued;
    for (std::uint32_t leaf_number : queue_) {
        if (leaf_number >= components_.size())
            report(AuditKind::queue_state, "queued leaf number " + std::to_string(leaf_number) +
                                               " out of range");
        else if (!queued.insert(leaf_number).second)
            report(AuditKind::queue_state,
                   "leaf " + std::to_string(leaf_node(leaf_number)) + " queued twice");
        else if (!components_[leaf_number].empty())
            report(AuditKind::queue_state,
                   "leaf " + std::to_string(leaf_node(leaf_number)) + " queued but occupied");
    }
    for (std::size_t leaf_number = 0; leaf_number < components_.size(); ++leaf_number)
        if (components_[leaf_number].empty() && !queued.count(static_cast<std::uint32_t>(leaf_number)))
            report(AuditKind::queue_state,
                   "empty leaf " + std::to_string(leaf_node(leaf_number)) + " not queued");

    return out;
}

TreeStats ComponentTree::stats() const {
    TreeStats s;
    s.awnn_inserts = awnn_inserts_;
    s.awnn_deletes = awnn_deletes_;
    s.awnn_queries = awnn_queries_.load(std::memory_order_relaxed);
    s.sites_moved = sites_moved_;
    s.expansions = expansions_;
    return s;
}

}  // namespace diskconn
