#include <algorithm>
#include <bit>
#include <random>
#include <vector>

#include "diskconn/component_tree.hpp"
#include "diskconn/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace diskconn;

namespace {

unsigned floor_log2(std::size_t n) {
    return n ? static_cast<unsigned>(std::bit_width(n)) - 1 : 0;
}

Site site(SiteId id, double x, double y, double r) { return {id, {x, y}, r}; }

// A k-site tangent chain starting at x0; internally connected, radius 1.
std::vector<Site> chain(SiteId first_id, double x0, int k) {
    std::vector<Site> out;
    for (int i = 0; i < k; ++i)
        out.push_back(site(first_id + static_cast<SiteId>(i), x0 + 2.0 * i, 0.0, 1.0));
    return out;
}

void require_clean_audit(const ComponentTree& tree, const std::vector<Site>& universe) {
    const auto violations = tree.audit(universe);
    if (!violations.empty()) {
        CAPTURE(audit_kind_name(violations.front().kind));
        CAPTURE(violations.front().detail);
        REQUIRE(violations.empty());
    }
}

}  // namespace

TEST_CASE("fresh tree is a single node that is root and empty leaf") {
    ComponentTree tree;
    CHECK(tree.height() == 0);
    CHECK(tree.node_count() == 1);
    CHECK(tree.leaf_count() == 1);
    CHECK(tree.empty_leaf_count() == 1);
    CHECK(tree.empty_leaves() == std::vector<NodeId>{0});
    CHECK(tree.is_leaf(0));
    require_clean_audit(tree, {});
}

TEST_CASE("isolated insert fills the only leaf") {
    ComponentTree tree;
    const std::vector<Site> c{site(0, 0, 0, 1)};
    const auto leaf = tree.insert_isolated_component(c);
    REQUIRE(leaf.has_value());
    CHECK(*leaf == 0);
    CHECK(tree.empty_leaf_count() == 0);
    CHECK(tree.awnn_at(0).size() == 1);
    CHECK(tree.leaf_component(0).size() == 1);
    require_clean_audit(tree, c);
}

TEST_CASE("second isolated component doubles the tree") {
    ComponentTree tree;
    std::vector<Site> universe{site(0, 0, 0, 1)};
    tree.insert_isolated_component({&universe[0], 1});

    const Site b = site(1, 10, 0, 1);
    universe.push_back(b);
    const auto leaf = tree.insert_isolated_component({&universe[1], 1});
    REQUIRE(leaf.has_value());
    CHECK(tree.height() == 1);
    CHECK(*leaf == 2);  // old tree became node 1, the new empty leaf is node 2
    CHECK(tree.awnn_at(0).size() == 2);
    CHECK(tree.empty_leaf_count() == 0);
    require_clean_audit(tree, universe);
}

TEST_CASE("explicit expansion enqueues the new leaves and copies the root") {
    ComponentTree tree;

    SUBCASE("from an occupied single-node tree") {
        std::vector<Site> universe{site(0, 0, 0, 1)};
        tree.insert_isolated_component(universe);
        REQUIRE(tree.expand_tree());
        CHECK(tree.height() == 1);
        CHECK(tree.empty_leaf_count() == 1);
        CHECK(tree.empty_leaves() == std::vector<NodeId>{2});
        CHECK(tree.awnn_at(0).size() == 1);  // fresh root holds the copy
        CHECK(tree.awnn_at(1).size() == 1);  // old root, now left child
        CHECK(!tree.expand_tree());          // queue nonempty, rejected
        require_clean_audit(tree, universe);
    }

    SUBCASE("four occupied leaves, nine sites") {
        std::vector<Site> universe;
        for (const auto& component :
             {chain(0, 0, 3), chain(3, 100, 2), chain(5, 200, 2), chain(7, 300, 2)}) {
            REQUIRE(tree.insert_isolated_component(component).has_value());
            universe.insert(universe.end(), component.begin(), component.end());
        }
        REQUIRE(tree.height() == 2);
        REQUIRE(tree.empty_leaf_count() == 0);

        REQUIRE(tree.expand_tree());
        CHECK(tree.height() == 3);
        CHECK(tree.empty_leaf_count() == 4);
        CHECK(tree.awnn_at(0).size() == 9);
        CHECK(tree.stats().expansions == 3);  // two automatic, one explicit
        require_clean_audit(tree, universe);
    }
}

TEST_CASE("isolated insert uses the FIFO-front leaf and grows the whole path") {
    ComponentTree tree;
    std::vector<Site> universe;
    for (const auto& component : {chain(0, 0, 1), chain(1, 100, 1)}) {
        tree.insert_isolated_component(component);
        universe.insert(universe.end(), component.begin(), component.end());
    }
    REQUIRE(tree.expand_tree());  // height 2, empty leaf numbers 2 and 3
    const auto free_leaves = tree.empty_leaves();
    REQUIRE(free_leaves.size() == 2);

    const auto component = chain(2, 200, 3);
    universe.insert(universe.end(), component.begin(), component.end());
    const auto leaf = tree.insert_isolated_component(component);
    REQUIRE(leaf.has_value());
    CHECK(*leaf == free_leaves.front());  // FIFO extraction
    for (NodeId node = *leaf;; node = (node - 1) / 2) {
        CHECK(tree.awnn_at(node).size() >= 3);  // every path AWNN grew by the component
        if (node == 0) break;
    }
    require_clean_audit(tree, universe);
}

TEST_CASE("insert_isolated_component rejects bad input without mutating") {
    ComponentTree tree;
    const std::vector<Site> stored{site(0, 0, 0, 1)};
    tree.insert_isolated_component(stored);

    CHECK(!tree.insert_isolated_component({}).has_value());  // empty set

    const std::vector<Site> duplicate_inside{site(5, 50, 0, 1), site(5, 52, 0, 1)};
    CHECK(!tree.insert_isolated_component(duplicate_inside).has_value());

    const std::vector<Site> already_stored{site(0, 80, 0, 1)};
    CHECK(!tree.insert_isolated_component(already_stored).has_value());

    CHECK(tree.site_count() == 1);
    require_clean_audit(tree, stored);
}

TEST_CASE("find_intersected_components returns exactly the touched leaves") {
    ComponentTree tree;
    CHECK(tree.find_intersected_components(site(9, 0, 0, 5)).empty());  // empty tree

    REQUIRE(tree.insert_site(site(0, 0, 0, 1)).has_value());
    REQUIRE(tree.insert_site(site(1, 10, 0, 1)).has_value());
    CHECK(tree.find_intersected_components(site(2, 5, 0, 4.2)) == std::vector<NodeId>{1, 2});
    CHECK(tree.find_intersected_components(site(2, 5, 0, 1)).empty());
}

TEST_CASE("find agrees with an exhaustive scan on random trees") {
    std::mt19937_64 rng(777);
    ComponentTree tree;
    std::vector<Site> universe;
    for (SiteId id = 0; id < 300; ++id) {
        const Site s = testsupport::random_site(rng, id, 60.0, 0.3, 2.0);
        REQUIRE(tree.insert_site(s).has_value());
        universe.push_back(s);
    }
    for (int probe = 0; probe < 200; ++probe) {
        const Site s = testsupport::random_site(rng, 1000, 70.0, 0.3, 6.0);
        std::vector<NodeId> expected;
        for (const Site& u : universe)
            if (disks_intersect(s, u)) expected.push_back(*tree.site_leaf(u.id));
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        CHECK(tree.find_intersected_components(s) == expected);
    }
}

TEST_CASE("insert_site on a fresh tree reports an isolated insertion") {
    ComponentTree tree;
    const auto report = tree.insert_site(site(0, 0, 0, 1));
    REQUIRE(report.has_value());
    CHECK(report->inserted == 0);
    CHECK(report->intersected_components.empty());
    CHECK(report->representatives.empty());
    CHECK(report->target_leaf == 0);
    CHECK(report->sites_moved == 0);
    CHECK(!report->expanded);
}

TEST_CASE("equal-size merge goes to the smallest leaf index") {
    ComponentTree tree;
    std::vector<Site> universe{site(0, 0, 0, 1), site(1, 10, 0, 1)};
    REQUIRE(tree.insert_site(universe[0]).has_value());
    const auto second = tree.insert_site(universe[1]);
    REQUIRE(second.has_value());
    CHECK(second->expanded);  // queue was empty before the second insert

    universe.push_back(site(2, 5, 0, 4.2));
    const auto report = tree.insert_site(universe[2]);
    REQUIRE(report.has_value());
    CHECK(report->intersected_components == std::vector<NodeId>{1, 2});
    CHECK(report->target_leaf == 1);  // size tie broken by leaf index
    CHECK(report->sites_moved == 1);
    CHECK(!report->expanded);
    CHECK(report->representatives == std::vector<SiteId>{0, 1});

    CHECK(tree.awnn_at(0).size() == 3);
    CHECK(tree.awnn_at(1).size() == 3);
    CHECK(tree.leaf_component(1).size() == 3);
    CHECK(tree.empty_leaves() == std::vector<NodeId>{2});
    require_clean_audit(tree, universe);
}

TEST_CASE("the largest intersected component absorbs the others") {
    ComponentTree tree;
    std::vector<Site> universe;
    for (const Site& s : chain(0, 0, 3)) {  // component of 3
        universe.push_back(s);
        REQUIRE(tree.insert_site(s).has_value());
    }
    for (const Site& s : chain(3, 10, 2)) {  // component of 2
        universe.push_back(s);
        REQUIRE(tree.insert_site(s).has_value());
    }
    REQUIRE(tree.leaf_count() - tree.empty_leaf_count() == 2);

    const NodeId big_leaf = *tree.site_leaf(0);
    universe.push_back(site(5, 7, 0, 2.2));  // touches site 2 at (4,0) and site 3 at (10,0)
    const auto report = tree.insert_site(universe.back());
    REQUIRE(report.has_value());
    CHECK(report->intersected_components.size() == 2);
    CHECK(report->target_leaf == big_leaf);
    CHECK(report->sites_moved == 2);
    for (SiteId id = 0; id < 6; ++id) CHECK(*tree.site_leaf(id) == big_leaf);
    require_clean_audit(tree, universe);
}

TEST_CASE("duplicate site ids are rejected without mutation") {
    ComponentTree tree;
    REQUIRE(tree.insert_site(site(0, 0, 0, 1)).has_value());
    CHECK(!tree.insert_site(site(0, 50, 0, 2)).has_value());
    CHECK(tree.site_count() == 1);
    CHECK(tree.site(0)->center.x == 0.0);
    require_clean_audit(tree, {site(0, 0, 0, 1)});
}

TEST_CASE("lca follows heap arithmetic") {
    ComponentTree tree;
    for (const NodeId x : {0u, 3u, 7u}) CHECK(tree.lca(x, x) == x);
    CHECK(tree.lca(1, 2) == 0);
    CHECK(tree.lca(3, 4) == 1);
    CHECK(tree.lca(3, 5) == 0);
    CHECK(tree.lca(4, 6) == 0);
    CHECK(tree.lca(5, 6) == 2);
    CHECK(tree.lca(0, 6) == 0);
}

TEST_CASE("audit pinpoints an injected AWNN corruption") {
    ComponentTree tree;
    std::vector<Site> universe;
    for (const Site& s : chain(0, 0, 3)) {
        universe.push_back(s);
        REQUIRE(tree.insert_site(s).has_value());
    }
    require_clean_audit(tree, universe);

    REQUIRE(tree.awnn_at(0).erase(1));  // root loses one site, leaves untouched
    const auto violations = tree.audit(universe);
    REQUIRE(violations.size() == 1);
    CHECK(violations.front().kind == AuditKind::awnn_contents);
}

TEST_CASE("audit flags foreign and missing sites") {
    ComponentTree tree;
    const Site stored = site(0, 0, 0, 1);
    REQUIRE(tree.insert_site(stored).has_value());

    const std::vector<Site> with_unstored_site{stored, site(1, 5, 0, 1)};
    auto with_ghost = tree.audit(with_unstored_site);
    REQUIRE(!with_ghost.empty());
    CHECK(with_ghost.front().kind == AuditKind::site_placement);

    auto with_stranger = tree.audit({});
    REQUIRE(!with_stranger.empty());
    CHECK(with_stranger.front().kind == AuditKind::site_placement);
}

TEST_CASE("random insertion sequences keep every invariant") {
    const struct {
        Preset preset;
        std::size_t n;
        std::uint64_t seed;
    } runs[] = {
        {Preset::uniform, 1000, 1},
        {Preset::clustered, 500, 2},
        {Preset::tangent_chain, 300, 3},
    };

    for (const auto& run : runs) {
        CAPTURE(preset_name(run.preset));
        const auto sites = generate_sites({run.preset, run.n, run.seed});
        REQUIRE(sites.has_value());

        ComponentTree tree;
        NaiveConnectivity oracle;
        std::vector<Site> universe;
        std::size_t previous_components = 0;
        std::size_t max_components = 0;

        for (const Site& s : *sites) {
            const auto report = tree.insert_site(s);
            REQUIRE(report.has_value());
            REQUIRE(oracle.insert(s));
            universe.push_back(s);

            // MergeReport shape: no duplicate leaves, target among them.
            auto hits = report->intersected_components;
            std::sort(hits.begin(), hits.end());
            CHECK(std::adjacent_find(hits.begin(), hits.end()) == hits.end());
            if (!hits.empty())
                CHECK(std::find(hits.begin(), hits.end(), report->target_leaf) != hits.end());

            require_clean_audit(tree, universe);

            const std::size_t components = tree.leaf_count() - tree.empty_leaf_count();
            CHECK(components == oracle.component_count());
            CHECK(components <= previous_components + 1);
            previous_components = components;
            max_components = std::max(max_components, components);
            CHECK((std::size_t{1} << tree.height()) < 2 * (1 + max_components));
        }

        const unsigned per_site_bound = floor_log2(run.n);
        for (const Site& s : *sites) CHECK(tree.site_move_count(s.id) <= per_site_bound);
        CHECK(tree.stats().sites_moved <= run.n * per_site_bound);
    }
}
