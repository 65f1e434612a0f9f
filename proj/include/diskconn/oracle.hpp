#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "diskconn/dsu.hpp"
#include "diskconn/geometry.hpp"

namespace diskconn {

// Brute-force reference connectivity: every insertion tests the new disk
// against all stored disks. Quadratic and obviously correct; exists to check
// the tree-based structure, not to be fast.
class NaiveConnectivity {
public:
    // Rejects invalid sites and duplicate ids.
    bool insert(const Site& s);

    // std::nullopt when either id is unknown.
    std::optional<bool> connected(SiteId a, SiteId b) const;

    std::size_t component_count() const { return dsu_.set_count(); }
    std::size_t size() const { return sites_.size(); }
    bool contains(SiteId id) const { return dsu_.contains(id); }
    const std::vector<Site>& sites() const { return sites_; }

    // Pairwise intersection tests performed so far.
    std::uint64_t pair_tests() const { return pair_tests_; }

private:
    std::vector<Site> sites_;
    mutable DsuForest dsu_;  // find compresses paths
    std::uint64_t pair_tests_ = 0;
};

// Second, union-find-free ground truth: component label per input index,
// labels numbered by first appearance. BFS over the explicit graph.
std::vector<std::uint32_t> bfs_partition(std::span<const Site> sites);

enum class Preset {
    uniform,        // centers uniform in the box, radii uniform
    heavy_tail,     // Pareto(3/2) radii capped at the box width
    clustered,      // ceil(sqrt(n)) Gaussian clusters
    tangent_chain,  // collinear, exactly tangent disks in shuffled order
};

std::string_view preset_name(Preset preset);
std::optional<Preset> parse_preset(std::string_view text);

struct GeneratorConfig {
    Preset preset = Preset::uniform;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double extent = 100.0;     // bounding box [0, extent]^2
    double radius_min = 0.5;   // uniform, clustered, tangent_chain
    double radius_max = 1.5;
    double pareto_scale = 0.5;  // heavy_tail minimum radius
};

// Deterministic instance generation: the same config yields the same sites on
// every platform. All presets stick to IEEE-exact arithmetic on raw
// mt19937_64 output (no libm), so the guarantee is bit-level. Site ids are
// 0..n-1 in insertion order. Returns std::nullopt on invalid parameters.
std::optional<std::vector<Site>> generate_sites(const GeneratorConfig& config);

}  // namespace diskconn
