#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "diskconn/geometry.hpp"

namespace diskconn {

// One weighted point of an AWNN structure. The weight is always the negated
// radius of the referenced site.
struct AwnnEntry {
    SiteId site_id = 0;
    Point center;
    double weight = 0.0;
};

struct AwnnResult {
    SiteId site_id = 0;
    double value = 0.0;  // min over entries of ||pq|| + w_p
};

struct AwnnCounters {
    std::uint64_t inserts = 0;
    std::uint64_t deletes = 0;
    std::uint64_t queries = 0;
};

// The weighted value every implementation (and every test oracle) computes,
// in this exact floating-point form.
inline double awnn_value(Point q, const AwnnEntry& e) {
    return euclidean_distance(q, e.center) + e.weight;
}

// Candidate ordering: smaller value wins, ties broken by smaller site_id.
inline bool awnn_better(const AwnnResult& a, const AwnnResult& b) {
    return a.value < b.value || (a.value == b.value && a.site_id < b.site_id);
}

// Dynamic additively weighted nearest neighbor structure. At most one entry
// per site_id. Mutation requires exclusive access; concurrent nearest()
// calls are safe between mutations.
class Awnn {
public:
    virtual ~Awnn() = default;

    // Rejects (returns false, structure unchanged) if the id is present.
    virtual bool insert(const AwnnEntry& e) = 0;

    // Rejects (returns false, structure unchanged) if the id is absent.
    virtual bool erase(SiteId id) = 0;

    // Entry attaining min ||pq|| + w_p, smallest site_id among value ties.
    // Empty structure yields nothing.
    virtual std::optional<AwnnResult> nearest(Point q) const = 0;

    virtual std::size_t size() const = 0;
    virtual bool contains(SiteId id) const = 0;

    // Snapshot of the live entries, in an implementation-defined order.
    virtual std::vector<AwnnEntry> entries() const = 0;

    virtual AwnnCounters counters() const = 0;
};

// Flat-array baseline: O(1) insert/erase, O(n) query. The reference
// implementation the model tests trust.
class ScanAwnn final : public Awnn {
public:
    bool insert(const AwnnEntry& e) override;
    bool erase(SiteId id) override;
    std::optional<AwnnResult> nearest(Point q) const override;
    std::size_t size() const override { return entries_.size(); }
    bool contains(SiteId id) const override { return index_.count(id) != 0; }
    std::vector<AwnnEntry> entries() const override { return entries_; }
    AwnnCounters counters() const override;

private:
    std::vector<AwnnEntry> entries_;
    std::unordered_map<SiteId, std::size_t> index_;  // site_id -> slot
    std::uint64_t inserts_ = 0;
    std::uint64_t deletes_ = 0;
    mutable std::atomic<std::uint64_t> queries_{0};
};

// Logarithmic-method structure: static tiers of size 2^i merged on insertion
// like binary addition. Deletions tombstone in place; a global rebuild purges
// tombstones once they outnumber half the live entries.
class TieredAwnn final : public Awnn {
public:
    bool insert(const AwnnEntry& e) override;
    bool erase(SiteId id) override;
    std::optional<AwnnResult> nearest(Point q) const override;
    std::size_t size() const override { return live_total_; }
    bool contains(SiteId id) const override { return loc_.count(id) != 0; }
    std::vector<AwnnEntry> entries() const override;
    AwnnCounters counters() const override;

    std::size_t tier_count() const;  // occupied tiers, for tests

private:
    struct Tier {
        std::vector<AwnnEntry> entries;  // size 2^level while occupied
        std::vector<char> dead;
        // Lower-bound data over all entries (dead included; still a valid bound).
        double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
        double min_weight = 0;
    };

    void place(std::vector<AwnnEntry> block, std::vector<char> dead, std::size_t level);
    void rebuild();
    static void refresh_bounds(Tier& t);

    std::vector<std::optional<Tier>> tiers_;
    std::unordered_map<SiteId, std::pair<std::size_t, std::size_t>> loc_;  // id -> (tier, offset)
    std::size_t live_total_ = 0;
    std::size_t dead_total_ = 0;
    std::uint64_t inserts_ = 0;
    std::uint64_t deletes_ = 0;
    mutable std::atomic<std::uint64_t> queries_{0};
};

enum class AwnnKind { scan, tiered };

std::unique_ptr<Awnn> make_awnn(AwnnKind kind);
std::string_view awnn_kind_name(AwnnKind kind);
std::optional<AwnnKind> parse_awnn_kind(std::string_view name);

}  // namespace diskconn
