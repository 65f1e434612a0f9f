#include "diskconn/awnn.hpp"

#include <algorithm>
#include <cassert>

namespace diskconn {

// ---------------------------------------------------------------------------
// ScanAwnn

bool ScanAwnn::insert(const AwnnEntry& e) {
    if (index_.count(e.site_id)) return false;
    index_.emplace(e.site_id, entries_.size());
    entries_.push_back(e);
    ++inserts_;
    return true;
}

bool ScanAwnn::erase(SiteId id) {
    auto it = index_.find(id);
    if (it == index_.end()) return false;
    const std::size_t slot = it->second;
    index_.erase(it);
    if (slot + 1 != entries_.size()) {
        entries_[slot] = entries_.back();
        index_[entries_[slot].site_id] = slot;
    }
    entries_.pop_back();
    ++deletes_;
    return true;
}

std::optional<AwnnResult> ScanAwnn::nearest(Point q) const {
    queries_.fetch_add(1, std::memory_order_relaxed);
    std::optional<AwnnResult> best;
    for (const AwnnEntry& e : entries_) {
        AwnnResult cand{e.site_id, awnn_value(q, e)};
        if (!best || awnn_better(cand, *best)) best = cand;
    }
    return best;
}

AwnnCounters ScanAwnn::counters() const {
    return {inserts_, deletes_, queries_.load(std::memory_order_relaxed)};
}

// ---------------------------------------------------------------------------
// TieredAwnn

void TieredAwnn::refresh_bounds(Tier& t) {
    assert(!t.entries.empty());
    t.min_x = t.max_x = t.entries.front().center.x;
    t.min_y = t.max_y = t.entries.front().center.y;
    t.min_weight = t.entries.front().weight;
    for (const AwnnEntry& e : t.entries) {
        t.min_x = std::min(t.min_x, e.center.x);
        t.max_x = std::max(t.max_x, e.center.x);
        t.min_y = std::min(t.min_y, e.center.y);
        t.max_y = std::max(t.max_y, e.center.y);
        t.min_weight = std::min(t.min_weight, e.weight);
    }
}

void TieredAwnn::place(std::vector<AwnnEntry> block, std::vector<char> dead, std::size_t level) {
    // Carry-merge occupied tiers into the block, like binary addition.
    while (level < tiers_.size() && tiers_[level].has_value()) {
        Tier& t = *tiers_[level];
        block.insert(block.end(), t.entries.begin(), t.entries.end());
        dead.insert(dead.end(), t.dead.begin(), t.dead.end());
        tiers_[level].reset();
        ++level;
    }
    if (level >= tiers_.size()) tiers_.resize(level + 1);
    Tier t;
    t.entries = std::move(block);
    t.dead = std::move(dead);
    refresh_bounds(t);
    for (std::size_t i = 0; i < t.entries.size(); ++i)
        if (!t.dead[i]) loc_[t.entries[i].site_id] = {level, i};
    tiers_[level] = std::move(t);
}

void TieredAwnn::rebuild() {
    std::vector<AwnnEntry> live = entries();
    tiers_.clear();
    loc_.clear();
    dead_total_ = 0;
    live_total_ = live.size();
    // Redistribute as the binary decomposition of the live count.
    std::size_t begin = 0;
    for (std::size_t level = 0; (std::size_t{1} << level) <= live.size(); ++level) {
        if (!(live.size() >> level & 1)) continue;
        const std::size_t len = std::size_t{1} << level;
        std::vector<AwnnEntry> block(live.begin() + begin, live.begin() + begin + len);
        place(std::move(block), std::vector<char>(len, 0), level);
        begin += len;
    }
}

bool TieredAwnn::insert(const AwnnEntry& e) {
    if (loc_.count(e.site_id)) return false;
    place({e}, {0}, 0);
    ++live_total_;
    ++inserts_;
    return true;
}

bool TieredAwnn::erase(SiteId id) {
    auto it = loc_.find(id);
    if (it == loc_.end()) return false;
    auto [level, offset] = it->second;
    tiers_[level]->dead[offset] = 1;
    loc_.erase(it);
    --live_total_;
    ++dead_total_;
    ++deletes_;
    if (dead_total_ * 2 > live_total_) rebuild();
    return true;
}

std::optional<AwnnResult> TieredAwnn::nearest(Point q) const {
    queries_.fetch_add(1, std::memory_order_relaxed);
    std::optional<AwnnResult> best;
    for (const auto& slot : tiers_) {
        if (!slot) continue;
        const Tier& t = *slot;
        if (best) {
            // Box distance plus the smallest weight bounds every entry value
            // from below; all operations here round monotonically, so a tier
            // with bound > best can hold neither a smaller value nor a tie.
            const double dx = std::max({0.0, t.min_x - q.x, q.x - t.max_x});
            const double dy = std::max({0.0, t.min_y - q.y, q.y - t.max_y});
            if (std::sqrt(dx * dx + dy * dy) + t.min_weight > best->value) continue;
        }
        for (std::size_t i = 0; i < t.entries.size(); ++i) {
            if (t.dead[i]) continue;
            AwnnResult cand{t.entries[i].site_id, awnn_value(q, t.entries[i])};
            if (!best || awnn_better(cand, *best)) best = cand;
        }
    }
    return best;
}

std::vector<AwnnEntry> TieredAwnn::entries() const {
    std::vector<AwnnEntry> out;
    out.reserve(live_total_);
    for (const auto& slot : tiers_) {
        if (!slot) continue;
        for (std::size_t i = 0; i < slot->entries.size(); ++i)
            if (!slot->dead[i]) out.push_back(slot->entries[i]);
    }
    return out;
}

AwnnCounters TieredAwnn::counters() const {
    return {inserts_, deletes_, queries_.load(std::memory_order_relaxed)};
}

std::size_t TieredAwnn::tier_count() const {
    std::size_t n = 0;
    for (const auto& slot : tiers_)
        if (slot) ++n;
    return n;
}

// ---------------------------------------------------------------------------

std::unique_ptr<Awnn> make_awnn(AwnnKind kind) {
    if (kind == AwnnKind::tiered) return std::make_unique<TieredAwnn>();
    return std::make_unique<ScanAwnn>();
}

std::string_view awnn_kind_name(AwnnKind kind) {
    return kind == AwnnKind::tiered ? "tiered" : "scan";
}

std::optional<AwnnKind> parse_awnn_kind(std::string_view name) {
    if (name == "scan") return AwnnKind::scan;
    if (name == "tiered") return AwnnKind::tiered;
    return std::nullopt;
}

}  // namespace diskconn
