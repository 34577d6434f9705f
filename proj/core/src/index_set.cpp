#include "subseries/index_set.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "subseries/errors.hpp"

namespace subseries {

struct IndexSet::EnumCache {
    std::mutex mu;
    std::vector<index_t> members;
    index_t scanned_to = 0;
};

IndexSet::IndexSet(std::function<bool(index_t)> membership, Cert inf, Cert coinf,
                   std::string desc)
    : membership_(std::move(membership)),
      inf_(inf),
      coinf_(coinf),
      desc_(std::move(desc)),
      cache_(std::make_shared<EnumCache>()) {}

index_t IndexSet::nth_member(index_t n, index_t scan_cap) const {
    if (!cache_) throw Error("nth_member on default-constructed IndexSet");
    std::lock_guard lock(cache_->mu);
    auto& c = *cache_;
    while (c.members.size() <= n) {
        if (c.scanned_to >= scan_cap)
            throw HorizonExhausted("IndexSet::nth_member: scan cap reached for \"" + desc_ + "\"",
                                   c.members.size(), n + 1);
        if (membership_(c.scanned_to)) c.members.push_back(c.scanned_to);
        ++c.scanned_to;
    }
    return c.members[n];
}

std::vector<index_t> IndexSet::members_below(index_t horizon) const {
    std::vector<index_t> out;
    for (index_t i = 0; i < horizon; ++i)
        if (membership_(i)) out.push_back(i);
    return out;
}

index_t IndexSet::count_below(index_t horizon) const {
    index_t n = 0;
    for (index_t i = 0; i < horizon; ++i)
        if (membership_(i)) ++n;
    return n;
}

index_t IndexSet::count_below_in(index_t horizon, const IndexSet& other) const {
    index_t n = 0;
    for (index_t i = 0; i < horizon; ++i)
        if (membership_(i) && other.contains(i)) ++n;
    return n;
}

IndexSet IndexSet::with_certificates(Cert inf, Cert coinf) const {
    return IndexSet(membership_, inf, coinf, desc_);
}

IndexSet evens() {
    return IndexSet([](index_t i) { return i % 2 == 0; }, Cert::Yes, Cert::Yes, "evens");
}

IndexSet odds() {
    return IndexSet([](index_t i) { return i % 2 == 1; }, Cert::Yes, Cert::Yes, "odds");
}

IndexSet omega() {
    return IndexSet([](index_t) { return true; }, Cert::Yes, Cert::No, "omega");
}

IndexSet empty_set() {
    return IndexSet([](index_t) { return false; }, Cert::No, Cert::Yes, "empty");
}

IndexSet mod_class(index_t modulus, index_t residue) {
    if (modulus == 0) throw std::invalid_argument("mod_class: modulus must be positive");
    if (residue >= modulus) throw std::invalid_argument("mod_class: residue out of range");
    const Cert coinf = modulus > 1 ? Cert::Yes : Cert::No;
    return IndexSet([modulus, residue](index_t i) { return i % modulus == residue; }, Cert::Yes,
                    coinf,
                    "mod(" + std::to_string(modulus) + "," + std::to_string(residue) + ")");
}

IndexSet finite_set(std::vector<index_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::string desc = "finite[";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) desc += ",";
        desc += std::to_string(members[i]);
    }
    desc += "]";
    auto shared = std::make_shared<std::vector<index_t>>(std::move(members));
    return IndexSet(
        [shared](index_t i) {
            return std::binary_search(shared->begin(), shared->end(), i);
        },
        Cert::No, Cert::Yes, std::move(desc));
}

IndexSet periodic_set(std::vector<bool> prefix, std::vector<bool> cycle) {
    if (cycle.empty()) throw std::invalid_argument("periodic_set: cycle must be nonempty");
    bool any_one = false, any_zero = false;
    for (bool b : cycle) (b ? any_one : any_zero) = true;
    std::string desc = "periodic(";
    for (bool b : prefix) desc += b ? '1' : '0';
    desc += ',';
    for (bool b : cycle) desc += b ? '1' : '0';
    desc += ')';
    auto p = std::make_shared<std::vector<bool>>(std::move(prefix));
    auto c = std::make_shared<std::vector<bool>>(std::move(cycle));
    return IndexSet(
        [p, c](index_t i) {
            if (i < p->size()) return (*p)[i];
            return (*c)[(i - p->size()) % c->size()];
        },
        any_one ? Cert::Yes : Cert::No, any_zero ? Cert::Yes : Cert::No, std::move(desc));
}

IndexSet from_predicate(std::function<bool(index_t)> membership, Cert inf, Cert coinf,
                        std::string desc) {
    return IndexSet(std::move(membership), inf, coinf, std::move(desc));
}

IndexSet complement(const IndexSet& x) {
    return IndexSet([x](index_t i) { return !x.contains(i); }, x.cert_coinfinite(),
                    x.cert_infinite(), "compl(" + x.description() + ")");
}

IndexSet set_union(const IndexSet& x, const IndexSet& y) {
    const Cert inf = std::max(x.cert_infinite(), y.cert_infinite(), [](Cert a, Cert b) {
        return static_cast<int>(a) < static_cast<int>(b);
    });
    return IndexSet([x, y](index_t i) { return x.contains(i) || y.contains(i); }, inf, Cert::No,
                    "union(" + x.description() + "," + y.description() + ")");
}

IndexSet set_intersect(const IndexSet& x, const IndexSet& y) {
    const Cert coinf = std::max(x.cert_coinfinite(), y.cert_coinfinite(), [](Cert a, Cert b) {
        return static_cast<int>(a) < static_cast<int>(b);
    });
    return IndexSet([x, y](index_t i) { return x.contains(i) && y.contains(i); }, Cert::No, coinf,
                    "intersect(" + x.description() + "," + y.description() + ")");
}

IndexSet symm_diff(const IndexSet& x, const IndexSet& y) {
    return IndexSet([x, y](index_t i) { return x.contains(i) != y.contains(i); }, Cert::No,
                    Cert::No, "symm_diff(" + x.description() + "," + y.description() + ")");
}

TriVerdict is_split_by(const IndexSet& x, const IndexSet& y, index_t horizon, index_t threshold) {
    if (threshold == 0) throw std::invalid_argument("is_split_by: threshold must be >= 1");
    index_t inside = 0, outside = 0;
    for (index_t i = 0; i < horizon; ++i) {
        if (!x.contains(i)) continue;
        (y.contains(i) ? inside : outside)++;
    }
    if (inside >= threshold && outside >= threshold) return TriVerdict::Holds;
    const index_t total = inside + outside;
    if (inside == 0 && outside >= threshold && total >= 2 * threshold) return TriVerdict::Fails;
    if (outside == 0 && inside >= threshold && total >= 2 * threshold) return TriVerdict::Fails;
    return TriVerdict::Unknown;
}

std::vector<index_t> switching_points(const IndexSet& x, index_t horizon) {
    std::vector<index_t> out;
    if (horizon == 0) return out;
    out.push_back(0);
    bool prev = x.contains(0);
    for (index_t k = 1; k < horizon; ++k) {
        const bool cur = x.contains(k);
        if (cur != prev) out.push_back(k);
        prev = cur;
    }
    return out;
}

}  // namespace subseries
