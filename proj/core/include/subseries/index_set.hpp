#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "subseries/verdict.hpp"

namespace subseries {

using index_t = std::uint64_t;

/// Provenance of an infinitude/coinfinitude claim. Operations that require
/// a certified-infinite set accept `Yes` only; `Heuristic` marks density
/// evidence gathered below some horizon and is never sufficient on its own.
enum class Cert { No, Heuristic, Yes };

constexpr std::string_view to_string(Cert c) {
    switch (c) {
        case Cert::Yes: return "yes";
        case Cert::Heuristic: return "heuristic";
        default: return "no";
    }
}

/// A subset of the naturals with decidable membership, an increasing
/// enumerator derived from membership, and infinitude certificates.
/// Values are immutable; the enumeration cache is internal and guarded.
class IndexSet {
  public:
    IndexSet() = default;
    IndexSet(std::function<bool(index_t)> membership, Cert inf, Cert coinf, std::string desc);

    bool contains(index_t i) const { return membership_(i); }
    Cert cert_infinite() const { return inf_; }
    Cert cert_coinfinite() const { return coinf_; }
    bool certified_infinite() const { return inf_ == Cert::Yes; }
    bool certified_coinfinite() const { return coinf_ == Cert::Yes; }
    const std::string& description() const { return desc_; }

    /// n-th member (0-based) of the increasing enumeration. Scans membership,
    /// sharing progress between calls; throws HorizonExhausted past scan_cap.
    index_t nth_member(index_t n, index_t scan_cap = (index_t{1} << 26)) const;

    std::vector<index_t> members_below(index_t horizon) const;
    index_t count_below(index_t horizon) const;
    /// Number of members with index < horizon that also lie in `other`.
    index_t count_below_in(index_t horizon, const IndexSet& other) const;

    /// Same set with caller-asserted certificates (the explicit override
    /// required wherever a heuristic flag is not enough).
    IndexSet with_certificates(Cert inf, Cert coinf) const;

  private:
    std::function<bool(index_t)> membership_ = [](index_t) { return false; };
    Cert inf_ = Cert::No;
    Cert coinf_ = Cert::No;
    std::string desc_ = "empty";

    struct EnumCache;
    std::shared_ptr<EnumCache> cache_;
};

// --- builders -------------------------------------------------------------

IndexSet evens();
IndexSet odds();
IndexSet omega();      // all naturals; infinite, not coinfinite
IndexSet empty_set();  // no members
/// residue class {i : i mod modulus == residue}; modulus >= 1
IndexSet mod_class(index_t modulus, index_t residue);
IndexSet finite_set(std::vector<index_t> members);
/// Eventually periodic set: prefix bits then a repeating cycle. The cycle
/// must be nonempty; infinitude/coinfinitude are decided from the cycle.
IndexSet periodic_set(std::vector<bool> prefix, std::vector<bool> cycle);
IndexSet from_predicate(std::function<bool(index_t)> membership, Cert inf, Cert coinf,
                        std::string desc);

// --- boolean algebra (certificates propagate only when forced) -------------

IndexSet complement(const IndexSet& x);
IndexSet set_union(const IndexSet& x, const IndexSet& y);
IndexSet set_intersect(const IndexSet& x, const IndexSet& y);
IndexSet symm_diff(const IndexSet& x, const IndexSet& y);

// --- finite-horizon relations ----------------------------------------------

/// Is X split by Y (both X∩Y and X∖Y infinite), judged below `horizon`
/// with at least `threshold` members per side for a decisive answer.
TriVerdict is_split_by(const IndexSet& x, const IndexSet& y, index_t horizon,
                       index_t threshold = 10);

/// All switching points below horizon: k = 0, or membership changes at k.
std::vector<index_t> switching_points(const IndexSet& x, index_t horizon);

}  // namespace subseries
