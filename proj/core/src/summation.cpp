#include "subseries/summation.hpp"

namespace subseries {

namespace {
constexpr index_t kLeaf = 128;
}

Rational tree_sum(index_t lo, index_t hi, const std::function<Rational(index_t)>& f) {
    if (lo >= hi) return Rational();
    if (hi - lo <= kLeaf) {
        Rational acc;
        for (index_t i = lo; i < hi; ++i) {
            Rational t = f(i);
            if (!t.is_zero()) acc += t;
        }
        return acc;
    }
    const index_t mid = lo + (hi - lo) / 2;
    return tree_sum(lo, mid, f) + tree_sum(mid, hi, f);
}

Rational range_sum(const Series& a, const IndexSet* x, index_t lo, index_t hi, SignFilter filter) {
    return tree_sum(lo, hi, [&](index_t i) -> Rational {
        if (x && !x->contains(i)) return Rational();
        Rational t = a.term(i);
        switch (filter) {
            case SignFilter::All: return t;
            case SignFilter::PositivePart: return t.sign() > 0 ? t : Rational();
            case SignFilter::NegativePart: return t.sign() < 0 ? t : Rational();
            case SignFilter::AbsoluteValue: return t.abs();
        }
        return t;
    });
}

TriSum& TriSum::operator+=(const TriSum& o) {
    all += o.all;
    positive += o.positive;
    negative += o.negative;
    positive_terms += o.positive_terms;
    negative_terms += o.negative_terms;
    return *this;
}

namespace {
TriSum tri_recurse(const Series& a, const IndexSet* x, index_t lo, index_t hi) {
    TriSum out;
    if (lo >= hi) return out;
    if (hi - lo <= kLeaf) {
        for (index_t i = lo; i < hi; ++i) {
            if (x && !x->contains(i)) continue;
            Rational t = a.term(i);
            const int s = t.sign();
            if (s == 0) continue;
            if (s > 0) {
                out.positive += t;
                ++out.positive_terms;
            } else {
                out.negative += t;
                ++out.negative_terms;
            }
            out.all += t;
        }
        return out;
    }
    const index_t mid = lo + (hi - lo) / 2;
    out = tri_recurse(a, x, lo, mid);
    out += tri_recurse(a, x, mid, hi);
    return out;
}
}  // namespace

TriSum range_sum3(const Series& a, const IndexSet* x, index_t lo, index_t hi) {
    return tri_recurse(a, x, lo, hi);
}

}  // namespace subseries
