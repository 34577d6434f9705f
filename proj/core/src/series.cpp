#include "subseries/series.hpp"

#include <stdexcept>

#include "subseries/errors.hpp"
#include "subseries/summation.hpp"

namespace subseries {

namespace {

constexpr index_t kTraceCap = index_t{1} << 14;

index_t ceil_sqrt(index_t v) {
    index_t s = 0;
    while (s * s < v) ++s;
    return s;
}

Rational require_positive(const Rational& eps, const char* who) {
    if (eps.sign() <= 0) throw std::invalid_argument(std::string(who) + ": epsilon must be positive");
    return eps;
}

}  // namespace

Series::Series() : term_([](index_t) { return Rational(); }), desc_("zero") {}

Series::Series(std::function<Rational(index_t)> term, std::string desc)
    : term_(std::move(term)), desc_(std::move(desc)) {}

Series Series::with_convergence_modulus(ConvergenceModulus m) const {
    Series s = *this;
    s.conv_ = std::move(m);
    return s;
}
Series Series::with_decay_modulus(DecayModulus m) const {
    Series s = *this;
    s.decay_ = std::move(m);
    return s;
}
Series Series::with_class(SeriesClass c) const {
    Series s = *this;
    s.class_ = c;
    return s;
}
Series Series::with_limit(LimitValue l) const {
    Series s = *this;
    s.limit_ = std::move(l);
    return s;
}
Series Series::with_description(std::string desc) const {
    Series s = *this;
    s.desc_ = std::move(desc);
    return s;
}

Series alternating_harmonic() {
    Series s([](index_t i) { return Rational::signed_unit_over(i % 2 == 1, i + 1); },
             "altharmonic");
    // any interval sum starting at n stays within |a_n| = 1/(n+1)
    s = s.with_convergence_modulus([](const Rational& eps) {
        return require_positive(eps, "altharmonic modulus").reciprocal().floor_u64();
    });
    s = s.with_decay_modulus([](index_t n) { return (n + 1) * (n + 1) - 1; });
    return s.with_class(SeriesClass::cc);
}

Series basel_series() {
    Series s([](index_t i) { return Rational(1, (i + 1) * (i + 1)); }, "basel");
    // tail past n is below 1/n
    s = s.with_convergence_modulus([](const Rational& eps) {
        return require_positive(eps, "basel modulus").reciprocal().floor_u64() + 1;
    });
    s = s.with_decay_modulus([](index_t n) { return n; });
    return s.with_class(SeriesClass::ac);
}

Series zero_series() {
    Series s;
    s = s.with_convergence_modulus([](const Rational&) { return index_t{0}; });
    s = s.with_decay_modulus([](index_t) { return index_t{0}; });
    return s.with_class(SeriesClass::ac).with_limit({LimitKind::Finite, Rational(0)});
}

Series scale(const Series& a, const Rational& q) {
    if (q.is_zero()) throw Error("degenerate scaling");
    Series s([a, q](index_t i) { return q * a.term(i); },
             "scale(" + a.description() + "," + q.to_string() + ")");
    if (a.convergence_modulus()) {
        auto f = *a.convergence_modulus();
        Rational aq = q.abs();
        s = s.with_convergence_modulus([f, aq](const Rational& eps) { return f(eps / aq); });
    }
    if (a.decay_modulus()) {
        auto d = *a.decay_modulus();
        Rational aq = q.abs();
        if (aq <= Rational(1)) {
            s = s.with_decay_modulus(d);
        } else {
            const index_t k = ceil_sqrt(aq.floor_u64() + 1);
            s = s.with_decay_modulus([d, k](index_t n) { return d(k * (n + 1) - 1); });
        }
    }
    s = s.with_class(a.declared_class());
    if (a.known_limit()) {
        LimitValue l = *a.known_limit();
        if (l.kind == LimitKind::Finite) {
            l.value = q * l.value;
            s = s.with_limit(l);
        } else if (l.kind == LimitKind::Oscillation) {
            s = s.with_limit(l);
        } else {
            const bool plus = (l.kind == LimitKind::PlusInfinity) == (q.sign() > 0);
            s = s.with_limit({plus ? LimitKind::PlusInfinity : LimitKind::MinusInfinity, {}});
        }
    }
    return s;
}

Series perturb_quadratic(const Series& a, const Rational& t) {
    if (t.is_zero()) return a;
    Series s(
        [a, t](index_t i) { return a.term(i) + t * Rational(1, (i + 1) * (i + 1)); },
        "perturb(" + a.description() + "," + t.to_string() + ")");
    if (a.convergence_modulus()) {
        auto f = *a.convergence_modulus();
        Rational at = t.abs();
        s = s.with_convergence_modulus([f, at](const Rational& eps) {
            require_positive(eps, "perturb modulus");
            const Rational half = eps / Rational(2);
            const index_t from_perturbation = (at / half).floor_u64() + 1;
            return std::max(f(half), from_perturbation);
        });
    }
    if (a.decay_modulus()) {
        auto d = *a.decay_modulus();
        const index_t s2 = ceil_sqrt((Rational(2) * t.abs()).floor_u64() + 1);
        s = s.with_decay_modulus([d, s2](index_t n) {
            return std::max(d(2 * n + 1), s2 * (n + 1) - 1);
        });
    }
    // termwise addition of an absolutely convergent series preserves the class
    return s.with_class(a.declared_class());
}

Series flip_signs_on(const Series& a, const IndexSet& x) {
    Series s([a, x](index_t i) { return x.contains(i) ? -a.term(i) : a.term(i); },
             "flip(" + a.description() + "," + x.description() + ")");
    if (a.decay_modulus()) s = s.with_decay_modulus(*a.decay_modulus());
    return s;
}

Series add_pointwise(const Series& a, const Series& b) {
    Series s([a, b](index_t i) { return a.term(i) + b.term(i); },
             "add(" + a.description() + "," + b.description() + ")");
    if (a.convergence_modulus() && b.convergence_modulus()) {
        auto fa = *a.convergence_modulus();
        auto fb = *b.convergence_modulus();
        s = s.with_convergence_modulus([fa, fb](const Rational& eps) {
            const Rational half = eps / Rational(2);
            return std::max(fa(half), fb(half));
        });
    }
    if (a.decay_modulus() && b.decay_modulus()) {
        auto da = *a.decay_modulus();
        auto db = *b.decay_modulus();
        s = s.with_decay_modulus([da, db](index_t n) {
            return std::max(da(2 * n + 1), db(2 * n + 1));
        });
    }
    if (a.declared_class() == SeriesClass::ac)
        s = s.with_class(b.declared_class());
    else if (b.declared_class() == SeriesClass::ac)
        s = s.with_class(a.declared_class());
    if (a.known_limit() && b.known_limit()) {
        const auto& la = *a.known_limit();
        const auto& lb = *b.known_limit();
        if (la.kind == LimitKind::Finite && lb.kind == LimitKind::Finite)
            s = s.with_limit({LimitKind::Finite, la.value + lb.value});
        else if (la.kind == LimitKind::Finite && lb.kind != LimitKind::Oscillation)
            s = s.with_limit({lb.kind, {}});
        else if (lb.kind == LimitKind::Finite && la.kind != LimitKind::Oscillation)
            s = s.with_limit({la.kind, {}});
        else if (la.kind == LimitKind::Oscillation && lb.kind == LimitKind::Finite)
            s = s.with_limit({LimitKind::Oscillation, {}});
        else if (lb.kind == LimitKind::Oscillation && la.kind == LimitKind::Finite)
            s = s.with_limit({LimitKind::Oscillation, {}});
    }
    return s;
}

Series restrict_series(const Series& a, const IndexSet& x) {
    if (!x.certified_infinite()) throw CertificateError("restriction requires infinite index set");
    return Series([a, x](index_t n) { return a.term(x.nth_member(n)); },
                  "restrict(" + a.description() + "," + x.description() + ")");
}

SignSets sign_sets(const Series& a, index_t horizon) {
    auto make = [&](int want, const char* tag) {
        auto member = [a, want](index_t i) { return a.term(i).sign() == want; };
        index_t found = 0;
        for (index_t i = 0; i < horizon; ++i)
            if (member(i)) ++found;
        const Cert inf = (horizon > 0 && found >= (horizon + 9) / 10) ? Cert::Heuristic : Cert::No;
        return from_predicate(member, inf, Cert::No,
                              std::string(tag) + "(" + a.description() + ")");
    };
    return SignSets{make(1, "positives"), make(-1, "negatives"), make(0, "zeros")};
}

Rational partial_sum(const Series& a, const IndexSet& x, index_t k) {
    return range_sum(a, &x, 0, k);
}

Rational partial_sum(const Series& a, index_t k) { return range_sum(a, nullptr, 0, k); }

PartialSumTrace build_trace(const Series& a, const IndexSet& x, index_t horizon) {
    if (horizon > kTraceCap)
        throw Error("build_trace: horizon too large to materialize; stream instead");
    PartialSumTrace tr;
    tr.horizon = horizon;
    tr.index_set_id = x.description();
    tr.sums.reserve(horizon + 1);
    Rational acc;
    tr.sums.push_back(acc);
    for (index_t k = 0; k < horizon; ++k) {
        if (x.contains(k)) acc += a.term(k);
        tr.sums.push_back(acc);
    }
    return tr;
}

}  // namespace subseries
