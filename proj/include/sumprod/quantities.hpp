#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumprod/check_record.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/rset.hpp"
#include "sumprod/setops.hpp"

namespace sumprod {

// ---------------------------------------------------------------------
// Slope decomposition of A^2 (A positive): the line y = qx meets A^2 in
// the points {(x, qx) : x in A, qx in A}, so its x-coordinates form the
// multiplicative fiber A ∩ A q^{-1}. Keys are all slopes q in A:A.
// ---------------------------------------------------------------------
inline std::map<Rational, RSet> slope_fibers(const RSet& a) {
    std::map<Rational, std::vector<Rational>> raw;
    for (const auto& x : a)
        for (const auto& y : a) raw[y / x].push_back(x);
    std::map<Rational, RSet> out;
    for (auto& [q, xs] : raw) out.emplace(q, RSet::from_values(std::move(xs)));
    return out;
}

// ---------------------------------------------------------------------
// Witnessed upper bound on the multiplicative-doubling functional
// min_C |AC|^2 / (|A||C|). The true minimum ranges over all finite C and
// is not computable; every downstream use threads the witness through, so
// the assertions depend only on computed quantities.
// ---------------------------------------------------------------------
struct DoublingWitness {
    Rational value;
    RSet witness;
    std::string family_tag;   // family of the winning candidate
    std::string searched;     // families actually enumerated
};

struct DoublingOptions {
    bool include_self = true;
    bool include_inverse = true;
    bool include_fibers = true;
    int subset_cap = 2;
    // Families whose enumeration cost (counted in elementwise products)
    // exceeds this are skipped; the `searched` field records what ran.
    double cost_limit = 4e6;
};

namespace detail {
inline Rational doubling_quotient(const RSet& a, const RSet& c) {
    mpz_class ac(static_cast<long>(product_set(a, c).size()));
    return Rational(ac * ac, mpz_class(static_cast<long>(a.size() * c.size())));
}

inline void doubling_consider(const RSet& a, const RSet& c, const std::string& tag,
                              std::optional<DoublingWitness>& best) {
    Rational v = doubling_quotient(a, c);
    if (!best || v < best->value) best = DoublingWitness{v, c, tag, ""};
}
}  // namespace detail

inline DoublingWitness doubling_bound(const RSet& a, const DoublingOptions& opt = {}) {
    if (a.empty()) throw DomainError("doubling_bound: empty set");
    if (a.contains_zero()) throw DomainError("doubling_bound: set contains 0");
    const double n = static_cast<double>(a.size());
    std::optional<DoublingWitness> best;
    std::string searched;

    if (opt.include_self) {
        detail::doubling_consider(a, a, "self", best);
        searched += "self";
    }
    if (opt.include_inverse) {
        detail::doubling_consider(a, a.inverse(), "inverse", best);
        if (!searched.empty()) searched += ",";
        searched += "inverse";
    }
    if (opt.include_fibers && n * n * n <= opt.cost_limit) {
        for (const auto& [q, f] : slope_fibers(a))
            detail::doubling_consider(a, f, "fiber:" + q.str(), best);
        if (!searched.empty()) searched += ",";
        searched += "fibers";
    }
    if (opt.subset_cap >= 1 && n * n * n * opt.subset_cap / 2 <= opt.cost_limit) {
        // Subsets of size 1..subset_cap in lexicographic index order.
        std::vector<std::size_t> idx;
        for (int k = 1; k <= opt.subset_cap && k <= static_cast<int>(a.size()); ++k) {
            idx.assign(static_cast<std::size_t>(k), 0);
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            while (true) {
                std::vector<Rational> vals;
                vals.reserve(idx.size());
                for (std::size_t i : idx) vals.push_back(a[i]);
                detail::doubling_consider(a, RSet::from_values(std::move(vals)), "subset", best);
                // next combination
                int pos = k - 1;
                while (pos >= 0 && idx[pos] == a.size() - static_cast<std::size_t>(k - pos)) --pos;
                if (pos < 0) break;
                ++idx[pos];
                for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
        if (!searched.empty()) searched += ",";
        searched += "subsets<=" + std::to_string(opt.subset_cap);
    }
    if (!best) throw DomainError("doubling_bound: empty candidate family");
    best->searched = searched;
    return *best;
}

// ---------------------------------------------------------------------
// Magnification ratio min over nonempty Z ⊆ A of |B+Z|/|Z| (or |BZ|/|Z|
// multiplicatively), by exhaustive subset enumeration. The inner loop
// works on precomputed indices into the universe A o B, so no rational
// arithmetic happens per subset.
// ---------------------------------------------------------------------
struct MagnificationResult {
    Rational ratio;
    RSet minimizer;
    std::uint64_t enumerated_subsets = 0;
};

inline MagnificationResult magnification_ratio(const RSet& a, const RSet& b,
                                               Operation op = Operation::additive,
                                               int cap = 18) {
    if (a.empty() || b.empty()) throw DomainError("magnification_ratio: empty input");
    if (static_cast<int>(a.size()) > cap)
        throw ResourceError("magnification_ratio: |A| = " + std::to_string(a.size()) +
                            " exceeds cap " + std::to_string(cap));
    if (op == Operation::multiplicative && (a.contains_zero() || b.contains_zero()))
        throw DomainError("magnification_ratio: multiplicative variant needs 0-free sets");

    const std::size_t n = a.size();
    const std::size_t m = b.size();
    RSet universe = op == Operation::additive ? sumset(a, b) : product_set(a, b);
    // index[i*m + j] = position of a_i o b_j in the universe
    std::vector<std::uint32_t> index(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            Rational v = op == Operation::additive ? a[i] + b[j] : a[i] * b[j];
            auto it = std::lower_bound(universe.begin(), universe.end(), v);
            index[i * m + j] = static_cast<std::uint32_t>(it - universe.begin());
        }
    }

    std::vector<std::uint32_t> counts(universe.size(), 0);
    std::uint32_t covered = 0;
    std::uint64_t mask = 0;
    std::uint64_t best_mask = 0;
    std::uint64_t best_cov = 0, best_card = 0;  // best ratio = best_cov / best_card

    auto consider = [&](std::uint64_t card) {
        if (best_card == 0 || static_cast<std::uint64_t>(covered) * best_card < best_cov * card) {
            best_cov = covered;
            best_card = card;
            best_mask = mask;
        }
    };
    // Iterative DFS over include/exclude decisions, cheapest as recursion.
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t card) -> void {
        if (i == n) {
            if (card > 0) consider(card);
            return;
        }
        self(self, i + 1, card);
        for (std::size_t j = 0; j < m; ++j)
            if (counts[index[i * m + j]]++ == 0) ++covered;
        mask |= 1ULL << i;
        self(self, i + 1, card + 1);
        mask &= ~(1ULL << i);
        for (std::size_t j = 0; j < m; ++j)
            if (--counts[index[i * m + j]] == 0) --covered;
    };
    rec(rec, 0, 0);

    MagnificationResult out;
    out.ratio = Rational(static_cast<long>(best_cov), static_cast<long>(best_card));
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < n; ++i)
        if (best_mask & (1ULL << i)) vals.push_back(a[i]);
    out.minimizer = RSet::from_values(std::move(vals));
    out.enumerated_subsets = (std::uint64_t{1} << n) - 1;
    return out;
}

// |B+C+X| <= R_B[A] |C+X| for the minimizing X ⊆ A. Exact assertion.
inline CheckRecord petridis_check(const RSet& a, const RSet& b, const RSet& c, int cap = 18) {
    MagnificationResult mag = magnification_ratio(a, b, Operation::additive, cap);
    const RSet& x = mag.minimizer;
    mpz_class lhs(static_cast<long>(sumset(sumset(b, c), x).size()));
    mpz_class cx(static_cast<long>(sumset(c, x).size()));
    Rational rhs = mag.ratio * Rational(cx);
    return make_exact("petridis.sumset", Direction::upper, Rational(lhs), rhs,
                      digest_sets({&a, &b, &c}),
                      "R=" + mag.ratio.str() + ";|X|=" + std::to_string(x.size()));
}

// ---------------------------------------------------------------------
// Sumset level sets: for each tau, the number of x in A+B represented at
// least tau times, with the cubic-decay normalization size*tau^3/|B|^2.
// c_theoretical = |A| * doubling_bound(A) is the Lemma-style constant the
// decay is measured against.
// ---------------------------------------------------------------------
struct SzTRow {
    long long tau = 0;
    long long size = 0;
    Rational ratio;
};

struct SzTReport {
    int alpha = 2;
    std::vector<SzTRow> rows;
    Rational max_ratio;
    Rational c_theoretical;
    DoublingWitness witness;
};

inline SzTReport szt_level_sets(const RSet& a, const RSet& b,
                                std::optional<DoublingWitness> witness = std::nullopt) {
    if (a.empty() || b.empty()) throw DomainError("szt_level_sets: empty input");
    CountMap conv = convolution(a, b, Operation::additive, ConvKind::sum);
    std::vector<long long> counts;
    counts.reserve(conv.support_size());
    for (const auto& [x, r] : conv) counts.push_back(r);
    std::sort(counts.begin(), counts.end(), std::greater<>());

    SzTReport rep;
    rep.witness = witness ? *witness : doubling_bound(a.without_zero());
    rep.c_theoretical = Rational(static_cast<long>(a.size())) * rep.witness.value;
    mpz_class bsq(static_cast<long>(b.size()));
    bsq *= static_cast<long>(b.size());
    long long max_count = counts.empty() ? 0 : counts.front();
    rep.max_ratio = Rational(0);
    for (long long tau = 1; tau <= max_count; ++tau) {
        // counts is descending; entries >= tau form the prefix.
        auto it = std::upper_bound(counts.begin(), counts.end(), tau, std::greater<>());
        long long size = static_cast<long long>(it - counts.begin());
        mpz_class t(static_cast<long>(tau));
        Rational ratio(mpz_class(static_cast<long>(size)) * t * t * t, bsq);
        rep.rows.push_back({tau, size, ratio});
        if (ratio > rep.max_ratio) rep.max_ratio = ratio;
    }
    return rep;
}

// ---------------------------------------------------------------------
// Solymosi-style chains. Sort the slopes q of A:A (A restricted to its
// positive part); consecutive lines y = q_i x contribute disjoint blocks
// of points strictly between them, all landing in (A:A+A)^2, (AA+A)^2,
// (A:A+A:A)^2 or (AA+AA)^2 depending on the mode. The resulting
// inequalities are exact, no hidden constants.
// ---------------------------------------------------------------------
enum class ChainMode { ratio, product };

struct SlopeFilter {
    bool popular_only = false;
    Rational threshold = Rational(0);

    static SlopeFilter all() { return {}; }
    static SlopeFilter popular(Rational t) { return {true, std::move(t)}; }
};

struct ChainResult {
    mpz_class chain_sum = 0;
    mpz_class target_sq = 0;
    std::size_t slopes_used = 0;
    CheckRecord record;
};

// Threshold used for the popular-slope selection: |A|^2 / (2 |A:A|).
inline Rational default_popularity_threshold(const RSet& positive) {
    if (positive.empty()) return Rational(0);
    std::size_t q = ratio_set(positive, positive).size();
    return Rational(static_cast<long>(positive.size() * positive.size()),
                    static_cast<long>(2 * q));
}

namespace detail {
struct SlopeData {
    std::vector<Rational> slopes;        // ascending
    std::vector<long long> fiber_size;   // |A_q|
    std::vector<long long> spread;       // |A_q : A| (ratio) or |A A_q| (product)
};

inline SlopeData chain_slope_data(const RSet& p, ChainMode mode,
                                  const std::vector<std::pair<Rational, RSet>>& fibers,
                                  bool need_fiber_size) {
    SlopeData d;
    d.slopes.reserve(fibers.size());
    for (const auto& [q, f] : fibers) {
        d.slopes.push_back(q);
        d.fiber_size.push_back(need_fiber_size ? static_cast<long long>(f.size()) : 0);
        d.spread.push_back(static_cast<long long>(
            mode == ChainMode::ratio ? ratio_set(f, p).size() : product_set(p, f).size()));
    }
    return d;
}

inline std::pair<RSet, std::string> chain_positive_part(const RSet& a) {
    RSet p = a.positive_part();
    std::string note;
    if (p.size() != a.size())
        note = "restricted to " + std::to_string(p.size()) + " positive elements";
    return {std::move(p), std::move(note)};
}

inline std::vector<std::pair<Rational, RSet>> filtered_fibers(const RSet& p,
                                                              const SlopeFilter& f) {
    std::vector<std::pair<Rational, RSet>> kept;
    for (auto& [q, fib] : slope_fibers(p)) {
        if (f.popular_only && Rational(static_cast<long>(fib.size())) < f.threshold) continue;
        kept.emplace_back(q, std::move(fib));
    }
    return kept;
}
}  // namespace detail

inline ChainResult solymosi_chain(const RSet& a, ChainMode mode,
                                  const SlopeFilter& filter = SlopeFilter::all()) {
    auto [p, note] = detail::chain_positive_part(a);
    std::string id = mode == ChainMode::ratio ? "chain.ratio" : "chain.product";
    ChainResult out;
    if (p.size() <= 1) {
        out.record = make_exact(id, Direction::upper, Rational(0), Rational(0),
                                digest_sets({&a}), note.empty() ? "degenerate" : note + ";degenerate");
        return out;
    }
    auto fibers = detail::filtered_fibers(p, filter);
    detail::SlopeData d = detail::chain_slope_data(p, mode, fibers, true);
    for (std::size_t i = 0; i + 1 < d.slopes.size(); ++i)
        out.chain_sum += mpz_class(static_cast<long>(d.fiber_size[i])) *
                         static_cast<long>(d.spread[i + 1]);
    RSet target = mode == ChainMode::ratio ? sumset(ratio_set(p, p), p)
                                           : sumset(product_set(p, p), p);
    out.target_sq = mpz_class(static_cast<long>(target.size()));
    out.target_sq *= static_cast<long>(target.size());
    out.slopes_used = d.slopes.size();
    out.record = make_exact(id, Direction::upper, Rational(out.chain_sum),
                            Rational(out.target_sq), digest_sets({&a}), note);
    return out;
}

inline ChainResult solymosi_pair_chain(const RSet& a, ChainMode mode,
                                       std::optional<Rational> popularity = std::nullopt) {
    auto [p, note] = detail::chain_positive_part(a);
    std::string id = mode == ChainMode::ratio ? "pair_chain.ratio" : "pair_chain.product";
    ChainResult out;
    if (p.size() <= 1) {
        out.record = make_exact(id, Direction::upper, Rational(0), Rational(0),
                                digest_sets({&a}), note.empty() ? "degenerate" : note + ";degenerate");
        return out;
    }
    Rational threshold = popularity ? *popularity : default_popularity_threshold(p);
    auto fibers = detail::filtered_fibers(p, SlopeFilter::popular(threshold));
    detail::SlopeData d = detail::chain_slope_data(p, mode, fibers, false);
    for (std::size_t i = 0; i + 1 < d.slopes.size(); ++i)
        out.chain_sum += mpz_class(static_cast<long>(d.spread[i])) *
                         static_cast<long>(d.spread[i + 1]);
    RSet half = mode == ChainMode::ratio ? ratio_set(p, p) : product_set(p, p);
    RSet target = sumset(half, half);
    out.target_sq = mpz_class(static_cast<long>(target.size()));
    out.target_sq *= static_cast<long>(target.size());
    out.slopes_used = d.slopes.size();
    out.record = make_exact(id, Direction::upper, Rational(out.chain_sum),
                            Rational(out.target_sq), digest_sets({&a}),
                            note.empty() ? "threshold=" + threshold.str()
                                         : note + ";threshold=" + threshold.str());
    return out;
}

// ---------------------------------------------------------------------
// #{x : |A ∩ xB| >= tau} against |A+A||B+B|/tau^2.
// ---------------------------------------------------------------------
struct TauCountResult {
    long long count = 0;
    Rational rhs_core;
    CheckRecord record;
};

inline TauCountResult tau_popularity_count(const RSet& a, const RSet& b, long long tau) {
    if (tau < 1) throw DomainError("tau_popularity_count: tau must be >= 1");
    if (b.contains_zero()) throw DomainError("tau_popularity_count: 0 in B");
    if (a.empty() || b.empty()) throw DomainError("tau_popularity_count: empty input");
    CountMap corr = convolution(a, b, Operation::multiplicative, ConvKind::correlation);
    TauCountResult out;
    for (const auto& [x, r] : corr) {
        // At x = 0 (possible when 0 in A) the dilate xB collapses to {0},
        // so the set size is 1 regardless of the pair count.
        long long effective = x.is_zero() ? 1 : r;
        if (effective >= tau) ++out.count;
    }
    mpz_class t(static_cast<long>(tau));
    out.rhs_core = Rational(mpz_class(static_cast<long>(sumset(a, a).size())) *
                                static_cast<long>(sumset(b, b).size()),
                            t * t);
    out.record = make_measured("solymosi.tau_count", Direction::upper,
                               ReportValue(Rational(static_cast<long>(out.count))),
                               ReportValue(out.rhs_core), digest_sets({&a, &b}),
                               "tau=" + std::to_string(tau));
    return out;
}

// ---------------------------------------------------------------------
// Inclusion of A * fiber inside an intersection of dilates of AA (and the
// ratio analogue). With the fiber convention A_s = A ∩ A s^{-1} the
// orientation that holds is A·A_s ⊆ AA ∩ s^{-1}AA and A:A_s ⊆ (A:A) ∩
// s(A:A); the record also reports whether the opposite (as-printed)
// orientation happens to hold on this instance.
// ---------------------------------------------------------------------
inline CheckRecord katz_koester_check(const RSet& a, const Rational& s) {
    if (a.contains_zero()) throw DomainError("katz_koester_check: set contains 0");
    if (s.is_zero()) throw DomainError("katz_koester_check: s = 0");
    RSet f = fiber(a, s, Operation::multiplicative);
    std::string digest = digest_sets({&a});
    if (f.empty()) {
        CheckRecord r = make_exact("kk.inclusion", Direction::upper, Rational(0), Rational(0),
                                   digest, "s=" + s.str() + ";empty fiber");
        return r;
    }
    RSet aa = product_set(a, a);
    RSet qq = ratio_set(a, a);
    RSet af = product_set(a, f);
    RSet rf = ratio_set(a, f);

    RSet verified_prod = aa.intersect(dilate(aa, s.inverse()));
    RSet verified_rat = qq.intersect(dilate(qq, s));
    RSet printed_prod = aa.intersect(dilate(aa, s));
    RSet printed_rat = qq.intersect(dilate(qq, s.inverse()));

    bool ok = af.subset_of(verified_prod) && rf.subset_of(verified_rat);
    bool printed_ok = af.subset_of(printed_prod) && rf.subset_of(printed_rat);

    CheckRecord r;
    r.check_id = "kk.inclusion";
    r.kind = CheckKind::exact;
    r.direction = Direction::upper;
    r.lhs = ReportValue(Rational(static_cast<long>(af.size())));
    r.rhs_core = ReportValue(Rational(static_cast<long>(verified_prod.size())));
    r.ratio = safe_ratio(r.lhs.approx, r.rhs_core.approx);
    r.verdict = ok ? Verdict::pass : Verdict::fail;
    r.inputs_digest = digest;
    r.note = "s=" + s.str() + ";as_printed=" + (printed_ok ? "holds" : "fails");
    return r;
}

// |C||A-B| <= |A×B - Δ(C)| <= |A-C||B-C|, all exact.
inline CheckRecord ruzsa_triangle_check(const RSet& a, const RSet& b, const RSet& c) {
    mpz_class lower(static_cast<long>(c.size()));
    lower *= static_cast<long>(difference_set(a, b).size());
    PlanarSet mid_set = planar_setop(cartesian(a, b), diagonal(c), PlanarOpKind::difference);
    mpz_class mid(static_cast<long>(mid_set.size()));
    mpz_class upper(static_cast<long>(difference_set(a, c).size()));
    upper *= static_cast<long>(difference_set(b, c).size());

    CheckRecord r = make_exact("ruzsa.triangle", Direction::upper, Rational(mid),
                               Rational(upper), digest_sets({&a, &b, &c}),
                               "lower=" + lower.get_str() + ";mid=" + mid.get_str() +
                                   ";upper=" + upper.get_str());
    if (Rational(lower) > Rational(mid)) r.verdict = Verdict::fail;
    return r;
}

// Witness chain bounding the doubling functional of AA: with X ⊆ C the
// multiplicative Petridis minimizer, |AAX|^2/(|AA||X|) <= |AC|^4/(|AA||C|^3).
inline CheckRecord d_product_bound_check(const RSet& a, const RSet& c, int cap = 18) {
    if (a.empty() || c.empty()) throw DomainError("d_product_bound_check: empty input");
    if (a.contains_zero() || c.contains_zero())
        throw DomainError("d_product_bound_check: inputs must be 0-free");
    MagnificationResult mag = magnification_ratio(c, a, Operation::multiplicative, cap);
    const RSet& x = mag.minimizer;
    RSet aa = product_set(a, a);
    mpz_class aax(static_cast<long>(product_set(aa, x).size()));
    mpz_class ac(static_cast<long>(product_set(a, c).size()));
    mpz_class aa_sz(static_cast<long>(aa.size()));
    mpz_class c_sz(static_cast<long>(c.size()));
    Rational lhs(aax * aax, aa_sz * static_cast<long>(x.size()));
    mpz_class ac4 = ac * ac;
    ac4 *= ac4;
    Rational rhs(ac4, aa_sz * c_sz * c_sz * c_sz);
    return make_exact("dbound.product_set", Direction::upper, lhs, rhs,
                      digest_sets({&a, &c}),
                      "R=" + mag.ratio.str() + ";|X|=" + std::to_string(x.size()));
}

}  // namespace sumprod
