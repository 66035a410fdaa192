#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sumprod/check_record.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/parallel.hpp"
#include "sumprod/quantities.hpp"
#include "sumprod/rset.hpp"
#include "sumprod/setops.hpp"

namespace sumprod {

// -----------------------------------------------------------------------
// Check registry: one entry per labeled inequality, exact where the
// statement is exact, measured where it hides an absolute constant.
// -----------------------------------------------------------------------
struct RegistryEntry {
    std::string id;
    std::string formula;  // which displayed inequality the check instantiates
    CheckKind kind;
    std::string description;
};

inline const std::vector<RegistryEntry>& check_registry() {
    static const std::vector<RegistryEntry> registry = {
        {"ruzsa.triangle", "ruzsa.triangle", CheckKind::exact,
         "|C||A-B| <= |AxB - diag(C)| <= |A-C||B-C|"},
        {"petridis.sumset", "petridis.sumset", CheckKind::exact,
         "|B+C+X| <= R_B[A]|C+X| at the magnification minimizer X"},
        {"dbound.inversion", "dbound.inversion", CheckKind::exact,
         "doubling bound invariant under elementwise inversion"},
        {"dbound.product_set", "dbound.product_set", CheckKind::exact,
         "|AAX|^2/(|AA||X|) <= |AC|^4/(|AA||C|^3) via multiplicative Petridis"},
        {"szt.levelset", "szt.levelset", CheckKind::measured,
         "sumset level sets vs cubic decay with constant |A| d(A)"},
        {"chain.ratio", "chain.ratio", CheckKind::exact,
         "sum |A_qi| |A_q(i+1):A| <= |A:A+A|^2"},
        {"chain.product", "chain.product", CheckKind::exact,
         "sum |A_qi| |A A_q(i+1)| <= |AA+A|^2"},
        {"pair_chain.ratio", "pair_chain.ratio", CheckKind::exact,
         "sum |A_qi:A||A_q(i+1):A| <= |A:A+A:A|^2 over popular slopes"},
        {"pair_chain.product", "pair_chain.product", CheckKind::exact,
         "sum |A A_qi||A A_q(i+1)| <= |AA+AA|^2 over popular slopes"},
        {"li.energy_cubed", "li.energy_cubed", CheckKind::measured,
         "E(A)^3 vs E_{3/2}(A)^2 c(A) |A|^2"},
        {"li.energy", "li.energy", CheckKind::measured, "E(A) vs c(A)^{1/2} |A|^2"},
        {"li.triple_correlation", "li.triple_correlation", CheckKind::measured,
         "triple correlation vs (c c c)^{1/3} (nnn)^{2/3} log"},
        {"solymosi.tau_count", "solymosi.tau_count", CheckKind::measured,
         "#{x : |A ∩ xB| >= tau} vs |A+A||B+B|/tau^2"},
        {"solymosi.mult_energy", "solymosi.mult_energy", CheckKind::measured,
         "E_x(A,B) vs |A+A||B+B| log"},
        {"szt.sum_diff", "szt.sum_diff", CheckKind::measured,
         "|A ± A*| vs the max/min doubling expression"},
        {"growth.ratio_set_sum", "growth.ratio_set_sum", CheckKind::measured,
         "|A:A+A| vs |A|^{3/2+1/82} (log|A|)^{-2/41}"},
        {"growth.product_set_sum", "growth.product_set_sum", CheckKind::measured,
         "|AA+A| vs |AA|^{11/41}|A:A|^{-11/41}|A|^{62/41}(log|A|)^{-2/41}"},
        {"growth.product_set_sum_energy", "growth.product_set_sum_energy", CheckKind::measured,
         "|AA+A| vs |AA|^{11/41}|A|^{-4/41}E_x3/2^{22/41}(log|A|)^{-2/41}"},
        {"growth.ratio_pair_sum", "growth.ratio_pair_sum", CheckKind::measured,
         "|A:A+A:A| vs |A:A|^{14/29}|A|^{30/29}(log|A|)^{-2/29}"},
        {"growth.product_pair_sum", "growth.product_pair_sum", CheckKind::measured,
         "|AA+AA| vs |AA|^{19/29}|A:A|^{-5/29}|A|^{30/29}(log|A|)^{-2/29}"},
        {"quad.mixed_energy", "quad.mixed_energy", CheckKind::measured,
         "|AA+A|^4, |A:A+A|^4 vs |A|^{-2} E_x3/2^2 E+_3 / log"},
        {"square.third_energy", "square.third_energy", CheckKind::measured,
         "|AA+AA|^2, |A:A+A:A|^2 vs E+_3 / log"},
        {"quad.size_only", "quad.size_only", CheckKind::measured,
         "|AA+A|^4, |A:A+A|^4 vs |A|^{10}/(|A:A||A-A|^2)"},
        {"square.size_only", "square.size_only", CheckKind::measured,
         "|AA+AA|^2, |A:A+A:A|^2 vs |A|^6/|A-A|^2"},
        {"kk.inclusion", "kk.inclusion", CheckKind::exact,
         "A A_s ⊆ AA ∩ s^{-1}AA and A:A_s ⊆ A:A ∩ s(A:A)"},
        {"remark.energy_vs_products", "remark.energy_vs_products", CheckKind::measured,
         "E+(A) vs |A||AA+AA|"},
        {"remark.mixed_energies", "remark.mixed_energies", CheckKind::measured,
         "E+(A)^{3/2} E_x3/2(A) vs E+_{3/2}(A)|A||AA+A|^2"},
        {"balog.scalar1", "balog.scalar1", CheckKind::measured,
         "|AC+A||BC+B| vs |A||B||C|"},
        {"balog.scalar2", "balog.scalar2", CheckKind::measured,
         "|AC+AD||BC+BD| vs |B:A||C||D|"},
        {"balog.planar", "balog.planar", CheckKind::measured,
         "|(AxB)·diag(C) + AxB| vs |A||B||C|"},
        {"rnz.growth_condition", "rnz.growth_condition", CheckKind::measured,
         "|(A±A)(A±A)+(A±A)(A±A)| vs |A|^2"},
        {"rnz.energy_condition", "rnz.energy_condition", CheckKind::measured,
         "E+(A)|A-A| vs |A|^4"},
        {"rnz.difference_bound", "rnz.difference_bound", CheckKind::measured,
         "|A-A| vs |A| log^{4/7}|A|"},
        {"rnz.sum_diff_log", "rnz.sum_diff_log", CheckKind::measured,
         "max(|A+A|,|A-A|) vs |A| log|A|"},
        {"rnz.diff_log", "rnz.diff_log", CheckKind::measured, "|A-A| vs |A| log|A|"},
    };
    return registry;
}

inline const RegistryEntry* registry_find(const std::string& id) {
    for (const auto& e : check_registry())
        if (e.id == id) return &e;
    return nullptr;
}

namespace detail {
inline double log2n(std::size_t n) { return std::log2(static_cast<double>(n)); }

inline std::pair<RSet, std::string> zero_free(const RSet& a) {
    RSet p = a.without_zero();
    std::string note;
    if (p.size() != a.size()) note = "dropped 0";
    return {std::move(p), std::move(note)};
}

inline std::string join_note(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + ";" + b;
}
}  // namespace detail

// --- Balog-type lower bounds --------------------------------------------

inline std::pair<CheckRecord, CheckRecord> check_balog_scalar(const RSet& a, const RSet& b,
                                                              const RSet& c, const RSet& d) {
    if (a.empty() || b.empty() || c.empty() || d.empty())
        throw DomainError("check_balog_scalar: empty input");
    mpz_class lhs1(static_cast<long>(sumset(product_set(a, c), a).size()));
    lhs1 *= static_cast<long>(sumset(product_set(b, c), b).size());
    mpz_class rhs1(static_cast<long>(a.size()));
    rhs1 *= static_cast<long>(b.size());
    rhs1 *= static_cast<long>(c.size());
    CheckRecord r1 = make_measured("balog.scalar1", Direction::lower, ReportValue(Rational(lhs1)),
                                   ReportValue(Rational(rhs1)), digest_sets({&a, &b, &c}));

    auto [af, note] = detail::zero_free(a);
    CheckRecord r2;
    if (af.empty()) {
        r2 = make_skipped("balog.scalar2", digest_sets({&a, &b, &c, &d}), "A = {0}");
    } else {
        mpz_class lhs2(
            static_cast<long>(sumset(product_set(af, c), product_set(af, d)).size()));
        lhs2 *= static_cast<long>(sumset(product_set(b, c), product_set(b, d)).size());
        mpz_class rhs2(static_cast<long>(ratio_set(b, af).size()));
        rhs2 *= static_cast<long>(c.size());
        rhs2 *= static_cast<long>(d.size());
        r2 = make_measured("balog.scalar2", Direction::lower, ReportValue(Rational(lhs2)),
                           ReportValue(Rational(rhs2)), digest_sets({&a, &b, &c, &d}), note);
    }
    return {std::move(r1), std::move(r2)};
}

inline CheckRecord check_balog_planar(const RSet& a, const RSet& b, const RSet& c,
                                      double pairop_limit = 2e7) {
    if (a.empty() || b.empty() || c.empty()) throw DomainError("check_balog_planar: empty input");
    if (c.contains_zero()) throw DomainError("check_balog_planar: 0 in C");
    double cost = static_cast<double>(a.size()) * b.size() * c.size() *
                  static_cast<double>(a.size()) * b.size();
    if (cost > pairop_limit)
        throw ResourceError("check_balog_planar: planar sum too large");
    PlanarSet grid = cartesian(a, b);
    PlanarSet scaled = planar_setop(grid, diagonal(c), PlanarOpKind::coordinate_product);
    PlanarSet total = planar_setop(scaled, grid, PlanarOpKind::sum);
    mpz_class rhs(static_cast<long>(a.size()));
    rhs *= static_cast<long>(b.size());
    rhs *= static_cast<long>(c.size());
    return make_measured("balog.planar", Direction::lower,
                         ReportValue(Rational(static_cast<long>(total.size()))),
                         ReportValue(Rational(rhs)), digest_sets({&a, &b, &c}));
}

// --- main growth bounds ----------------------------------------------------

inline std::vector<CheckRecord> check_main_theorems(const RSet& a) {
    auto [p, note] = detail::zero_free(a);
    std::string digest = digest_sets({&a});
    std::vector<CheckRecord> out;
    const char* ids[5] = {"growth.ratio_set_sum", "growth.product_set_sum",
                          "growth.product_set_sum_energy", "growth.ratio_pair_sum",
                          "growth.product_pair_sum"};
    if (p.size() < 2) {
        for (const char* id : ids) out.push_back(make_skipped(id, digest, "|A| < 2 after dropping 0"));
        return out;
    }
    const double n = static_cast<double>(p.size());
    const double l = detail::log2n(p.size());
    RSet qa = ratio_set(p, p);
    RSet aa = product_set(p, p);
    double qa_sz = static_cast<double>(qa.size());
    double aa_sz = static_cast<double>(aa.size());
    mpz_class lr(static_cast<long>(sumset(qa, p).size()));
    mpz_class lp(static_cast<long>(sumset(aa, p).size()));
    mpz_class sr(static_cast<long>(sumset(qa, qa).size()));
    mpz_class sp(static_cast<long>(sumset(aa, aa).size()));
    double e32x = energy(p, EnergySpec(Operation::multiplicative, Rational(3, 2))).to_double();

    out.push_back(make_measured(ids[0], Direction::lower, ReportValue(Rational(lr)),
                                std::pow(n, 1.5 + 1.0 / 82) * std::pow(l, -2.0 / 41), digest, note));
    // Unconditional form; the introduction's hypothesis |A:A| << |AA| is
    // recorded as metadata on the instance.
    Rational intro_cond(static_cast<long>(qa.size()), static_cast<long>(aa.size()));
    out.push_back(make_measured(ids[1], Direction::lower, ReportValue(Rational(lp)),
                                std::pow(aa_sz, 11.0 / 41) * std::pow(qa_sz, -11.0 / 41) *
                                    std::pow(n, 62.0 / 41) * std::pow(l, -2.0 / 41),
                                digest,
                                detail::join_note(note, "ratio_over_product=" + intro_cond.str())));
    out.push_back(make_measured(ids[2], Direction::lower, ReportValue(Rational(lp)),
                                std::pow(aa_sz, 11.0 / 41) * std::pow(n, -4.0 / 41) *
                                    std::pow(e32x, 22.0 / 41) * std::pow(l, -2.0 / 41),
                                digest, note));
    out.push_back(make_measured(ids[3], Direction::lower, ReportValue(Rational(sr)),
                                std::pow(qa_sz, 14.0 / 29) * std::pow(n, 30.0 / 29) *
                                    std::pow(l, -2.0 / 29),
                                digest, note));
    out.push_back(make_measured(ids[4], Direction::lower, ReportValue(Rational(sp)),
                                std::pow(aa_sz, 19.0 / 29) * std::pow(qa_sz, -5.0 / 29) *
                                    std::pow(n, 30.0 / 29) * std::pow(l, -2.0 / 29),
                                digest, note));
    return out;
}

// --- energy bounds for SzT-type sets ----------------------------------------

inline std::vector<CheckRecord> check_li_lemma(const RSet& a, const RSet& b, const RSet& c) {
    std::vector<CheckRecord> out;
    std::string digest3 = digest_sets({&a, &b, &c});
    auto [pa, na] = detail::zero_free(a);
    auto [pb, nb] = detail::zero_free(b);
    auto [pc, nc] = detail::zero_free(c);
    std::string digest = digest_sets({&a});
    if (pa.empty() || pb.empty() || pc.empty()) {
        out.push_back(make_skipped("li.energy_cubed", digest, "empty after dropping 0"));
        out.push_back(make_skipped("li.energy", digest, "empty after dropping 0"));
        out.push_back(make_skipped("li.triple_correlation", digest3, "empty after dropping 0"));
        return out;
    }
    auto cval = [](const RSet& x) {
        return static_cast<double>(x.size()) * doubling_bound(x).value.to_double();
    };
    double ca = cval(pa);
    double nn = static_cast<double>(pa.size());
    double e2 = energy_int(pa, 2, Operation::additive).get_d();
    double e32 = energy(pa, EnergySpec(Operation::additive, Rational(3, 2))).to_double();

    out.push_back(make_measured("li.energy_cubed", Direction::upper, e2 * e2 * e2,
                                e32 * e32 * ca * nn * nn, digest, na));
    out.push_back(make_measured("li.energy", Direction::upper, e2,
                                std::sqrt(ca) * nn * nn, digest, na));

    std::size_t min_sz = std::min({pa.size(), pb.size(), pc.size()});
    if (min_sz < 2) {
        out.push_back(make_skipped("li.triple_correlation", digest3, "log factor vanishes, |.| < 2"));
        return out;
    }
    double lhs = triple_correlation(pa, pb, pc, Operation::additive).get_d();
    double rhs = std::cbrt(ca * cval(pb) * cval(pc)) *
                 std::pow(nn * static_cast<double>(pb.size()) * static_cast<double>(pc.size()),
                          2.0 / 3) *
                 detail::log2n(min_sz);
    out.push_back(make_measured("li.triple_correlation", Direction::upper, lhs, rhs, digest3,
                                detail::join_note(na, detail::join_note(nb, nc))));
    return out;
}

// --- the imported sum-difference bound ---------------------------------------

enum class DiffSign { plus, minus };

inline CheckRecord check_main_diff(const RSet& a, const RSet& a_star, DiffSign sign) {
    std::string digest = digest_sets({&a, &a_star});
    auto [pa, na] = detail::zero_free(a);
    auto [ps, ns] = detail::zero_free(a_star);
    std::string note = detail::join_note(na, ns);
    note = detail::join_note(note, sign == DiffSign::plus ? "sign=+" : "sign=-");
    if (pa.size() < 2 || ps.size() < 2)
        return make_skipped("szt.sum_diff", digest, detail::join_note(note, "degenerate: |.| < 2"));
    double da = doubling_bound(pa).value.to_double();
    double ds = doubling_bound(ps).value.to_double();
    double n1 = static_cast<double>(pa.size());
    double n2 = static_cast<double>(ps.size());
    double term1 = std::pow(ds, -1.0 / 3) * std::pow(da, -2.0 / 9) * std::pow(n2, 8.0 / 9) *
                   std::pow(n1, 2.0 / 3);
    double term2 = std::pow(da, -1.0 / 3) * std::pow(ds, -2.0 / 9) * std::pow(n1, 8.0 / 9) *
                   std::pow(n2, 2.0 / 3);
    double term3 = std::min(std::pow(ds, -2.0 / 27) * std::pow(da, -13.0 / 27) * std::pow(n2, 14.0 / 9),
                            std::pow(da, -2.0 / 27) * std::pow(ds, -13.0 / 27) * std::pow(n1, 14.0 / 9));
    double rhs = std::max({term1, term2, term3}) * std::pow(std::log2(n1 * n2), -2.0 / 9);
    RSet image = sign == DiffSign::plus ? sumset(pa, ps) : difference_set(pa, ps);
    return make_measured("szt.sum_diff", Direction::lower,
                         ReportValue(Rational(static_cast<long>(image.size()))), rhs, digest, note);
}

// --- fourth/second power bounds ----------------------------------------------

inline std::vector<CheckRecord> check_proposition1(const RSet& a) {
    auto [p, note] = detail::zero_free(a);
    std::string digest = digest_sets({&a});
    std::vector<CheckRecord> out;
    const char* ids[4] = {"quad.mixed_energy", "square.third_energy", "quad.size_only",
                          "square.size_only"};
    if (p.size() < 2) {
        for (const char* id : ids) out.push_back(make_skipped(id, digest, "|A| < 2 after dropping 0"));
        return out;
    }
    const double n = static_cast<double>(p.size());
    const double l = detail::log2n(p.size());
    RSet aa = product_set(p, p);
    RSet qa = ratio_set(p, p);
    double lp = static_cast<double>(sumset(aa, p).size());
    double lr = static_cast<double>(sumset(qa, p).size());
    double sp = static_cast<double>(sumset(aa, aa).size());
    double sr = static_cast<double>(sumset(qa, qa).size());
    double e32x = energy(p, EnergySpec(Operation::multiplicative, Rational(3, 2))).to_double();
    double e3 = energy_int(p, 3, Operation::additive).get_d();
    double diff_sz = static_cast<double>(difference_set(p, p).size());

    double rhs_mixed = e32x * e32x * e3 / (n * n * l);
    double rhs_third = e3 / l;
    double rhs_q10 = std::pow(n, 10) / (static_cast<double>(qa.size()) * diff_sz * diff_sz);
    double rhs_n6 = std::pow(n, 6) / (diff_sz * diff_sz);
    auto both = [&](const char* id, double pv, double rv, double rhs) {
        out.push_back(make_measured(id, Direction::lower, pv, rhs, digest,
                                    detail::join_note(note, "variant=product")));
        out.push_back(make_measured(id, Direction::lower, rv, rhs, digest,
                                    detail::join_note(note, "variant=ratio")));
    };
    both(ids[0], std::pow(lp, 4), std::pow(lr, 4), rhs_mixed);
    both(ids[1], sp * sp, sr * sr, rhs_third);
    both(ids[2], std::pow(lp, 4), std::pow(lr, 4), rhs_q10);
    both(ids[3], sp * sp, sr * sr, rhs_n6);
    return out;
}

inline std::pair<CheckRecord, CheckRecord> check_remark_energy(const RSet& a) {
    auto [p, note] = detail::zero_free(a);
    std::string digest = digest_sets({&a});
    if (p.empty())
        return {make_skipped("remark.energy_vs_products", digest, "empty after dropping 0"),
                make_skipped("remark.mixed_energies", digest, "empty after dropping 0")};
    double n = static_cast<double>(p.size());
    RSet aa = product_set(p, p);
    double e2 = energy_int(p, 2, Operation::additive).get_d();
    double sp = static_cast<double>(sumset(aa, aa).size());
    double lp = static_cast<double>(sumset(aa, p).size());
    double e32x = energy(p, EnergySpec(Operation::multiplicative, Rational(3, 2))).to_double();
    double e32p = energy(p, EnergySpec(Operation::additive, Rational(3, 2))).to_double();
    CheckRecord r1 = make_measured("remark.energy_vs_products", Direction::upper, e2, n * sp,
                                   digest, note);
    CheckRecord r2 = make_measured("remark.mixed_energies", Direction::upper,
                                   std::pow(e2, 1.5) * e32x, e32p * n * lp * lp, digest, note);
    return {std::move(r1), std::move(r2)};
}

// --- Roche-Newton--Zhelezov style implication instance ------------------------

inline std::vector<CheckRecord> check_rnz_corollary(const RSet& a, double pairop_limit = 2e7) {
    std::string digest = digest_sets({&a});
    std::vector<CheckRecord> out;
    if (a.size() < 2) {
        for (const char* id : {"rnz.growth_condition", "rnz.energy_condition",
                               "rnz.difference_bound", "rnz.sum_diff_log", "rnz.diff_log"})
            out.push_back(make_skipped(id, digest, "|A| < 2"));
        return out;
    }
    const double n = static_cast<double>(a.size());
    const double l = detail::log2n(a.size());
    RSet s = sumset(a, a);
    RSet d = difference_set(a, a);
    auto growth_record = [&](const RSet& base, const char* variant) {
        double products = static_cast<double>(base.size()) * base.size();
        // the sum of the product set with itself squares the work again
        RSet bb = product_set(base, base);
        double cost = static_cast<double>(bb.size()) * bb.size();
        if (products > pairop_limit || cost > pairop_limit) {
            out.push_back(make_skipped("rnz.growth_condition", digest,
                                       std::string("variant=") + variant + ";cost cap"));
            return;
        }
        mpz_class lhs(static_cast<long>(sumset(bb, bb).size()));
        out.push_back(make_measured("rnz.growth_condition", Direction::upper,
                                    ReportValue(Rational(lhs)), n * n, digest,
                                    std::string("variant=") + variant));
    };
    growth_record(s, "plus");
    growth_record(d, "minus");
    double e2 = energy_int(a, 2, Operation::additive).get_d();
    double dsz = static_cast<double>(d.size());
    double ssz = static_cast<double>(s.size());
    out.push_back(make_measured("rnz.energy_condition", Direction::upper, e2 * dsz,
                                std::pow(n, 4), digest));
    out.push_back(make_measured("rnz.difference_bound", Direction::upper, dsz,
                                n * std::pow(l, 4.0 / 7), digest));
    out.push_back(make_measured("rnz.sum_diff_log", Direction::upper, std::max(ssz, dsz), n * l,
                                digest));
    out.push_back(make_measured("rnz.diff_log", Direction::upper, dsz, n * l, digest));
    return out;
}

// --- Solymosi multiplicative-energy bound -------------------------------------

inline CheckRecord check_solymosi_energy(const RSet& a, const RSet& b) {
    std::string digest = digest_sets({&a, &b});
    auto [pa, na] = detail::zero_free(a);
    auto [pb, nb] = detail::zero_free(b);
    std::string note = detail::join_note(na, nb);
    if (pa.size() < 2 || pb.size() < 2)
        return make_skipped("solymosi.mult_energy", digest,
                            detail::join_note(note, "log factor vanishes, |.| < 2"));
    double lhs = cross_energy(pa, pb, Operation::multiplicative).get_d();
    double rhs = static_cast<double>(sumset(pa, pa).size()) *
                 static_cast<double>(sumset(pb, pb).size()) *
                 detail::log2n(std::min(pa.size(), pb.size()));
    return make_measured("solymosi.mult_energy", Direction::upper, lhs, rhs, digest, note);
}

// --- doubling-bound inversion symmetry ----------------------------------------

inline CheckRecord check_d_inversion(const RSet& a) {
    std::string digest = digest_sets({&a});
    auto [p, note] = detail::zero_free(a);
    if (p.empty()) return make_skipped("dbound.inversion", digest, "empty after dropping 0");
    DoublingWitness w1 = doubling_bound(p);
    DoublingWitness w2 = doubling_bound(p.inverse());
    CheckRecord r;
    r.check_id = "dbound.inversion";
    r.kind = CheckKind::exact;
    r.direction = Direction::upper;
    r.lhs = ReportValue(w1.value);
    r.rhs_core = ReportValue(w2.value);
    r.ratio = safe_ratio(r.lhs.approx, r.rhs_core.approx);
    r.verdict = w1.value == w2.value ? Verdict::pass : Verdict::fail;
    r.inputs_digest = digest;
    r.note = detail::join_note(note, "witness=" + w1.family_tag);
    return r;
}

// -----------------------------------------------------------------------
// Suite runner: applies every registered check to a corpus, in parallel
// over (instance, check) tasks, merging deterministically.
// -----------------------------------------------------------------------
struct CorpusMember {
    std::string name;
    RSet set;
};

struct SuiteConfig {
    std::vector<FamilySpec> corpus;
    std::vector<std::string> registry_filter;  // empty = everything
    int jobs = 1;
    int magnification_cap = 18;
    double pairop_limit = 2e7;
    std::size_t kk_slope_cap = 400;
};

struct CheckSummary {
    std::string check_id;
    long count = 0;
    double min_ratio = 0, max_ratio = 0, median_ratio = 0;
};

struct SuiteResult {
    std::string corpus_tag;
    std::vector<CheckRecord> records;
    std::vector<CheckSummary> summaries;
    long exact_failures = 0;
    double min_lower_ratio = 0;  // over measured lower-bound records
};

// Exact-check failure with enough context to reproduce the instance.
struct SuiteAbort : std::runtime_error {
    CheckRecord record;
    std::string reproducer;
    SuiteAbort(CheckRecord r, std::string repro)
        : std::runtime_error("exact check failed: " + r.check_id + " [" + r.inputs_digest +
                             "] inputs: " + repro),
          record(std::move(r)),
          reproducer(std::move(repro)) {}
};

inline std::vector<FamilySpec> default_corpus(std::uint64_t seed) {
    std::vector<FamilySpec> specs;
    for (long n : {8L, 16L, 24L}) {
        FamilySpec ap;
        ap.kind = FamilyKind::ap;
        ap.n = n;
        specs.push_back(ap);
        FamilySpec gp;
        gp.kind = FamilyKind::gp;
        gp.n = n;
        specs.push_back(gp);
        FamilySpec rnd;
        rnd.kind = FamilyKind::random_int;
        rnd.n = n;
        rnd.lo = 1;
        rnd.hi = 1000;
        rnd.seed = mix_seed(seed, static_cast<std::uint64_t>(n));
        specs.push_back(rnd);
    }
    return specs;
}

inline std::vector<CorpusMember> build_corpus(const std::vector<FamilySpec>& specs) {
    std::vector<CorpusMember> members;
    members.reserve(specs.size());
    for (const auto& s : specs) members.push_back({s.str(), generate(s)});
    return members;
}

namespace detail {

struct SuiteTask {
    std::string group;
    std::vector<std::size_t> members;
};

inline void tag_records(std::vector<CheckRecord>& rs, const std::string& names) {
    for (auto& r : rs) r.note = join_note("on=" + names, r.note);
}

}  // namespace detail

inline SuiteResult run_suite(const SuiteConfig& cfg) {
    std::vector<CorpusMember> corpus = build_corpus(cfg.corpus);
    const std::size_t n = corpus.size();

    std::set<std::string> wanted;
    for (const auto& id : cfg.registry_filter) wanted.insert(id);
    auto id_wanted = [&](const std::string& id) {
        return wanted.empty() || wanted.count(id) > 0;
    };
    auto group_wanted = [&](std::initializer_list<const char*> ids) {
        if (wanted.empty()) return true;
        for (const char* id : ids)
            if (wanted.count(id)) return true;
        return false;
    };

    // Task list: deterministic order; single members, consecutive windows.
    std::vector<detail::SuiteTask> tasks;
    auto add1 = [&](const char* group, std::initializer_list<const char*> ids) {
        if (!group_wanted(ids)) return;
        for (std::size_t i = 0; i < n; ++i) tasks.push_back({group, {i}});
    };
    auto add2 = [&](const char* group, std::initializer_list<const char*> ids) {
        if (!group_wanted(ids)) return;
        for (std::size_t i = 0; i < n; ++i) tasks.push_back({group, {i, i}});
        for (std::size_t i = 0; i + 1 < n; ++i) tasks.push_back({group, {i, i + 1}});
    };
    auto add3 = [&](const char* group, std::initializer_list<const char*> ids) {
        if (!group_wanted(ids)) return;
        for (std::size_t i = 0; i < n; ++i) tasks.push_back({group, {i, i, i}});
        for (std::size_t i = 0; i + 2 < n; ++i) tasks.push_back({group, {i, i + 1, i + 2}});
    };
    auto add4 = [&](const char* group, std::initializer_list<const char*> ids) {
        if (!group_wanted(ids)) return;
        for (std::size_t i = 0; i < n; ++i) tasks.push_back({group, {i, i, i, i}});
        for (std::size_t i = 0; i + 3 < n; ++i)
            tasks.push_back({group, {i, i + 1, i + 2, i + 3}});
    };

    add3("ruzsa", {"ruzsa.triangle"});
    add3("petridis", {"petridis.sumset"});
    add1("dinv", {"dbound.inversion"});
    add2("dprod", {"dbound.product_set"});
    add2("szt", {"szt.levelset"});
    add1("chains", {"chain.ratio", "chain.product", "pair_chain.ratio", "pair_chain.product"});
    add3("li", {"li.energy_cubed", "li.energy", "li.triple_correlation"});
    add2("tau", {"solymosi.tau_count"});
    add2("solyE", {"solymosi.mult_energy"});
    add2("maindiff", {"szt.sum_diff"});
    add1("maindiff_ratio", {"szt.sum_diff"});
    add1("growth", {"growth.ratio_set_sum", "growth.product_set_sum",
                    "growth.product_set_sum_energy", "growth.ratio_pair_sum",
                    "growth.product_pair_sum"});
    add1("prop1", {"quad.mixed_energy", "square.third_energy", "quad.size_only",
                   "square.size_only"});
    add1("kk", {"kk.inclusion"});
    add1("remark", {"remark.energy_vs_products", "remark.mixed_energies"});
    add4("balog", {"balog.scalar1", "balog.scalar2"});
    add3("balog_planar", {"balog.planar"});
    add1("rnz", {"rnz.growth_condition", "rnz.energy_condition", "rnz.difference_bound",
                 "rnz.sum_diff_log", "rnz.diff_log"});

    std::vector<std::vector<CheckRecord>> slots(tasks.size());
    std::vector<std::string> reproducers(tasks.size());

    parallel_for(cfg.jobs, tasks.size(), [&](std::size_t t) {
        const detail::SuiteTask& task = tasks[t];
        auto member = [&](std::size_t k) -> const RSet& { return corpus[task.members[k]].set; };
        std::string names;
        std::string repro;
        for (std::size_t k = 0; k < task.members.size(); ++k) {
            if (k) names += "|";
            names += corpus[task.members[k]].name;
            repro += corpus[task.members[k]].name + "=" +
                     corpus[task.members[k]].set.str() + " ";
        }
        reproducers[t] = repro;
        std::vector<CheckRecord>& rs = slots[t];
        auto guard = [&](std::initializer_list<const char*> ids, auto&& fn) {
            try {
                fn();
            } catch (const DomainError& e) {
                for (const char* id : ids) rs.push_back(make_skipped(id, "", e.what()));
            } catch (const ResourceError& e) {
                for (const char* id : ids) rs.push_back(make_skipped(id, "", e.what()));
            }
        };
        if (task.group == "ruzsa") {
            guard({"ruzsa.triangle"},
                  [&] { rs.push_back(ruzsa_triangle_check(member(0), member(1), member(2))); });
        } else if (task.group == "petridis") {
            guard({"petridis.sumset"}, [&] {
                rs.push_back(petridis_check(member(0), member(1), member(2), cfg.magnification_cap));
            });
        } else if (task.group == "dinv") {
            guard({"dbound.inversion"}, [&] { rs.push_back(check_d_inversion(member(0))); });
        } else if (task.group == "dprod") {
            guard({"dbound.product_set"}, [&] {
                RSet a = member(0).without_zero();
                RSet c = member(1).without_zero();
                if (static_cast<int>(c.size()) > cfg.magnification_cap)
                    throw ResourceError("dbound.product_set: |C| above magnification cap");
                rs.push_back(d_product_bound_check(a, c, cfg.magnification_cap));
            });
        } else if (task.group == "szt") {
            guard({"szt.levelset"}, [&] {
                SzTReport rep = szt_level_sets(member(0), member(1));
                rs.push_back(make_measured("szt.levelset", Direction::upper,
                                           ReportValue(rep.max_ratio),
                                           ReportValue(rep.c_theoretical),
                                           digest_sets({&member(0), &member(1)}),
                                           "witness=" + rep.witness.family_tag));
            });
        } else if (task.group == "chains") {
            guard({"chain.ratio"}, [&] { rs.push_back(solymosi_chain(member(0), ChainMode::ratio).record); });
            guard({"chain.product"},
                  [&] { rs.push_back(solymosi_chain(member(0), ChainMode::product).record); });
            guard({"chain.ratio"}, [&] {
                RSet p = member(0).positive_part();
                SlopeFilter f = SlopeFilter::popular(default_popularity_threshold(p));
                CheckRecord r = solymosi_chain(member(0), ChainMode::ratio, f).record;
                r.note = detail::join_note(r.note, "filter=popular");
                rs.push_back(std::move(r));
            });
            guard({"pair_chain.ratio"},
                  [&] { rs.push_back(solymosi_pair_chain(member(0), ChainMode::ratio).record); });
            guard({"pair_chain.product"},
                  [&] { rs.push_back(solymosi_pair_chain(member(0), ChainMode::product).record); });
        } else if (task.group == "li") {
            guard({"li.energy_cubed", "li.energy", "li.triple_correlation"}, [&] {
                for (auto& r : check_li_lemma(member(0), member(1), member(2)))
                    rs.push_back(std::move(r));
            });
        } else if (task.group == "tau") {
            guard({"solymosi.tau_count"}, [&] {
                RSet b = member(1).without_zero();
                if (b.empty()) throw DomainError("tau: B empty after dropping 0");
                long long cap = static_cast<long long>(std::min(member(0).size(), b.size()));
                for (long long tau = 1; tau <= cap; tau *= 2)
                    rs.push_back(tau_popularity_count(member(0), b, tau).record);
            });
        } else if (task.group == "solyE") {
            guard({"solymosi.mult_energy"},
                  [&] { rs.push_back(check_solymosi_energy(member(0), member(1))); });
        } else if (task.group == "maindiff") {
            guard({"szt.sum_diff"}, [&] {
                rs.push_back(check_main_diff(member(0), member(1), DiffSign::plus));
                rs.push_back(check_main_diff(member(0), member(1), DiffSign::minus));
            });
        } else if (task.group == "maindiff_ratio") {
            guard({"szt.sum_diff"}, [&] {
                RSet p = member(0).without_zero();
                if (p.empty()) throw DomainError("maindiff_ratio: empty after dropping 0");
                RSet qa = ratio_set(p, p);
                CheckRecord r = check_main_diff(p, qa, DiffSign::plus);
                r.note = detail::join_note(r.note, "A*=A:A");
                rs.push_back(std::move(r));
            });
        } else if (task.group == "growth") {
            guard({"growth.ratio_set_sum", "growth.product_set_sum",
                   "growth.product_set_sum_energy", "growth.ratio_pair_sum",
                   "growth.product_pair_sum"},
                  [&] {
                      for (auto& r : check_main_theorems(member(0))) rs.push_back(std::move(r));
                  });
        } else if (task.group == "prop1") {
            guard({"quad.mixed_energy", "square.third_energy", "quad.size_only",
                   "square.size_only"},
                  [&] {
                      for (auto& r : check_proposition1(member(0))) rs.push_back(std::move(r));
                  });
        } else if (task.group == "kk") {
            guard({"kk.inclusion"}, [&] {
                RSet p = member(0).without_zero();
                if (p.empty()) throw DomainError("kk: empty after dropping 0");
                RSet slopes = ratio_set(p, p);
                std::size_t stride = slopes.size() > cfg.kk_slope_cap
                                         ? (slopes.size() + cfg.kk_slope_cap - 1) / cfg.kk_slope_cap
                                         : 1;
                for (std::size_t i = 0; i < slopes.size(); i += stride) {
                    CheckRecord r = katz_koester_check(p, slopes[i]);
                    if (stride > 1) r.note = detail::join_note(r.note, "sampled slopes");
                    rs.push_back(std::move(r));
                }
            });
        } else if (task.group == "remark") {
            guard({"remark.energy_vs_products", "remark.mixed_energies"}, [&] {
                auto [r1, r2] = check_remark_energy(member(0));
                rs.push_back(std::move(r1));
                rs.push_back(std::move(r2));
            });
        } else if (task.group == "balog") {
            guard({"balog.scalar1", "balog.scalar2"}, [&] {
                auto [r1, r2] = check_balog_scalar(member(0), member(1), member(2), member(3));
                rs.push_back(std::move(r1));
                rs.push_back(std::move(r2));
            });
        } else if (task.group == "balog_planar") {
            guard({"balog.planar"}, [&] {
                RSet c = member(2).without_zero();
                if (c.empty()) throw DomainError("balog.planar: C empty after dropping 0");
                rs.push_back(check_balog_planar(member(0), member(1), c, cfg.pairop_limit));
            });
        } else if (task.group == "rnz") {
            guard({"rnz.growth_condition", "rnz.energy_condition", "rnz.difference_bound",
                   "rnz.sum_diff_log", "rnz.diff_log"},
                  [&] {
                      for (auto& r : check_rnz_corollary(member(0), cfg.pairop_limit))
                          rs.push_back(std::move(r));
                  });
        }
        detail::tag_records(rs, names);
    });

    SuiteResult result;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (i) result.corpus_tag += "|";
        result.corpus_tag += corpus[i].name;
    }
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        for (auto& r : slots[t]) {
            if (r.failed()) throw SuiteAbort(r, reproducers[t]);
            if (id_wanted(r.check_id)) result.records.push_back(std::move(r));
        }
    }
    std::stable_sort(result.records.begin(), result.records.end(),
                     [](const CheckRecord& x, const CheckRecord& y) {
                         if (x.check_id != y.check_id) return x.check_id < y.check_id;
                         return x.inputs_digest < y.inputs_digest;
                     });

    // Registry coverage: every wanted id appears, or is marked skipped.
    std::set<std::string> seen;
    for (const auto& r : result.records) seen.insert(r.check_id);
    for (const auto& e : check_registry()) {
        if (!id_wanted(e.id) || seen.count(e.id)) continue;
        result.records.push_back(make_skipped(e.id, "", "no applicable corpus instance"));
    }

    // Summaries over measured records.
    std::map<std::string, std::vector<double>> ratios;
    result.min_lower_ratio = 0;
    bool have_lower = false;
    for (const auto& r : result.records) {
        if (r.verdict == Verdict::report_only) {
            ratios[r.check_id].push_back(r.ratio);
            if (r.direction == Direction::lower) {
                if (!have_lower || r.ratio < result.min_lower_ratio)
                    result.min_lower_ratio = r.ratio;
                have_lower = true;
            }
        }
    }
    for (auto& [id, v] : ratios) {
        std::sort(v.begin(), v.end());
        CheckSummary s;
        s.check_id = id;
        s.count = static_cast<long>(v.size());
        s.min_ratio = v.front();
        s.max_ratio = v.back();
        s.median_ratio = v[v.size() / 2];
        result.summaries.push_back(std::move(s));
    }
    return result;
}

}  // namespace sumprod
