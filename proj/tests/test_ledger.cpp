#include <gtest/gtest.h>

#include <set>

#include "sumprod/ledger.hpp"
#include "sumprod/report_json.hpp"

using namespace sumprod;

namespace {

FamilySpec ap(long n) {
    FamilySpec f;
    f.n = n;
    return f;
}

FamilySpec gp(long n) {
    FamilySpec f;
    f.kind = FamilyKind::gp;
    f.n = n;
    return f;
}

FamilySpec rnd(long n, std::uint64_t seed) {
    FamilySpec f;
    f.kind = FamilyKind::random_int;
    f.n = n;
    f.lo = 1;
    f.hi = 200;
    f.seed = seed;
    return f;
}

}  // namespace

// Every displayed inequality of the source material must be covered by at
// least one registered check; this list is maintained independently of the
// registry so deleting a check breaks the build.
TEST(Registry, CoversEveryTrackedInequality) {
    const std::set<std::string> required = {
        "balog.scalar1",        "balog.scalar2",
        "balog.planar",         "growth.ratio_set_sum",
        "growth.product_set_sum", "growth.product_set_sum_energy",
        "growth.ratio_pair_sum", "growth.product_pair_sum",
        "li.energy_cubed",      "li.energy",
        "li.triple_correlation", "szt.sum_diff",
        "quad.mixed_energy",    "square.third_energy",
        "quad.size_only",       "square.size_only",
        "kk.inclusion",         "rnz.growth_condition",
        "rnz.energy_condition", "rnz.difference_bound",
        "rnz.sum_diff_log",     "rnz.diff_log",
        "solymosi.tau_count",   "solymosi.mult_energy",
        "petridis.sumset",      "ruzsa.triangle",
        "remark.energy_vs_products", "remark.mixed_energies",
    };
    std::set<std::string> covered;
    std::set<std::string> ids;
    for (const auto& e : check_registry()) {
        covered.insert(e.formula);
        EXPECT_TRUE(ids.insert(e.id).second) << "duplicate id " << e.id;
    }
    for (const auto& f : required)
        EXPECT_TRUE(covered.count(f)) << "no registered check for " << f;
    EXPECT_TRUE(registry_find("ruzsa.triangle"));
    EXPECT_FALSE(registry_find("nonsense"));
}

TEST(BalogChecks, ScalarInstances) {
    RSet a{Rational(1), Rational(2), Rational(4)};
    auto [r1, r2] = check_balog_scalar(a, a, RSet{Rational(1)}, a);
    // C = {1}: AC + A = A + A, so lhs = |A+A|^2 and rhs = |A||B|
    long s = static_cast<long>(sumset(a, a).size());
    EXPECT_EQ(*r1.lhs.exact, Rational(s * s));
    EXPECT_EQ(*r1.rhs_core.exact, Rational(9));
    EXPECT_EQ(r1.verdict, Verdict::report_only);
    EXPECT_EQ(r2.check_id, "balog.scalar2");
    EXPECT_GT(r2.ratio, 0.0);

    auto [q1, q2] = check_balog_scalar(a, a, a, a);
    EXPECT_GE(q1.ratio, 1.0);  // expected >= 1 on this instance
}

TEST(BalogChecks, PlanarInstances) {
    RSet two{Rational(1), Rational(2)};
    CheckRecord r = check_balog_planar(two, two, RSet{Rational(1)});
    EXPECT_EQ(*r.lhs.exact, Rational(9));  // (AxB)+(AxB) over a 2x2 grid
    EXPECT_EQ(*r.rhs_core.exact, Rational(4));
    RSet one{Rational(1)};
    CheckRecord s = check_balog_planar(one, one, one);
    EXPECT_EQ(*s.lhs.exact, Rational(1));
    EXPECT_EQ(*s.rhs_core.exact, Rational(1));
    EXPECT_THROW(check_balog_planar(two, two, RSet{Rational(0)}), DomainError);
}

TEST(MainTheorems, RecordShape) {
    RSet a = generate(ap(16));
    std::vector<CheckRecord> rs = check_main_theorems(a);
    ASSERT_EQ(rs.size(), 5u);
    EXPECT_EQ(rs[0].check_id, "growth.ratio_set_sum");
    for (const auto& r : rs) {
        EXPECT_EQ(r.verdict, Verdict::report_only);
        EXPECT_GT(r.ratio, 0.0);
        EXPECT_EQ(r.direction, Direction::lower);
    }
    // smallest nondegenerate input still yields well-formed records
    for (const auto& r : check_main_theorems(RSet{Rational(1), Rational(2)})) {
        EXPECT_EQ(r.verdict, Verdict::report_only);
        EXPECT_GT(r.ratio, 0.0);
    }
    // lhs of the ratio-set bound is the exact |A:A + A|
    RSet p = a;
    EXPECT_EQ(*rs[0].lhs.exact, Rational(static_cast<long>(sumset(ratio_set(p, p), p).size())));
}

TEST(LiLemma, DiagonalTripleEqualsThirdEnergy) {
    RSet a = generate(gp(6));
    std::vector<CheckRecord> rs = check_li_lemma(a, a, a);
    ASSERT_EQ(rs.size(), 3u);
    double e3 = energy_int(a, 3, Operation::additive).get_d();
    EXPECT_DOUBLE_EQ(rs[2].lhs.approx, e3);
    for (const auto& r : rs) EXPECT_GT(r.ratio, 0.0);
}

TEST(MainDiff, InstancesAndDegenerate) {
    RSet a = generate(ap(8));
    CheckRecord plus = check_main_diff(a, a, DiffSign::plus);
    EXPECT_EQ(plus.verdict, Verdict::report_only);
    EXPECT_EQ(*plus.lhs.exact, Rational(15));  // |A+A| for an 8-term ap
    CheckRecord minus = check_main_diff(a, a, DiffSign::minus);
    EXPECT_EQ(*minus.lhs.exact, Rational(15));
    CheckRecord degenerate = check_main_diff(RSet{Rational(3)}, a, DiffSign::plus);
    EXPECT_EQ(degenerate.verdict, Verdict::skipped);
    // the instantiation with A* = A:A
    RSet qa = ratio_set(a, a);
    EXPECT_EQ(check_main_diff(a, qa, DiffSign::plus).verdict, Verdict::report_only);
}

TEST(Proposition1, EightRecords) {
    RSet a = generate(ap(12));
    std::vector<CheckRecord> rs = check_proposition1(a);
    ASSERT_EQ(rs.size(), 8u);
    int product_variants = 0;
    for (const auto& r : rs) {
        EXPECT_EQ(r.verdict, Verdict::report_only);
        EXPECT_GT(r.ratio, 0.0);
        if (r.note.find("variant=product") != std::string::npos) ++product_variants;
    }
    EXPECT_EQ(product_variants, 4);
    for (const auto& r : check_proposition1(RSet{Rational(1), Rational(3)}))
        EXPECT_EQ(r.verdict, Verdict::report_only);
}

TEST(RemarkEnergy, Instances) {
    for (const FamilySpec& f : {ap(16), gp(16)}) {
        auto [r1, r2] = check_remark_energy(generate(f));
        EXPECT_EQ(r1.check_id, "remark.energy_vs_products");
        EXPECT_GT(r1.ratio, 0.0);
        EXPECT_GT(r2.ratio, 0.0);
    }
    auto [t1, t2] = check_remark_energy(RSet{Rational(1), Rational(2)});
    // hand-checkable: E+ = 6, |AA+AA| = |{1,2,4}+{1,2,4}| = |{2,3,4,5,6,8}| = 6
    EXPECT_DOUBLE_EQ(t1.lhs.approx, 6.0);
    EXPECT_DOUBLE_EQ(t1.rhs_core.approx, 12.0);
}

TEST(RnzCorollary, Instances) {
    std::vector<CheckRecord> rs = check_rnz_corollary(generate(ap(12)));
    EXPECT_GE(rs.size(), 5u);
    std::set<std::string> ids;
    for (const auto& r : rs) ids.insert(r.check_id);
    EXPECT_TRUE(ids.count("rnz.growth_condition"));
    EXPECT_TRUE(ids.count("rnz.diff_log"));
    // GP condition ratio is far from satisfied relative to AP
    double ap_cond = 0, gp_cond = 0;
    for (const auto& r : check_rnz_corollary(generate(ap(10))))
        if (r.check_id == "rnz.growth_condition" && r.note.find("plus") != std::string::npos)
            ap_cond = r.ratio;
    for (const auto& r : check_rnz_corollary(generate(gp(10))))
        if (r.check_id == "rnz.growth_condition" && r.note.find("plus") != std::string::npos)
            gp_cond = r.ratio;
    EXPECT_GT(gp_cond, ap_cond);
}

TEST(SolymosiEnergy, ApVsGp) {
    CheckRecord ap16 = check_solymosi_energy(generate(ap(16)), generate(ap(16)));
    CheckRecord gp16 = check_solymosi_energy(generate(gp(16)), generate(gp(16)));
    EXPECT_EQ(ap16.verdict, Verdict::report_only);
    EXPECT_GT(ap16.ratio, 0.0);
    // GP: multiplicative energy near |A|^3 against |A+A|^2 near |A|^4
    EXPECT_GT(gp16.ratio, 0.0);
    EXPECT_DOUBLE_EQ(gp16.lhs.approx,
                     energy_int(generate(gp(16)), 2, Operation::multiplicative).get_d());
    RSet two{Rational(1), Rational(2)};
    CheckRecord tiny = check_solymosi_energy(two, two);
    EXPECT_DOUBLE_EQ(tiny.lhs.approx, 6.0);  // E_x({1,2}) = 6
}

TEST(Suite, RunsCleanAndDeterministic) {
    SuiteConfig cfg;
    cfg.corpus = {ap(6), gp(6), rnd(6, 99)};
    SuiteResult r1 = run_suite(cfg);
    SuiteResult r2 = run_suite(cfg);
    EXPECT_EQ(to_json(r1).dump(), to_json(r2).dump());
    EXPECT_EQ(r1.exact_failures, 0);
    EXPECT_GT(r1.min_lower_ratio, 0.0);

    // every registered check appears (possibly as skipped-with-reason)
    std::set<std::string> seen;
    for (const auto& rec : r1.records) seen.insert(rec.check_id);
    for (const auto& e : check_registry()) EXPECT_TRUE(seen.count(e.id)) << e.id;

    for (const auto& rec : r1.records)
        EXPECT_NE(rec.verdict, Verdict::fail) << rec.check_id;

    // summaries are well-formed
    for (const auto& s : r1.summaries) {
        EXPECT_LE(s.min_ratio, s.median_ratio);
        EXPECT_LE(s.median_ratio, s.max_ratio);
        EXPECT_GT(s.count, 0);
    }
}

TEST(Suite, RegistryFilter) {
    SuiteConfig cfg;
    cfg.corpus = {ap(5), gp(5), rnd(5, 7)};
    cfg.registry_filter = {"ruzsa.triangle"};
    SuiteResult r = run_suite(cfg);
    for (const auto& rec : r.records) EXPECT_EQ(rec.check_id, "ruzsa.triangle");
    bool has_real_record = false;
    for (const auto& rec : r.records)
        if (rec.verdict == Verdict::pass) has_real_record = true;
    EXPECT_TRUE(has_real_record);
}

TEST(Suite, ParallelMatchesSerial) {
    SuiteConfig serial;
    serial.corpus = {ap(6), gp(6), rnd(6, 5)};
    SuiteConfig parallel = serial;
    parallel.jobs = 4;
    EXPECT_EQ(to_json(run_suite(serial)).dump(), to_json(run_suite(parallel)).dump());
}

TEST(Suite, ResourceCapsProduceSkips) {
    SuiteConfig cfg;
    cfg.corpus = {ap(24)};  // above the magnification cap
    cfg.registry_filter = {"petridis.sumset"};
    SuiteResult r = run_suite(cfg);
    ASSERT_FALSE(r.records.empty());
    for (const auto& rec : r.records) EXPECT_EQ(rec.verdict, Verdict::skipped);
}

TEST(ReportJson, RoundTrip) {
    SuiteConfig cfg;
    cfg.corpus = {ap(5), gp(5)};
    cfg.registry_filter = {"ruzsa.triangle", "chain.ratio"};
    SuiteResult r = run_suite(cfg);
    ojson j = to_json(r);
    ojson reparsed = ojson::parse(j.dump());
    EXPECT_EQ(reparsed.dump(), j.dump());
}
