#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "sumprod/ledger.hpp"
#include "sumprod/report_json.hpp"
#include "sumprod/search.hpp"

namespace sumprod {

namespace cli_detail {

class PhaseTimer {
public:
    void start(const std::string& phase) {
        finish();
        current_ = phase;
        t0_ = std::chrono::steady_clock::now();
    }
    void finish() {
        if (current_.empty()) return;
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        timing_[current_] = sec;
        current_.clear();
    }
    ojson json() {
        finish();
        return timing_;
    }

private:
    std::string current_;
    std::chrono::steady_clock::time_point t0_;
    ojson timing_ = ojson::object();
};

inline void emit(const ojson& report, const std::string& out_path, const std::string& format,
                 const std::vector<CheckRecord>* csv_records) {
    std::string payload;
    if (format == "csv") {
        if (!csv_records)
            throw DomainError("--format csv is only available for check reports");
        payload = records_to_csv(*csv_records);
    } else {
        payload = report.dump(2);
        payload += "\n";
    }
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(out_path);
        if (!f) throw IoError("cannot write report: " + out_path);
        f << payload;
    }
}

inline RSet load_input_set(const std::string& set_path, const std::string& family) {
    if (!set_path.empty() && !family.empty())
        throw DomainError("give either --set or --family, not both");
    if (!set_path.empty()) return read_set_file(set_path);
    if (!family.empty()) return generate(FamilySpec::parse(family));
    throw DomainError("need --set FILE or --family SPEC");
}

// Every headline quantity for one set: cardinalities of the derived sets,
// the low-order energies, and the witnessed doubling bound.
inline ojson stats_results(const RSet& a) {
    ojson notes = ojson::array();
    ojson card;
    card["A"] = a.size();
    card["A+A"] = sumset(a, a).size();
    card["A-A"] = difference_set(a, a).size();
    RSet p = a;
    if (a.contains_zero()) {
        p = a.without_zero();
        notes.push_back("multiplicative quantities computed on A\\{0}");
    }
    ojson energies;
    if (!p.empty()) {
        RSet aa = product_set(p, p);
        RSet qa = ratio_set(p, p);
        card["AA"] = aa.size();
        card["A:A"] = qa.size();
        card["AA+A"] = sumset(aa, p).size();
        card["A:A+A"] = sumset(qa, p).size();
        card["AA+AA"] = sumset(aa, aa).size();
        card["A:A+A:A"] = sumset(qa, qa).size();
        energies["E+_2"] = energy_int(a, 2, Operation::additive).get_str();
        energies["E+_3"] = energy_int(a, 3, Operation::additive).get_str();
        energies["Ex_2"] = energy_int(p, 2, Operation::multiplicative).get_str();
        EnergyValue e32 = energy(p, EnergySpec(Operation::multiplicative, Rational(3, 2)));
        ojson e;
        e["decimal"] = e32.to_double();
        e["fixed_point"] = e32.approximant.str();
        e["digits"] = e32.digits;
        energies["Ex_3/2"] = e;
    } else {
        notes.push_back("A = {0}: multiplicative quantities undefined");
        energies["E+_2"] = energy_int(a, 2, Operation::additive).get_str();
        energies["E+_3"] = energy_int(a, 3, Operation::additive).get_str();
    }
    ojson out;
    out["cardinalities"] = card;
    out["energies"] = energies;
    if (!p.empty()) out["doubling_bound"] = to_json(doubling_bound(p));
    out["notes"] = notes;
    return out;
}

}  // namespace cli_detail

// Command-line driver; returns the process exit status.
inline int run_cli(std::vector<std::string> args) {
    CLI::App app{"exact-arithmetic laboratory for sum-product growth quantities"};
    app.require_subcommand(1);

    std::string set_path, family, out_path, format = "json";
    std::vector<std::string> families, set_paths;
    std::string registry_csv;
    std::string objective_name = "AA+A", exponent = "3/2";
    long budget = 1000;
    int restarts = 1, jobs = 1;
    std::uint64_t seed = 0;
    bool omit_timing = false, cardinality_preserving = false;
    long long window_lo = 1, window_hi = 64;
    std::string set_out;

    auto* stats = app.add_subcommand("stats", "headline quantities of one set");
    stats->add_option("--set", set_path, "set file");
    stats->add_option("--family", family, "family spec, e.g. ap,n=8,start=1,step=1");
    stats->add_option("--out", out_path, "report path (stdout if omitted)");
    stats->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    stats->add_flag("--omit-timing", omit_timing);

    auto* check = app.add_subcommand("check", "run the inequality ledger over a corpus");
    check->add_option("--family", families, "corpus family spec (repeatable)");
    check->add_option("--set", set_paths, "corpus set file (repeatable)");
    check->add_option("--registry", registry_csv, "comma-separated check ids");
    check->add_option("--jobs", jobs, "worker threads");
    check->add_option("--seed", seed, "seed for the default corpus");
    check->add_option("--out", out_path, "report path (stdout if omitted)");
    check->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    check->add_flag("--omit-timing", omit_timing);

    auto* search = app.add_subcommand("search", "local search for extremal sets");
    search->add_option("--objective", objective_name, "AA+A | A:A+A | AA+AA | A:A+A:A | A+A");
    search->add_option("--exponent", exponent, "normalization exponent (rational)");
    search->add_option("--family", family, "initial set family")->required();
    search->add_option("--budget", budget, "objective evaluations allowed");
    search->add_option("--restarts", restarts);
    search->add_option("--seed", seed);
    search->add_option("--jobs", jobs);
    search->add_option("--window-lo", window_lo, "candidate pool window");
    search->add_option("--window-hi", window_hi);
    search->add_flag("--cardinality-preserving", cardinality_preserving);
    search->add_option("--out", out_path, "report path (stdout if omitted)");
    search->add_option("--set-out", set_out, "write the best set as a set file");
    search->add_flag("--omit-timing", omit_timing);

    auto* gen = app.add_subcommand("gen", "generate a set file from a family spec");
    gen->add_option("--family", family, "family spec")->required();
    gen->add_option("--out", out_path, "set file path (stdout if omitted)");

    std::vector<const char*> argv;
    argv.push_back("sumprod");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        cli_detail::PhaseTimer timer;
        if (stats->parsed()) {
            timer.start("load");
            RSet a = cli_detail::load_input_set(set_path, family);
            timer.start("compute");
            ojson results = cli_detail::stats_results(a);
            timer.start("serialize");
            ojson inputs;
            inputs["set"] = set_path.empty() ? family : set_path;
            ojson rep = make_report("stats", inputs, results, timer.json(), omit_timing);
            cli_detail::emit(rep, out_path, format, nullptr);
            return 0;
        }
        if (check->parsed()) {
            timer.start("build");
            SuiteConfig cfg;
            cfg.jobs = jobs;
            for (const auto& f : families) cfg.corpus.push_back(FamilySpec::parse(f));
            for (const auto& p : set_paths) {
                FamilySpec s;
                s.kind = FamilyKind::from_file;
                s.path = p;
                cfg.corpus.push_back(s);
            }
            if (cfg.corpus.empty()) cfg.corpus = default_corpus(seed);
            if (!registry_csv.empty()) {
                std::size_t pos = 0;
                while (pos <= registry_csv.size()) {
                    std::size_t comma = registry_csv.find(',', pos);
                    if (comma == std::string::npos) comma = registry_csv.size();
                    std::string id = registry_csv.substr(pos, comma - pos);
                    if (!id.empty()) {
                        if (!registry_find(id)) throw DomainError("unknown check id: " + id);
                        cfg.registry_filter.push_back(id);
                    }
                    pos = comma + 1;
                }
            }
            ojson inputs;
            ojson corpus = ojson::array();
            for (const auto& s : cfg.corpus) corpus.push_back(s.str());
            inputs["corpus"] = corpus;
            inputs["registry"] = registry_csv.empty() ? "all" : registry_csv;
            timer.start("run");
            try {
                SuiteResult res = run_suite(cfg);
                timer.start("serialize");
                ojson rep = make_report("check", inputs, to_json(res), timer.json(), omit_timing);
                cli_detail::emit(rep, out_path, format, &res.records);
                return 0;
            } catch (const SuiteAbort& e) {
                ojson results;
                results["failure"] = to_json(e.record);
                results["reproducer"] = e.reproducer;
                ojson rep = make_report("check", inputs, results, timer.json(), omit_timing);
                cli_detail::emit(rep, out_path, "json", nullptr);
                std::cerr << "exact check failed: " << e.record.check_id << "\n";
                return 1;
            }
        }
        if (search->parsed()) {
            timer.start("build");
            SearchConfig cfg;
            auto q = objective_by_name(objective_name);
            if (!q) throw DomainError("unknown objective: " + objective_name);
            cfg.objective = Objective(*q, Rational::parse(exponent));
            cfg.init = FamilySpec::parse(family);
            cfg.budget = budget;
            cfg.restarts = restarts;
            cfg.seed = seed;
            cfg.jobs = jobs;
            cfg.rules.cardinality_preserving = cardinality_preserving;
            cfg.rules.window_lo = window_lo;
            cfg.rules.window_hi = window_hi;
            timer.start("search");
            SearchResult res = local_search(cfg);
            timer.start("serialize");
            if (!set_out.empty())
                write_set_file(set_out, res.best_set, "best set, config " + res.config_digest);
            ojson inputs;
            inputs["config"] = cfg.canonical();
            ojson rep = make_report("search", inputs, to_json(res), timer.json(), omit_timing);
            cli_detail::emit(rep, out_path, "json", nullptr);
            return 0;
        }
        if (gen->parsed()) {
            FamilySpec spec = FamilySpec::parse(family);
            RSet a = generate(spec);
            if (out_path.empty()) {
                write_set(std::cout, a, spec.str());
            } else {
                write_set_file(out_path, a, spec.str());
            }
            return 0;
        }
    } catch (const std::exception& e) {
        ojson err;
        err["schema_version"] = kSchemaVersion;
        err["command"] = "error";
        err["error"] = e.what();
        std::cout << err.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace sumprod
