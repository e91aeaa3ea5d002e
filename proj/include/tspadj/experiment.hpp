#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "annealer.hpp"
#include "errors.hpp"
#include "instances.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace tspadj {

struct RunPlan {
    std::vector<int> ns;
    int times = 50;
    Mode mode = Mode::Match;
    int iter_n = 8000;
    int ex_edges_n = 3;
    int ans_n = 5;
    int fix_edges_override = -1;   // negative: floor(n/3) per instance
    double init_t_override = 0;    // nonpositive: instance size
    bool directed = false;
    TourKind tour_kind = TourKind::Random;
    std::uint64_t seed = 0;
    std::optional<Instance> input;  // replaces generation when present
};

struct StatsRow {
    int n = 0;
    int trials = 0;
    int found = 0;
    int not_found = 0;
    std::optional<double> tnf_avg_ms;
    std::optional<double> tf_avg_ms;
    double t_avg_ms = 0;
    double acc = 0;
};

struct TrialRecord {
    int n = 0;
    int trial = 0;
    Outcome outcome = Outcome::ProbablyAdjacent;
    double ms = 0;
    int iterations = 0;
};

struct ExperimentResult {
    std::vector<StatsRow> rows;
    std::vector<TrialRecord> records;
};

namespace detail {

inline constexpr int kPyramidalFilterBound = 192;

// Pyramidal rows keep only pairs where complementary tours exist, so the
// accuracy column measures the solver, not instance satisfiability. Beyond
// the filter bound pairs are used as generated.
inline std::pair<Tour, Tour> generate_pair(int n, const RunPlan& plan, Rng& rng) {
    bool filter = plan.tour_kind == TourKind::Pyramidal && n <= kPyramidalFilterBound;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        auto pair = random_tour_pair(n, plan.directed, plan.tour_kind, rng);
        if (!filter || complementary_split_exists(pair.first, pair.second))
            return pair;
    }
    throw InternalError("no condition-satisfying pair found in 10000 attempts");
}

inline void recheck_witness(const Instance& inst, const Verdict& verdict) {
    if (verdict.outcome != Outcome::NotAdjacent) return;
    if (!verdict.witness) throw InternalError("verdict lacks its witness");
    const auto& [z, w] = *verdict.witness;
    bool ok = false;
    if (const auto* tours = std::get_if<std::pair<Tour, Tour>>(&inst)) {
        UnionMultigraph g = union_multigraph(tours->first, tours->second);
        ok = validate_witness(tours->first, tours->second, z, w, g);
    } else {
        const auto& g = std::get<UnionMultigraph>(inst);
        std::vector<char> used(g.edge_count(), 0);
        std::optional<EdgeSubset> zs = realize_as_subset(z, g, used);
        std::optional<EdgeSubset> ws;
        if (zs) ws = realize_as_subset(w, g, used);
        ok = zs && ws && validate_witness(*zs, *ws, g);
    }
    if (!ok) throw InternalError("witness failed revalidation");
}

inline StatsRow summarize(int n, const std::vector<TrialRecord>& records) {
    StatsRow row;
    row.n = n;
    double sum_all = 0, sum_found = 0, sum_not = 0;
    for (const auto& r : records) {
        ++row.trials;
        sum_all += r.ms;
        if (r.outcome == Outcome::NotAdjacent) {
            ++row.found;
            sum_found += r.ms;
        } else {
            ++row.not_found;
            sum_not += r.ms;
        }
    }
    ensure(row.trials > 0, "a row summarizes at least one trial");
    if (row.found > 0) row.tf_avg_ms = sum_found / row.found;
    if (row.not_found > 0) row.tnf_avg_ms = sum_not / row.not_found;
    row.t_avg_ms = sum_all / row.trials;
    row.acc = 100.0 * row.found / row.trials;
    return row;
}

}  // namespace detail

inline ExperimentResult run_experiment(const RunPlan& plan) {
    ensure(plan.times >= 1, "at least one trial per row");
    ExperimentResult result;
    std::vector<int> sizes = plan.ns;
    if (plan.input) sizes = {instance_size(*plan.input)};
    ensure(!sizes.empty(), "a plan names at least one instance size");
    std::uint64_t counter = 0;
    for (int n : sizes) {
        std::vector<TrialRecord> row_records;
        for (int trial = 0; trial < plan.times; ++trial) {
            Rng gen(Rng::derive(plan.seed, 2 * counter));
            AnnealConfig cfg;
            cfg.mode = plan.mode;
            cfg.iter_n = plan.iter_n;
            cfg.ex_edges_n = plan.ex_edges_n;
            cfg.ans_n = plan.ans_n;
            cfg.fix_edges_n = plan.fix_edges_override;
            cfg.init_t = plan.init_t_override;
            cfg.seed = Rng::derive(plan.seed, 2 * counter + 1);
            ++counter;

            Instance inst = plan.input ? *plan.input
                                       : Instance(detail::generate_pair(n, plan, gen));
            auto started = std::chrono::steady_clock::now();
            Verdict verdict;
            if (const auto* tours = std::get_if<std::pair<Tour, Tour>>(&inst))
                verdict = solve(tours->first, tours->second, cfg);
            else
                verdict = solve(std::get<UnionMultigraph>(inst), cfg);
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
            detail::recheck_witness(inst, verdict);
            row_records.push_back({n, trial, verdict.outcome, ms, verdict.iterations_used});
        }
        result.rows.push_back(detail::summarize(n, row_records));
        result.records.insert(result.records.end(), row_records.begin(), row_records.end());
    }
    return result;
}

namespace detail {

inline std::string fmt_ms(double value) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << value;
    return out.str();
}

}  // namespace detail

inline std::string stats_to_csv(const std::vector<StatsRow>& rows) {
    std::ostringstream out;
    out << "N,trials,found,not_found,TNF_avg_ms,TF_avg_ms,T_avg_ms,Acc\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.trials << ',' << r.found << ',' << r.not_found << ','
            << (r.tnf_avg_ms ? detail::fmt_ms(*r.tnf_avg_ms) : "-") << ','
            << (r.tf_avg_ms ? detail::fmt_ms(*r.tf_avg_ms) : "-") << ','
            << detail::fmt_ms(r.t_avg_ms) << ',' << detail::fmt_ms(r.acc) << '\n';
    }
    return out.str();
}

inline std::vector<StatsRow> parse_stats_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    std::vector<StatsRow> rows;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        if (number == 1) {
            if (line != "N,trials,found,not_found,TNF_avg_ms,TF_avg_ms,T_avg_ms,Acc")
                throw ParseError(number, "unexpected CSV header");
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream cut(line);
        std::string cell;
        while (std::getline(cut, cell, ',')) cells.push_back(cell);
        if (cells.size() != 8) throw ParseError(number, "expected 8 CSV columns");
        try {
            StatsRow r;
            r.n = std::stoi(cells[0]);
            r.trials = std::stoi(cells[1]);
            r.found = std::stoi(cells[2]);
            r.not_found = std::stoi(cells[3]);
            if (cells[4] != "-") r.tnf_avg_ms = std::stod(cells[4]);
            if (cells[5] != "-") r.tf_avg_ms = std::stod(cells[5]);
            r.t_avg_ms = std::stod(cells[6]);
            r.acc = std::stod(cells[7]);
            rows.push_back(r);
        } catch (const std::exception&) {
            throw ParseError(number, "malformed CSV cell");
        }
    }
    return rows;
}

// `acc_label` names the last column by context: accuracy for known-feasible
// instances, percentage found otherwise.
inline std::string human_table(const std::vector<StatsRow>& rows,
                               const std::string& acc_label = "Acc") {
    std::ostringstream out;
    out << std::left << std::setw(8) << "N" << std::setw(8) << "trials" << std::setw(8) << "found"
        << std::setw(11) << "not_found" << std::setw(13) << "TNF_avg_ms" << std::setw(13)
        << "TF_avg_ms" << std::setw(13) << "T_avg_ms" << acc_label << '\n';
    for (const auto& r : rows) {
        out << std::left << std::setw(8) << r.n << std::setw(8) << r.trials << std::setw(8)
            << r.found << std::setw(11) << r.not_found << std::setw(13)
            << (r.tnf_avg_ms ? detail::fmt_ms(*r.tnf_avg_ms) : "-") << std::setw(13)
            << (r.tf_avg_ms ? detail::fmt_ms(*r.tf_avg_ms) : "-") << std::setw(13)
            << detail::fmt_ms(r.t_avg_ms) << detail::fmt_ms(r.acc) << '\n';
    }
    return out.str();
}

}  // namespace tspadj
