#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "tspadj/experiment.hpp"

using namespace tspadj;

namespace {

// Keeps N,trials,found,not_found,Acc; drops the three timing columns.
std::string strip_timing(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream cut(line);
        std::string cell;
        while (std::getline(cut, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 8);
        out << cells[0] << ',' << cells[1] << ',' << cells[2] << ',' << cells[3] << ','
            << cells[7] << '\n';
    }
    return out.str();
}

}  // namespace

TEST_CASE("experiment rows balance their counters") {
    RunPlan plan;
    plan.ns = {8};
    plan.times = 10;
    plan.iter_n = 2000;
    plan.seed = 404;
    ExperimentResult result = run_experiment(plan);
    REQUIRE(result.rows.size() == 1);
    const StatsRow& row = result.rows[0];
    CHECK(row.n == 8);
    CHECK(row.trials == 10);
    CHECK(row.found + row.not_found == row.trials);
    CHECK(row.acc == Catch::Approx(100.0 * row.found / row.trials));

    double weighted = 0;
    if (row.tf_avg_ms) weighted += *row.tf_avg_ms * row.found;
    if (row.tnf_avg_ms) weighted += *row.tnf_avg_ms * row.not_found;
    CHECK(row.t_avg_ms == Catch::Approx(weighted / row.trials).epsilon(1e-6));

    REQUIRE(result.records.size() == 10);
    int found_records = 0;
    for (int i = 0; i < 10; ++i) {
        CHECK(result.records[i].n == 8);
        CHECK(result.records[i].trial == i);
        found_records += result.records[i].outcome == Outcome::NotAdjacent;
    }
    CHECK(found_records == row.found);
}

TEST_CASE("identical plans give identical results up to timing") {
    RunPlan plan;
    plan.ns = {6, 8};
    plan.times = 5;
    plan.iter_n = 1500;
    plan.directed = true;
    plan.seed = 0xabcdef;
    ExperimentResult a = run_experiment(plan);
    ExperimentResult b = run_experiment(plan);
    CHECK(strip_timing(stats_to_csv(a.rows)) == strip_timing(stats_to_csv(b.rows)));
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].outcome == b.records[i].outcome);
        CHECK(a.records[i].iterations == b.records[i].iterations);
    }

    RunPlan other = plan;
    other.seed = 1;
    ExperimentResult c = run_experiment(other);
    bool all_equal = true;
    for (std::size_t i = 0; i < a.records.size(); ++i)
        all_equal = all_equal && a.records[i].iterations == c.records[i].iterations;
    CHECK_FALSE(all_equal);
}

TEST_CASE("a fixed input instance replaces generation") {
    RunPlan plan;
    plan.times = 3;
    plan.iter_n = 1500;
    plan.seed = 9;
    plan.input = Instance(std::make_pair(tour_from_permutation({1, 2, 3, 4}, false),
                                         tour_from_permutation({1, 2, 4, 3}, false)));
    ExperimentResult result = run_experiment(plan);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].n == 4);
    CHECK(result.rows[0].found == 0);  // no witness exists for this pair
    CHECK(result.rows[0].acc == 0.0);
    CHECK_FALSE(result.rows[0].tf_avg_ms.has_value());

    RunPlan graph_plan;
    graph_plan.times = 4;
    graph_plan.seed = 10;
    graph_plan.input = Instance(fixtures::six_union_graph());
    ExperimentResult graph_result = run_experiment(graph_plan);
    CHECK(graph_result.rows[0].n == 6);
    CHECK(graph_result.rows[0].found == 4);
    CHECK(graph_result.rows[0].acc == 100.0);
    CHECK_FALSE(graph_result.rows[0].tnf_avg_ms.has_value());
}

TEST_CASE("csv output survives a parse round trip") {
    std::vector<StatsRow> rows;
    StatsRow full{16, 50, 47, 3, 120.5, 35.25, 40.365, 94.0};
    StatsRow none_found{8, 20, 0, 20, 10.0, std::nullopt, 10.0, 0.0};
    StatsRow all_found{32, 10, 10, 0, std::nullopt, 99.25, 99.25, 100.0};
    rows.push_back(full);
    rows.push_back(none_found);
    rows.push_back(all_found);

    std::string csv = stats_to_csv(rows);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "N,trials,found,not_found,TNF_avg_ms,TF_avg_ms,T_avg_ms,Acc");
    CHECK(csv.find("8,20,0,20,10.00,-,10.00,0.00") != std::string::npos);
    CHECK(csv.find("32,10,10,0,-,99.25,99.25,100.00") != std::string::npos);

    std::vector<StatsRow> parsed = parse_stats_csv(csv);
    REQUIRE(parsed.size() == 3);
    CHECK(stats_to_csv(parsed) == csv);
    CHECK_FALSE(parsed[1].tf_avg_ms.has_value());
    CHECK(parsed[0].n == 16);
    CHECK(parsed[0].tnf_avg_ms == Catch::Approx(120.5));
}

TEST_CASE("malformed csv is rejected with a line number") {
    CHECK_THROWS_AS(parse_stats_csv("bogus header\n1,2,3\n"), ParseError);
    CHECK_THROWS_AS(
        parse_stats_csv("N,trials,found,not_found,TNF_avg_ms,TF_avg_ms,T_avg_ms,Acc\n1,2,3\n"),
        ParseError);
    CHECK_THROWS_AS(
        parse_stats_csv(
            "N,trials,found,not_found,TNF_avg_ms,TF_avg_ms,T_avg_ms,Acc\n8,x,0,8,-,-,1.00,0.00\n"),
        ParseError);
    try {
        parse_stats_csv("N,trials,found,not_found,TNF_avg_ms,TF_avg_ms,T_avg_ms,Acc\nbad\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("the table header adapts to the metric being shown") {
    std::vector<StatsRow> rows{{8, 50, 49, 1, 5.0, 2.0, 2.06, 98.0}};
    std::string found_table = human_table(rows, "Found%");
    CHECK(found_table.find("Found%") != std::string::npos);
    std::string acc_table = human_table(rows, "Accuracy%");
    CHECK(acc_table.find("Accuracy%") != std::string::npos);
    CHECK(acc_table.find("98.00") != std::string::npos);
    CHECK(acc_table.substr(0, 1) == "N");
}
