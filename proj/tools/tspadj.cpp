// Batch driver: generates tour pairs (or loads an instance file), runs the
// adjacency test, and reports per-size statistics as a table and CSV.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tspadj/tspadj.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tspadj::Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tspadj::Error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw tspadj::Error("failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tests whether two Hamiltonian tours are provably nonadjacent on the"
                 " (a)symmetric traveling-salesperson polytope by searching their union"
                 " for two complementary Hamiltonian tours."};

    std::vector<int> ns;
    int times = 50;
    int iter_n = 8000;
    std::string state_candidate = "match";
    int ex_edges_n = 3;
    int ans_n = 5;
    int fix_edges_n = -1;
    bool directed = false;
    std::string tour_type = "random";
    double init_t = 0;
    std::uint64_t seed = 0;
    std::string input_path;
    std::string out_path;

    app.add_option("--N", ns, "vertex count; repeat or comma-separate for several result rows")
        ->delimiter(',')
        ->check(CLI::Range(3, 1 << 20));
    app.add_option("--times", times, "trials per row")->check(CLI::PositiveNumber);
    app.add_option("--iterN", iter_n, "annealing iterations per run")->check(CLI::PositiveNumber);
    app.add_option("--stateCandidate", state_candidate,
                   "neighbor rule: match (cycle covers via perfect matching) or random (edge exchange)")
        ->check(CLI::IsMember({"match", "random"}));
    auto* ex_opt = app.add_option("--exEdgesN", ex_edges_n,
                                  "edges exchanged per step (random rule only)")
                       ->check(CLI::PositiveNumber);
    auto* ans_opt = app.add_option("--ansN", ans_n, "multistart attempts (random rule only)")
                        ->check(CLI::PositiveNumber);
    auto* fix_opt = app.add_option("--fixEdgesN", fix_edges_n,
                                   "fixed-edge queue capacity (match rule only; default N/3)")
                        ->check(CLI::NonNegativeNumber);
    app.add_flag("--directed", directed, "directed tours (asymmetric polytope)");
    app.add_option("--tourType", tour_type, "instance family: random or pyramidal")
        ->check(CLI::IsMember({"random", "pyramidal"}));
    app.add_option("--initT", init_t, "initial temperature (default N)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "64-bit master seed");
    app.add_option("--input", input_path, "instance file (tu|td|gu|gd format); replaces --N");
    app.add_option("--out", out_path, "write the CSV summary to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    auto usage_error = [&](const std::string& message) {
        std::cerr << "error: " << message << '\n';
        return 1;
    };

    bool match_mode = state_candidate == "match";
    if (match_mode && ex_opt->count() > 0)
        return usage_error("--exEdgesN applies only to --stateCandidate=random");
    if (match_mode && ans_opt->count() > 0)
        return usage_error("--ansN applies only to --stateCandidate=random");
    if (!match_mode && fix_opt->count() > 0)
        return usage_error("--fixEdgesN applies only to --stateCandidate=match");
    if (input_path.empty() && ns.empty())
        return usage_error("either --N or --input is required");
    if (!input_path.empty() && !ns.empty())
        return usage_error("--N and --input are mutually exclusive");
    for (int n : ns)
        if (fix_edges_n > 2 * n)
            return usage_error("--fixEdgesN exceeds the union's edge count 2N");

    try {
        tspadj::RunPlan plan;
        plan.ns = ns;
        plan.times = times;
        plan.mode = match_mode ? tspadj::Mode::Match : tspadj::Mode::Random;
        plan.iter_n = iter_n;
        plan.ex_edges_n = ex_edges_n;
        plan.ans_n = ans_n;
        plan.fix_edges_override = fix_edges_n;
        plan.init_t_override = init_t;
        plan.directed = directed;
        plan.tour_kind =
            tour_type == "pyramidal" ? tspadj::TourKind::Pyramidal : tspadj::TourKind::Random;
        plan.seed = seed;
        if (!input_path.empty()) plan.input = tspadj::parse_instance(read_file(input_path));

        tspadj::ExperimentResult result = tspadj::run_experiment(plan);

        for (const auto& r : result.records) {
            std::cerr << "N=" << r.n << " trial=" << r.trial << ' '
                      << (r.outcome == tspadj::Outcome::NotAdjacent ? "found" : "not-found")
                      << " iterations=" << r.iterations << ' ' << tspadj::detail::fmt_ms(r.ms)
                      << " ms\n";
        }
        bool known_feasible = plan.input.has_value()
                                  ? false
                                  : plan.tour_kind == tspadj::TourKind::Pyramidal;
        std::cout << tspadj::human_table(result.rows, known_feasible ? "Accuracy%" : "Found%");
        if (!out_path.empty()) write_file(out_path, tspadj::stats_to_csv(result.rows));
        return 0;
    } catch (const tspadj::InternalError& e) {
        std::cerr << "internal validation failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
