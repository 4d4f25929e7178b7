// Command-line front end: solves fuzzy multi-item solid transportation
// instances or replays candidate solutions against them.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mistp/io.hpp"
#include "mistp/runner.hpp"

namespace {

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content << std::endl;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::vector<double> parse_csv_numbers(const std::string& text, std::size_t expected, const char* what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(what) + ": expected comma-separated numbers");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (expected != 0 && values.size() != expected) {
        throw std::runtime_error(std::string(what) + ": expected " + std::to_string(expected) + " numbers");
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver for the bi-objective multi-item solid transportation problem with "
                 "per-vehicle costs and fuzzy cost/time parameters"};
    app.require_subcommand(1);

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "Compile at the given confidence levels and solve");
    std::string instance_path, method = "fuzzy-programming", objective = "cost";
    std::string bounds_text, ideal_text, weights_file, out_path, front_path, normalization = "by-ideal";
    double eta = 0.9, gamma = 0.9, resolution = 0.0;
    int q = 2, weight_count = 21;
    unsigned long long seed = 0;
    bool seed_given = false;
    solve->add_option("--instance", instance_path, "Instance JSON file")->required();
    solve->add_option("--method", method, "single|fuzzy-programming|global-criterion|weighted-sum")
        ->check(CLI::IsMember({"single", "fuzzy-programming", "global-criterion", "weighted-sum"}));
    solve->add_option("--objective", objective, "cost|time (method single)")
        ->check(CLI::IsMember({"cost", "time"}));
    solve->add_option("--eta", eta, "Confidence level for the cost objective");
    solve->add_option("--gamma", gamma, "Confidence level for the time objective");
    solve->add_option("--bounds", bounds_text, "Inject payoff bounds as L1,U1,L2,U2");
    solve->add_option("--ideal", ideal_text, "Inject the ideal point as L1,L2 (global criterion)");
    solve->add_option("--q", q, "Norm degree for the global criterion");
    solve->add_option("--normalization", normalization, "by-ideal|by-range (global criterion)")
        ->check(CLI::IsMember({"by-ideal", "by-range"}));
    solve->add_option("--resolution", resolution, "Epsilon sweep step; 0 = (U1-L1)/200");
    solve->add_option("--weights", weight_count, "Number of evenly spaced weights (weighted-sum)");
    solve->add_option("--weights-file", weights_file, "File with one weight in [0,1] per line");
    solve->add_option("--seed", seed, "Random weights instead of an even grid (weighted-sum)")
        ->trigger_on_parse()
        ->each([&](const std::string&) { seed_given = true; });
    solve->add_option("--out", out_path, "Write the JSON report here (default: stdout)");
    solve->add_option("--front", front_path, "Write the front CSV here (front-producing methods)");

    // ---- evaluate ----
    auto* evaluate = app.add_subcommand("evaluate", "Replay a candidate solution against an instance");
    std::string eval_instance, eval_solution, eval_out;
    double eval_eta = 0.9, eval_gamma = 0.9;
    evaluate->add_option("--instance", eval_instance, "Instance JSON file")->required();
    evaluate->add_option("--solution", eval_solution, "Solution JSON file (z and x tables)")->required();
    evaluate->add_option("--eta", eval_eta, "Confidence level for the cost objective");
    evaluate->add_option("--gamma", eval_gamma, "Confidence level for the time objective");
    evaluate->add_option("--out", eval_out, "Write the JSON report here (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) {
            mistp::RunOptions options;
            if (method == "single") options.method = mistp::Method::Single;
            else if (method == "fuzzy-programming") options.method = mistp::Method::FuzzyProgramming;
            else if (method == "global-criterion") options.method = mistp::Method::GlobalCriterion;
            else options.method = mistp::Method::WeightedSum;
            options.single_objective = objective == "time" ? 1 : 0;
            options.eta = eta;
            options.gamma = gamma;
            options.q = q;
            options.normalization = normalization == "by-range" ? mistp::Normalization::ByRange
                                                                : mistp::Normalization::ByIdeal;
            options.resolution = resolution;
            options.weight_count = weight_count;
            if (seed_given) options.seed = seed;
            if (!bounds_text.empty()) {
                auto v = parse_csv_numbers(bounds_text, 4, "--bounds");
                options.bounds = {{v[0], v[1], v[2], v[3]}};
            }
            if (!ideal_text.empty()) {
                auto v = parse_csv_numbers(ideal_text, 2, "--ideal");
                options.ideal = {{v[0], v[1]}};
            }
            if (!weights_file.empty()) {
                std::ifstream in(weights_file);
                if (!in) throw std::runtime_error("cannot open " + weights_file);
                double w;
                while (in >> w) options.weights.push_back(w);
                if (options.weights.empty()) throw std::runtime_error(weights_file + ": no weights found");
            }

            mistp::Instance inst = mistp::parse_instance(instance_path);
            mistp::RunOutput result = mistp::run_solve(inst, options);
            write_or_print(out_path, result.report.dump(2));
            if (!front_path.empty() && !result.front_csv.empty()) {
                write_or_print(front_path, result.front_csv);
            }
            return result.exit_code;
        }

        mistp::Instance inst = mistp::parse_instance(eval_instance);
        mistp::MistpSolution sol = mistp::parse_solution(eval_solution, inst);
        mistp::RunOutput result = mistp::run_evaluate(inst, sol, eval_eta, eval_gamma);
        write_or_print(eval_out, result.report.dump(2));
        return result.exit_code;
    } catch (const mistp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << std::endl;
        return 1;
    } catch (const mistp::InfeasibleModelError& e) {
        std::cerr << "infeasible: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
