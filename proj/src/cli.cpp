#include "depclust/cli.hpp"

#include "depclust/clustering.hpp"
#include "depclust/copula.hpp"
#include "depclust/dissimilarity.hpp"
#include "depclust/error.hpp"
#include "depclust/io.hpp"
#include "depclust/predictability.hpp"
#include "depclust/scenario.hpp"
#include "depclust/validation.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace depclust {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(' ');
        const auto e = item.find_last_not_of(' ');
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw Error("failed writing '" + path.string() + "'");
}

VariableSet columns_by_label(const SampleMatrix& data, const std::string& list, const char* what) {
    const auto names = split_list(list);
    if (names.empty()) throw SpecError(std::string(what) + " lists no columns");
    std::vector<std::size_t> idx;
    for (const auto& name : names) {
        const auto& labels = data.labels();
        const auto it = std::find(labels.begin(), labels.end(), name);
        if (it == labels.end()) throw SpecError(std::string(what) + ": no column named '" + name + "'");
        if (std::find(idx.begin(), idx.end(), static_cast<std::size_t>(it - labels.begin())) != idx.end())
            throw SpecError(std::string(what) + " lists '" + name + "' twice");
        idx.push_back(static_cast<std::size_t>(it - labels.begin()));
    }
    return VariableSet(std::move(idx));
}

std::string block_text(const VariableSet& set, const SampleMatrix& data) {
    std::string s;
    for (std::size_t i = 0; i < set.size(); ++i) s += (i ? "," : "") + data.label(set[i]);
    return s;
}

struct ClusterArgs {
    std::string input;
    std::string diss = "average";
    std::string backend = "multivariate";
    std::uint64_t seed = 0;
    std::size_t perm_budget = kDefaultPermBudget;
    std::string out = ".";
    std::string emit = "json,validity";
};

int cmd_cluster(const ClusterArgs& a, std::ostream& out) {
    const AggregatorSpec spec = AggregatorSpec::parse(a.diss);
    const Backend backend = Backend::parse(a.backend);
    std::set<std::string> emit;
    for (const auto& e : split_list(a.emit)) {
        if (e == "all") {
            emit.insert({"json", "newick", "svg", "validity"});
        } else if (e == "json" || e == "newick" || e == "svg" || e == "validity") {
            emit.insert(e);
        } else {
            throw SpecError("unknown --emit item '" + e + "' (json, newick, svg, validity, all)");
        }
    }
    if (a.perm_budget == 0) throw SpecError("--perm-budget must be positive");

    const SampleMatrix data = read_csv_file(a.input);
    if (data.cols() < 2) throw InputError(a.input + ": clustering needs at least two columns");

    TermCache cache(data, a.seed);
    AgglomerateOptions options;
    options.seed = a.seed;
    options.perm_budget = a.perm_budget;
    const Dendrogram dendrogram = agglomerate(data, spec, backend, options, &cache);

    const fs::path dir(a.out);
    fs::create_directories(dir);
    write_file(dir / "dendrogram.json", dendrogram_json(dendrogram));
    if (emit.contains("newick")) write_file(dir / "tree.newick", dendrogram_newick(dendrogram));
    if (emit.contains("svg")) write_file(dir / "dendrogram.svg", dendrogram_svg(dendrogram));

    out << "step,left,right,height\n";
    for (std::size_t s = 0; s < dendrogram.merges.size(); ++s) {
        const auto& m = dendrogram.merges[s];
        out << s + 1 << ",\"" << block_text(m.left, data) << "\",\"" << block_text(m.right, data) << "\","
            << num(m.height) << "\n";
    }
    if (dendrogram.has_inversions()) out << "# note: dendrogram has height inversions\n";

    if (data.cols() < 3) {
        out << "# fewer than three variables: no validity curve\n";
        return kExitOk;
    }
    const DissimilarityMatrix pairwise = pairwise_matrix(data, spec, a.seed, &cache);
    const ValidityCurve curve = validity_curve(dendrogram, pairwise);
    {
        std::ostringstream csv;
        write_validity_csv(csv, curve);
        write_file(dir / "validity.csv", csv.str());
    }
    for (const auto rule : {SelectionRule::tradeoff, SelectionRule::silhouette}) {
        const char* name = rule == SelectionRule::tradeoff ? "tradeoff" : "silhouette";
        const std::size_t k = choose_k(curve, rule);
        const Partition p = cut(dendrogram, k);
        out << "chosen_k," << name << "," << k << "\n";
        std::ostringstream text;
        write_partition(text, p, data.labels());
        write_file(dir / (std::string("partition_") + name + ".txt"), text.str());
        for (const auto& block : p.blocks) out << "block," << name << ",\"" << block_text(block, data) << "\"\n";
    }
    return kExitOk;
}

struct KappaArgs {
    std::string input;
    std::string predictors;
    std::string responses;
    std::uint64_t seed = 0;
    std::size_t perm_budget = kDefaultPermBudget;
};

int cmd_kappa(const KappaArgs& a, std::ostream& out) {
    if (a.perm_budget == 0) throw SpecError("--perm-budget must be positive");
    const SampleMatrix data = read_csv_file(a.input);
    const VariableSet x = columns_by_label(data, a.predictors, "--predictors");
    const VariableSet y = columns_by_label(data, a.responses, "--responses");
    if (!x.disjoint_with(y)) throw SpecError("--predictors and --responses overlap");

    TermCache cache(data, a.seed);
    const auto y_given_x = kappa(y, x, data, a.seed, a.perm_budget, &cache);
    const auto x_given_y = kappa(x, y, data, a.seed, a.perm_budget, &cache);
    const std::string xs = block_text(x, data);
    const std::string ys = block_text(y, data);

    out << "quantity,value,raw,perm_count,exact\n";
    auto row = [&](const std::string& name, const PredictabilityEstimate& e) {
        out << "\"" << name << "\"," << num(e.value) << "," << num(e.raw) << "," << e.perm_count << ","
            << (e.exact ? "true" : "false") << "\n";
    };
    row("kappa(" + ys + "|" + xs + ")", y_given_x);
    row("kappa(" + xs + "|" + ys + ")", x_given_y);
    const double d_pi = dissimilarity(AggregatorSpec::copula(CopulaFamily::independence), x_given_y.value,
                                      y_given_x.value);
    const double d_ave = dissimilarity(AggregatorSpec::average(), x_given_y.value, y_given_x.value);
    out << "d_pi," << num(d_pi) << ",,,\n";
    out << "d_ave," << num(d_ave) << ",,,\n";
    return kExitOk;
}

int cmd_compare(const std::string& file_a, const std::string& file_b, std::ostream& out) {
    const auto a = read_partition_file(file_a);
    const auto b = read_partition_file(file_b);
    std::set<std::string> universe_a;
    std::set<std::string> universe_b;
    for (const auto& block : a) universe_a.insert(block.begin(), block.end());
    for (const auto& block : b) universe_b.insert(block.begin(), block.end());
    if (universe_a != universe_b) throw SpecError("the two partitions cover different variables");

    const std::vector<std::string> labels(universe_a.begin(), universe_a.end());
    auto to_partition = [&](const std::vector<std::vector<std::string>>& blocks) {
        Partition p;
        for (const auto& block : blocks) {
            std::vector<std::size_t> idx;
            for (const auto& label : block)
                idx.push_back(static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), label) -
                                                       labels.begin()));
            p.blocks.emplace_back(std::move(idx));
        }
        return p;
    };
    const Partition pa = to_partition(a);
    const Partition pb = to_partition(b);
    const auto counts = pair_counts(pa, pb, labels.size());
    out << "RI," << num(rand_index(pa, pb, labels.size())) << "\n";
    out << "FMI," << num(fowlkes_mallows(pa, pb, labels.size())) << "\n";
    out << "TP," << counts.tp << "\nFP," << counts.fp << "\nFN," << counts.fn << "\nTN," << counts.tn << "\n";
    return kExitOk;
}

struct SimulateArgs {
    std::string scenario;
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    double sigma = 1.0;
    double alpha = 1.0;
    unsigned k = 3;
    std::string out;
    bool n_given = false;
    bool seed_given = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const auto names = builtin_scenario_names();
    ScenarioSpec spec;
    if (std::find(names.begin(), names.end(), a.scenario) != names.end()) {
        BuiltinParams params;
        params.n = a.n;
        params.seed = a.seed;
        params.sigma = a.sigma;
        params.alpha = a.alpha;
        params.k = a.k;
        spec = builtin_scenario(a.scenario, params);
    } else if (fs::is_regular_file(a.scenario)) {
        std::ifstream f(a.scenario);
        std::stringstream text;
        text << f.rdbuf();
        spec = ScenarioSpec::parse(text.str());
        if (a.n_given) spec.n = a.n;
        if (a.seed_given) spec.seed = a.seed;
    } else {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        throw SpecError("unknown scenario '" + a.scenario + "' (built-ins: " + list + "; or a config file path)");
    }
    if (spec.n < 3) throw SpecError("--n must be at least 3");

    const Scenario scenario = generate_scenario(spec);
    std::ostringstream csv;
    write_csv(csv, scenario.data);
    if (a.out.empty()) {
        out << csv.str();
        return kExitOk;
    }
    fs::path data_path(a.out);
    fs::path bench_path;
    if (data_path.extension() == ".csv") {
        if (data_path.has_parent_path()) fs::create_directories(data_path.parent_path());
        bench_path = data_path;
        bench_path.replace_extension(".benchmark.txt");
    } else {
        fs::create_directories(data_path);
        bench_path = data_path / (spec.name + ".benchmark.txt");
        data_path = data_path / (spec.name + ".csv");
    }
    write_file(data_path, csv.str());
    out << "data," << data_path.string() << "\n";
    if (scenario.benchmark) {
        std::ostringstream text;
        write_partition(text, *scenario.benchmark, scenario.data.labels());
        write_file(bench_path, text.str());
        out << "benchmark," << bench_path.string() << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hierarchical variable clustering by predictive strength", "depclust"};
    app.require_subcommand(1);

    ClusterArgs cluster_args;
    auto* cluster = app.add_subcommand("cluster", "cluster the columns of a CSV file");
    cluster->add_option("--input", cluster_args.input, "CSV file with a header row")->required();
    cluster->add_option("--diss", cluster_args.diss, "aggregator: average | copula:<family>[:p] | copula_dual:<family>[:p]")
        ->capture_default_str();
    cluster->add_option("--backend", cluster_args.backend, "multivariate | linkage:single|average|complete")
        ->capture_default_str();
    cluster->add_option("--seed", cluster_args.seed, "random seed")->capture_default_str();
    cluster->add_option("--perm-budget", cluster_args.perm_budget, "response permutations per kappa")
        ->capture_default_str();
    cluster->add_option("--out", cluster_args.out, "output directory")->capture_default_str();
    cluster->add_option("--emit", cluster_args.emit, "comma list of json, newick, svg, validity, all")
        ->capture_default_str();

    KappaArgs kappa_args;
    auto* kappa_cmd = app.add_subcommand("kappa", "estimate predictability in both directions");
    kappa_cmd->add_option("--input", kappa_args.input, "CSV file with a header row")->required();
    kappa_cmd->add_option("--predictors,-x", kappa_args.predictors, "comma list of predictor columns")->required();
    kappa_cmd->add_option("--responses,-y", kappa_args.responses, "comma list of response columns")->required();
    kappa_cmd->add_option("--seed", kappa_args.seed, "random seed")->capture_default_str();
    kappa_cmd->add_option("--perm-budget", kappa_args.perm_budget, "response permutations")->capture_default_str();

    std::string file_a;
    std::string file_b;
    auto* compare = app.add_subcommand("compare", "Rand and Fowlkes-Mallows indices of two partition files");
    compare->add_option("a", file_a, "partition file")->required();
    compare->add_option("b", file_b, "partition file")->required();

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "generate a built-in or configured scenario");
    simulate->add_option("scenario", sim_args.scenario, "built-in name or config file")->required();
    auto* n_opt = simulate->add_option("--n", sim_args.n, "sample size")->capture_default_str();
    auto* seed_opt = simulate->add_option("--seed", sim_args.seed, "random seed")->capture_default_str();
    simulate->add_option("--sigma", sim_args.sigma, "noise level (noise)")->capture_default_str();
    simulate->add_option("--alpha", sim_args.alpha, "dependence scale (four-groups)")->capture_default_str();
    simulate->add_option("--k", sim_args.k, "multiplier (asym-mod-k)")->capture_default_str();
    simulate->add_option("--out", sim_args.out, "output .csv file or directory (default: CSV on stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadSpec;
    }

    try {
        if (*cluster) return cmd_cluster(cluster_args, out);
        if (*kappa_cmd) return cmd_kappa(kappa_args, out);
        if (*compare) return cmd_compare(file_a, file_b, out);
        sim_args.n_given = n_opt->count() > 0;
        sim_args.seed_given = seed_opt->count() > 0;
        return cmd_simulate(sim_args, out);
    } catch (const DegenerateColumnError& e) {
        err << "depclust: degenerate column: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const DegenerateResponseError& e) {
        err << "depclust: degenerate response: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const InputError& e) {
        err << "depclust: input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const SpecError& e) {
        err << "depclust: invalid specification: " << e.what() << "\n";
        return kExitBadSpec;
    } catch (const std::exception& e) {
        err << "depclust: error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace depclust
