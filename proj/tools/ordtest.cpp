// ordtest - experiment driver for ordered-structure property testing.
//
//   ordtest dist --kind hamming --structure string --a f1.txt --b f2.txt
//   ordtest profile --property monotone --n 30 --budgets 0.01,0.05 --trials 50 --seed 7
//   ordtest test --tester string-er --property monotone --eps 0.2 --input s.txt --seed 7
//   ordtest boundary --img board.txt --report
//   ordtest reg --graph g.txt --instance inst.txt
//   ordtest run --config exp.cfg --out results/
//   ordtest list-experiments
//   ordtest generate --kind image --n 64 --distribution planted:disk --seed 7

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ordtest/experiments.hpp"
#include "ordtest/imageboundary.hpp"
#include "ordtest/io.hpp"
#include "ordtest/metrics.hpp"
#include "ordtest/properties.hpp"
#include "ordtest/regularity.hpp"
#include "ordtest/testers.hpp"

using namespace ordtest;

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find(',') == std::string::npos) return s;
    return "\"" + s + "\"";
}

int cmd_dist(const std::string& kind, const std::string& structure, const std::string& a_path,
             const std::string& b_path, const std::string& perm_text,
             const std::string& property_name, bool sampled, std::uint64_t seed) {
    std::cout << "kind,n,absolute,relative,witness\n";
    if (kind == "mixing") {
        std::istringstream iss(perm_text);
        std::vector<int> image;
        int v;
        while (iss >> v) image.push_back(v);
        Permutation sigma = Permutation::from_one_based(image);
        MixingSetResult ms = mixing_set(sigma);
        std::ostringstream wit;
        for (std::size_t i = 0; i < ms.inverted_pairs.size(); ++i) {
            if (i) wit << ' ';
            wit << '(' << ms.inverted_pairs[i].first << ' ' << ms.inverted_pairs[i].second
                << ')';
        }
        std::cout << "mixing," << sigma.n() << ',' << ms.count << ',' << ms.normalized.str()
                  << ',' << csv_escape(wit.str()) << '\n';
        return 0;
    }
    if (kind == "property") {
        OrderedStructure f = read_structure_file(a_path, structure);
        Property p = find_property(property_name);
        Rat d = distance_to_property(f, p);
        std::cout << "property," << base_element_count(f) << ','
                  << (d * Rat(std::int64_t(entries_of(f).size()))).str() << ',' << d.str()
                  << ",\n";
        return 0;
    }

    OrderedStructure f = read_structure_file(a_path, structure);
    OrderedStructure g = read_structure_file(b_path, structure);
    align_alphabets(f, g);
    if (kind == "hamming") {
        DistanceResult d = hamming(f, g);
        std::cout << "hamming," << base_element_count(f) << ',' << d.absolute << ','
                  << d.relative.str() << ",\n";
        return 0;
    }
    if (kind == "earthmover") {
        EarthmoverResult r = sampled ? earthmover_heuristic(f, g, seed)
                                     : earthmover_distance(f, g);
        std::ostringstream wit;
        if (r.witness) {
            for (int x : r.witness->one_based()) wit << x << ' ';
            if (!r.exact) wit << "(heuristic upper bound)";
        }
        std::cout << "earthmover," << base_element_count(f) << ','
                  << (r.distance.finite ? std::to_string(r.distance.absolute) : "inf") << ','
                  << (r.distance.finite ? r.distance.relative.str() : "inf") << ','
                  << csv_escape(wit.str()) << '\n';
        return 0;
    }
    throw parameter_error("unknown distance kind: " + kind);
}

int cmd_profile(const std::string& property_name, int n, const std::string& budgets_text,
                int trials, std::uint64_t seed) {
    Property p = find_property(property_name);
    std::vector<double> budgets;
    std::istringstream iss(budgets_text);
    std::string tok;
    while (std::getline(iss, tok, ',')) budgets.push_back(std::stod(tok));
    ERProfile prof = er_profile(p, n, budgets, trials, seed);
    std::cout << "budget,worst_dh,mean_dh,trials\n";
    for (std::size_t i = 0; i < budgets.size(); ++i)
        std::cout << budgets[i] << ',' << prof.worst_dh[i].str() << ','
                  << prof.mean_dh[i].str() << ',' << trials << '\n';
    return 0;
}

int cmd_test(const std::string& tester, const std::string& property_name,
             const std::string& input, const std::string& structure, const std::string& eps_text,
             std::int64_t trials, std::uint64_t seed, int q, int k, std::int64_t t_override) {
    Property p = find_property(property_name);
    std::cout << "tester,n,q,trials,accepts,rate,ci_lo,ci_hi\n";

    if (tester == "string-er") {
        OrderedStructure f = read_structure_file(input, "string");
        const OrderedString& s = std::get<OrderedString>(f);
        StringERReport rep = string_er_test(s, p, parse_rat(eps_text), seed);
        std::cout << "string-er," << s.n() << ',' << rep.samples_per_interval * rep.t << ",1,"
                  << (rep.accept ? 1 : 0) << ',' << (rep.accept ? "1" : "0") << ",,\n";
        std::cerr << "r = " << rep.r.str() << " (threshold eps/4), t = " << rep.t << "\n";
        return rep.accept ? 0 : 1;
    }

    OrderedStructure f = read_structure_file(input, structure);
    int n = base_element_count(f);
    const Alphabet& alpha = std::holds_alternative<OrderedString>(f)
                                ? std::get<OrderedString>(f).alphabet
                                : std::get<OrderedGraph>(f).alphabet;

    if (tester == "canonical") {
        CanonicalTest test = canonical_test_for_property(p, q, alpha);
        TesterReport rep = run_canonical(f, test, trials, seed);
        std::cout << "canonical," << n << ',' << q << ',' << rep.trials << ',' << rep.accepts
                  << ',' << rep.rate << ',' << rep.wilson_lo << ',' << rep.wilson_hi << '\n';
        return 0;
    }

    // property-membership decision on the sampled substructure, spread over
    // k intervals
    PiecewiseTester pw;
    pw.k = k;
    pw.q = q;
    pw.deterministic = true;
    pw.key_kind = p.kind == StructureKind::string_kind ? KeyKind::string_key
                                                       : KeyKind::graph_key;
    pw.draw_plan = [k, q](int, Rng&) {
        PiecewiseQueryPlan plan;
        plan.q_per_part.assign(std::size_t(k), q / k);
        for (int j = 0; j < q % k; ++j) ++plan.q_per_part[std::size_t(j)];
        return plan;
    };
    Property pp = p;
    Alphabet alpha_copy = alpha;
    pw.accept_probability = [pp, alpha_copy](const PiecewiseQueryPlan& plan,
                                             const std::vector<int>& key, Rng&) {
        int qq = plan.total();
        OrderedStructure sub = pp.kind == StructureKind::string_kind
                                   ? OrderedStructure(make_string(alpha_copy, key))
                                   : OrderedStructure(make_graph(alpha_copy, qq, key));
        return pp.contains(sub) ? 1.0 : 0.0;
    };

    if (tester == "piecewise") {
        TesterReport rep = run_piecewise(f, pw, trials, seed);
        std::cout << "piecewise," << n << ',' << q << ',' << rep.trials << ',' << rep.accepts
                  << ',' << rep.rate << ',' << rep.wilson_lo << ',' << rep.wilson_hi << '\n';
        return 0;
    }
    if (tester == "simulated") {
        std::optional<std::int64_t> t_opt, n_opt;
        if (t_override > 0) {
            t_opt = t_override;
            n_opt = 1; // explicit t implies the caller accepts the small-n regime
        }
        SimulatedCanonicalTester sim = piecewise_to_canonical(pw, t_opt, n_opt);
        TesterReport rep = run_simulated_canonical(f, sim, trials, seed);
        std::cout << "simulated," << n << ',' << sim.query_vertices << ',' << rep.trials << ','
                  << rep.accepts << ',' << rep.rate << ',' << rep.wilson_lo << ','
                  << rep.wilson_hi << '\n';
        return 0;
    }
    throw parameter_error("unknown tester: " + tester);
}

int cmd_boundary(const std::string& img_path, bool report, double regularize_delta,
                 int census_d, double er_delta, int trials, std::uint64_t seed) {
    std::ifstream in(img_path);
    if (!in) throw parameter_error("cannot open " + img_path);
    BWImage img = bw_from_image(read_image(in));

    if (regularize_delta > 0) {
        RegularizeResult r = regularize(img, regularize_delta);
        std::cout << "op,n,iterations,modified,strictly_decreasing\n";
        std::cout << "regularize," << r.j.n << ',' << r.iterations << ',' << r.modified_pixels
                  << ',' << (r.strictly_decreasing ? 1 : 0) << '\n';
        return 0;
    }
    if (census_d >= 0) {
        CensusResult c = boundary_distance_census(img, census_d);
        std::cout << "op,d,census,boundary,shapes,constant\n";
        std::cout << "census," << census_d << ',' << c.census << ',' << c.boundary << ','
                  << c.shape_count << ',' << c.constant << '\n';
        return 0;
    }
    if (er_delta > 0) {
        ERExperimentResult r = er_experiment(ensure_framed(img), er_delta, trials, seed);
        std::cout << "op,delta,budget,worst,worst_random,worst_adversarial,c,ratio\n";
        std::cout << "er," << er_delta << ',' << r.budget_moves << ',' << r.worst << ','
                  << r.worst_random << ',' << r.worst_adversarial << ','
                  << r.sparsity_c.str() << ',' << r.ratio << '\n';
        return 0;
    }
    (void)report;
    BoundaryReport rep = boundary_report(img);
    std::cout << "op,n,shapes,boundary,sparsity,def_boundary,lemma_ok\n";
    std::cout << "report," << rep.n << ',' << rep.all_shapes.size() << ','
              << rep.global_boundary.size() << ',' << rep.sparsity.str() << ','
              << rep.def_boundary_size << ','
              << (rep.boundary_pixel_lemma_holds && rep.outer_boundary_sum_bound_holds ? 1 : 0)
              << '\n';
    return 0;
}

int cmd_reg(const std::string& graph_path, const std::string& instance_path) {
    std::ifstream gin(graph_path);
    if (!gin) throw parameter_error("cannot open " + graph_path);
    OrderedGraph g = read_graph(gin);
    std::ifstream iin(instance_path);
    if (!iin) throw parameter_error("cannot open " + instance_path);
    RegularityInstance inst = read_regularity_instance(iin);

    InstanceVerdict v = satisfies_instance(g, inst);
    std::cout << "graph_n,instance_r,instance_k,gamma,satisfied\n";
    std::cout << g.n << ',' << inst.r() << ',' << inst.k() << ',' << inst.gamma().str() << ','
              << (v.satisfied ? 1 : 0) << '\n';
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    ExperimentConfig cfg = parse_config_file(config_path);
    std::string name = cfg.get("experiment", "");
    std::vector<std::string> names;
    if (name == "all" || name.empty())
        names = list_experiments();
    else
        names.push_back(name);

    bool any_fail = false;
    for (const std::string& exp : names) {
        ExperimentResult res = run_experiment(exp, cfg);
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            std::ofstream out(out_dir + "/" + exp + ".csv");
            write_csv(out, res.csv);
        } else {
            write_csv(std::cout, res.csv, false);
        }
        for (const auto& a : res.assertions) {
            std::cout << (a.pass ? "[PASS] " : "[FAIL] ") << exp << ": " << a.name;
            if (!a.detail.empty()) std::cout << " (" << a.detail << ")";
            std::cout << '\n';
            any_fail |= !a.pass;
        }
    }
    return any_fail ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ordtest: property-testing laboratory for ordered structures"};
    app.require_subcommand(1);

    // dist
    auto* dist = app.add_subcommand("dist", "distance computations");
    std::string kind = "hamming", structure = "string", a_path, b_path, perm_text,
                property_name;
    bool sampled = false;
    std::uint64_t seed = 1;
    dist->add_option("--kind", kind, "hamming|earthmover|mixing|property");
    dist->add_option("--structure", structure, "string|image|graph");
    dist->add_option("--a", a_path, "first structure file");
    dist->add_option("--b", b_path, "second structure file");
    dist->add_option("--perm", perm_text, "one-based permutation image");
    dist->add_option("--property", property_name, "catalog property name");
    dist->add_flag("--sampled", sampled, "labeled non-exact heuristic mode");
    dist->add_flag("--exact", [](std::int64_t) {}, "exact mode (default)");
    dist->add_option("--seed", seed, "root seed");

    // profile
    auto* profile = app.add_subcommand("profile", "earthmover-resilience profile");
    std::string budgets = "0.01";
    int n = 16, trials = 20;
    profile->add_option("--property", property_name, "catalog property")->required();
    profile->add_option("--n", n, "structure size")->required();
    profile->add_option("--budgets", budgets, "comma-separated move budgets");
    profile->add_option("--trials", trials, "trials per budget");
    profile->add_option("--seed", seed, "root seed")->required();

    // test
    auto* test = app.add_subcommand("test", "run a tester");
    std::string tester = "canonical", input, eps_text = "0.2";
    std::int64_t test_trials = 1000, t_override = 0;
    int q = 2, k = 2;
    test->add_option("--tester", tester, "canonical|piecewise|simulated|string-er");
    test->add_option("--property", property_name, "catalog property")->required();
    test->add_option("--input", input, "structure file")->required();
    test->add_option("--structure", structure, "string|image|graph");
    test->add_option("--eps", eps_text, "proximity parameter");
    test->add_option("--trials", test_trials, "trial count");
    test->add_option("--seed", seed, "root seed")->required();
    test->add_option("--q", q, "query vertices");
    test->add_option("--k", k, "interval parts");
    test->add_option("--t", t_override, "simulation block size override");

    // boundary
    auto* boundary = app.add_subcommand("boundary", "Appendix-style image analysis");
    std::string img_path;
    bool report = false;
    double reg_delta = 0, er_delta = 0;
    int census_d = -1;
    boundary->add_option("--img", img_path, "image file")->required();
    boundary->add_flag("--report", report, "boundary report (default)");
    boundary->add_option("--regularize", reg_delta, "regularize at delta");
    boundary->add_option("--census", census_d, "boundary-distance census at d");
    boundary->add_option("--er", er_delta, "earthmover experiment at delta");
    boundary->add_option("--trials", trials, "schedules for --er");
    boundary->add_option("--seed", seed, "root seed");

    // reg
    auto* reg = app.add_subcommand("reg", "regularity-instance check");
    std::string graph_path, instance_path, mode = "exact";
    reg->add_option("--graph", graph_path, "graph file")->required();
    reg->add_option("--instance", instance_path, "instance file")->required();
    reg->add_option("--mode", mode, "exact");

    // run / list-experiments / generate
    auto* runcmd = app.add_subcommand("run", "run named experiments from a config");
    std::string config_path, out_dir;
    runcmd->add_option("--config", config_path, "config file")->required();
    runcmd->add_option("--out", out_dir, "output directory for CSV files");

    app.add_subcommand("list-experiments", "list named experiments");

    auto* gen = app.add_subcommand("generate", "emit a structure");
    std::string gen_kind = "string", distribution = "uniform", out_path;
    int gen_n = 16;
    gen->add_option("--kind", gen_kind, "string|image|graph");
    gen->add_option("--n", gen_n, "size");
    gen->add_option("--distribution", distribution,
                    "uniform | property:<name> | planted:<pattern>");
    gen->add_option("--seed", seed, "root seed")->required();
    gen->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dist->parsed())
            return cmd_dist(kind, structure, a_path, b_path, perm_text, property_name,
                            sampled, seed);
        if (profile->parsed()) return cmd_profile(property_name, n, budgets, trials, seed);
        if (test->parsed())
            return cmd_test(tester, property_name, input, structure, eps_text, test_trials,
                            seed, q, k, t_override);
        if (boundary->parsed())
            return cmd_boundary(img_path, report, reg_delta, census_d, er_delta, trials, seed);
        if (reg->parsed()) return cmd_reg(graph_path, instance_path);
        if (runcmd->parsed()) return cmd_run(config_path, out_dir);
        if (app.get_subcommand("list-experiments")->parsed()) {
            for (const auto& name : list_experiments()) std::cout << name << '\n';
            return 0;
        }
        if (gen->parsed()) {
            OrderedStructure f = generate(gen_kind, gen_n, distribution, seed);
            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path);
                out = &file;
            }
            if (const auto* s = std::get_if<OrderedString>(&f)) write_string(*out, *s);
            else if (const auto* g = std::get_if<OrderedGraph>(&f)) write_graph(*out, *g);
            else write_image(*out, std::get<Image>(f));
            return 0;
        }
    } catch (const parameter_error& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 2;
    } catch (const capability_error& e) {
        std::cerr << "capability error: " << e.what() << '\n';
        return 2;
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
