// geewe: generate instances, run episodes, sweep families, query the oracle.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <numeric>

#include "geewe/adversaries.hpp"
#include "geewe/errors.hpp"
#include "geewe/explorers.hpp"
#include "geewe/harness.hpp"
#include "geewe/instance_io.hpp"

using namespace geewe;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kCap = 2, kInternal = 3 };

struct Flags {
    std::string family;
    std::string file;
    std::string alpha = "2";
    int k = 2;
    int depth = 1;
    int m = 4;
    int n = 6;
    std::uint64_t seed = 1;
    double density = 0.5;
    std::string law = "mixed";
    std::string explorer = "adaptive";
    std::string out;
    std::string format = "json";
    // sweep lists
    std::vector<std::string> alphas;
    std::vector<int> ks, depths, ms, ns;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> explorers;
    unsigned threads = 0;
    std::uint64_t budget = SolverLimits{}.search_budget;
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) std::cout << text;
    else write_text_file(out, text);
}

Rational alpha_flag(const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument& ex) {
        throw InvalidInput("--alpha: " + std::string(ex.what()));
    }
}

json generate(const Flags& f) {
    const Rational alpha = alpha_flag(f.alpha);
    if (f.family == "random") {
        IntervalLaw law = f.law == "uniform" ? IntervalLaw::uniform : IntervalLaw::mixed;
        if (f.law != "uniform" && f.law != "mixed") throw InvalidInput("--law must be uniform or mixed");
        auto ri = random_instance({f.n, f.density, law, alpha, f.seed, f.density >= 1.0});
        return instance_to_json(ri.graph, &ri.weights);
    }
    if (f.family == "grid") {
        auto trap = build_grid_trap({f.m, alpha});
        json doc = instance_to_json(trap.graph, &trap.weights);
        doc["certificate"] = trap.certificate;
        return doc;
    }
    // Adaptive adversaries: the structure plus what is needed to rebuild the adversary.
    json doc{{"adversary", f.family}, {"alpha", alpha.str()}, {"k", f.k}};
    if (f.family == "recursive") {
        auto inst = build_recursive({f.k, f.depth, alpha});
        doc["depth"] = f.depth;
        doc["alpha"] = inst.spec.alpha.str();
        doc["instance"] = instance_to_json(inst.graph);
    } else if (f.family == "complete" || f.family == "bipartite") {
        auto pi = f.family == "complete" ? build_complete_adversary(2 * f.k, alpha) : build_bipartite_adversary(f.k, f.k, alpha);
        doc["alpha"] = pi.alpha.str();
        doc["instance"] = instance_to_json(pi.graph);
    } else {
        throw InvalidInput("unknown family '" + f.family + "' (expected random, grid, recursive, complete or bipartite)");
    }
    return doc;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw InvalidInput(path + ": " + ex.what());
    }
}

json run(const Flags& f) {
    json doc = read_json(f.file);
    SolverLimits limits;
    limits.search_budget = f.budget;
    auto explorer = make_explorer(f.explorer, limits);
    RunOptions opt;
    opt.instance = f.file;
    opt.limits = limits;
    if (!doc.contains("adversary")) {
        Instance inst = instance_from_json(doc);
        if (!inst.actual) throw InvalidInput(f.file + " has no actual weights; run needs them or an adversary config");
        if (doc.contains("certificate")) {
            auto cert = doc["certificate"].get<std::vector<VertexId>>();
            opt.certificate = [cert](const WeightAssignment&) { return std::optional(cert); };
        }
        FixedAssignment src(*inst.actual);
        return report_to_json(run_episode(inst.graph, src, *explorer, opt));
    }
    const std::string kind = doc.at("adversary").get<std::string>();
    const Rational alpha = alpha_flag(doc.at("alpha").get<std::string>());
    const int k = doc.at("k").get<int>();
    if (kind == "recursive") {
        auto inst = build_recursive({k, doc.at("depth").get<int>(), alpha});
        RecursiveAdversary adv(inst);
        opt.certificate = [&](const WeightAssignment& w) { return std::optional(recursive_certificate(inst, w)); };
        return report_to_json(run_episode(inst.graph, adv, *explorer, opt));
    }
    if (kind == "complete" || kind == "bipartite") {
        auto pi = kind == "complete" ? build_complete_adversary(2 * k, alpha) : build_bipartite_adversary(k, k, alpha);
        PhaseAdversary adv(pi.graph, pi.phase, pi.alpha, kind);
        return report_to_json(run_episode(pi.graph, adv, *explorer, opt));
    }
    throw InvalidInput("unknown adversary '" + kind + "'");
}

std::string sweep(const Flags& f) {
    SweepConfig cfg;
    cfg.family = f.family;
    cfg.k = f.ks;
    cfg.depth = f.depths;
    cfg.m = f.ms;
    cfg.n = f.ns;
    for (const auto& a : f.alphas) cfg.alpha.push_back(alpha_flag(a));
    if (!f.explorers.empty()) cfg.explorers = f.explorers;
    if (!f.seeds.empty()) cfg.seeds = f.seeds;
    cfg.output = f.out;
    cfg.threads = f.threads;
    cfg.limits.search_budget = f.budget;
    auto rows = run_sweep(cfg);
    if (!cfg.output.empty()) write_report(rows, cfg.output);
    return f.format == "csv" ? rows_to_csv(rows) : rows_to_json(rows).dump(2) + "\n";
}

json oracle(const Flags& f) {
    Instance inst = read_instance_file(f.file);
    if (!inst.actual) throw InvalidInput(f.file + " has no actual weights");
    std::vector<VertexId> all(static_cast<std::size_t>(inst.graph.vertex_count()));
    std::iota(all.begin(), all.end(), 0);
    SolverLimits limits;
    limits.search_budget = f.budget;
    CoverTask task{inst.actual->weights, inst.graph.start(), inst.graph.end(), all, {}};
    auto r = optimal_cover_walk(inst.graph, task, limits);
    return json{{"cost", r.cost.str()}, {"cost_decimal", r.cost.decimal(6)}, {"walk", r.walk.vertices},
                {"method", to_string(r.method)}, {"expansions", r.expansions}};
}

json validate_file(const Flags& f) {
    Instance inst = read_instance_file(f.file);
    auto profile = alpha_of(inst.graph);
    return json{{"valid", true},
                {"n", inst.graph.vertex_count()},
                {"edges", inst.graph.edge_count()},
                {"alpha", profile.alpha.str()},
                {"uniform", profile.uniform},
                {"actual", inst.actual.has_value()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph exploration with edge weight estimates"};
    app.require_subcommand(1);
    Flags f;

    auto* gen = app.add_subcommand("generate", "write an instance or adversary config");
    gen->add_option("family", f.family, "random | grid | recursive | complete | bipartite")->required();
    gen->add_option("--alpha", f.alpha, "alpha as p/q or decimal");
    gen->add_option("--k", f.k);
    gen->add_option("--depth", f.depth);
    gen->add_option("--m", f.m);
    gen->add_option("--n", f.n);
    gen->add_option("--seed", f.seed);
    gen->add_option("--density", f.density, "edge probability; 1 gives K_n");
    gen->add_option("--law", f.law, "uniform | mixed");
    gen->add_option("--out", f.out);

    auto* run_cmd = app.add_subcommand("run", "run one episode");
    run_cmd->add_option("file", f.file, "instance with actual weights, or adversary config")->required();
    run_cmd->add_option("--explorer", f.explorer);
    run_cmd->add_option("--budget", f.budget, "branch and bound expansion budget");
    run_cmd->add_option("--out", f.out);

    auto* sw = app.add_subcommand("sweep", "ratio table over a family");
    sw->add_option("family", f.family, "random | random-complete | recursive | complete | bipartite | grid")->required();
    sw->add_option("--alpha", f.alphas)->delimiter(',');
    sw->add_option("--k", f.ks)->delimiter(',');
    sw->add_option("--depth", f.depths)->delimiter(',');
    sw->add_option("--m", f.ms)->delimiter(',');
    sw->add_option("--n", f.ns)->delimiter(',');
    sw->add_option("--seed", f.seeds)->delimiter(',');
    sw->add_option("--explorer", f.explorers)->delimiter(',');
    sw->add_option("--threads", f.threads);
    sw->add_option("--budget", f.budget);
    sw->add_option("--out", f.out, "also write <out>.csv and <out>.json");
    sw->add_option("--format", f.format, "stdout format: csv | json")->check(CLI::IsMember({"csv", "json"}));

    auto* orc = app.add_subcommand("oracle", "optimal covering walk for the actual weights");
    orc->add_option("file", f.file)->required();
    orc->add_option("--budget", f.budget);
    orc->add_option("--out", f.out);

    auto* val = app.add_subcommand("validate", "check an instance file");
    val->add_option("file", f.file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*gen) emit(generate(f).dump(2) + "\n", f.out);
        else if (*run_cmd) emit(run(f).dump(2) + "\n", f.out);
        else if (*sw) std::cout << sweep(f);
        else if (*orc) emit(oracle(f).dump(2) + "\n", f.out);
        else if (*val) emit(validate_file(f).dump(2) + "\n", "");
        return kOk;
    } catch (const InvalidInput& ex) {
        std::cerr << "invalid input: " << ex.what() << "\n";
        return kInvalid;
    } catch (const SolverCapExceeded& ex) {
        std::cerr << "solver cap: " << ex.what() << "\n";
        return kCap;
    } catch (const json::exception& ex) {
        std::cerr << "invalid input: " << ex.what() << "\n";
        return kInvalid;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return kInternal;
    }
}
