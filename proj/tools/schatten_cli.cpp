#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "schatten/clock.hpp"
#include "schatten/dqc1.hpp"
#include "schatten/exact_oracle.hpp"
#include "schatten/experiment.hpp"
#include "schatten/graph_models.hpp"
#include "schatten/io.hpp"
#include "schatten/walk.hpp"

namespace {

using namespace schatten;

// Load either a Hamiltonian JSON file or a sparse text matrix as a dense matrix.
Mat load_dense(const std::string& path, const Config& cfg) {
    if (path.size() > 5 && path.compare(path.size() - 5, 5, ".json") == 0)
        return assemble_dense(load_hamiltonian(path, cfg), cfg);
    return load_sparse_text(path).dense();
}

void print_report(const EstimateReport& rep) { std::cout << rep.to_json().dump(2) << "\n"; }

ReadoutMode parse_readout(const std::string& s) {
    return s == "sampled" ? ReadoutMode::Sampled : ReadoutMode::ExactSubmatrix;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace, Schatten-norm and graph-energy estimation toolkit"};
    app.require_subcommand(1);
    Config cfg;

    // run / compare
    std::string spec_path;
    auto* run = app.add_subcommand("run", "Run an experiment spec (JSON)");
    run->add_option("spec", spec_path, "experiment spec file")->required();
    auto* compare = app.add_subcommand("compare", "Run a spec and print the comparison table");
    compare->add_option("spec", spec_path, "experiment spec file")->required();

    // oracle
    std::string matrix_path;
    int p = 2;
    std::string f_name = "abs_pow";
    auto* oracle = app.add_subcommand("oracle", "Exact spectral quantities of a matrix");
    oracle->add_option("matrix", matrix_path, "hamiltonian .json or sparse .txt")->required();
    oracle->add_option("--p", p, "power");
    oracle->add_option("--f", f_name, "pow | abs_pow");

    // dqc1
    std::string ham_path;
    double eps = 0.1;
    std::uint64_t seed = 0;
    std::string readout = "exact";
    auto* dqc1 = app.add_subcommand("dqc1", "One-clean-qubit Schatten trace estimate");
    dqc1->add_option("hamiltonian", ham_path, "hamiltonian .json")->required();
    dqc1->add_option("--p", p, "power");
    dqc1->add_option("--eps", eps, "accuracy target");
    dqc1->add_option("--seed", seed, "rng seed");
    dqc1->add_option("--readout", readout, "exact | sampled");

    // walk
    std::string graph_path;
    double eps_prime = 0.1, fail_prob = 0.05;
    std::string walk_mode = "corrected";
    auto* walk = app.add_subcommand("walk", "Classical random-walk trace-power estimate");
    walk->add_option("graph", graph_path, "sparse .txt matrix")->required();
    walk->add_option("--p", p, "power");
    walk->add_option("--eps", eps, "X accuracy");
    walk->add_option("--eps-prime", eps_prime, "Y accuracy");
    walk->add_option("--fail-prob", fail_prob, "per-estimate failure probability");
    walk->add_option("--mode", walk_mode, "corrected | literal");
    walk->add_option("--seed", seed, "rng seed");

    // clock
    std::string circuit_path;
    auto* clockcmd = app.add_subcommand("clock", "Clock-Hamiltonian reduction pipeline");
    clockcmd->add_option("circuit", circuit_path, "gate sequence .json")->required();
    clockcmd->add_option("--eps", eps, "accuracy target");
    clockcmd->add_option("--seed", seed, "rng seed");
    clockcmd->add_option("--readout", readout, "exact | sampled");

    // graphgen
    std::string model_path, out_path = "graph.txt";
    auto* graphgen = app.add_subcommand("graphgen", "Sample a Chung-Lu graph from a model");
    graphgen->add_option("model", model_path, "degree model .json")->required();
    graphgen->add_option("--out", out_path, "output sparse .txt path");
    graphgen->add_option("--seed", seed, "rng seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run || *compare) {
            ExperimentResult result = run_experiment(ExperimentSpec::load(spec_path), cfg);
            std::cout << result.summary;
            return result.all_pass ? 0 : 1;
        }
        if (*oracle) {
            Mat a = load_dense(matrix_path, cfg);
            SpectrumReport sp = spectrum(a, cfg);
            SpectralFunction f = f_name == "pow" ? make_pow(p, std::max(sp.norm, 1e-12))
                                                 : make_abs_pow(p, std::max(sp.norm, 1e-12));
            nlohmann::json j{{"dim", a.rows()},
                             {"norm", sp.norm},
                             {"min_abs_eig", sp.min_abs_eig},
                             {"trace_f", trace_f(a, f, cfg)},
                             {"schatten_p_norm", schatten_p_norm(a, p, cfg)}};
            if (sp.condition_finite) j["condition"] = sp.condition;
            std::cout << j.dump(2) << "\n";
        } else if (*dqc1) {
            LogLocalHamiltonian h = load_hamiltonian(ham_path, cfg);
            print_report(estimate_schatten_trace(h, p, eps, parse_readout(readout),
                                                 PowerKind::AbsPower, seed, cfg));
        } else if (*walk) {
            SparseHermitian a = load_sparse_text(graph_path);
            WalkPlan plan = plan_samples(
                p, eps, eps_prime, fail_prob, a.matrix_class(),
                walk_mode == "literal" ? WalkMode::Literal : WalkMode::Corrected);
            print_report(trace_power_estimate(
                a, plan, plan_vertex_samples(plan.delta(), fail_prob), seed));
        } else if (*clockcmd) {
            GateSequence seq = load_gate_sequence(circuit_path, cfg);
            HardnessIdentity id = hardness_identity_check(seq, cfg);
            std::cerr << "identity residual: " << id.residual << "\n";
            print_report(reduction_pipeline(seq, eps, parse_readout(readout), seed, cfg));
        } else if (*graphgen) {
            std::ifstream in(model_path);
            if (!in) throw InputError("cannot open " + model_path);
            nlohmann::json mj;
            in >> mj;
            DegreeModel model = degree_model_from_json(mj);
            std::mt19937_64 rng(seed);
            SampleStats stats;
            SparseHermitian a = chung_lu_sample(model, rng, &stats);
            save_sparse_text(a, out_path);
            std::cout << "wrote " << out_path << " (N=" << a.dim() << ", d=" << a.sparsity()
                      << ", clipped pairs=" << stats.clipped_pairs << ")\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
