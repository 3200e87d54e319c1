#include "schatten/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "schatten/clock.hpp"
#include "schatten/dqc1.hpp"
#include "schatten/exact_oracle.hpp"
#include "schatten/graph_models.hpp"
#include "schatten/io.hpp"
#include "schatten/walk.hpp"

namespace schatten {

std::string to_string(Task t) {
    switch (t) {
        case Task::SchattenTrace: return "schatten_trace";
        case Task::TracePower: return "trace_power";
        case Task::GraphEnergy: return "graph_energy";
        case Task::TraceF: return "trace_f";
        case Task::ClockReduction: return "clock_reduction";
        case Task::RegimeCheck: return "regime_check";
        case Task::AdvantageReport: return "advantage_report";
    }
    return "?";
}

Task task_from_string(const std::string& s) {
    for (Task t : {Task::SchattenTrace, Task::TracePower, Task::GraphEnergy, Task::TraceF,
                   Task::ClockReduction, Task::RegimeCheck, Task::AdvantageReport})
        if (to_string(t) == s) return t;
    throw ConfigError("unknown task: " + s);
}

void ExperimentSpec::validate() const {
    if (estimators.empty()) throw ConfigError("experiment: empty estimator set");
    for (const auto& e : estimators)
        if (e != "exact" && e != "dqc1" && e != "walker")
            throw ConfigError("experiment: unknown estimator " + e);
    const bool walker =
        std::find(estimators.begin(), estimators.end(), "walker") != estimators.end();
    if (walker && task != Task::TracePower)
        throw ConfigError("experiment: walker only supports trace_power");
    const bool dqc1 =
        std::find(estimators.begin(), estimators.end(), "dqc1") != estimators.end();
    if (dqc1 && (task == Task::RegimeCheck || task == Task::AdvantageReport))
        throw ConfigError("experiment: " + to_string(task) + " has no dqc1 estimator");
    if (input.empty() && !generator)
        throw ConfigError("experiment: no input file and no generator spec");
    if (p < 0) throw ConfigError("experiment: p must be >= 0");
    if (seeds.empty()) throw ConfigError("experiment: need at least one seed");
    if (readout != "exact" && readout != "sampled")
        throw ConfigError("experiment: readout must be exact or sampled");
    if (walk_mode != "corrected" && walk_mode != "literal")
        throw ConfigError("experiment: walk_mode must be corrected or literal");
}

ExperimentSpec ExperimentSpec::from_json(const nlohmann::json& j) {
    ExperimentSpec spec;
    try {
        spec.task = task_from_string(j.at("task").get<std::string>());
        spec.estimators = j.at("estimators").get<std::vector<std::string>>();
        if (j.contains("input")) spec.input = j.at("input").get<std::string>();
        if (j.contains("generator")) spec.generator = j.at("generator");
        if (j.contains("p")) spec.p = j.at("p").get<int>();
        if (j.contains("eps")) spec.eps = j.at("eps").get<double>();
        if (j.contains("eps_prime")) spec.eps_prime = j.at("eps_prime").get<double>();
        if (j.contains("fail_prob")) spec.fail_prob = j.at("fail_prob").get<double>();
        if (j.contains("seeds")) spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        if (j.contains("readout")) spec.readout = j.at("readout").get<std::string>();
        if (j.contains("walk_mode")) spec.walk_mode = j.at("walk_mode").get<std::string>();
        if (j.contains("samples")) spec.samples = j.at("samples").get<int>();
        if (j.contains("output_csv")) spec.output_csv = j.at("output_csv").get<std::string>();
        if (j.contains("output_json"))
            spec.output_json = j.at("output_json").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("experiment spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

ExperimentSpec ExperimentSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return from_json(j);
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(),
                                                 suffix) == 0;
}

// Input in both forms: a log-local Hamiltonian for the quantum paths and a
// sparse matrix for the walker. Either may be absent when the conversion is
// infeasible (non-power-of-two dimension, dense scale exceeded).
struct LoadedInput {
    std::optional<LogLocalHamiltonian> h;
    std::optional<SparseHermitian> a;
    std::optional<Mat> dense;
};

LoadedInput load_input(const ExperimentSpec& spec, const Config& cfg) {
    LoadedInput in;
    if (spec.generator) {
        DegreeModel model = degree_model_from_json(*spec.generator);
        std::mt19937_64 rng(spec.seeds.front());
        in.a = chung_lu_sample(model, rng);
    } else if (ends_with(spec.input, ".json")) {
        in.h = load_hamiltonian(spec.input, cfg);
    } else {
        in.a = load_sparse_text(spec.input);
    }
    if (in.h && in.h->n <= cfg.n_dense_max) {
        in.dense = assemble_dense(*in.h, cfg);
        in.a = sparse_from_dense(*in.dense, 0.0, cfg);
    } else if (in.a && in.a->dim() <= (1 << cfg.n_dense_max)) {
        in.dense = in.a->dense();
        const int n = in.a->dim();
        if ((n & (n - 1)) == 0 && n > 1) {
            int bits = 0;
            while ((1 << bits) < n) ++bits;
            LogLocalHamiltonian h;
            h.n = bits;
            std::vector<int> q(bits);
            for (int i = 0; i < bits; ++i) q[i] = i;
            h.terms.push_back(LocalTerm{q, *in.dense});
            Config wide = cfg;
            wide.locality_c = std::max(cfg.locality_c, static_cast<double>(bits));
            if (bits <= wide.k_max(bits)) in.h = std::move(h);
        }
    }
    return in;
}

EstimateReport exact_row(double truth, const std::string& mode) {
    EstimateReport rep;
    rep.estimator = "exact";
    rep.mode = mode;
    rep.value = truth;
    rep.set_truth(truth);
    return rep;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec_in, const Config& cfg) {
    ExperimentSpec spec = spec_in;
    spec.validate();
    if (const char* env = std::getenv("SCHATTEN_SEED"))
        spec.seeds = {std::strtoull(env, nullptr, 10)};

    // the exact oracle always rides along as the ground-truth column
    if (std::find(spec.estimators.begin(), spec.estimators.end(), "exact") ==
        spec.estimators.end())
        spec.estimators.insert(spec.estimators.begin(), "exact");

    const ReadoutMode readout =
        spec.readout == "sampled" ? ReadoutMode::Sampled : ReadoutMode::ExactSubmatrix;
    const WalkMode wmode =
        spec.walk_mode == "literal" ? WalkMode::Literal : WalkMode::Corrected;

    ExperimentResult result;
    auto push = [&](EstimateReport rep) {
        if (rep.pass && !*rep.pass) result.all_pass = false;
        result.reports.push_back(std::move(rep));
    };

    if (spec.task == Task::ClockReduction) {
        GateSequence seq = load_gate_sequence(spec.input, cfg);
        const double truth =
            seq.circuit_unitary(cfg).trace().real() / std::ldexp(1.0, seq.n);
        for (const auto& est : spec.estimators) {
            if (est == "exact") {
                push(exact_row(truth, "oracle"));
            } else {
                for (std::uint64_t seed : spec.seeds)
                    push(reduction_pipeline(seq, spec.eps, readout, seed, cfg));
            }
        }
    } else if (spec.task == Task::RegimeCheck || spec.task == Task::AdvantageReport) {
        if (!spec.generator && spec.input.empty())
            throw ConfigError("experiment: graph task needs a generator or input");
        if (spec.task == Task::RegimeCheck) {
            DegreeModel model = spec.generator
                                    ? degree_model_from_json(*spec.generator)
                                    : DegreeModel{};
            if (!spec.generator) throw ConfigError("regime_check requires a generator spec");
            std::mt19937_64 rng(spec.seeds.front());
            RegimeReport rr = eigenvalue_regime_check(model, spec.samples, rng);
            EstimateReport rep;
            rep.estimator = "exact";
            rep.mode = rr.regime;
            rep.value = rr.mean_lambda_max;
            rep.claimed_bound = 0.25 * rr.predicted;  // desk-scale asymptotic tolerance
            rep.seed = spec.seeds.front();
            rep.shots = static_cast<std::uint64_t>(rr.samples);
            rep.parameters = {{"d", rr.d}, {"d_tilde", rr.d_tilde}, {"ratio", rr.ratio}};
            rep.set_truth(rr.predicted);
            push(std::move(rep));
        } else {
            LoadedInput in = load_input(spec, cfg);
            if (!in.a) throw InputError("advantage_report: no sparse matrix available");
            AdvantageReport ar = accuracy_advantage_report(*in.a, spec.p);
            EstimateReport rep;
            rep.estimator = "exact";
            rep.mode = "advantage";
            rep.value = ar.ratio;
            rep.seed = spec.seeds.front();
            rep.parameters = {{"quantum_bound", ar.quantum_bound},
                              {"classical_bound", ar.classical_bound},
                              {"norm", ar.norm},
                              {"d", static_cast<double>(ar.d)},
                              {"p", static_cast<double>(ar.p)}};
            push(std::move(rep));
        }
    } else {
        LoadedInput in = load_input(spec, cfg);
        std::optional<double> truth;
        if (in.dense) {
            SpectrumReport sp = spectrum(*in.dense, cfg);
            const double dim = static_cast<double>(in.dense->rows());
            double acc = 0.0;
            for (Eigen::Index i = 0; i < sp.eigenvalues.size(); ++i) {
                const double l = sp.eigenvalues[i];
                switch (spec.task) {
                    case Task::SchattenTrace: acc += std::pow(std::abs(l), spec.p); break;
                    case Task::TracePower: acc += std::pow(l, spec.p); break;
                    case Task::GraphEnergy: acc += std::abs(l); break;
                    case Task::TraceF:
                        acc += sp.norm > 0.0 ? std::pow(l / sp.norm, spec.p) : 0.0;
                        break;
                    default: break;
                }
            }
            truth = acc / dim;
        }
        for (const auto& est : spec.estimators) {
            if (est == "exact") {
                if (!truth) throw InputError("experiment: exact oracle infeasible at this size");
                push(exact_row(*truth, "oracle"));
            } else if (est == "dqc1") {
                if (!in.h) throw InputError("experiment: dqc1 estimator needs a Hamiltonian");
                for (std::uint64_t seed : spec.seeds) {
                    EstimateReport rep;
                    if (spec.task == Task::TraceF) {
                        const double b = in.dense ? spectrum(*in.dense, cfg).norm : kPi;
                        rep = run_trace_f(*in.h,
                                          make_pow_normalized(spec.p, std::max(b, 1e-12)),
                                          spec.eps, readout, seed, cfg);
                    } else {
                        const PowerKind kind = spec.task == Task::TracePower
                                                   ? PowerKind::Power
                                                   : PowerKind::AbsPower;
                        const int p_eff = spec.task == Task::GraphEnergy ? 1 : spec.p;
                        rep = estimate_schatten_trace(*in.h, p_eff, spec.eps, readout, kind,
                                                      seed, cfg);
                    }
                    if (truth) rep.set_truth(*truth);
                    push(std::move(rep));
                }
            } else {  // walker
                if (!in.a) throw InputError("experiment: walker needs a sparse matrix");
                WalkPlan plan = plan_samples(spec.p, spec.eps, spec.eps_prime,
                                             spec.fail_prob, in.a->matrix_class(), wmode);
                const std::uint64_t kpp =
                    plan_vertex_samples(plan.delta(), spec.fail_prob);
                for (std::uint64_t seed : spec.seeds) {
                    EstimateReport rep = trace_power_estimate(*in.a, plan, kpp, seed);
                    if (truth) rep.set_truth(*truth);
                    push(std::move(rep));
                }
            }
        }
    }

    std::ostringstream table;
    table << "estimator      value          truth          bound          pass\n";
    for (const auto& r : result.reports) {
        char line[256];
        std::snprintf(line, sizeof(line), "%-14s %-14.6g %-14s %-14.6g %s\n",
                      r.estimator.c_str(), r.value,
                      r.truth ? fmt(*r.truth).c_str() : "-", r.claimed_bound,
                      r.pass ? (*r.pass ? "yes" : "NO") : "-");
        table << line;
    }
    result.summary = table.str();

    if (!spec.output_csv.empty()) {
        std::ofstream os(spec.output_csv);
        if (!os) throw InputError("cannot write " + spec.output_csv);
        write_reports_csv(result.reports, os);
    }
    if (!spec.output_json.empty()) {
        std::ofstream os(spec.output_json);
        if (!os) throw InputError("cannot write " + spec.output_json);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : result.reports) arr.push_back(r.to_json());
        os << arr.dump(2) << "\n";
    }
    return result;
}

void write_reports_csv(const std::vector<EstimateReport>& reports, std::ostream& os) {
    os << "estimator,value,truth,bound,pass,seed,ms\n";
    for (const auto& r : reports) {
        os << r.estimator << ',' << fmt(r.value) << ','
           << (r.truth ? fmt(*r.truth) : "") << ',' << fmt(r.claimed_bound) << ','
           << (r.pass ? (*r.pass ? "true" : "false") : "") << ',' << r.seed << ','
           << fmt(r.wallclock_ms) << "\n";
    }
}

void emit_plots(const std::vector<EstimateReport>& reports, const std::string& csv_path,
                const std::string& svg_path) {
    if (reports.empty()) throw InputError("emit_plots: no reports");
    // x-axis: eps when every report carries one, otherwise the report index
    bool have_eps = true;
    for (const auto& r : reports) have_eps = have_eps && r.parameters.count("eps");
    std::vector<double> xs(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i)
        xs[i] = have_eps ? reports[i].parameters.at("eps") : static_cast<double>(i);

    {
        std::ofstream os(csv_path);
        if (!os) throw InputError("cannot write " + csv_path);
        os << "index,x,value,truth,bound\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            os << i << ',' << fmt(xs[i]) << ',' << fmt(r.value) << ','
               << (r.truth ? fmt(*r.truth) : "") << ',' << fmt(r.claimed_bound) << "\n";
        }
    }

    double xmin = xs[0], xmax = xs[0], ymin = reports[0].value, ymax = reports[0].value;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        xmin = std::min(xmin, xs[i]);
        xmax = std::max(xmax, xs[i]);
        for (double y : {r.value - r.claimed_bound, r.value + r.claimed_bound})
            ymin = std::min(ymin, y), ymax = std::max(ymax, y);
        if (r.truth) ymin = std::min(ymin, *r.truth), ymax = std::max(ymax, *r.truth);
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double w = 640.0, h = 400.0, m = 48.0;
    auto px = [&](double x) { return m + (x - xmin) / (xmax - xmin) * (w - 2 * m); };
    auto py = [&](double y) { return h - m - (y - ymin) / (ymax - ymin) * (h - 2 * m); };

    std::ofstream os(svg_path);
    if (!os) throw InputError("cannot write " + svg_path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << m << "\" y1=\"" << h - m << "\" x2=\"" << w - m << "\" y2=\""
       << h - m << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << h - m
       << "\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        if (r.claimed_bound > 0.0)
            os << "<line x1=\"" << px(xs[i]) << "\" y1=\"" << py(r.value - r.claimed_bound)
               << "\" x2=\"" << px(xs[i]) << "\" y2=\"" << py(r.value + r.claimed_bound)
               << "\" stroke=\"#8888ff\" stroke-width=\"2\"/>\n";
        if (r.truth)
            os << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(*r.truth)
               << "\" r=\"3\" fill=\"none\" stroke=\"#cc3333\"/>\n";
        os << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(r.value)
           << "\" r=\"3\" fill=\"#333333\"/>\n";
    }
    os << "</svg>\n";
}

}  // namespace schatten
