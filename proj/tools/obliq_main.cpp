// obliq: command-line surface for the subspace-geometry library.
//
// Subcommands: incline, decompose, extend, l2, cavity. Every command emits a
// versioned JSON report ("schema": "obliq/1") to --json or stdout. Reports
// are byte-stable for identical inputs; wall-clock timings are only included
// under --timings so the default output stays diffable.
//
// Exit codes: 0 success; 1 I/O or validation failure (machine-readable error
// object); 2 containment degeneracy (incline); 3 NotInSumSpace (decompose);
// 4 NotInFQ (extend).

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "obliq/cavity.hpp"
#include "obliq/decompose.hpp"
#include "obliq/functional.hpp"
#include "obliq/io.hpp"
#include "obliq/l2model.hpp"

namespace {

using namespace obliq;
using Clock = std::chrono::steady_clock;

struct OutputOptions {
    std::string json_path;
    std::string csv_path;
    bool timings = false;
};

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

void emit(const OutputOptions& opts, const Json& report) {
    const std::string text = report.dump(2) + "\n";
    if (opts.json_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.json_path, std::ios::binary);
        if (!out) throw IoError("cannot open " + opts.json_path + " for writing");
        out << text;
    }
}

int emit_error(const OutputOptions& opts, const std::string& command,
               const std::string& type, const std::string& message) {
    Json report;
    report["schema"] = "obliq/1";
    report["command"] = command;
    report["error"] = Json{{"type", type}, {"message", message}};
    emit(opts, report);
    if (command == "decompose" && type == "NotInSumSpace") return 3;
    if (command == "extend" && type == "NotInFQ") return 4;
    return 1;
}

Json report_shell(const std::string& command) {
    Json report;
    report["schema"] = "obliq/1";
    report["command"] = command;
    return report;
}

ColVec load_vector(const std::string& path) {
    Matrix m = read_matrix(path);
    if (m.cols() == 1) return m.col(0);
    if (m.rows() == 1) return m.row(0).transpose();
    throw IoError(path + " is not a vector (got " + std::to_string(m.rows()) +
                  "x" + std::to_string(m.cols()) + ")");
}

struct PairInputs {
    std::string space_path, l_path, m_path;
    double tol = kDefaultIntersectTol;
    double rank_tol = kDefaultRankTol;

    SpacePtr space;
    Subspace l, m;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--space", space_path, "metric matrix (.mtx/.csv)")
            ->required();
        cmd->add_option("--l", l_path, "generators of L (.mtx/.csv)")->required();
        cmd->add_option("--m", m_path, "generators of M (.mtx/.csv)")->required();
        cmd->add_option("--tol", tol, "intersection/residual tolerance");
        cmd->add_option("--rank-tol", rank_tol, "relative rank threshold");
    }

    void load() {
        space = make_space(read_matrix(space_path));
        l = span(space, read_matrix(l_path), rank_tol);
        m = span(space, read_matrix(m_path), rank_tol);
    }

    Json digests() const {
        Json j;
        j["space"] = file_digest(space_path);
        j["l"] = file_digest(l_path);
        j["m"] = file_digest(m_path);
        return j;
    }

    Json tolerances() const {
        Json j;
        j["tol"] = tol;
        j["rank_tol"] = rank_tol;
        return j;
    }
};

int run_incline(const PairInputs& in, const OutputOptions& opts,
                Clock::time_point start) {
    const auto t0 = Clock::now();
    InclinationReport rep = inclination(in.l, in.m, in.tol);
    const double compute_ms = elapsed_ms(t0);

    Json report = report_shell("incline");
    report["inputs"] = in.digests();
    report["tolerances"] = in.tolerances();
    report["outputs"] = inclination_report_json(rep);
    if (opts.timings) {
        report["timings_ms"] =
            Json{{"compute", compute_ms}, {"total", elapsed_ms(start)}};
    }
    emit(opts, report);
    return rep.containment != Containment::none ? 2 : 0;
}

int run_decompose(const PairInputs& in, const std::string& x_path, double a1,
                  const OutputOptions& opts, Clock::time_point start) {
    Vector x = make_vector(in.space, load_vector(x_path));
    const auto t0 = Clock::now();
    Decomposition d = decompose(in.l, in.m, x, a1, in.tol);
    BoundsReport bounds = verify_bounds(d);
    const double compute_ms = elapsed_ms(t0);

    Json report = report_shell("decompose");
    report["inputs"] = in.digests();
    report["inputs"]["x"] = file_digest(x_path);
    report["tolerances"] = in.tolerances();
    report["outputs"] = decomposition_json(d, bounds);
    if (opts.timings) {
        report["timings_ms"] =
            Json{{"compute", compute_ms}, {"total", elapsed_ms(start)}};
    }
    emit(opts, report);
    return 0;
}

int run_extend(const PairInputs& in, const std::string& w_path,
               const OutputOptions& opts, Clock::time_point start) {
    Functional f = make_functional(in.space, load_vector(w_path));
    const auto t0 = Clock::now();
    ExtensionReport ext = extend(f, in.l, in.m, in.tol);
    const double compute_ms = elapsed_ms(t0);

    Json report = report_shell("extend");
    report["inputs"] = in.digests();
    report["inputs"]["w"] = file_digest(w_path);
    report["tolerances"] = in.tolerances();
    report["outputs"] = extension_report_json(ext);
    if (opts.timings) {
        report["timings_ms"] =
            Json{{"compute", compute_ms}, {"total", elapsed_ms(start)}};
    }
    emit(opts, report);
    return 0;
}

// --theta-family grammar: "1/n" (the degenerating family) or "const:<v>".
RealVec family_thetas(const std::string& family, Eigen::Index n) {
    if (family == "1/n") {
        return one_over_n_config(n).thetas;
    }
    if (family.rfind("const:", 0) == 0) {
        const double v = std::stod(family.substr(6));
        return RealVec::Constant(n, v);
    }
    throw BadTheta("unknown theta family '" + family +
                   "' (expected \"1/n\" or \"const:<value>\")");
}

int run_l2(Eigen::Index pairs, const std::vector<double>& thetas,
           const std::string& family, const std::string& config_path,
           const std::string& export_prefix, int probe_steps, double tol,
           const OutputOptions& opts, Clock::time_point start) {
    L2ModelConfig config;
    if (!config_path.empty()) {
        if (!thetas.empty() || !family.empty()) {
            throw BadTheta("--config is exclusive with --thetas/--theta-family");
        }
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot open " + config_path);
        Json cfg = Json::parse(in, nullptr, true, /*ignore_comments=*/true);
        config.n_pairs = cfg.at("n_pairs").get<Eigen::Index>();
        const auto& arr = cfg.at("thetas");
        config.thetas.resize(static_cast<Eigen::Index>(arr.size()));
        for (Eigen::Index i = 0; i < config.thetas.size(); ++i) {
            config.thetas(i) = arr.at(static_cast<size_t>(i)).get<double>();
        }
        pairs = config.n_pairs;
    } else {
        config.n_pairs = pairs;
        if (!thetas.empty()) {
            if (!family.empty()) {
                throw BadTheta("--thetas and --theta-family are exclusive");
            }
            config.thetas = Eigen::Map<const RealVec>(
                thetas.data(), static_cast<Eigen::Index>(thetas.size()));
            if (config.thetas.size() != pairs) {
                throw BadTheta("expected " + std::to_string(pairs) +
                               " thetas, got " + std::to_string(thetas.size()));
            }
        } else if (!family.empty()) {
            config.thetas = family_thetas(family, pairs);
        } else {
            throw BadTheta("one of --thetas, --theta-family, --config is required");
        }
    }

    const auto t0 = Clock::now();
    L2Model model = build_l2(config);
    const double engine_c = inclination(model.l, model.m, tol).c;
    const double closed_c = analytic_inclination(config);

    if (!export_prefix.empty()) {
        write_matrix(export_prefix + ".G.mtx", model.space->gram());
        write_matrix(export_prefix + ".L.mtx", model.l.basis());
        write_matrix(export_prefix + ".M.mtx", model.m.basis());
    }

    Json outputs;
    outputs["n_pairs"] = config.n_pairs;
    outputs["thetas"] = real_vector_json(config.thetas);
    outputs["c_engine"] = engine_c;
    outputs["c_analytic"] = closed_c;
    outputs["agreement"] = std::abs(engine_c - closed_c);

    if (probe_steps > 0) {
        if (family.empty()) {
            throw BadTheta("--probe requires --theta-family");
        }
        // Step t truncates the family at pairs * 2^(t-1) coordinate pairs.
        SubspaceFamily gen = [&](int step) {
            const Eigen::Index n = pairs << (step - 1);
            L2ModelConfig cfg;
            cfg.n_pairs = n;
            cfg.thetas = family_thetas(family, n);
            L2Model m = build_l2(cfg);
            return std::make_pair(m.l, m.m);
        };
        ProbeTable table = degeneracy_probe(gen, probe_steps, tol);
        outputs["probe"] = probe_table_json(table);
        if (!opts.csv_path.empty()) {
            std::ofstream csv(opts.csv_path, std::ios::binary);
            if (!csv) throw IoError("cannot open " + opts.csv_path);
            probe_table_csv(csv, table);
        }
    }
    const double compute_ms = elapsed_ms(t0);

    Json report = report_shell("l2");
    report["inputs"] = Json{{"pairs", pairs},
                            {"thetas", real_vector_json(config.thetas)},
                            {"theta_family", family},
                            {"probe", probe_steps}};
    if (!config_path.empty()) {
        report["inputs"]["config"] = file_digest(config_path);
    }
    report["tolerances"] = Json{{"tol", tol}};
    report["outputs"] = std::move(outputs);
    if (opts.timings) {
        report["timings_ms"] =
            Json{{"compute", compute_ms}, {"total", elapsed_ms(start)}};
    }
    emit(opts, report);
    return 0;
}

int run_cavity(int dim, int modes, const std::string& config_path, bool korn,
               int samples, int threads, std::uint64_t seed, double tol,
               const OutputOptions& opts, Clock::time_point start) {
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot open " + config_path);
        Json cfg = Json::parse(in, nullptr, true, /*ignore_comments=*/true);
        dim = cfg.at("d").get<int>();
        modes = cfg.at("n_modes").get<int>();
        if (cfg.contains("korn_samples")) {
            samples = cfg.at("korn_samples").get<int>();
        }
    }
    const auto t0 = Clock::now();
    CavityModel model = build_cavity({dim, modes, samples}, threads);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_member = [&](const Subspace& s) {
        ColVec mix(s.dim());
        for (Eigen::Index i = 0; i < s.dim(); ++i) mix(i) = gauss(rng);
        return RealVec((s.basis() * mix).real());
    };

    double identity_worst = 0.0;
    for (int t = 0; t < samples; ++t) {
        TrigField u = from_coords(model, random_member(model.l_sub));
        const double q_grad = l2_norm_sq(apply_component_grad(u));
        if (q_grad == 0.0) continue;
        identity_worst =
            std::max(identity_worst, std::abs(identity_check(model, u)) / q_grad);
    }

    double contraction_min = 0.0;
    bool contraction_first = true;
    for (int t = 0; t < samples; ++t) {
        const RealVec coords = random_member(model.l_hat);
        Vector x{model.ambient, coords.cast<Complex>()};
        const double nsq = norm(x) * norm(x);
        if (nsq == 0.0) continue;
        const double slack = contraction_check_coords(model, coords) / nsq;
        contraction_min =
            contraction_first ? slack : std::min(contraction_min, slack);
        contraction_first = false;
    }

    Json outputs;
    outputs["d"] = dim;
    outputs["n_modes"] = modes;
    outputs["ambient_dim"] = model.ambient->dim();
    outputs["dim_l"] = model.l_sub.dim();
    outputs["dim_m"] = model.m_sub.dim();
    outputs["dim_l_hat"] = model.l_hat.dim();
    outputs["q_dim"] = model.q_lm.dim();
    outputs["c"] = model.c;
    outputs["identity"] =
        Json{{"samples", samples}, {"max_rel_slack", identity_worst}};
    outputs["contraction"] =
        Json{{"samples", samples}, {"min_rel_slack", contraction_min}};
    if (korn) {
        KornResult k = korn_measure(model);
        const double independent = rayleigh_kappa(model);
        outputs["korn"] = Json{{"kappa", k.kappa},
                               {"kappa_maximizer", independent},
                               {"bound", k.bound},
                               {"margin", k.margin}};
    }
    const double compute_ms = elapsed_ms(t0);

    Json report = report_shell("cavity");
    report["inputs"] = Json{{"d", dim},
                            {"n_modes", modes},
                            {"samples", samples},
                            {"seed", seed}};
    if (!config_path.empty()) {
        report["inputs"]["config"] = file_digest(config_path);
    }
    report["tolerances"] = Json{{"tol", tol}};
    report["outputs"] = std::move(outputs);
    if (opts.timings) {
        report["timings_ms"] =
            Json{{"compute", compute_ms}, {"total", elapsed_ms(start)}};
    }
    emit(opts, report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    const auto start = Clock::now();
    CLI::App app{"metric-aware subspace geometry toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // --json/--csv/--timings may follow the subcommand

    OutputOptions opts;
    app.add_option("--json", opts.json_path, "write the JSON report here")
        ->capture_default_str();
    app.add_option("--csv", opts.csv_path, "write table output here (l2 probe)");
    app.add_flag("--timings", opts.timings, "include wall-clock timings");

    PairInputs incline_in;
    CLI::App* incline_cmd =
        app.add_subcommand("incline", "inclination of two subspaces");
    incline_in.add_options(incline_cmd);

    PairInputs dec_in;
    std::string x_path;
    double a1 = 0.5;
    CLI::App* dec_cmd =
        app.add_subcommand("decompose", "split x into L and M components");
    dec_in.add_options(dec_cmd);
    dec_cmd->add_option("--x", x_path, "vector to decompose (.csv/.mtx)")
        ->required();
    dec_cmd->add_option("--a1", a1, "weight of the Q-component given to L");

    PairInputs ext_in;
    std::string w_path;
    CLI::App* ext_cmd = app.add_subcommand(
        "extend", "extend a functional from L, vanishing on M");
    ext_in.add_options(ext_cmd);
    ext_cmd->add_option("--w", w_path, "Riesz vector of f (.csv/.mtx)")
        ->required();

    Eigen::Index pairs = 1;
    std::vector<double> thetas;
    std::string family;
    std::string l2_config;
    std::string export_prefix;
    int probe_steps = 0;
    double l2_tol = kDefaultIntersectTol;
    CLI::App* l2_cmd = app.add_subcommand("l2", "the truncated l2 study");
    CLI::Option* pairs_opt =
        l2_cmd->add_option("--pairs", pairs, "number of coordinate pairs N");
    l2_cmd->add_option("--thetas", thetas, "theta values (comma separated)")
        ->delimiter(',');
    l2_cmd->add_option("--theta-family", family,
                       "generator: \"1/n\" or \"const:<v>\"");
    l2_cmd->add_option("--config", l2_config,
                       "JSON config file {n_pairs, thetas}")
        ->excludes(pairs_opt);
    l2_cmd->add_option("--export", export_prefix,
                       "write PREFIX.{G,L,M}.mtx fixtures");
    l2_cmd->add_option("--probe", probe_steps,
                       "degeneracy probe steps (doubling truncation)");
    l2_cmd->add_option("--tol", l2_tol, "intersection tolerance");

    int cav_dim = 2, cav_modes = 1, cav_samples = 200, threads = 1;
    bool korn = false;
    std::string cav_config;
    std::uint64_t seed = 0x0b11c5ULL;
    double cav_tol = kDefaultIntersectTol;
    CLI::App* cav_cmd =
        app.add_subcommand("cavity", "box-resonator spectral study");
    cav_cmd->add_option("--dim", cav_dim, "spatial dimension (2 or 3)");
    CLI::Option* modes_opt =
        cav_cmd->add_option("--modes", cav_modes, "per-axis mode cutoff N");
    cav_cmd->add_option("--config", cav_config,
                        "JSON config file {d, n_modes, korn_samples}")
        ->excludes(modes_opt);
    cav_cmd->add_flag("--korn", korn, "measure the Korn constant");
    cav_cmd->add_option("--samples", cav_samples, "random sweep size");
    cav_cmd->add_option("--threads", threads, "gram assembly threads")
        ->envname("OBLIQ_THREADS");
    cav_cmd->add_option("--seed", seed, "sweep RNG seed");
    cav_cmd->add_option("--tol", cav_tol, "membership tolerance");

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (incline_cmd->parsed()) {
            incline_in.load();
            return run_incline(incline_in, opts, start);
        }
        if (dec_cmd->parsed()) {
            dec_in.load();
            return run_decompose(dec_in, x_path, a1, opts, start);
        }
        if (ext_cmd->parsed()) {
            ext_in.load();
            return run_extend(ext_in, w_path, opts, start);
        }
        if (l2_cmd->parsed()) {
            if (l2_config.empty() && pairs_opt->count() == 0) {
                throw BadTheta("one of --pairs or --config is required");
            }
            return run_l2(pairs, thetas, family, l2_config, export_prefix,
                          probe_steps, l2_tol, opts, start);
        }
        if (cav_cmd->parsed()) {
            if (cav_config.empty() && modes_opt->count() == 0) {
                throw ConfigTooLarge("one of --modes or --config is required");
            }
            return run_cavity(cav_dim, cav_modes, cav_config, korn,
                              cav_samples, threads, seed, cav_tol, opts,
                              start);
        }
    } catch (const Error& e) {
        return emit_error(opts, command, e.code(), e.what());
    } catch (const std::exception& e) {
        return emit_error(opts, command, "Unexpected", e.what());
    }
    return 1;
}
