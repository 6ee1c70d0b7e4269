// Reproduction CLI for the one-clean-qubit toolkit: trace estimation,
// negativity ensembles and bounds, discord curves, Schmidt-rank scans, and
// the classical path-sum estimator.  Tabular results go to stdout as CSV or
// JSON; --plot additionally writes a static SVG chart.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <numeric>

#include "oneq/correlations.hpp"
#include "oneq/discord.hpp"
#include "oneq/dqc1.hpp"
#include "oneq/ent_distribution.hpp"
#include "oneq/neg_bounds.hpp"
#include "oneq/negativity.hpp"
#include "oneq/parallel.hpp"
#include "oneq/pathsum.hpp"
#include "oneq/random_unitary.hpp"
#include "report.hpp"
#include "svg.hpp"

namespace {

using namespace oneq;
using namespace oneq::cli;

struct CommonOpts {
    std::uint64_t seed = 1;
    long long samples = -1;  // -1 = per-command default
    int nmax = -1;
    std::string alpha = "1.0";
    std::string split = "near";
    std::string out = "csv";
    std::string plot;
    int threads = 0;
    double tol = 1e-10;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "base RNG seed (derived per ensemble member)");
    cmd->add_option("--samples", o.samples, "ensemble / sample count override");
    cmd->add_option("--nmax", o.nmax, "largest register size treated");
    cmd->add_option("--alpha", o.alpha, "polarization value or lo:hi:step grid");
    cmd->add_option("--split", o.split, "bipartition: near | last:k | i,j,...");
    cmd->add_option("--out", o.out, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--plot", o.plot, "write an SVG chart to this path");
    cmd->add_option("--threads", o.threads, "OpenMP thread count (0 = library default)");
    cmd->add_option("--tol", o.tol, "rank tolerance where applicable");
}

long long samples_or(const CommonOpts& o, long long def) {
    return o.samples > 0 ? o.samples : def;
}

int nmax_or(const CommonOpts& o, int def) { return o.nmax > 0 ? o.nmax : def; }

void maybe_plot(const CommonOpts& o, const std::string& title, const std::string& xl,
                const std::string& yl, const std::vector<Series>& series) {
    if (!o.plot.empty()) {
        write_svg_chart(o.plot, title, xl, yl, series);
    }
}

// ---------------------------------------------------------------- trace --

int cmd_trace(const CommonOpts& o) {
    const int n = nmax_or(o, 6);
    const double alpha = parse_alpha_grid(o.alpha).front();
    const long long budget = samples_or(o, 40000);

    Rng rng(o.seed);
    const UnitaryOperator u = pseudo_random_unitary(n, rng);
    const DQC1State state = build_state(u, alpha);
    const Complex exact = normalized_trace_exact(u);

    Table t;
    t.command = "trace";
    t.seed = o.seed;
    t.samples = budget;
    t.columns = {"runs",     "est_re",   "est_im",    "exact_re",
                 "exact_im", "abs_error", "std_error", "shot_bound"};
    std::vector<long long> grid;
    for (long long r = 100; r < budget; r *= 10) {
        grid.push_back(r);
    }
    grid.push_back(budget);
    Series err_series{"observed |error|", {}, {}};
    Series bound_series{"1/(|a| sqrt(L))", {}, {}};
    for (long long runs : grid) {
        Rng run_rng = Rng::derived(RngSeed{o.seed}, static_cast<std::uint64_t>(runs));
        const TraceEstimate est = sample_trace(state, static_cast<int>(runs), run_rng);
        const double err = std::abs(est.value - exact);
        const double shot = 1.0 / (std::abs(alpha) * std::sqrt(static_cast<double>(runs)));
        t.add_row({static_cast<long long>(runs), est.value.real(), est.value.imag(),
                   exact.real(), exact.imag(), err, est.std_error, shot});
        err_series.x.push_back(std::log10(static_cast<double>(runs)));
        err_series.y.push_back(err);
        bound_series.x.push_back(std::log10(static_cast<double>(runs)));
        bound_series.y.push_back(shot);
    }
    write_table(std::cout, t, o.out);
    maybe_plot(o, "Trace estimation error vs measurement budget", "log10 runs", "|error|",
               {err_series, bound_series});
    return 0;
}

// ----------------------------------------------------------- neg-random --

int cmd_neg_random(const CommonOpts& o) {
    const int top = nmax_or(o, 8);  // largest n+1
    const int samples = static_cast<int>(samples_or(o, 100));
    if (top < 4) {
        throw std::invalid_argument("neg-random needs --nmax >= 4");
    }

    Table t;
    t.command = "neg-random";
    t.seed = o.seed;
    t.samples = samples;
    t.columns = {"series", "n_plus_1", "k", "split", "mean", "std"};

    Series mean_n1{"(n,1) split mean", {}, {}};
    Series mean_half{"near-equal split mean", {}, {}};
    for (int m = 4; m <= top; ++m) {
        const int n = m - 1;
        const BipartiteSplit last_one = BipartiteSplit::last_qubits(m, 1);
        const auto s1 = random_ensemble_negativity(n, last_one, samples, RngSeed{o.seed});
        t.add_row({std::string("size_sweep"), static_cast<long long>(m), 1LL,
                   std::string("n,1"), s1.mean, s1.std_dev});
        const auto s2 = random_ensemble_negativity(n, near_equal_split(n), samples,
                                                   RngSeed{o.seed});
        t.add_row({std::string("size_sweep"), static_cast<long long>(m),
                   static_cast<long long>(n - n / 2), std::string("near-equal"), s2.mean,
                   s2.std_dev});
        mean_n1.x.push_back(m);
        mean_n1.y.push_back(s1.mean);
        mean_half.x.push_back(m);
        mean_half.y.push_back(s2.mean);
    }
    // all (n+1-k, k) splittings of the largest register
    for (int k = 1; k < top - 1; ++k) {
        const auto s = random_ensemble_negativity(top - 1, BipartiteSplit::last_qubits(top, k),
                                                  samples, RngSeed{o.seed});
        t.add_row({std::string("split_sweep"), static_cast<long long>(top),
                   static_cast<long long>(k), std::string("last:") + std::to_string(k), s.mean,
                   s.std_dev});
    }
    write_table(std::cout, t, o.out);
    maybe_plot(o, "Average negativity of pseudo-random circuits", "n+1 qubits",
               "mean negativity", {mean_n1, mean_half});
    return 0;
}

// ----------------------------------------------------------- neg-bounds --

int cmd_neg_bounds(const CommonOpts& o) {
    const int top = nmax_or(o, 8);  // largest n+1
    const int samples = static_cast<int>(samples_or(o, 100));

    Table t;
    t.command = "neg-bounds";
    t.seed = o.seed;
    t.samples = samples;
    t.columns = {"n_plus_1", "N",       "bound_s12", "bound_s12_integer",
                 "bound_s123", "u",     "v",         "w",
                 "asymptotic", "family", "ensemble_mean", "ensemble_std"};

    Series s12s{"s=1,2 bound", {}, {}};
    Series s123s{"s=1,2,3 bound", {}, {}};
    Series asym{"asymptotic", {}, {}};
    Series fam{"family value", {}, {}};
    Series ens{"random mean (near-equal)", {}, {}, true};
    for (int m = 2; m <= top; ++m) {
        const int n = m - 1;
        const std::int64_t big_n = std::int64_t{1} << n;
        const double b12 = bound_s12(1.0);
        const double b12i = bound_s12_integer(big_n, 1.0);
        double b123 = std::nan("");
        long long uu = 0, vv = 0, ww = 0;
        if (2 * big_n >= 4 && 2 * big_n <= 2048) {
            const BoundResult r = bound_s123(big_n);
            b123 = r.bound;
            uu = r.triple.u;
            vv = r.triple.v;
            ww = r.triple.w;
        }
        const double ay = bound_s123_asymptotic(big_n);
        double ens_mean = std::nan(""), ens_std = std::nan("");
        if (n >= 2 && m <= 8 && samples >= 2) {
            const auto s = random_ensemble_negativity(n, near_equal_split(n), samples,
                                                      RngSeed{o.seed});
            ens_mean = s.mean;
            ens_std = s.std_dev;
            ens.x.push_back(m);
            ens.y.push_back(s.mean);
        }
        t.add_row({static_cast<long long>(m), static_cast<long long>(big_n), b12, b12i, b123,
                   uu, vv, ww, ay, 1.25, ens_mean, ens_std});
        s12s.x.push_back(m);
        s12s.y.push_back(b12);
        if (!std::isnan(b123)) {
            s123s.x.push_back(m);
            s123s.y.push_back(b123);
        }
        asym.x.push_back(m);
        asym.y.push_back(ay);
        fam.x.push_back(m);
        fam.y.push_back(1.25);
    }
    write_table(std::cout, t, o.out);
    maybe_plot(o, "Negativity bounds", "n+1 qubits", "negativity",
               {s12s, s123s, asym, fam, ens});
    return 0;
}

// -------------------------------------------------------- discord-sweep --

int cmd_discord_sweep(const CommonOpts& o) {
    const int n = nmax_or(o, 5);
    const int samples = static_cast<int>(samples_or(o, 50));
    std::vector<double> grid = parse_alpha_grid(o.alpha == "1.0" ? "0.1:1.0:0.1" : o.alpha);

    Table t;
    t.command = "discord-sweep";
    t.seed = o.seed;
    t.samples = samples;
    t.columns = {"alpha", "analytic", "ensemble_mean", "ensemble_std", "abs_dev"};

    // one unitary ensemble, reused across the alpha grid
    const auto discords = map_indexed<std::vector<double>>(
        static_cast<std::size_t>(samples), Exec::Parallel, [&](std::size_t k) {
            Rng rng = Rng::derived(RngSeed{o.seed}, k);
            const UnitaryOperator u = pseudo_random_unitary(n, rng);
            std::vector<double> per_alpha;
            per_alpha.reserve(grid.size());
            for (double a : grid) {
                per_alpha.push_back(dqc1_discord_numeric(u, a).discord);
            }
            return per_alpha;
        });

    Series analytic{"analytic", {}, {}};
    Series numeric{"ensemble mean", {}, {}, true};
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        double mean = 0.0;
        for (const auto& d : discords) {
            mean += d[gi];
        }
        mean /= samples;
        double var = 0.0;
        for (const auto& d : discords) {
            var += (d[gi] - mean) * (d[gi] - mean);
        }
        var = samples > 1 ? var / (samples - 1) : 0.0;
        const double ana = dqc1_discord_analytic(grid[gi]);
        t.add_row({grid[gi], ana, mean, std::sqrt(var), std::abs(mean - ana)});
        analytic.x.push_back(grid[gi]);
        analytic.y.push_back(ana);
        numeric.x.push_back(grid[gi]);
        numeric.y.push_back(mean);
    }
    write_table(std::cout, t, o.out);
    maybe_plot(o, "Discord across the control split", "alpha", "discord (bits)",
               {analytic, numeric});
    return 0;
}

// ---------------------------------------------------- discord-horodecki --

int cmd_discord_horodecki(const CommonOpts& o) {
    Table t;
    t.command = "discord-horodecki";
    t.seed = o.seed;
    t.samples = 0;
    t.columns = {"p", "discord_min", "theta_opt", "branch_theta0", "branch_theta_pi2",
                 "pt_min_eig"};

    const BipartiteSplit split({0}, 3);
    Series minimized{"minimized", {}, {}};
    Series b0{"theta = 0 branch", {}, {}};
    Series b90{"theta = pi/2 branch", {}, {}};
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const DensityMatrix rho = horodecki_state(p);
        const DiscordReport rep = discord(rho, split);

        const double hb = von_neumann_entropy(partial_trace(rho, split, false));
        const double hab = von_neumann_entropy(rho);
        const double ha = von_neumann_entropy(partial_trace(rho, split, true));
        auto branch = [&](double theta) {
            const double cond = conditional_entropy_measured(rho, split, {theta, 0.0});
            return ha + hb - hab - (hb - cond);
        };
        const Matrix pt = partial_transpose(rho.matrix(), split, true);
        t.add_row({p, rep.discord, rep.optimal_measurement.theta, branch(0.0),
                   branch(std::acos(-1.0) / 2.0), hermitian_spectrum(pt).min()});
        minimized.x.push_back(p);
        minimized.y.push_back(rep.discord);
        b0.x.push_back(p);
        b0.y.push_back(branch(0.0));
        b90.x.push_back(p);
        b90.y.push_back(branch(std::acos(-1.0) / 2.0));
    }
    write_table(std::cout, t, o.out);
    maybe_plot(o, "Discord of the 2x4 bound entangled family", "p", "discord (bits)",
               {b0, b90, minimized});
    return 0;
}

// --------------------------------------------------------- schmidt-scan --

int cmd_schmidt_scan(const CommonOpts& o) {
    const int top = nmax_or(o, 10);
    const int seeds = static_cast<int>(samples_or(o, 20));

    Table t;
    t.command = "schmidt-scan";
    t.seed = o.seed;
    t.samples = seeds;
    t.columns = {"n", "seeds", "reference", "fraction_full", "min_rank", "median_rank",
                 "exhaustive"};

    Series measured{"min balanced-split rank (median)", {}, {}, true};
    Series reference{"2^(n/2)", {}, {}};
    for (int n = 4; n <= top; n += 2) {
        std::vector<int> ranks(seeds);
        for_each_index(static_cast<std::size_t>(seeds), Exec::Parallel, [&](std::size_t s) {
            RandomCircuitSpec spec{n, 2 * n, RngSeed{o.seed + s}};
            const Vector psi = random_circuit_state(spec);
            ranks[s] = min_equal_split_rank(psi, o.tol, RngSeed{o.seed + s}).rank;
        });
        const int full = 1 << (n / 2);
        int hits = 0;
        for (int r : ranks) {
            hits += (r == full) ? 1 : 0;
        }
        std::vector<int> sorted = ranks;
        std::sort(sorted.begin(), sorted.end());
        t.add_row({static_cast<long long>(n), static_cast<long long>(seeds),
                   static_cast<long long>(full), static_cast<double>(hits) / seeds,
                   static_cast<long long>(sorted.front()),
                   static_cast<long long>(sorted[sorted.size() / 2]),
                   static_cast<long long>(n <= 10 ? 1 : 0)});
        measured.x.push_back(n);
        measured.y.push_back(sorted[sorted.size() / 2]);
        reference.x.push_back(n);
        reference.y.push_back(full);
    }
    write_table(std::cout, t, o.out);
    maybe_plot(o, "Minimum balanced-split Schmidt rank of random circuit states", "n qubits",
               "rank", {measured, reference});
    return 0;
}

// -------------------------------------------------------------- entdist --

int cmd_entdist(const CommonOpts& o) {
    const ProtocolDiscord pd = protocol_discord_accounting();
    const ProtocolAudit audit = protocol_entanglement_audit();

    Table t;
    t.command = "entdist";
    t.seed = o.seed;
    t.samples = 0;
    t.columns = {"state",    "discord", "theta_opt", "pt_min_a", "pt_min_b", "pt_min_c",
                 "ebit_rate", "bell_negativity"};
    const char* names[3] = {"rho", "sigma", "tau"};
    for (int s = 0; s < 3; ++s) {
        t.add_row({std::string(names[s]), pd.reports[s].discord,
                   pd.reports[s].optimal_measurement.theta, audit.min_pt_eigenvalue[s][0],
                   audit.min_pt_eigenvalue[s][1], audit.min_pt_eigenvalue[s][2],
                   s == 2 ? audit.ebit_probability : 0.0,
                   s == 2 ? audit.bell_negativity : 0.0});
    }
    write_table(std::cout, t, o.out);
    if (!o.plot.empty()) {
        Series d{"discord", {0, 1, 2}, {pd.reports[0].discord, pd.reports[1].discord,
                                        pd.reports[2].discord}};
        maybe_plot(o, "Discord along the distribution protocol", "stage", "discord (bits)",
                   {d});
    }
    return 0;
}

// ------------------------------------------------------------- pure-neg --

int cmd_pure_neg(const CommonOpts& o) {
    const int top = nmax_or(o, 12);
    const int samples = static_cast<int>(samples_or(o, 2000));

    Table t;
    t.command = "pure-neg";
    t.seed = o.seed;
    t.samples = samples;
    t.columns = {"n",        "mu",      "exact",   "exact_over_mu",
                 "mc_mean",  "mc_over_mu", "mc_std_error"};

    Series exact_ratio{"exact / mu", {}, {}};
    Series mc_ratio{"Monte Carlo / mu", {}, {}, true};
    for (int n = 2; n <= top; n += 2) {
        const int mu = 1 << (n / 2);
        const double exact = avg_pure_negativity_exact(mu);
        std::vector<int> part(n / 2);
        std::iota(part.begin(), part.end(), 0);
        const BipartiteSplit split =
            o.split == "near" ? BipartiteSplit(part, n) : parse_split(o.split, n);
        const auto mc = avg_pure_negativity_mc(n, split, samples, RngSeed{o.seed});
        t.add_row({static_cast<long long>(n), static_cast<long long>(mu), exact, exact / mu,
                   mc.mean, mc.mean / mu, mc.std_error});
        exact_ratio.x.push_back(n);
        exact_ratio.y.push_back(exact / mu);
        mc_ratio.x.push_back(n);
        mc_ratio.y.push_back(mc.mean / mu);
    }
    write_table(std::cout, t, o.out);
    maybe_plot(o, "Average pure-state negativity over the maximum", "n qubits",
               "normalized negativity", {exact_ratio, mc_ratio});
    return 0;
}

// ------------------------------------------------------- classical-trace --

int cmd_classical_trace(const CommonOpts& o, const std::string& circuit_path) {
    const long long samples = samples_or(o, 200000);

    GateCircuit circuit;
    if (!circuit_path.empty()) {
        circuit = GateCircuit::load(circuit_path);
    } else {
        circuit = GateCircuit::parse_string(
            "QUBITS 3\nH 0\nT 1\nCNOT 0 1\nH 2\nT 2\nCNOT 1 2\nH 1\n");
    }
    bool has_toffoli = false, has_t = false, has_cnot = false;
    for (const Gate& g : circuit.gates) {
        has_toffoli |= g.kind == GateKind::TOFFOLI;
        has_t |= g.kind == GateKind::T;
        has_cnot |= g.kind == GateKind::CNOT;
    }
    if (has_toffoli && (has_t || has_cnot)) {
        throw std::invalid_argument("circuit mixes the two supported gate sets");
    }
    const PathPolynomialSystem polys = has_toffoli ? compile_toffoli_path_sum(circuit)
                                                   : compile_clifford_t_path_sum(circuit);

    Table t;
    t.command = "classical-trace";
    t.seed = o.seed;
    t.samples = samples;
    t.columns = {"series", "k",      "path_bits", "h",       "value_re",
                 "value_im", "variance", "ratio",   "abs_error"};

    const Complex oracle =
        circuit.num_qubits <= 12 ? matrix_trace_oracle(circuit) : Complex(0, 0);
    if (polys.num_path_bits <= 26) {
        const Complex counted = exact_trace_by_counting(polys);
        t.add_row({std::string("counted"), 0LL, static_cast<long long>(polys.num_path_bits),
                   static_cast<long long>(polys.hadamard_count), counted.real(),
                   counted.imag(), 0.0, 0.0, std::abs(counted - oracle)});
    }
    t.add_row({std::string("oracle"), 0LL, static_cast<long long>(polys.num_path_bits),
               static_cast<long long>(polys.hadamard_count), oracle.real(), oracle.imag(), 0.0,
               0.0, 0.0});
    const TraceSampleReport rep = sampled_trace(polys, samples, RngSeed{o.seed});
    t.add_row({std::string("sampled"), 0LL, static_cast<long long>(polys.num_path_bits),
               static_cast<long long>(polys.hadamard_count), rep.estimate.real(),
               rep.estimate.imag(), rep.empirical_variance, 0.0,
               std::abs(rep.estimate - oracle)});

    // variance growth on the all-Hadamard family
    Series var_series{"empirical variance", {}, {}};
    double prev_var = 0.0;
    for (int k = 2; k <= 10; ++k) {
        GateCircuit fam;
        fam.num_qubits = k;
        for (int q = 0; q < k; ++q) {
            fam.gates.push_back(Gate::h(q));
        }
        const auto fam_polys = compile_toffoli_path_sum(fam);
        const auto fam_rep = sampled_trace(fam_polys, samples, RngSeed{o.seed + k});
        const double ratio = k > 2 ? fam_rep.empirical_variance / prev_var : 0.0;
        t.add_row({std::string("hadamard_family"), static_cast<long long>(k),
                   static_cast<long long>(fam_polys.num_path_bits),
                   static_cast<long long>(fam_polys.hadamard_count), fam_rep.estimate.real(),
                   fam_rep.estimate.imag(), fam_rep.empirical_variance, ratio, 0.0});
        prev_var = fam_rep.empirical_variance;
        var_series.x.push_back(k);
        var_series.y.push_back(std::log2(fam_rep.empirical_variance));
    }
    write_table(std::cout, t, o.out);
    maybe_plot(o, "Path-sum estimator variance vs Hadamard count", "Hadamards",
               "log2 variance", {var_series});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-clean-qubit computation toolkit"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::map<std::string, CommonOpts> opts;
    std::string circuit_path;

    auto* trace = app.add_subcommand("trace", "trace estimation: exact vs sampled");
    add_common(trace, opts["trace"]);
    auto* neg_random = app.add_subcommand("neg-random", "ensemble negativity statistics");
    add_common(neg_random, opts["neg-random"]);
    auto* neg_bounds = app.add_subcommand("neg-bounds", "negativity bounds table");
    add_common(neg_bounds, opts["neg-bounds"]);
    auto* dsweep = app.add_subcommand("discord-sweep", "discord vs polarization");
    add_common(dsweep, opts["discord-sweep"]);
    auto* dhorod = app.add_subcommand("discord-horodecki", "bound entangled state discord");
    add_common(dhorod, opts["discord-horodecki"]);
    auto* sscan = app.add_subcommand("schmidt-scan", "balanced-split rank scan");
    add_common(sscan, opts["schmidt-scan"]);
    auto* entdist = app.add_subcommand("entdist", "entanglement distribution accounting");
    add_common(entdist, opts["entdist"]);
    auto* pneg = app.add_subcommand("pure-neg", "average pure-state negativity");
    add_common(pneg, opts["pure-neg"]);
    auto* ctrace = app.add_subcommand("classical-trace", "path-sum trace estimator");
    add_common(ctrace, opts["classical-trace"]);
    ctrace->add_option("circuit", circuit_path, "circuit file (text format)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const CLI::App* sub = app.get_subcommands().front();
        const CommonOpts& o = opts[sub->get_name()];
        set_threads(o.threads);
        if (sub == trace) {
            return cmd_trace(o);
        }
        if (sub == neg_random) {
            return cmd_neg_random(o);
        }
        if (sub == neg_bounds) {
            return cmd_neg_bounds(o);
        }
        if (sub == dsweep) {
            return cmd_discord_sweep(o);
        }
        if (sub == dhorod) {
            return cmd_discord_horodecki(o);
        }
        if (sub == sscan) {
            return cmd_schmidt_scan(o);
        }
        if (sub == entdist) {
            return cmd_entdist(o);
        }
        if (sub == pneg) {
            return cmd_pure_neg(o);
        }
        if (sub == ctrace) {
            return cmd_classical_trace(o, circuit_path);
        }
        std::cerr << "unknown subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
