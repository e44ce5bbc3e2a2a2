#include "ldphase/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ldphase/erg.hpp"
#include "ldphase/errors.hpp"
#include "ldphase/hypergraph.hpp"
#include "ldphase/minorant.hpp"
#include "ldphase/phase.hpp"
#include "ldphase/sampler.hpp"
#include "ldphase/svg.hpp"
#include "ldphase/verify.hpp"

namespace ldphase::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// `lo:hi:n`, n >= 1 evenly spaced points including both ends.
std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw PreconditionError("grid '" + text + "' must have the form lo:hi:n");
    double lo = 0.0;
    double hi = 0.0;
    long n = 0;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        n = std::stol(parts[2]);
    } catch (const std::exception&) {
        throw PreconditionError("grid '" + text + "' must have the form lo:hi:n");
    }
    if (n < 1 || n > 100000 || !(hi >= lo)) throw PreconditionError("grid '" + text + "': need 1 <= n <= 1e5 and lo <= hi");
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return grid;
}

SmallGraph resolve_graph(const std::string& text) {
    if (std::filesystem::exists(text)) return load_edge_list(text);
    if (auto g = named_graph(text)) return *g;
    throw PreconditionError("graph '" + text + "' is neither a file nor a built-in name");
}

Hypergraph resolve_hypergraph(const std::string& text) {
    if (std::filesystem::exists(text)) return load_hyperedge_list(text);
    if (auto h = named_hypergraph(text)) return *h;
    throw PreconditionError("hypergraph '" + text + "' is neither a file nor a built-in name");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw PreconditionError("cannot write " + path);
    return f;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

void print_witness(std::ostream& out, const BreakWitness& w) {
    out << "epsilon=" << w.epsilon << "\nr1=" << w.r1 << "\nr2=" << w.r2 << "\ns=" << w.s << "\nt_value=" << w.t_value
        << "\ntarget_t=" << w.target_t << "\nhp_value=" << w.hp_value << "\ntarget_hp=" << w.target_hp << '\n';
}

struct Options {
    std::string format = "csv";
    std::string out;
    int d = 2;
    int k = 3;
    int grid = 200;
    double p = 0.0;
    double r = 0.0;
    double gamma = 2.0;
    double alpha = 1.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    std::string graph;
    std::string hypergraph = "fano";
    std::string b1grid;
    std::string b2grid;
    int n = 0;
    std::int64_t steps = 0;
    std::int64_t burn_in = -1;
    std::int64_t thinning = -1;
    std::uint64_t seed = 0;
    std::string h_kind = "triangle";
    int cycle_length = 4;
    std::string suite = "all";
};

int cmd_boundary(const Options& o, std::ostream& out) {
    if (o.d < 2) throw PreconditionError("--d must be at least 2");
    std::vector<double> rs(static_cast<std::size_t>(o.grid));
    for (int i = 0; i < o.grid; ++i) rs[static_cast<std::size_t>(i)] = (i + 0.5) / o.grid;
    const auto pts = boundary_curve(o.d, rs);
    auto f = open_out(o.out);
    if (o.format == "svg") {
        svg::Series s{"d = " + std::to_string(o.d), {}, {}};
        for (const auto& pt : pts) {
            s.x.push_back(pt.r);
            s.y.push_back(pt.p_critical);
        }
        svg::write_polylines(f, "upper-tail phase boundary", "r", "p", {s});
    } else {
        write_boundary_csv(f, o.d, pts);
    }
    out << "wrote " << pts.size() << " points to " << o.out << '\n';
    return kExitOk;
}

int cmd_minorant(const Options& o, std::ostream& out) {
    const GammaCurve c(o.p, o.gamma);
    const auto dt = double_tangent(c);
    const int n = o.grid;
    std::vector<double> xs(static_cast<std::size_t>(n) + 1);
    std::vector<double> curve(xs.size());
    std::vector<double> minor(xs.size());
    std::vector<double> tangent(xs.size());
    for (int i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / n;
        const auto ui = static_cast<std::size_t>(i);
        xs[ui] = x;
        curve[ui] = curve_value(c, x);
        minor[ui] = minorant_value(c, x);
        tangent[ui] = dt ? dt->line(x) : std::numeric_limits<double>::quiet_NaN();
    }
    auto f = open_out(o.out);
    if (o.format == "svg") {
        std::vector<svg::Series> series = {{"curve", xs, curve}, {"minorant", xs, minor}};
        if (dt) series.push_back({"tangent", xs, tangent});
        svg::write_polylines(f, "convex minorant", "x", "h_p(x^(1/gamma))", series);
    } else {
        f << std::setprecision(12) << "x,curve,minorant,tangent\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            f << xs[i] << ',' << curve[i] << ',' << minor[i] << ',';
            if (dt) f << tangent[i];
            f << '\n';
        }
    }
    out << std::setprecision(12);
    if (dt) {
        out << "q_lo=" << dt->q_lo << "\nq_hi=" << dt->q_hi << "\nslope=" << dt->slope << '\n';
    } else {
        out << "convex\n";
    }
    return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
    std::optional<SmallGraph> h;
    if (!o.graph.empty()) h = resolve_graph(o.graph);
    const auto cls = classify_upper_tail(o.d, o.p, o.r, h);
    out << to_string(cls.verdict) << '\n' << std::setprecision(12) << "rate=" << cls.rate << '\n';
    if (cls.witness) print_witness(out, *cls.witness);
    if (!cls.witness_note.empty()) out << "witness=none (" << first_line(cls.witness_note) << ")\n";
    return kExitOk;
}

int cmd_witness(const Options& o, std::ostream& out) {
    const SmallGraph h = resolve_graph(o.graph);
    const BreakWitness w = build_break_witness(h, o.p, o.r);
    auto f = open_out(o.out);
    write_witness_report(f, w);
    out << std::setprecision(12);
    print_witness(out, w);
    return kExitOk;
}

int cmd_spectral(const Options& o, std::ostream& out) {
    const auto cls = classify_spectral(o.p, o.r);
    out << to_string(cls.verdict) << '\n' << std::setprecision(12) << "rate=" << cls.rate << '\n';
    if (cls.witness) {
        out << "operator_norm=" << cls.witness->t_value << '\n';
        print_witness(out, *cls.witness);
    }
    if (!cls.witness_note.empty()) out << "witness=none (" << first_line(cls.witness_note) << ")\n";
    return kExitOk;
}

int cmd_erg_classify(const Options& o, std::ostream& out) {
    const ErgModel model(resolve_graph(o.graph), o.alpha, o.beta1, o.beta2);
    const auto cls = classify(model);
    out << to_string(cls.kind) << '\n' << std::setprecision(12) << "gamma=" << model.gamma() << "\npsi=" << cls.psi
        << '\n';
    for (std::size_t i = 0; i < cls.u_star.size(); ++i) out << "u_star" << (i ? "2" : "") << '=' << cls.u_star[i] << '\n';
    if (cls.breaking_interval) {
        out << "beta2_lower=" << cls.breaking_interval->first << "\nbeta2_upper=" << cls.breaking_interval->second << '\n';
    }
    return kExitOk;
}

int cmd_erg_phase(const Options& o, std::ostream& out) {
    const auto b1 = parse_grid(o.b1grid);
    const auto b2 = parse_grid(o.b2grid);
    const auto pts = phase_plot_data(resolve_graph(o.graph), o.alpha, b1, b2);
    auto f = open_out(o.out);
    if (o.format == "svg") {
        std::vector<svg::Point> sp;
        for (const auto& pt : pts) sp.push_back({pt.beta1, pt.beta2, static_cast<int>(pt.classification.kind)});
        svg::write_scatter(f, "ERG phase diagram", "beta1", "beta2", sp,
                           {"SymmetricUnique", "SymmetricTwoPhase", "Breaking", "Indeterminate"});
    } else {
        write_phase_csv(f, pts);
    }
    std::size_t breaking = 0;
    for (const auto& pt : pts) breaking += pt.classification.kind == ErgKind::Breaking;
    out << "cells=" << pts.size() << "\nbreaking=" << breaking << '\n';
    return kExitOk;
}

int cmd_erg_trajectory(const Options& o, std::ostream& out) {
    const auto b2 = parse_grid(o.b2grid);
    const auto traj = u_star_trajectory(o.beta1, o.gamma, b2);
    auto f = open_out(o.out);
    if (o.format == "svg") {
        svg::Series s{"u*", {}, {}};
        for (const auto& pt : traj) {
            s.x.push_back(pt.beta2);
            s.y.push_back(pt.u_star.front());
        }
        svg::write_polylines(f, "u* against beta2", "beta2", "u*", {s});
    } else {
        write_trajectory_csv(f, traj);
    }
    out << std::setprecision(12);
    if (const auto crit = critical_beta2(o.beta1, o.gamma)) out << "critical_beta2=" << *crit << '\n';
    else out << "continuous\n";
    return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
    McmcRun run;
    run.n = o.n;
    if (o.h_kind == "triangle") {
        run.kind = HKind::Triangle;
    } else if (o.h_kind == "cycle") {
        run.kind = HKind::Cycle;
        run.cycle_length = o.cycle_length;
    } else {
        throw UnsupportedError("--h must be triangle or cycle");
    }
    run.alpha = o.alpha;
    run.beta1 = o.beta1;
    run.beta2 = o.beta2;
    run.steps = o.steps;
    run.burn_in = o.burn_in;
    run.thinning = o.thinning;
    run.seed = o.seed;
    run = erg_glauber(std::move(run));
    auto f = open_out(o.out);
    write_trajectory(f, run);
    auto meta = open_out(o.out + ".meta");
    write_run_metadata(meta, run);
    double mean = 0.0;
    for (const auto& row : run.trajectory) mean += row.edge_density;
    if (!run.trajectory.empty()) mean /= static_cast<double>(run.trajectory.size());
    out << std::setprecision(12) << "rows=" << run.trajectory.size() << "\nmean_edge_density=" << mean << '\n';
    return kExitOk;
}

int cmd_hyper_classify(const Options& o, std::ostream& out) {
    out << to_string(classify_upper_tail_hyper(o.d, o.k, o.p, o.r)) << '\n';
    return kExitOk;
}

int cmd_hyper_witness(const Options& o, std::ostream& out) {
    const LinearHypergraph h(resolve_hypergraph(o.hypergraph));
    const auto w = build_hyper_break_witness(h, o.p, o.r);
    auto f = open_out(o.out);
    write_hyper_witness_report(f, w);
    out << std::setprecision(12) << "epsilon=" << w.epsilon << "\nt_value=" << w.t_value << "\ntarget_t=" << w.target_t
        << "\nhp_value=" << w.hp_value << "\ntarget_hp=" << w.target_hp << '\n';
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    bool ok = true;
    for (const auto& res : run_suite(o.suite)) {
        out << (res.passed() ? "[PASS] " : "[FAIL] ") << res.name << ": " << res.checks << " checks, " << res.violations
            << " violations\n";
        for (const auto& m : res.messages) out << "    " << m << '\n';
        ok = ok && res.passed();
    }
    return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Large-deviation phase diagrams for random graph subgraph counts"};
    app.require_subcommand(1);
    Options o;

    auto fmt = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    };
    auto prob = [](CLI::App* sub, const std::string& name, double& target, const std::string& help) {
        sub->add_option(name, target, help)->required()->check(CLI::Range(0.0, 1.0));
    };

    auto* boundary = app.add_subcommand("boundary", "critical p per r; CSV header r,p_critical,gamma");
    boundary->add_option("--d", o.d, "degree (curve exponent)")->required()->check(CLI::Range(2, 64));
    boundary->add_option("--grid", o.grid, "number of r values")->check(CLI::Range(1, 100000));
    boundary->add_option("--out", o.out, "output path")->required();
    fmt(boundary);

    auto* minorant = app.add_subcommand("minorant", "curve, minorant and tangent; CSV header x,curve,minorant,tangent");
    prob(minorant, "--p", o.p, "edge density");
    minorant->add_option("--gamma", o.gamma, "curve exponent")->required()->check(CLI::PositiveNumber);
    minorant->add_option("--grid", o.grid, "number of x intervals")->check(CLI::Range(1, 100000));
    minorant->add_option("--out", o.out, "output path")->required();
    fmt(minorant);

    auto* cls = app.add_subcommand("classify", "upper-tail verdict for d-regular subgraph counts");
    cls->add_option("--d", o.d, "degree")->required()->check(CLI::Range(2, 64));
    prob(cls, "--p", o.p, "edge density");
    prob(cls, "--r", o.r, "target density root");
    cls->add_option("--graph", o.graph, "edge-list file or built-in name (K3, C4, K4, K3,3, Q3, petersen)");

    auto* wit = app.add_subcommand("witness", "symmetry-breaking graphon; writes graphon text and key-value block");
    prob(wit, "--p", o.p, "edge density");
    prob(wit, "--r", o.r, "target density root");
    wit->add_option("--graph", o.graph, "edge-list file or built-in name")->required();
    wit->add_option("--out", o.out, "output path")->required();

    auto* spectral = app.add_subcommand("spectral-classify", "upper-tail verdict for the largest eigenvalue");
    prob(spectral, "--p", o.p, "edge density");
    prob(spectral, "--r", o.r, "target eigenvalue / n");

    auto* ergc = app.add_subcommand("erg-classify", "exponential random graph phase at one parameter point");
    ergc->add_option("--graph", o.graph, "d-regular H")->required();
    ergc->add_option("--alpha", o.alpha, "exponent on t(H, G)")->required()->check(CLI::PositiveNumber);
    ergc->add_option("--beta1", o.beta1, "edge parameter")->required();
    ergc->add_option("--beta2", o.beta2, "H parameter")->required();

    auto* ergp = app.add_subcommand("erg-phase", "phase grid; CSV header beta1,beta2,kind,u_star,u_star2");
    ergp->add_option("--graph", o.graph, "d-regular H")->required();
    ergp->add_option("--alpha", o.alpha, "exponent on t(H, G)")->required()->check(CLI::PositiveNumber);
    ergp->add_option("--b1grid", o.b1grid, "lo:hi:n")->required();
    ergp->add_option("--b2grid", o.b2grid, "lo:hi:n")->required();
    ergp->add_option("--out", o.out, "output path")->required();
    fmt(ergp);

    auto* ergt = app.add_subcommand("erg-trajectory", "u* along beta2; CSV header beta2,u_star");
    ergt->add_option("--beta1", o.beta1, "edge parameter")->required();
    ergt->add_option("--gamma", o.gamma, "e(H) alpha")->required()->check(CLI::PositiveNumber);
    ergt->add_option("--b2grid", o.b2grid, "lo:hi:n")->required();
    ergt->add_option("--out", o.out, "output path")->required();
    fmt(ergt);

    auto* samp = app.add_subcommand("sample-erg", "Glauber chain; CSV header step,edge_density,hom_density, plus PATH.meta");
    samp->add_option("--n", o.n, "vertices")->required()->check(CLI::Range(3, 2000));
    samp->add_option("--alpha", o.alpha, "exponent on t(H, G)")->required()->check(CLI::PositiveNumber);
    samp->add_option("--beta1", o.beta1, "edge parameter")->required();
    samp->add_option("--beta2", o.beta2, "H parameter")->required();
    samp->add_option("--steps", o.steps, "flips after burn-in")->required()->check(CLI::NonNegativeNumber);
    samp->add_option("--seed", o.seed, "PRNG seed")->required();
    samp->add_option("--out", o.out, "output path")->required();
    samp->add_option("--subgraph", o.h_kind, "H: triangle (default) or cycle")->check(CLI::IsMember({"triangle", "cycle"}));
    samp->add_option("--cycle-length", o.cycle_length, "cycle length for --subgraph cycle")->check(CLI::Range(3, 16));
    samp->add_option("--burn-in", o.burn_in, "flips discarded first (default max(1e5, 50 n^2))");
    samp->add_option("--thinning", o.thinning, "record interval (default n^2)");

    auto* hcls = app.add_subcommand("hyper-classify", "upper-tail verdict for linear d-regular k-uniform hypergraphs");
    hcls->add_option("--d", o.d, "degree")->required()->check(CLI::Range(2, 64));
    hcls->add_option("--k", o.k, "uniformity")->check(CLI::Range(2, 16));
    prob(hcls, "--p", o.p, "edge density");
    prob(hcls, "--r", o.r, "target density root");

    auto* hwit = app.add_subcommand("hyper-witness", "symmetry-breaking k-kernel for a linear regular hypergraph");
    hwit->add_option("--hypergraph", o.hypergraph, "hyperedge-list file or fano, pasch")->required();
    prob(hwit, "--p", o.p, "edge density");
    prob(hwit, "--r", o.r, "target density root");
    hwit->add_option("--out", o.out, "output path")->required();

    auto* ver = app.add_subcommand("verify", "inequality property suites; exit 1 on any violation");
    ver->add_option("--suite", o.suite, "holder, gt, nesting, sandwich or all")
        ->check(CLI::IsMember({"holder", "gt", "nesting", "sandwich", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (o.format == "svg" && !(boundary->parsed() || minorant->parsed() || ergp->parsed() || ergt->parsed())) {
            throw PreconditionError("--format svg is only available for plotting subcommands");
        }
        if (boundary->parsed()) return cmd_boundary(o, out);
        if (minorant->parsed()) return cmd_minorant(o, out);
        if (cls->parsed()) return cmd_classify(o, out);
        if (wit->parsed()) return cmd_witness(o, out);
        if (spectral->parsed()) return cmd_spectral(o, out);
        if (ergc->parsed()) return cmd_erg_classify(o, out);
        if (ergp->parsed()) return cmd_erg_phase(o, out);
        if (ergt->parsed()) return cmd_erg_trajectory(o, out);
        if (samp->parsed()) return cmd_sample(o, out);
        if (hcls->parsed()) return cmd_hyper_classify(o, out);
        if (hwit->parsed()) return cmd_hyper_witness(o, out);
        if (ver->parsed()) return cmd_verify(o, out);
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "failed: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace ldphase::cli
