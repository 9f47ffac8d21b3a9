#include "steklov/cli_app.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steklov/bounds.hpp"
#include "steklov/serialize.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

namespace {

/// Streams rows to stdout or a file, flushing after every write so long
/// sweeps leave usable partial output behind.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw InvalidInput("cannot open output file \"" + path +
                                   "\"");
            }
        }
    }

    void write(const std::string& text) {
        std::ostream& out = file_.is_open() ? file_ : std::cout;
        out << text;
        out.flush();
        if (file_.is_open() && !file_) {
            throw InvalidInput("failed writing output");
        }
    }

private:
    std::ofstream file_;
};

std::int64_t parse_int(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(text, &used);
    } catch (const std::exception&) {
        throw InvalidInput(what + " must be an integer, got \"" + text +
                           "\"");
    }
    if (used != text.size()) {
        throw InvalidInput(what + " must be an integer, got \"" + text +
                           "\"");
    }
    return value;
}

struct CommonOptions {
    std::uint64_t seed = 0;
    std::size_t cap = 1'000'000;
    double tol = 1e-12;
    std::string output;
};

BallOptions ball_options(const CommonOptions& common) {
    BallOptions opts;
    opts.cap = common.cap;
    return opts;
}

SolveOptions solve_options(const CommonOptions& common) {
    SolveOptions opts;
    opts.jacobi_tol = common.tol;
    return opts;
}

std::uint64_t mix_seed(std::uint64_t seed, std::int64_t parameter) {
    return seed * 2654435761ull + static_cast<std::uint64_t>(parameter) + 1;
}

/// An instance a command can operate on: the graph, and the inducing subset
/// when one exists (needed for the isoperimetric columns).
struct Instance {
    GraphWithBoundary graph;
    std::optional<InducedSubsetSpec> subset;
};

Instance build_family(const std::string& family,
                      const std::vector<std::int64_t>& params,
                      std::uint64_t seed, const BallOptions& opts) {
    auto need = [&](std::size_t count, const std::string& usage) {
        if (params.size() != count) {
            throw InvalidInput("family " + family + " needs " + usage);
        }
    };
    if (family == "example1") {
        need(1, "one parameter: n");
        return {example_family_g(static_cast<int>(params[0])), {}};
    }
    if (family == "zd_ball") {
        need(2, "two parameters: rank, radius");
        auto desc = GroupDescriptor::free_abelian(static_cast<int>(params[0]));
        InducedSubsetSpec spec{
            desc,
            ball(desc, desc.identity(), static_cast<int>(params[1]), opts)};
        return {induce(spec), spec};
    }
    if (family == "zd_box") {
        if (params.size() < 2) {
            throw InvalidInput(
                "family zd_box needs parameters: rank, side [, side ...]");
        }
        const int rank = static_cast<int>(params[0]);
        auto desc = GroupDescriptor::free_abelian(rank);
        std::vector<std::int64_t> sides(params.begin() + 1, params.end());
        if (static_cast<int>(sides.size()) > rank) {
            throw InvalidInput("zd_box got more sides than the rank");
        }
        while (static_cast<int>(sides.size()) < rank) {
            sides.push_back(sides.back());
        }
        std::int64_t cells = 1;
        for (std::int64_t s : sides) {
            if (s < 1) throw InvalidInput("box sides must be >= 1");
            cells *= s;
            if (cells > static_cast<std::int64_t>(opts.cap)) {
                throw ResourceLimit("box volume exceeds the element cap");
            }
        }
        std::vector<GroupElement> omega;
        std::vector<std::int64_t> coords(static_cast<std::size_t>(rank), 0);
        for (std::int64_t c = 0; c < cells; ++c) {
            std::int64_t rest = c;
            for (int i = 0; i < rank; ++i) {
                coords[static_cast<std::size_t>(i)] =
                    rest % sides[static_cast<std::size_t>(i)];
                rest /= sides[static_cast<std::size_t>(i)];
            }
            omega.push_back(GroupElement{coords});
        }
        InducedSubsetSpec spec{desc, std::move(omega)};
        return {induce(spec), spec};
    }
    if (family == "heis_ball") {
        need(1, "one parameter: radius");
        auto desc = GroupDescriptor::heisenberg();
        InducedSubsetSpec spec{
            desc,
            ball(desc, desc.identity(), static_cast<int>(params[0]), opts)};
        return {induce(spec), spec};
    }
    if (family == "zd_rand") {
        need(2, "two parameters: rank, size");
        auto desc = GroupDescriptor::free_abelian(static_cast<int>(params[0]));
        InducedSubsetSpec spec{
            desc, random_connected_subset(
                      desc, static_cast<int>(params[1]), seed, opts)};
        return {induce(spec), spec};
    }
    throw InvalidInput("unknown family \"" + family +
                       "\"; expected example1, zd_ball, zd_box, heis_ball, "
                       "or zd_rand");
}

nlohmann::ordered_json spectrum_report(const GraphWithBoundary& g,
                                       const SteklovSpectrum& s) {
    nlohmann::ordered_json j;
    j["b"] = g.boundary_count();
    auto eigenvalues = nlohmann::ordered_json::array();
    for (double v : s.eigenvalues) eigenvalues.push_back(round_sig(v));
    j["eigenvalues"] = std::move(eigenvalues);
    if (g.boundary_count() >= 2) {
        j["sigma1"] = round_sig(s.sigma1());
    } else {
        j["sigma1"] = nullptr;
    }
    nlohmann::ordered_json residuals;
    residuals["dtn_asymmetry"] = round_sig(s.diagnostics.max_asymmetry);
    residuals["dtn_max_row_sum"] = round_sig(s.diagnostics.max_row_sum);
    residuals["interior"] = round_sig(s.interior_residual);
    residuals["boundary"] = round_sig(s.boundary_residual);
    j["residuals"] = std::move(residuals);
    return j;
}

std::string spectrum_csv(const GraphWithBoundary& g,
                         const SteklovSpectrum& s) {
    std::ostringstream out;
    out << "# schema: steklov.spectrum.v1\n";
    out << "j,sigma\n";
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
        out << k << "," << format_double(round_sig(s.eigenvalues[k])) << "\n";
    }
    out << "# sigma1 = "
        << (g.boundary_count() >= 2
                ? format_double(round_sig(s.sigma1()))
                : std::string("undefined"))
        << "\n";
    out << "# dtn_asymmetry = "
        << format_double(round_sig(s.diagnostics.max_asymmetry)) << "\n";
    out << "# dtn_max_row_sum = "
        << format_double(round_sig(s.diagnostics.max_row_sum)) << "\n";
    out << "# interior_residual = " << format_double(round_sig(s.interior_residual))
        << "\n";
    out << "# boundary_residual = " << format_double(round_sig(s.boundary_residual))
        << "\n";
    return out.str();
}

int cmd_gen(const std::string& family, const std::vector<std::string>& params,
            const CommonOptions& common) {
    Instance instance = [&] {
        if (family == "json") {
            if (params.size() != 1) {
                throw InvalidInput("family json needs one parameter: path");
            }
            return Instance{load_graph_file(params[0]), {}};
        }
        std::vector<std::int64_t> values;
        for (const auto& p : params) {
            values.push_back(parse_int(p, "family parameter"));
        }
        return build_family(family, values, common.seed,
                            ball_options(common));
    }();
    require_valid(instance.graph);
    Sink sink(common.output);
    sink.write(graph_to_json(instance.graph).dump(2) + "\n");
    return kExitSuccess;
}

int cmd_spectrum(const std::string& input, bool csv,
                 const CommonOptions& common) {
    auto g = load_graph_file(input);
    auto s = spectrum(g, solve_options(common));
    Sink sink(common.output);
    if (csv) {
        sink.write(spectrum_csv(g, s));
    } else {
        sink.write(spectrum_report(g, s).dump(2) + "\n");
    }
    if (g.boundary_count() < 2) {
        std::cerr << "error: sigma_1 is undefined for a single boundary "
                     "vertex\n";
        return kExitInvalidInput;
    }
    return kExitSuccess;
}

struct CertifyResult {
    nlohmann::ordered_json report;
    bool sound = false;
};

CertifyResult certify_report(const GraphWithBoundary& g, int growth_n,
                             const CommonOptions& common) {
    if (!g.host()) {
        throw MissingHostLabels(
            "certify needs a host descriptor in the graph file");
    }
    const GroupDescriptor& desc = *g.host();
    const auto opts = ball_options(common);
    const auto growth = growth_function(desc, growth_n, opts);
    const auto chain = constant_chain(desc, growth);
    const auto cert = certify_sigma1(g, desc, chain, opts);
    const double sigma1 = spectrum(g, solve_options(common)).sigma1();
    const bool sound = sigma1 <= cert.certified_bound + 1e-9;

    nlohmann::ordered_json j;
    j["branch"] = to_string(cert.branch);
    j["alpha"] = nlohmann::ordered_json::array(
        {cert.alpha_num, cert.alpha_den});
    j["R"] = cert.radius;
    if (cert.center) {
        j["x0"] = nlohmann::ordered_json(cert.center->coords);
    } else {
        j["x0"] = nullptr;
    }
    if (cert.rayleigh1) {
        j["rayleigh1"] = round_sig(*cert.rayleigh1);
    } else {
        j["rayleigh1"] = nullptr;
    }
    if (cert.rayleigh2) {
        j["rayleigh2"] = round_sig(*cert.rayleigh2);
    } else {
        j["rayleigh2"] = nullptr;
    }
    j["certified_bound"] = round_sig(cert.certified_bound);
    j["ball_boundary_count"] = cert.ball_boundary_count;
    j["complement_boundary_count"] = cert.complement_boundary_count;
    if (cert.fallback_reason.empty()) {
        j["fallback_reason"] = nullptr;
    } else {
        j["fallback_reason"] = cert.fallback_reason;
    }
    j["growth_n_max"] = chain.growth_n_max;
    j["c1"] = chain.c1;
    j["c_final"] = round_sig(chain.c_final);
    j["theorem_bound"] = round_sig(theorem1_bound(g, chain, chain.order));
    j["sigma1"] = round_sig(sigma1);
    j["sound"] = sound;
    return {std::move(j), sound};
}

int cmd_certify(const std::string& input, int growth_n,
                const CommonOptions& common) {
    auto g = load_graph_file(input);
    auto result = certify_report(g, growth_n, common);
    Sink sink(common.output);
    sink.write(result.report.dump(2) + "\n");
    if (!result.sound) {
        std::cerr << "error: certificate does not dominate sigma_1; this is "
                     "a bug\n";
        return kExitInvariantViolation;
    }
    return kExitSuccess;
}

int cmd_sweep(const std::string& family, int dim, std::int64_t from,
              std::int64_t to, int growth_n, bool timings,
              const CommonOptions& common) {
    if (from > to) {
        throw InvalidInput("sweep range is empty: from > to");
    }
    const auto opts = ball_options(common);
    std::optional<GroupDescriptor> host;
    if (family == "zd_ball" || family == "zd_box" || family == "zd_rand") {
        host = GroupDescriptor::free_abelian(dim);
    } else if (family == "heis_ball") {
        host = GroupDescriptor::heisenberg();
    } else if (family != "example1") {
        throw InvalidInput("unknown sweep family \"" + family + "\"");
    }
    std::optional<ConstantChain> chain;
    if (host) {
        chain = constant_chain(*host, growth_function(*host, growth_n, opts));
    }

    Sink sink(common.output);
    std::ostringstream header;
    header << "# schema: steklov.sweep.v1\n";
    header << "family,parameter,omega,delta_omega,omega_bar,vprime,b,sigma1,"
              "theorem1_bound,corollary1_bound,corollary2_bound,"
              "certificate_bound,certificate_branch,iso_ratio,flags,error";
    if (timings) header << ",solve_ms,certify_ms";
    header << "\n";
    sink.write(header.str());

    for (std::int64_t p = from; p <= to; ++p) {
        std::ostringstream row;
        row << family << "," << p << ",";
        try {
            std::vector<std::int64_t> params;
            if (family == "example1" || family == "heis_ball") {
                params = {p};
            } else {
                params = {dim, p};
            }
            Instance instance = build_family(family, params,
                                             mix_seed(common.seed, p), opts);
            const auto& g = instance.graph;
            if (instance.subset) {
                const auto iso = isoperimetric_ratio(*instance.subset);
                row << iso.omega_size << "," << iso.boundary_size << ","
                    << iso.closure_size << ",";
            } else {
                row << ",,,";
            }
            row << g.vertex_count() << "," << g.boundary_count() << ",";

            const auto t0 = std::chrono::steady_clock::now();
            const auto s = spectrum(g, solve_options(common));
            const auto t1 = std::chrono::steady_clock::now();
            const double sigma1 = s.sigma1();
            row << format_double(round_sig(sigma1)) << ",";

            std::string flags;
            std::optional<BoundCertificate> cert;
            if (chain) {
                const int order = host->growth_order();
                const double theorem = theorem1_bound(g, *chain, order);
                row << format_double(round_sig(theorem)) << ",";
                const auto cb = corollary_bounds(g, *chain, order);
                row << format_double(round_sig(cb.corollary1)) << ","
                    << format_double(round_sig(cb.corollary2)) << ",";
                cert = certify_sigma1(g, *host, *chain, opts);
                row << format_double(round_sig(cert->certified_bound)) << ","
                    << to_string(cert->branch) << ",";
                if (instance.subset) {
                    row << format_double(round_sig(
                               isoperimetric_ratio(*instance.subset).ratio))
                        << ",";
                } else {
                    row << ",";
                }
                auto add_flag = [&flags](const std::string& flag) {
                    if (!flags.empty()) flags += ";";
                    flags += flag;
                };
                if (!cert->fallback_reason.empty()) {
                    add_flag("certificate_fallback:" + cert->fallback_reason);
                }
                if (sigma1 > cert->certified_bound + 1e-9) {
                    add_flag("unsound_certificate");
                }
                if (sigma1 > theorem + 1e-9) {
                    add_flag("theorem_exceeded");
                }
            } else {
                row << ",,,,,,";
            }
            const auto t2 = std::chrono::steady_clock::now();
            row << flags << ",";
            if (timings) {
                auto ms = [](auto a, auto b) {
                    return std::chrono::duration_cast<
                               std::chrono::milliseconds>(b - a)
                        .count();
                };
                row << "," << ms(t0, t1) << "," << ms(t1, t2);
            }
            row << "\n";
        } catch (const std::exception& e) {
            std::string msg = e.what();
            for (char& c : msg) {
                if (c == ',' || c == '\n') c = ';';
            }
            row.str("");
            row << family << "," << p << ",,,,,,,,,,,,,," << msg;
            if (timings) row << ",,";
            row << "\n";
        }
        sink.write(row.str());
    }
    return kExitSuccess;
}

int cmd_growth(const std::vector<std::string>& args,
               const CommonOptions& common) {
    if (args.empty()) {
        throw InvalidInput("growth needs: z <rank> <n_max> | heis <n_max>");
    }
    GroupDescriptor desc = [&] {
        if (args[0] == "z") {
            if (args.size() != 3) {
                throw InvalidInput("growth z needs: z <rank> <n_max>");
            }
            return GroupDescriptor::free_abelian(
                static_cast<int>(parse_int(args[1], "rank")));
        }
        if (args[0] == "heis") {
            if (args.size() != 2) {
                throw InvalidInput("growth heis needs: heis <n_max>");
            }
            return GroupDescriptor::heisenberg();
        }
        throw InvalidInput("growth kind must be z or heis, got \"" + args[0] +
                           "\"");
    }();
    const int n_max =
        static_cast<int>(parse_int(args.back(), "growth horizon"));
    const auto growth = growth_function(desc, n_max, ball_options(common));
    const auto chain = constant_chain(desc, growth);

    std::ostringstream out;
    out << "# schema: steklov.growth.v1\n";
    out << "n,V_n,ratio_upper,ratio_lower\n";
    for (const auto& [n, v] : growth.samples) {
        const double poly =
            std::pow(static_cast<double>(n), desc.growth_order());
        out << n << "," << v << ","
            << format_double(round_sig(static_cast<double>(v) / poly)) << ","
            << format_double(round_sig(poly / static_cast<double>(v)))
            << "\n";
    }
    out << "# growth_constant = "
        << format_double(round_sig(growth.growth_constant)) << "\n";
    out << "# growth_order = " << chain.order << "\n";
    out << "# degree = " << chain.degree << "\n";
    out << "# c1 = " << chain.c1 << "\n";
    out << "# c2 = " << format_double(round_sig(chain.c2)) << "\n";
    out << "# c3 = " << format_double(round_sig(chain.c3)) << "\n";
    out << "# c4 = " << format_double(round_sig(chain.c4)) << "\n";
    out << "# c5 = " << format_double(round_sig(chain.c5)) << "\n";
    out << "# c6 = " << format_double(round_sig(chain.c6)) << "\n";
    out << "# c7 = " << format_double(round_sig(chain.c7)) << "\n";
    out << "# c8 = " << format_double(round_sig(chain.c8)) << "\n";
    out << "# c_final = " << format_double(round_sig(chain.c_final)) << "\n";
    Sink sink(common.output);
    sink.write(out.str());
    return kExitSuccess;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Steklov spectra and certified eigenvalue bounds for "
                 "graphs embedded in Cayley graphs"};
    app.require_subcommand(1);

    CommonOptions common;
    app.add_option("--seed", common.seed, "random seed for generated files");
    app.add_option("--cap", common.cap, "element cap for enumerations");
    app.add_option("--tol", common.tol, "eigensolver tolerance");
    app.add_option("--output,-o", common.output,
                   "write to a file instead of stdout");

    std::string gen_family;
    std::vector<std::string> gen_params;
    auto* gen = app.add_subcommand("gen", "generate a graph as JSON");
    gen->fallthrough();
    gen->add_option("family", gen_family,
                    "example1 | zd_ball | zd_box | heis_ball | zd_rand | json")
        ->required();
    gen->add_option("params", gen_params, "family parameters");

    std::string spectrum_input;
    bool spectrum_csv_flag = false;
    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "compute the Steklov spectrum");
    spectrum_cmd->fallthrough();
    spectrum_cmd->add_option("input", spectrum_input, "graph JSON file")
        ->required();
    spectrum_cmd->add_flag("--csv", spectrum_csv_flag,
                           "emit CSV instead of JSON");

    std::string certify_input;
    int certify_growth_n = 12;
    auto* certify_cmd = app.add_subcommand(
        "certify", "build a constructive bound certificate for sigma_1");
    certify_cmd->fallthrough();
    certify_cmd->add_option("input", certify_input, "graph JSON file")
        ->required();
    certify_cmd->add_option("--growth-n", certify_growth_n,
                            "growth estimation horizon");

    std::string sweep_family;
    int sweep_dim = 2;
    std::int64_t sweep_from = 0;
    std::int64_t sweep_to = 0;
    int sweep_growth_n = 12;
    bool sweep_timings = false;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "tabulate spectra and bounds over a parameter range");
    sweep_cmd->fallthrough();
    sweep_cmd->add_option("family", sweep_family,
                          "example1 | zd_ball | zd_box | heis_ball | zd_rand")
        ->required();
    sweep_cmd->add_option("--dim", sweep_dim, "free abelian rank");
    sweep_cmd->add_option("--from", sweep_from, "first parameter value")
        ->required();
    sweep_cmd->add_option("--to", sweep_to, "last parameter value")
        ->required();
    sweep_cmd->add_option("--growth-n", sweep_growth_n,
                          "growth estimation horizon");
    sweep_cmd->add_flag("--timings", sweep_timings,
                        "append runtime columns (breaks byte determinism)");

    std::vector<std::string> growth_args;
    auto* growth_cmd = app.add_subcommand(
        "growth", "tabulate ball sizes and the derived constant chain");
    growth_cmd->fallthrough();
    growth_cmd->add_option("args", growth_args, "z <rank> <n_max> | heis <n_max>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitInvalidInput;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_family, gen_params, common);
        if (spectrum_cmd->parsed()) {
            return cmd_spectrum(spectrum_input, spectrum_csv_flag, common);
        }
        if (certify_cmd->parsed()) {
            return cmd_certify(certify_input, certify_growth_n, common);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_family, sweep_dim, sweep_from, sweep_to,
                             sweep_growth_n, sweep_timings, common);
        }
        if (growth_cmd->parsed()) return cmd_growth(growth_args, common);
        throw InvalidInput("no subcommand given");
    } catch (const ResourceLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const InvariantViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariantViolation;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvariantViolation;
    }
}

} // namespace steklov
