// illposed: command-line front end for the stablediff, specext, radon and
// propc modules. Exit codes: 0 ok, 1 invalid input, 2 numerically
// infeasible request (results are still written and flagged).

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "illposed/io.hpp"
#include "illposed/noise.hpp"
#include "illposed/propc.hpp"
#include "illposed/radon.hpp"
#include "illposed/specext.hpp"
#include "illposed/stablediff.hpp"
#include "manifest.hpp"
#include "repro.hpp"

using namespace illposed;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_infeasible = 2;

/// Reported as exit code 2 after outputs and manifest are written.
struct Infeasible {
    std::string message;
};

std::vector<double> split_numbers(const std::string& spec, const std::string& flag, char sep = ':')
{
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError(flag + ": '" + tok + "' is not a number");
        }
    }
    return out;
}

/// "kind:a:b:..." -> (kind, numbers)
std::pair<std::string, std::vector<double>> tagged(const std::string& spec, const std::string& flag)
{
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    if (colon == std::string::npos)
        return {kind, {}};
    return {kind, split_numbers(spec.substr(colon + 1), flag)};
}

double deg(double d) { return d * std::numbers::pi / 180.0; }

json config_echo(const CLI::App* app)
{
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name.empty())
            continue;
        if (opt->count() > 0) {
            const auto& r = opt->results();
            j[name] = r.size() == 1 ? json(r.front()) : json(r);
        } else if (!opt->get_default_str().empty()) {
            j[name] = opt->get_default_str();
        }
    }
    for (const CLI::App* sub : app->get_subcommands())
        j[sub->get_name()] = config_echo(sub);
    return j;
}

std::string out_path(const std::string& dir, const std::string& name)
{
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

// ---- diff ----------------------------------------------------------------

struct DiffArgs {
    std::string in;
    double delta = -1.0;
    double m2 = -1.0;
    double j = 2.0;
    double mj = 1.0;
    std::string noise = "none";
    std::uint64_t seed = 1;
    std::string out = "diff.txt";
};

stablediff::SampledSignal load_signal(const std::string& spec)
{
    if (spec.rfind("builtin:", 0) == 0) {
        const auto [kind, nums] = tagged(spec.substr(8), "--in");
        if (kind != "sin" || nums.size() != 1 || nums[0] < 8 || nums[0] != std::floor(nums[0]))
            throw ConfigError("--in: builtin signals are 'builtin:sin:N' with integer N >= 8");
        return stablediff::SampledSignal::from_function([](double x) { return std::sin(x); }, 0.0,
                                                        2.0 * std::numbers::pi, static_cast<std::size_t>(nums[0]));
    }
    return io::read_signal(spec);
}

void run_diff(const DiffArgs& a, const std::string& dir, tools::RunManifest& man)
{
    auto sig = load_signal(a.in);
    if (a.delta >= 0.0)
        sig = sig.with_delta(a.delta);
    double j = a.j;
    double mj = a.mj;
    if (a.m2 > 0.0) {
        if (j != 2.0)
            throw ConfigError("--m2 implies j = 2; do not combine it with --j");
        mj = a.m2;
    }
    const stablediff::SmoothnessClass cls(j, mj);
    if (!(sig.delta() > 0.0))
        throw ConfigError("noise level must be positive (set --delta or the file header)");
    if (a.noise != "none") {
        const auto pattern = parse_noise_pattern(a.noise);
        const auto probe = stablediff::differentiate(sig, cls);
        sig = synth_noise(sig, sig.delta(), a.seed, pattern, 2 * static_cast<std::size_t>(probe.step_samples));
    }
    const auto rep = stablediff::differentiate(sig, cls);
    const auto path = out_path(dir, a.out);
    io::write_diff_report(path, sig, rep);
    man.add_output(path);
    man.set_result("bound", rep.bound);
    man.set_result("h_used", rep.h_used);
    man.set_result("h_ideal", rep.h_ideal);
    man.set_result("snapping_slack", rep.snapping_slack);
    std::cout << "bound " << io::fmt(rep.bound) << "  h_used " << io::fmt(rep.h_used) << "  h_ideal "
              << io::fmt(rep.h_ideal) << "  slack " << io::fmt(rep.snapping_slack) << "\nwrote " << path << '\n';
}

// ---- lowerbound ----------------------------------------------------------

struct LowerArgs {
    double m = 1.0;
    double delta = 1e-4;
    std::vector<double> b{0.0};
    std::string out = "lowerbound.txt";
};

void run_lowerbound(const LowerArgs& a, const std::string& dir, tools::RunManifest& man)
{
    const auto pair = stablediff::adversarial_pair(a.m, a.delta);
    const auto path = out_path(dir, a.out);
    std::ofstream out(path);
    out << "# b worst_error sqrt(2*delta*m) h=" << io::fmt(pair.h) << '\n';
    for (double b : a.b)
        out << io::fmt(b) << ' ' << io::fmt(stablediff::lower_bound_check(b, a.m, a.delta)) << ' '
            << io::fmt(std::sqrt(2.0 * a.delta * a.m)) << '\n';
    out.close();
    man.add_output(path);
    man.set_result("h", pair.h);
    man.set_result("minimax", std::sqrt(2.0 * a.delta * a.m));
    std::cout << "h " << io::fmt(pair.h) << "  minimax error sqrt(2 delta m) = " << io::fmt(std::sqrt(2.0 * a.delta * a.m))
              << "\nwrote " << path << '\n';
}

// ---- specext ---------------------------------------------------------------

struct WindowSpec {
    std::size_t dim = 1;
    std::string kind;
    std::vector<double> p;
};

WindowSpec parse_window(const std::string& spec)
{
    auto [kind, p] = tagged(spec, "--window");
    WindowSpec w{1, kind, p};
    if (kind == "interval" && p.size() == 2)
        w.dim = 1;
    else if (kind == "box" && p.size() == 4)
        w.dim = 2;
    else if (kind == "ball" && p.size() == 3)
        w.dim = 2;
    else if (kind == "cone" && p.size() == 4)
        w.dim = 2;
    else
        throw ConfigError("--window: expected interval:lo:hi, box:lo0:hi0:lo1:hi1, ball:c0:c1:r or "
                          "cone:alpha_min_deg:alpha_max_deg:n_alpha:T");
    return w;
}

specext::SpectralWindow<1> make_window1(const WindowSpec& w) { return specext::SpectralWindow<1>::interval(w.p[0], w.p[1]); }

specext::SpectralWindow<2> make_window2(const WindowSpec& w, std::size_t t_panels)
{
    if (w.kind == "box")
        return specext::SpectralWindow<2>::box({w.p[0], w.p[2]}, {w.p[1], w.p[3]});
    if (w.kind == "ball")
        return specext::SpectralWindow<2>::ball({w.p[0], w.p[1]}, w.p[2]);
    if (w.p[2] < 1 || w.p[2] != std::floor(w.p[2]))
        throw ConfigError("--window cone: n_alpha must be a positive integer");
    return specext::SpectralWindow<2>::truncated_cone(deg(w.p[0]), deg(w.p[1]), static_cast<std::size_t>(w.p[2]),
                                                      w.p[3], t_panels);
}

struct SpecArgs {
    std::string window = "interval:-1:1";
    std::string f = "builtin:bump";
    std::string in;
    std::string out;
    std::string mollifier;
    std::string method = "laplacian-expansion";
    std::string eval = "-1:1:201";
    int j = 4;
    double a = 1.0;
    double a1 = -1.0;
    double R = -1.0;
    std::size_t n = 401;
    std::size_t grid = 41;
    std::size_t t_panels = 4;
    std::vector<int> ladder{4, 8, 16, 32, 64};
    std::string regions = "-0.5:0.5,2:3";
};

template <std::size_t Dim>
double builtin_value(const std::string& name, const specext::Point<Dim>& x, double a)
{
    const double r2 = specext::dot<Dim>(x, x) / (a * a);
    if (name == "builtin:bump")
        return r2 < 1.0 ? (1.0 - r2) * (1.0 - r2) : 0.0;
    if (name == "builtin:indicator")
        return r2 < 1.0 ? 1.0 : 0.0;
    throw ConfigError("--f: expected builtin:bump or builtin:indicator");
}

template <std::size_t Dim>
specext::SpectralWindow<Dim> window_for(const WindowSpec& w, std::size_t t_panels)
{
    if (w.dim != Dim)
        throw ConfigError("--window: dimension mismatch");
    if constexpr (Dim == 1)
        return make_window1(w);
    else
        return make_window2(w, t_panels);
}

template <std::size_t Dim>
void run_sample(const SpecArgs& a, const WindowSpec& ws, const std::string& dir, tools::RunManifest& man)
{
    const auto window = window_for<Dim>(ws, a.t_panels);
    const std::string fname = a.f;
    builtin_value<Dim>(fname, specext::Point<Dim>{}, a.a); // validate name
    const auto f = specext::CompactFunction<Dim>::sample(
        [&](const specext::Point<Dim>& x) { return builtin_value<Dim>(fname, x, a.a); }, a.a,
        Dim == 1 ? a.n : std::min<std::size_t>(a.n, 201));
    const auto s = specext::sample_spectrum(f, window);
    const auto path = out_path(dir, a.out.empty() ? "samples.txt" : a.out);
    io::write_spectral_samples(path, window, s);
    man.add_output(path);
    std::cout << "wrote " << window.size() << " spectral samples to " << path << '\n';
}

template <std::size_t Dim>
specext::DeltaSeqConfig<Dim> kernel_config(const SpecArgs& a, const specext::SpectralWindow<Dim>& window)
{
    specext::Mollifier<Dim> moll;
    if (a.mollifier.empty()) {
        moll = specext::inscribed_mollifier(window);
    } else {
        const auto v = split_numbers(a.mollifier, "--mollifier");
        if (v.size() != Dim + 1)
            throw ConfigError("--mollifier: expected center coordinates and radius separated by ':'");
        specext::Point<Dim> c{};
        for (std::size_t d = 0; d < Dim; ++d)
            c[d] = v[d];
        moll = specext::make_mollifier(window, c, v[Dim]);
    }
    auto cfg = specext::DeltaSeqConfig<Dim>(a.j, a.a, moll, a.a1 > 0 ? std::optional<double>(a.a1) : std::nullopt,
                                            a.R > 0 ? std::optional<double>(a.R) : std::nullopt,
                                            specext::parse_spectrum_method(a.method));
    return cfg;
}

template <std::size_t Dim>
void run_extrapolate(const SpecArgs& a, const WindowSpec& ws, const std::string& dir, tools::RunManifest& man)
{
    if (a.in.empty())
        throw ConfigError("--in: spectral sample file required");
    const auto window = window_for<Dim>(ws, a.t_panels);
    const auto file = io::read_spectral_samples(a.in);
    if (file.shape != specext::to_string(window.shape()))
        throw ConfigError("--in: sample file window shape '" + file.shape + "' does not match --window");
    const auto samples = io::to_samples<Dim>(file, a.in);
    const auto cfg = kernel_config<Dim>(a, window);
    const specext::KernelSpectrum<Dim> spectrum(cfg);

    radon::Grid2D grid;
    std::vector<specext::Point<Dim>> eval;
    if constexpr (Dim == 1) {
        const auto v = split_numbers(a.eval, "--eval");
        if (v.size() != 3 || v[2] < 2 || v[2] != std::floor(v[2]))
            throw ConfigError("--eval: expected lo:hi:n with integer n >= 2");
        eval = specext::linspace_points(v[0], v[1], static_cast<std::size_t>(v[2]));
        grid = radon::Grid2D{static_cast<std::size_t>(v[2]), 1, v[0], 0.0, (v[1] - v[0]) / (v[2] - 1.0), 1.0};
    } else {
        grid = radon::Grid2D::square(a.a, a.grid);
        eval = grid.points();
    }
    const auto res = specext::extrapolate(window, samples, spectrum, eval);
    const auto path = out_path(dir, a.out.empty() ? "extrapolation.txt" : a.out);
    io::write_field(path, grid, res.values);
    man.add_output(path);
    man.set_result("log10_amplification", res.log10_amplification);
    man.set_result("roundoff_floor", res.roundoff_floor);
    man.set_result("data_scale", res.data_scale);
    man.set_result("max_imag", res.max_imag);
    std::cout << "j=" << a.j << "  data-error amplification 10^" << res.log10_amplification << "  roundoff floor "
              << res.roundoff_floor << "\nwrote " << path << '\n';
    if (!res.feasible())
        throw Infeasible{"data rounding alone contributes " + io::fmt(res.roundoff_floor) +
                         " against a data scale of " + io::fmt(res.data_scale) + " (amplification 10^" +
                         io::fmt(res.log10_amplification) + "); lower j or widen the window"};
}

void run_check_delta(const SpecArgs& a, const std::string& dir, tools::RunManifest& man)
{
    const auto window = specext::SpectralWindow<1>::interval(-1.0, 1.0);
    const auto cfg = kernel_config<1>(a, window);
    std::vector<specext::DeltaCheckReport<1>::Region> regions;
    std::stringstream ss(a.regions);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto v = split_numbers(tok, "--regions");
        if (v.size() != 2 || !(v[1] > v[0]))
            throw ConfigError("--regions: expected lo:hi pairs separated by ','");
        regions.push_back({{v[0]}, {v[1]}, false});
    }
    const auto rep = specext::delta_sequence_check<1>(cfg, a.ladder, regions);
    const auto path = out_path(dir, a.out.empty() ? "delta_check.txt" : a.out);
    std::ofstream out(path);
    out << "# j lo hi re im\n";
    for (std::size_t jj = 0; jj < rep.j_ladder.size(); ++jj)
        for (std::size_t r = 0; r < regions.size(); ++r)
            out << rep.j_ladder[jj] << ' ' << io::fmt(regions[r].lo[0]) << ' ' << io::fmt(regions[r].hi[0]) << ' '
                << io::fmt(rep.integrals[jj][r].real()) << ' ' << io::fmt(rep.integrals[jj][r].imag()) << '\n';
    out.close();
    man.add_output(path);
    man.set_result("uniform_bound", rep.uniform_bound);
    man.set_result("final_deviation", rep.final_deviation);
    std::cout << "uniform bound " << rep.uniform_bound << "  deviation from 0/1 limits at last j "
              << rep.final_deviation << "\nwrote " << path << '\n';
}

// ---- radon -----------------------------------------------------------------

struct RadonArgs {
    std::vector<std::string> phantom{"disc:0:0:1"};
    double a = 1.0;
    std::string sector = "30:150";
    std::size_t n_alpha = 64;
    std::size_t n_p = 257;
    std::string in;
    std::string out;
    int j = 32;
    double T = 8.0;
    std::size_t grid = 41;
    std::size_t t_panels = 8;
};

void run_simulate(const RadonArgs& a, const std::string& dir, tools::RunManifest& man)
{
    std::vector<radon::Disc> discs;
    for (const auto& p : a.phantom) {
        const auto [kind, v] = tagged(p, "--phantom");
        if (kind != "disc" || (v.size() != 3 && v.size() != 4))
            throw ConfigError("--phantom: expected disc:cx:cy:r[:weight]");
        discs.push_back({{v[0], v[1]}, v[2], v.size() == 4 ? v[3] : 1.0});
    }
    const radon::Phantom ph(discs, a.a);
    const auto s = split_numbers(a.sector, "--sector");
    if (s.size() != 2)
        throw ConfigError("--sector: expected min_deg:max_deg");
    const radon::AngularSector sector(deg(s[0]), deg(s[1]), a.n_alpha);
    const auto sino = radon::radon_transform(ph, sector, a.n_p);
    const auto path = out_path(dir, a.out.empty() ? "sinogram.txt" : a.out);
    io::write_sinogram(path, sino);
    man.add_output(path);
    man.set_result("mass", ph.mass());
    std::cout << "wrote " << sector.count << " x " << sino.n_p << " sinogram to " << path << '\n';
}

void run_reconstruct(const RadonArgs& a, const std::string& dir, tools::RunManifest& man)
{
    if (a.in.empty())
        throw ConfigError("--in: sinogram file required");
    const auto sino = io::read_sinogram(a.in);
    const double supp = sino.support_radius();
    const auto cfg = radon::cone_config(sino.sector, a.T, a.j, supp);
    const auto grid = radon::Grid2D::square(supp, a.grid);
    const auto res = radon::limited_angle_reconstruct(sino, cfg, a.T, grid.points(), a.t_panels, 16);
    const auto path = out_path(dir, a.out.empty() ? "reconstruction.txt" : a.out);
    io::write_field(path, grid, res.values);
    man.add_output(path);
    man.set_result("log10_amplification", res.log10_amplification);
    man.set_result("roundoff_floor", res.roundoff_floor);
    man.set_result("max_imag", res.max_imag);
    std::cout << "j=" << a.j << "  data-error amplification 10^" << res.log10_amplification << "\nwrote " << path
              << '\n';
    if (!res.feasible())
        throw Infeasible{"data rounding alone contributes " + io::fmt(res.roundoff_floor) +
                         " against a data scale of " + io::fmt(res.data_scale) + "; lower j"};
}

// ---- propc -----------------------------------------------------------------

struct PropcArgs {
    std::string f = "builtin:exp-cos";
    std::vector<int> N{2, 4, 6, 8};
    std::vector<double> t{0.0, 0.5, 1.0};
    std::vector<double> eps{1e-1, 3e-2, 1e-2, 3e-3};
    std::size_t n_alpha = 64;
    std::size_t n_r = 40;
    std::size_t n_theta = 80;
    std::string out;
};

void run_products(const PropcArgs& a, const std::string& dir, tools::RunManifest& man)
{
    const auto quad = propc::DiscQuadrature::make(a.n_r, a.n_theta);
    std::vector<double> f;
    if (a.f == "builtin:exp-cos")
        f = quad.sample([](double x, double y) { return std::exp(x) * std::cos(3.0 * y); });
    else if (a.f == "builtin:x1")
        f = quad.sample([](double x, double) { return x; });
    else if (a.f == "builtin:r2")
        f = quad.sample([](double x, double y) { return x * x + y * y; });
    else
        throw ConfigError("--f: expected builtin:exp-cos, builtin:x1 or builtin:r2");
    const auto fits = propc::approximate_by_products(f, quad, a.N);
    const auto path = out_path(dir, a.out.empty() ? "products.txt" : a.out);
    std::ofstream out(path);
    out << "# N dictionary rank tsvd residual\n";
    for (const auto& r : fits) {
        out << r.degree << ' ' << r.dictionary_size << ' ' << r.effective_rank << ' ' << (r.truncated_svd ? 1 : 0)
            << ' ' << io::fmt(r.residual) << '\n';
        std::cout << "N=" << r.degree << "  residual " << r.residual << '\n';
    }
    out.close();
    man.add_output(path);
}

void run_blowup(const PropcArgs& a, const std::string& dir, tools::RunManifest& man)
{
    const auto quad = propc::DiscQuadrature::make(a.n_r, a.n_theta);
    const auto rows = propc::blowup_study(a.t, a.eps, a.n_alpha, quad);
    const auto path = out_path(dir, a.out.empty() ? "blowup.txt" : a.out);
    std::ofstream out(path);
    out << "# t eps feasible residual coeff_norm rank\n";
    bool all = true;
    for (const auto& r : rows) {
        out << io::fmt(r.t) << ' ' << io::fmt(r.target) << ' ' << (r.feasible ? 1 : 0) << ' ' << io::fmt(r.residual)
            << ' ' << io::fmt(r.coeff_norm) << ' ' << r.rank << '\n';
        std::cout << "t=" << r.t << " eps=" << r.target << (r.feasible ? "" : " (not reached)") << "  |nu| "
                  << r.coeff_norm << '\n';
        all = all && r.feasible;
    }
    out.close();
    man.add_output(path);
    if (!all)
        throw Infeasible{"some residual targets are not reachable with " + std::to_string(a.n_alpha) + " directions"};
}

// ---- repro -----------------------------------------------------------------

void run_repro(const std::string& which, const std::string& dir, tools::RunManifest& man)
{
    std::vector<int> ids;
    if (which == "all") {
        ids = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    } else {
        for (double v : split_numbers(which, "which", ',')) {
            if (v < 1 || v > 9 || v != std::floor(v))
                throw ConfigError("repro: expected 'all' or criterion ids 1..9");
            ids.push_back(static_cast<int>(v));
        }
    }
    const auto path = out_path(dir, "repro.txt");
    std::ofstream out(path);
    std::vector<repro::Outcome> done;
    for (int id : ids) {
        done.push_back(repro::run(id));
        const auto text = repro::format(done.back());
        std::cout << text << std::flush;
        out << text;
    }
    int failed = 0;
    std::cout << "\n";
    for (const auto& o : done) {
        std::cout << repro::format(o, false);
        failed += o.passed ? 0 : 1;
        man.set_result("criterion_" + std::to_string(o.id), o.passed ? "PASS" : "FAIL");
    }
    out.close();
    man.add_output(path);
    if (failed > 0)
        throw Infeasible{std::to_string(failed) + " criteria failed"};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"illposed: stable differentiation, spectral extrapolation, limited-angle tomography and "
                 "property-C experiments"};
    app.set_config("--config", "", "read options from a TOML/INI file");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    std::string out_dir = std::getenv("ILLPOSED_OUT_DIR") ? std::getenv("ILLPOSED_OUT_DIR") : ".";
    app.add_option("--out-dir", out_dir, "output directory (default $ILLPOSED_OUT_DIR or .)");

    DiffArgs d;
    auto* diff = app.add_subcommand("diff", "differentiate a noisy periodic signal");
    diff->add_option("--in", d.in, "signal file or builtin:sin:N")->required();
    diff->add_option("--delta", d.delta, "noise level (overrides the file header)");
    diff->add_option("--m2", d.m2, "bound on |f''| (sets j = 2)");
    diff->add_option("--j", d.j, "smoothness order in (1, 2]")->capture_default_str();
    diff->add_option("--mj", d.mj, "norm bound m_j")->capture_default_str();
    diff->add_option("--noise", d.noise, "add noise: none|uniform|alternating|square")->capture_default_str();
    diff->add_option("--seed", d.seed, "seed for uniform noise")->capture_default_str();
    diff->add_option("--out", d.out, "output file name")->capture_default_str();

    LowerArgs lb;
    auto* lower = app.add_subcommand("lowerbound", "worst error over the adversarial pair");
    lower->add_option("--m", lb.m, "curvature bound m")->capture_default_str();
    lower->add_option("--delta", lb.delta, "noise level")->capture_default_str();
    lower->add_option("--b", lb.b, "estimates at x = 0")->delimiter(',')->capture_default_str();
    lower->add_option("--out", lb.out, "output file name")->capture_default_str();

    SpecArgs sa;
    auto* spec = app.add_subcommand("specext", "delta-sequence spectral extrapolation");
    spec->require_subcommand(1);
    auto add_kernel = [&](CLI::App* c) {
        c->add_option("--j", sa.j, "kernel index")->capture_default_str();
        c->add_option("--a", sa.a, "support radius of f")->capture_default_str();
        c->add_option("--a1", sa.a1, "kernel parameter a1 > a (default 1.25 a)");
        c->add_option("--R", sa.R, "truncation radius for the quadrature spectrum (default 8 a1)");
        c->add_option("--method", sa.method, "quadrature|laplacian-expansion")->capture_default_str();
        c->add_option("--mollifier", sa.mollifier, "center:radius (default: inscribed ball)");
    };
    auto* sample = spec->add_subcommand("sample", "write transform samples of a builtin f at window nodes");
    sample->add_option("--window", sa.window, "window spec")->capture_default_str();
    sample->add_option("--f", sa.f, "builtin:bump|builtin:indicator")->capture_default_str();
    sample->add_option("--a", sa.a, "support radius")->capture_default_str();
    sample->add_option("--n", sa.n, "grid points per axis for f")->capture_default_str();
    sample->add_option("--t-panels", sa.t_panels, "radial panels of a cone window")->capture_default_str();
    sample->add_option("--out", sa.out, "output file name");
    auto* extrap = spec->add_subcommand("extrapolate", "reconstruct f_j from spectral samples");
    extrap->add_option("--window", sa.window, "window spec")->capture_default_str();
    extrap->add_option("--in", sa.in, "spectral sample file")->required();
    add_kernel(extrap);
    extrap->add_option("--eval", sa.eval, "1D evaluation grid lo:hi:n")->capture_default_str();
    extrap->add_option("--grid", sa.grid, "2D grid points per axis on [-a, a]")->capture_default_str();
    extrap->add_option("--t-panels", sa.t_panels, "radial panels of a cone window")->capture_default_str();
    extrap->add_option("--out", sa.out, "output file name");
    auto* check = spec->add_subcommand("check-delta", "integrate delta_j over test intervals (default 1D config)");
    check->add_option("--j-ladder", sa.ladder, "kernel indices")->delimiter(',')->capture_default_str();
    check->add_option("--regions", sa.regions, "lo:hi intervals separated by ','")->capture_default_str();
    check->add_option("--out", sa.out, "output file name");

    RadonArgs ra;
    auto* rad = app.add_subcommand("radon", "limited-angle tomography");
    rad->require_subcommand(1);
    auto* sim = rad->add_subcommand("simulate", "sinogram of a disc phantom");
    sim->add_option("--phantom", ra.phantom, "disc:cx:cy:r[:weight], repeatable")->capture_default_str();
    sim->add_option("--a", ra.a, "support radius")->capture_default_str();
    sim->add_option("--sector", ra.sector, "min_deg:max_deg")->capture_default_str();
    sim->add_option("--n-alpha", ra.n_alpha, "directions")->capture_default_str();
    sim->add_option("--n-p", ra.n_p, "offsets")->capture_default_str();
    sim->add_option("--out", ra.out, "output file name");
    auto* rec = rad->add_subcommand("reconstruct", "f_j from a sinogram");
    rec->add_option("--in", ra.in, "sinogram file")->required();
    rec->add_option("--j", ra.j, "kernel index")->capture_default_str();
    rec->add_option("--T", ra.T, "cone truncation radius")->capture_default_str();
    rec->add_option("--grid", ra.grid, "grid points per axis")->capture_default_str();
    rec->add_option("--t-panels", ra.t_panels, "radial panels per side")->capture_default_str();
    rec->add_option("--out", ra.out, "output file name");

    PropcArgs pa;
    auto* pc = app.add_subcommand("propc", "products of harmonic functions and coefficient blow-up");
    pc->require_subcommand(1);
    auto* prod = pc->add_subcommand("products", "least squares by products of harmonic polynomials");
    prod->add_option("--f", pa.f, "builtin:exp-cos|builtin:x1|builtin:r2")->capture_default_str();
    prod->add_option("--N", pa.N, "degrees")->delimiter(',')->capture_default_str();
    prod->add_option("--n-r", pa.n_r, "radial quadrature nodes")->capture_default_str();
    prod->add_option("--n-theta", pa.n_theta, "angular quadrature nodes")->capture_default_str();
    prod->add_option("--out", pa.out, "output file name");
    auto* blow = pc->add_subcommand("blowup", "plane-wave coefficient norms for complex directions");
    blow->add_option("--t", pa.t, "imaginary-direction parameters")->delimiter(',')->capture_default_str();
    blow->add_option("--eps", pa.eps, "residual targets")->delimiter(',')->capture_default_str();
    blow->add_option("--n-alpha", pa.n_alpha, "plane-wave directions")->capture_default_str();
    blow->add_option("--n-r", pa.n_r, "radial quadrature nodes")->capture_default_str();
    blow->add_option("--n-theta", pa.n_theta, "angular quadrature nodes")->capture_default_str();
    blow->add_option("--out", pa.out, "output file name");

    std::string which = "all";
    auto* rep = app.add_subcommand("repro", "run the acceptance experiments");
    rep->add_option("which", which, "'all' or comma-separated criterion ids")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return exit_invalid;
    }

    const CLI::App* leaf = &app;
    std::string stem;
    while (!leaf->get_subcommands().empty()) {
        leaf = leaf->get_subcommands().front();
        stem += (stem.empty() ? "" : "_") + leaf->get_name();
    }
    tools::RunManifest man(stem, config_echo(&app));
    int code = exit_ok;
    try {
        if (diff->parsed())
            run_diff(d, out_dir, man);
        else if (lower->parsed())
            run_lowerbound(lb, out_dir, man);
        else if (sample->parsed() || extrap->parsed()) {
            const auto ws = parse_window(sa.window);
            if (sample->parsed())
                ws.dim == 1 ? run_sample<1>(sa, ws, out_dir, man) : run_sample<2>(sa, ws, out_dir, man);
            else
                ws.dim == 1 ? run_extrapolate<1>(sa, ws, out_dir, man) : run_extrapolate<2>(sa, ws, out_dir, man);
        } else if (check->parsed())
            run_check_delta(sa, out_dir, man);
        else if (sim->parsed())
            run_simulate(ra, out_dir, man);
        else if (rec->parsed())
            run_reconstruct(ra, out_dir, man);
        else if (prod->parsed())
            run_products(pa, out_dir, man);
        else if (blow->parsed())
            run_blowup(pa, out_dir, man);
        else if (rep->parsed())
            run_repro(which, out_dir, man);
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.message << '\n';
        man.add_note(e.message);
        man.set_status("infeasible", exit_infeasible);
        code = exit_infeasible;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        man.add_note(e.what());
        man.set_status("infeasible", exit_infeasible);
        code = exit_infeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        man.add_note(e.what());
        man.set_status("invalid", exit_invalid);
        code = exit_invalid;
    }
    try {
        std::filesystem::create_directories(out_dir);
        man.write(out_dir, stem);
    } catch (const std::exception& e) {
        std::cerr << "error: cannot write manifest: " << e.what() << '\n';
        return exit_invalid;
    }
    return code;
}
