#ifndef ILLPOSED_IO_HPP
#define ILLPOSED_IO_HPP

#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "illposed/errors.hpp"
#include "illposed/radon.hpp"
#include "illposed/specext.hpp"
#include "illposed/stablediff.hpp"

/// Plain-text file formats. Every file starts with one '#' header line;
/// floating values are written in shortest round-trip form.
namespace illposed::io {

inline std::string fmt(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
            ++i;
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r')
            ++i;
        if (i > b)
            out.push_back(s.substr(b, i - b));
    }
    return out;
}

/// Reads a file as (header tokens, data lines with their line numbers).
struct Lines {
    std::string file;
    std::vector<std::string> header;
    std::string header_text;
    std::vector<std::pair<std::size_t, std::string>> data;
};

inline Lines read_lines(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, 0, "file", "cannot open");
    Lines l;
    l.file = path;
    std::string line;
    std::size_t no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++no;
        if (!have_header) {
            if (line.empty() || line[0] != '#')
                throw ParseError(path, no, "header", "expected a '#' header line");
            l.header_text = line.substr(1);
            have_header = true;
            continue;
        }
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        if (line[0] == '#')
            continue;
        l.data.emplace_back(no, line);
    }
    if (!have_header)
        throw ParseError(path, 1, "header", "file is empty");
    for (auto tok : split(l.header_text))
        l.header.emplace_back(tok);
    return l;
}

/// Parses a number; `key=value` tokens are accepted and the key checked.
inline double number(std::string_view tok, const std::string& file, std::size_t line, const std::string& field)
{
    if (const auto eq = tok.find('='); eq != std::string_view::npos) {
        if (tok.substr(0, eq) != field)
            throw ParseError(file, line, field, "unexpected key '" + std::string(tok.substr(0, eq)) + "'");
        tok = tok.substr(eq + 1);
    }
    double v = 0.0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw ParseError(file, line, field, "not a finite number: '" + std::string(tok) + "'");
    return v;
}

inline std::size_t count(std::string_view tok, const std::string& file, std::size_t line, const std::string& field)
{
    const double v = number(tok, file, line, field);
    if (v < 0.0 || v != std::floor(v))
        throw ParseError(file, line, field, "not a nonnegative integer");
    return static_cast<std::size_t>(v);
}

inline void need(const Lines& l, std::size_t n, const std::vector<std::string>& names)
{
    if (l.header.size() != n) {
        std::string want;
        for (const auto& s : names)
            want += (want.empty() ? "" : " ") + s;
        throw ParseError(l.file, 1, names[std::min(l.header.size(), n - 1)],
                         "header must be '# " + want + "' (" + std::to_string(n) + " fields, got " +
                             std::to_string(l.header.size()) + ")");
    }
}

inline std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    return out;
}

} // namespace detail

// ---- 1D signal: "# x0 dx period delta", then one value per line -------

inline void write_signal(const std::string& path, const stablediff::SampledSignal& s)
{
    auto out = detail::open_out(path);
    out << "# " << fmt(s.x0()) << ' ' << fmt(s.dx()) << ' ' << fmt(s.period()) << ' ' << fmt(s.delta()) << '\n';
    for (double v : s.values())
        out << fmt(v) << '\n';
}

inline stablediff::SampledSignal read_signal(const std::string& path)
{
    const auto l = detail::read_lines(path);
    detail::need(l, 4, {"x0", "dx", "period", "delta"});
    const double x0 = detail::number(l.header[0], path, 1, "x0");
    const double dx = detail::number(l.header[1], path, 1, "dx");
    const double period = detail::number(l.header[2], path, 1, "period");
    const double delta = detail::number(l.header[3], path, 1, "delta");
    if (!(dx > 0.0))
        throw ParseError(path, 1, "dx", "must be positive");
    if (!(delta >= 0.0))
        throw ParseError(path, 1, "delta", "must be nonnegative");
    std::vector<double> v;
    v.reserve(l.data.size());
    for (const auto& [no, line] : l.data) {
        const auto tok = detail::split(line);
        if (tok.size() != 1)
            throw ParseError(path, no, "value", "expected exactly one value per line");
        v.push_back(detail::number(tok[0], path, no, "value"));
    }
    if (v.empty())
        throw ParseError(path, 2, "value", "no samples");
    const double tiled = static_cast<double>(v.size()) * dx;
    if (std::abs(tiled - period) > 1e-9 * std::max(1.0, std::abs(period)))
        throw ParseError(path, 1, "period",
                         "must equal samples*dx = " + fmt(tiled) + " (grid must tile one period)");
    return stablediff::SampledSignal(std::move(v), x0, dx, delta);
}

/// "# bound=... h_used=... h_ideal=... snapping_slack=...", then "x derivative".
inline void write_diff_report(const std::string& path, const stablediff::SampledSignal& s,
                              const stablediff::DiffReport& r)
{
    auto out = detail::open_out(path);
    out << "# bound=" << fmt(r.bound) << " h_used=" << fmt(r.h_used) << " h_ideal=" << fmt(r.h_ideal)
        << " snapping_slack=" << fmt(r.snapping_slack) << '\n';
    for (std::size_t k = 0; k < r.derivative.size(); ++k)
        out << fmt(s.abscissa(k)) << ' ' << fmt(r.derivative[k]) << '\n';
}

// ---- spectral samples: "# dim shape params...", rows "xi... re im" -----

struct SpectralFile {
    std::size_t dim = 1;
    std::string shape;
    std::vector<double> params;
    std::vector<std::vector<double>> nodes;
    std::vector<std::complex<double>> values;
};

template <std::size_t Dim>
void write_spectral_samples(const std::string& path, const specext::SpectralWindow<Dim>& window,
                            const specext::SpectralSamples<Dim>& s)
{
    auto out = detail::open_out(path);
    out << "# " << window.header() << '\n';
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
        for (std::size_t d = 0; d < Dim; ++d)
            out << fmt(s.nodes[i][d]) << ' ';
        out << fmt(s.values[i].real()) << ' ' << fmt(s.values[i].imag()) << '\n';
    }
}

inline SpectralFile read_spectral_samples(const std::string& path)
{
    const auto l = detail::read_lines(path);
    if (l.header.size() < 2)
        throw ParseError(path, 1, "dim", "header must be '# dim shape params...'");
    SpectralFile f;
    f.dim = detail::count(l.header[0], path, 1, "dim");
    if (f.dim != 1 && f.dim != 2)
        throw ParseError(path, 1, "dim", "must be 1 or 2");
    f.shape = std::string(l.header[1]);
    if (f.shape != "interval" && f.shape != "box" && f.shape != "ball" && f.shape != "cone")
        throw ParseError(path, 1, "shape", "unknown window shape '" + f.shape + "'");
    for (std::size_t i = 2; i < l.header.size(); ++i)
        f.params.push_back(detail::number(l.header[i], path, 1, "params"));
    for (const auto& [no, line] : l.data) {
        const auto tok = detail::split(line);
        if (tok.size() != f.dim + 2)
            throw ParseError(path, no, "row", "expected " + std::to_string(f.dim + 2) + " columns (xi... re im)");
        std::vector<double> xi;
        for (std::size_t d = 0; d < f.dim; ++d)
            xi.push_back(detail::number(tok[d], path, no, "xi" + std::to_string(d)));
        const double re = detail::number(tok[f.dim], path, no, "re");
        const double im = detail::number(tok[f.dim + 1], path, no, "im");
        f.nodes.push_back(std::move(xi));
        f.values.emplace_back(re, im);
    }
    return f;
}

template <std::size_t Dim>
specext::SpectralSamples<Dim> to_samples(const SpectralFile& f, const std::string& path)
{
    if (f.dim != Dim)
        throw ParseError(path, 1, "dim", "expected dimension " + std::to_string(Dim));
    specext::SpectralSamples<Dim> s;
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
        specext::Point<Dim> p{};
        for (std::size_t d = 0; d < Dim; ++d)
            p[d] = f.nodes[i][d];
        s.nodes.push_back(p);
        s.values.push_back(f.values[i]);
    }
    return s;
}

// ---- field: "# nx ny x0 y0 dx dy", rows "re im", row-major -------------

inline void write_field(const std::string& path, const radon::Grid2D& g, const std::vector<std::complex<double>>& v)
{
    if (v.size() != g.size())
        throw ConfigError("write_field: value count does not match the grid");
    auto out = detail::open_out(path);
    out << "# " << g.nx << ' ' << g.ny << ' ' << fmt(g.x0) << ' ' << fmt(g.y0) << ' ' << fmt(g.dx) << ' '
        << fmt(g.dy) << '\n';
    for (const auto& z : v)
        out << fmt(z.real()) << ' ' << fmt(z.imag()) << '\n';
}

struct Field {
    radon::Grid2D grid;
    std::vector<std::complex<double>> values;
};

inline Field read_field(const std::string& path)
{
    const auto l = detail::read_lines(path);
    detail::need(l, 6, {"nx", "ny", "x0", "y0", "dx", "dy"});
    Field f;
    f.grid.nx = detail::count(l.header[0], path, 1, "nx");
    f.grid.ny = detail::count(l.header[1], path, 1, "ny");
    f.grid.x0 = detail::number(l.header[2], path, 1, "x0");
    f.grid.y0 = detail::number(l.header[3], path, 1, "y0");
    f.grid.dx = detail::number(l.header[4], path, 1, "dx");
    f.grid.dy = detail::number(l.header[5], path, 1, "dy");
    for (const auto& [no, line] : l.data) {
        const auto tok = detail::split(line);
        if (tok.size() != 2)
            throw ParseError(path, no, "value", "expected 're im'");
        f.values.emplace_back(detail::number(tok[0], path, no, "re"), detail::number(tok[1], path, no, "im"));
    }
    if (f.values.size() != f.grid.size())
        throw ParseError(path, l.data.empty() ? 1 : l.data.back().first, "values",
                         "expected nx*ny = " + std::to_string(f.grid.size()) + " rows, got " +
                             std::to_string(f.values.size()));
    return f;
}

// ---- sinogram: "# alpha_min alpha_max n_alpha p0 dp n_p", row-major ----

inline void write_sinogram(const std::string& path, const radon::Sinogram& s)
{
    auto out = detail::open_out(path);
    out << "# " << fmt(s.sector.alpha_min) << ' ' << fmt(s.sector.alpha_max) << ' ' << s.sector.count << ' '
        << fmt(s.p0) << ' ' << fmt(s.dp) << ' ' << s.n_p << '\n';
    for (double v : s.values)
        out << fmt(v) << '\n';
}

inline radon::Sinogram read_sinogram(const std::string& path)
{
    const auto l = detail::read_lines(path);
    detail::need(l, 6, {"alpha_min", "alpha_max", "n_alpha", "p0", "dp", "n_p"});
    radon::Sinogram s;
    const double amin = detail::number(l.header[0], path, 1, "alpha_min");
    const double amax = detail::number(l.header[1], path, 1, "alpha_max");
    const std::size_t na = detail::count(l.header[2], path, 1, "n_alpha");
    try {
        s.sector = radon::AngularSector(amin, amax, na);
    } catch (const ConfigError& e) {
        throw ParseError(path, 1, "n_alpha", e.what());
    }
    s.p0 = detail::number(l.header[3], path, 1, "p0");
    s.dp = detail::number(l.header[4], path, 1, "dp");
    s.n_p = detail::count(l.header[5], path, 1, "n_p");
    if (!(s.dp > 0.0))
        throw ParseError(path, 1, "dp", "must be positive");
    for (const auto& [no, line] : l.data) {
        const auto tok = detail::split(line);
        if (tok.size() != 1)
            throw ParseError(path, no, "value", "expected one value per line");
        s.values.push_back(detail::number(tok[0], path, no, "value"));
    }
    if (s.values.size() != na * s.n_p)
        throw ParseError(path, l.data.empty() ? 1 : l.data.back().first, "values",
                         "expected n_alpha*n_p = " + std::to_string(na * s.n_p) + " values, got " +
                             std::to_string(s.values.size()));
    return s;
}

} // namespace illposed::io

#endif // ILLPOSED_IO_HPP
