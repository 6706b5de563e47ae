#ifndef ILLPOSED_PROPC_HPP
#define ILLPOSED_PROPC_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "illposed/errors.hpp"
#include "illposed/quadrature.hpp"

/// Least-squares witnesses for completeness of products of harmonic
/// functions and for the coefficient blow-up of plane-wave superpositions
/// that approximate an exponentially growing solution.
namespace illposed::propc {

using cplx = std::complex<double>;

/// {1} and Re z^k, Im z^k for 1 <= k <= N, z = x1 + i x2. Index 0 is 1,
/// index 2k-1 is Re z^k, index 2k is Im z^k.
class HarmonicBasis2D {
public:
    explicit HarmonicBasis2D(int degree) : n_(degree)
    {
        if (degree < 0)
            throw ConfigError("harmonic basis degree must be >= 0");
    }

    int degree() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(2 * n_ + 1); }

    std::vector<double> evaluate(double x1, double x2) const
    {
        std::vector<double> v(size());
        v[0] = 1.0;
        cplx zk = 1.0;
        const cplx z(x1, x2);
        for (int k = 1; k <= n_; ++k) {
            zk *= z;
            v[static_cast<std::size_t>(2 * k - 1)] = zk.real();
            v[static_cast<std::size_t>(2 * k)] = zk.imag();
        }
        return v;
    }

    double evaluate(std::size_t index, double x1, double x2) const
    {
        if (index >= size())
            throw ConfigError("harmonic basis index out of range");
        return evaluate(x1, x2)[index];
    }

    std::string name(std::size_t index) const
    {
        if (index == 0)
            return "1";
        const std::size_t k = (index + 1) / 2;
        return (index % 2 == 1 ? "Re z^" : "Im z^") + std::to_string(k);
    }

private:
    int n_ = 0;
};

/// Largest |9-point Laplacian| of a basis element over a grid on
/// [-1, 1]^2 with spacing h, relative to its largest |value| there.
inline double harmonic_residual(const HarmonicBasis2D& basis, std::size_t index, std::size_t n_grid = 21,
                                double h = 1e-3)
{
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t a = 0; a < n_grid; ++a)
        for (std::size_t b = 0; b < n_grid; ++b) {
            const double x = -0.9 + 1.8 * static_cast<double>(a) / static_cast<double>(n_grid - 1);
            const double y = -0.9 + 1.8 * static_cast<double>(b) / static_cast<double>(n_grid - 1);
            auto u = [&](double dx, double dy) { return basis.evaluate(index, x + dx, y + dy); };
            const double side = u(h, 0) + u(-h, 0) + u(0, h) + u(0, -h);
            const double diag = u(h, h) + u(h, -h) + u(-h, h) + u(-h, -h);
            const double lap = (4.0 * side + diag - 20.0 * u(0, 0)) / (6.0 * h * h);
            worst = std::max(worst, std::abs(lap));
            scale = std::max(scale, std::abs(u(0, 0)));
        }
    return worst / std::max(scale, 1.0);
}

/// Polar product rule on the annulus r_in <= |x| <= r_out: Gauss-Legendre
/// in r, uniform in angle.
struct DiscQuadrature {
    std::vector<double> x1, x2, w;

    static DiscQuadrature make(std::size_t n_r = 40, std::size_t n_theta = 80, double r_out = 1.0, double r_in = 0.0)
    {
        if (!(r_out > r_in) || r_in < 0.0)
            throw ConfigError("disc quadrature: need 0 <= r_in < r_out");
        if (n_r == 0 || n_theta == 0)
            throw ConfigError("disc quadrature: empty rule");
        DiscQuadrature q;
        const Rule rr = gauss_legendre(n_r, r_in, r_out);
        const double dth = 2.0 * std::numbers::pi / static_cast<double>(n_theta);
        for (std::size_t i = 0; i < n_r; ++i)
            for (std::size_t k = 0; k < n_theta; ++k) {
                const double th = dth * static_cast<double>(k);
                q.x1.push_back(rr.nodes[i] * std::cos(th));
                q.x2.push_back(rr.nodes[i] * std::sin(th));
                q.w.push_back(rr.weights[i] * rr.nodes[i] * dth);
            }
        return q;
    }

    std::size_t size() const { return w.size(); }

    template <class F>
    std::vector<double> sample(F&& f) const
    {
        std::vector<double> v(size());
        for (std::size_t i = 0; i < size(); ++i)
            v[i] = f(x1[i], x2[i]);
        return v;
    }
};

struct ProductFit {
    int degree = 0;
    std::size_t dictionary_size = 0;
    std::size_t effective_rank = 0;
    bool truncated_svd = false;
    double residual = 0.0; ///< relative L2(D) residual
};

namespace detail {
/// Relative rank threshold for the truncated-SVD fallback.
inline constexpr double svd_cutoff = 1e-12;
} // namespace detail

/// Least-squares fit of f by span{h_p h_q : p <= q} over the basis of
/// each degree N. Full-rank dictionaries are solved through lightly
/// regularized normal equations; rank-deficient ones (the usual case,
/// since e.g. x1 x1 - x2 x2 = Re z^2 * 1) by truncated SVD.
inline std::vector<ProductFit> approximate_by_products(const std::vector<double>& f, const DiscQuadrature& quad,
                                                       const std::vector<int>& degrees)
{
    if (f.size() != quad.size())
        throw ConfigError("approximate_by_products: f must be sampled at the quadrature nodes");
    const auto m = static_cast<Eigen::Index>(quad.size());
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i)
        b(i) = std::sqrt(quad.w[static_cast<std::size_t>(i)]) * f[static_cast<std::size_t>(i)];
    const double bnorm = b.norm();
    if (!(bnorm > 0.0))
        throw ConfigError("approximate_by_products: f vanishes on D");

    std::vector<ProductFit> out;
    for (int N : degrees) {
        const HarmonicBasis2D basis(N);
        const std::size_t nb = basis.size();
        const auto cols = static_cast<Eigen::Index>(nb * (nb + 1) / 2);
        Eigen::MatrixXd A(m, cols);
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const auto h = basis.evaluate(quad.x1[idx], quad.x2[idx]);
            const double sw = std::sqrt(quad.w[idx]);
            Eigen::Index c = 0;
            for (std::size_t p = 0; p < nb; ++p)
                for (std::size_t q = p; q < nb; ++q)
                    A(i, c++) = sw * h[p] * h[q];
        }
        ProductFit fit;
        fit.degree = N;
        fit.dictionary_size = static_cast<std::size_t>(cols);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
        qr.setThreshold(detail::svd_cutoff);
        Eigen::VectorXd coef;
        if (qr.rank() == cols) {
            Eigen::MatrixXd G = A.transpose() * A;
            const double lambda = 1e-14 * G.trace() / static_cast<double>(cols);
            G.diagonal().array() += lambda;
            coef = G.ldlt().solve(A.transpose() * b);
            fit.effective_rank = static_cast<std::size_t>(cols);
        } else {
            Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
            svd.setThreshold(detail::svd_cutoff);
            coef = svd.solve(b);
            fit.effective_rank = static_cast<std::size_t>(svd.rank());
            fit.truncated_svd = true;
        }
        fit.residual = (A * coef - b).norm() / bnorm;
        out.push_back(fit);
    }
    return out;
}

/// theta = (i sinh t, cosh t); theta . theta = 1 without conjugation.
struct ComplexDirection {
    double t = 0.0;

    explicit ComplexDirection(double t_ = 0.0) : t(t_)
    {
        if (!(t >= 0.0) || !std::isfinite(t))
            throw DomainError("complex direction parameter t must be finite and >= 0");
    }

    std::array<cplx, 2> theta() const { return {cplx(0.0, std::sinh(t)), cplx(std::cosh(t), 0.0)}; }

    cplx self_dot() const
    {
        const auto th = theta();
        return th[0] * th[0] + th[1] * th[1];
    }

    /// psi(x) = exp(i theta . x); |psi| = exp(-x1 sinh t).
    cplx psi(double x1, double x2) const
    {
        const auto th = theta();
        return std::exp(cplx(0.0, 1.0) * (th[0] * x1 + th[1] * x2));
    }
};

struct LeastSquaresSolution {
    double target = 0.0;
    bool feasible = false;
    std::size_t rank = 0;     ///< singular values kept
    double residual = 0.0;    ///< relative L2(D), recomputed from nu
    double coeff_norm = 0.0;  ///< (sum |nu_m|^2 dalpha)^{1/2}
    std::vector<cplx> coefficients;
};

/// Minimum-norm nu with || psi - sum nu_m e^{i alpha_m . x} dalpha || <= eps
/// relative in L2(D), alpha_m = 2 pi m / n_alpha. The truncated-SVD cutoff
/// is swept from the top and the first rank meeting eps is taken; the
/// residual is then recomputed directly from nu. Targets that no rank
/// meets are returned with feasible = false.
inline std::vector<LeastSquaresSolution> herglotz_match(const ComplexDirection& dir, std::size_t n_alpha,
                                                        const std::vector<double>& targets,
                                                        const DiscQuadrature& quad)
{
    if (n_alpha == 0)
        throw ConfigError("herglotz_match: need at least one direction");
    const auto m = static_cast<Eigen::Index>(quad.size());
    const auto na = static_cast<Eigen::Index>(n_alpha);
    const double da = 2.0 * std::numbers::pi / static_cast<double>(n_alpha);
    Eigen::MatrixXcd A(m, na);
    Eigen::VectorXcd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double sw = std::sqrt(quad.w[idx]);
        for (Eigen::Index k = 0; k < na; ++k) {
            const double al = da * static_cast<double>(k);
            const double ph = quad.x1[idx] * std::cos(al) + quad.x2[idx] * std::sin(al);
            A(i, k) = sw * da * cplx(std::cos(ph), std::sin(ph));
        }
        b(i) = sw * dir.psi(quad.x1[idx], quad.x2[idx]);
    }
    const double bnorm = b.norm();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const Eigen::VectorXcd c = svd.matrixU().adjoint() * b;

    std::vector<LeastSquaresSolution> out;
    for (double eps : targets) {
        LeastSquaresSolution sol;
        sol.target = eps;
        Eigen::VectorXcd nu = Eigen::VectorXcd::Zero(na);
        for (Eigen::Index k = 0; k < s.size(); ++k) {
            if (!(s(k) > 0.0))
                break;
            nu += svd.matrixV().col(k) * (c(k) / s(k));
            const double res = (A * nu - b).norm() / bnorm;
            if (res <= eps) {
                sol.feasible = true;
                sol.rank = static_cast<std::size_t>(k + 1);
                break;
            }
        }
        if (sol.feasible) {
            sol.coefficients.assign(nu.data(), nu.data() + nu.size());
            sol.coeff_norm = std::sqrt(nu.squaredNorm() * da);
            // independent re-check straight from the plane-wave sum
            double num = 0.0;
            double den = 0.0;
            for (std::size_t i = 0; i < quad.size(); ++i) {
                cplx sum = 0.0;
                for (std::size_t k = 0; k < n_alpha; ++k) {
                    const double al = da * static_cast<double>(k);
                    const double ph = quad.x1[i] * std::cos(al) + quad.x2[i] * std::sin(al);
                    sum += sol.coefficients[k] * cplx(std::cos(ph), std::sin(ph)) * da;
                }
                const cplx target = dir.psi(quad.x1[i], quad.x2[i]);
                num += quad.w[i] * std::norm(target - sum);
                den += quad.w[i] * std::norm(target);
            }
            sol.residual = std::sqrt(num / den);
        }
        out.push_back(std::move(sol));
    }
    return out;
}

struct BlowupRow {
    double t = 0.0;
    double target = 0.0;
    bool feasible = false;
    double residual = 0.0;
    double coeff_norm = 0.0;
    std::size_t rank = 0;
};

inline std::vector<BlowupRow> blowup_study(const std::vector<double>& t_values, const std::vector<double>& targets,
                                           std::size_t n_alpha, const DiscQuadrature& quad)
{
    std::vector<BlowupRow> rows;
    for (double t : t_values) {
        const auto sols = herglotz_match(ComplexDirection(t), n_alpha, targets, quad);
        for (const auto& s : sols)
            rows.push_back({t, s.target, s.feasible, s.residual, s.coeff_norm, s.rank});
    }
    return rows;
}

} // namespace illposed::propc

#endif // ILLPOSED_PROPC_HPP
