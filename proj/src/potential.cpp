#include "toruswell/potential.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

namespace toruswell::wells {

namespace {

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double smooth_step_derivative(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double h = 1e-7;
    const double lo = std::max(t - h, 0.0);
    const double hi = std::min(t + h, 1.0);
    return (smooth_step(hi) - smooth_step(lo)) / (hi - lo);
}

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

std::vector<double> random_direction(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> d(static_cast<std::size_t>(dim));
    double n = 0.0;
    do {
        for (auto& v : d) v = gauss(rng);
        n = norm(d);
    } while (n < 1e-8);
    for (auto& v : d) v /= n;
    return d;
}

}  // namespace

const char* to_string(PotentialKind k) {
    switch (k) {
        case PotentialKind::quadratic_form: return "quadratic_form";
        case PotentialKind::homogeneous_extension: return "homogeneous_extension";
        case PotentialKind::closed_form: return "closed_form";
    }
    return "?";
}

Potential quadratic_potential(std::vector<double> a_rowmajor, int dimension) {
    if (dimension < 1) throw std::invalid_argument("quadratic_potential: dimension >= 1");
    if (a_rowmajor.size() != static_cast<std::size_t>(dimension) * dimension)
        throw std::invalid_argument("quadratic_potential: matrix size mismatch");

    Potential V;
    V.dimension = dimension;
    V.degree = 2.0;
    V.kind = PotentialKind::quadratic_form;
    V.description = "x^T A x / 2";
    V.quadratic = a_rowmajor;
    auto A = std::make_shared<std::vector<double>>(std::move(a_rowmajor));
    const int m = dimension;
    V.value = [A, m](std::span<const double> x) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < m; ++j) row += (*A)[static_cast<std::size_t>(i) * m + j] * x[j];
            s += x[i] * row;
        }
        return 0.5 * s;
    };
    V.gradient = [A, m](std::span<const double> x) {
        std::vector<double> g(static_cast<std::size_t>(m), 0.0);
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < m; ++j) row += (*A)[static_cast<std::size_t>(i) * m + j] * x[j];
            g[static_cast<std::size_t>(i)] = row;
        }
        return g;
    };
    return V;
}

Potential closed_form_potential(int dimension,
                                std::function<double(std::span<const double>)> value,
                                std::function<std::vector<double>(std::span<const double>)> gradient,
                                std::string description, std::optional<double> degree) {
    Potential V;
    V.dimension = dimension;
    V.degree = degree;
    V.kind = PotentialKind::closed_form;
    V.description = std::move(description);
    V.value = std::move(value);
    V.gradient = std::move(gradient);
    return V;
}

Potential homogeneous_extension(
    int dimension, double k, std::function<double(std::span<const double>)> sphere_value,
    std::function<std::vector<double>(std::span<const double>)> sphere_gradient,
    double epsilon) {
    if (k == 0.0) throw std::invalid_argument("homogeneous_extension: k must be nonzero");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("homogeneous_extension: epsilon must lie in (0,1)");
    if (dimension < 1) throw std::invalid_argument("homogeneous_extension: dimension >= 1");

    const int m = dimension;

    // Tangential gradient of V1 at a unit vector u. The supplied gradient is
    // projected onto the tangent space; the fallback differentiates the
    // degree-0 extension x -> V1(x/|x|), whose gradient is tangential.
    auto tangential = [sphere_value, sphere_gradient, m](std::span<const double> u) {
        std::vector<double> g(static_cast<std::size_t>(m), 0.0);
        if (sphere_gradient) {
            g = sphere_gradient(u);
        } else {
            const double h = 1e-6;
            std::vector<double> xp(u.begin(), u.end()), xm(u.begin(), u.end());
            for (int i = 0; i < m; ++i) {
                xp[static_cast<std::size_t>(i)] += h;
                xm[static_cast<std::size_t>(i)] -= h;
                const double np = norm(xp), nm = norm(xm);
                std::vector<double> up(xp), um(xm);
                for (auto& v : up) v /= np;
                for (auto& v : um) v /= nm;
                g[static_cast<std::size_t>(i)] =
                    (sphere_value(up) - sphere_value(um)) / (2.0 * h);
                xp[static_cast<std::size_t>(i)] = u[i];
                xm[static_cast<std::size_t>(i)] = u[i];
            }
        }
        double radial = 0.0;
        for (int i = 0; i < m; ++i) radial += g[static_cast<std::size_t>(i)] * u[i];
        for (int i = 0; i < m; ++i) g[static_cast<std::size_t>(i)] -= radial * u[i];
        return g;
    };

    const double eps = epsilon;
    // Blend profile in |x|: 0 below eps/2, 1 above eps.
    auto chi = [eps](double r) { return smooth_step((r - 0.5 * eps) / (0.5 * eps)); };
    auto chi_prime = [eps](double r) {
        return smooth_step_derivative((r - 0.5 * eps) / (0.5 * eps)) / (0.5 * eps);
    };

    Potential V;
    V.dimension = m;
    V.degree = k;
    V.epsilon = epsilon;
    V.kind = PotentialKind::homogeneous_extension;
    V.description = "|x|^k V1(x/|x|), blended to 0 inside |x| < eps";

    V.value = [sphere_value, chi, k, m](std::span<const double> x) {
        const double r = norm(x);
        if (r == 0.0) return 0.0;
        std::vector<double> u(x.begin(), x.end());
        for (auto& v : u) v /= r;
        const double hom = std::pow(r, k) * sphere_value(u);
        const double c = chi(r);
        return c == 0.0 ? 0.0 : c * hom;
    };
    V.gradient = [sphere_value, tangential, chi, chi_prime, k, m](std::span<const double> x) {
        const double r = norm(x);
        std::vector<double> g(static_cast<std::size_t>(m), 0.0);
        if (r == 0.0) return g;
        std::vector<double> u(x.begin(), x.end());
        for (auto& v : u) v /= r;
        const double c = chi(r);
        if (c == 0.0) return g;
        const double v1 = sphere_value(u);
        const auto tg = tangential(u);
        const double rk1 = std::pow(r, k - 1.0);
        // grad(|x|^k V1(u)) = k |x|^{k-1} V1 u + |x|^{k-1} grad_S V1
        for (int i = 0; i < m; ++i)
            g[static_cast<std::size_t>(i)] =
                c * rk1 * (k * v1 * u[static_cast<std::size_t>(i)] +
                           tg[static_cast<std::size_t>(i)]);
        const double cp = chi_prime(r);
        if (cp != 0.0) {
            const double hom = std::pow(r, k) * v1;
            for (int i = 0; i < m; ++i)
                g[static_cast<std::size_t>(i)] += cp * hom * u[static_cast<std::size_t>(i)];
        }
        return g;
    };
    return V;
}

double euler_residual(const Potential& V, double k, int direction_samples,
                      std::pair<double, double> radius_range, unsigned seed) {
    if (direction_samples < 1)
        throw std::invalid_argument("euler_residual: need at least one sample");
    if (!(radius_range.first > 0.0) || radius_range.second < radius_range.first)
        throw std::invalid_argument("euler_residual: bad radius range");
    if (V.kind == PotentialKind::homogeneous_extension && radius_range.first < V.epsilon)
        throw std::invalid_argument(
            "euler_residual: radius range must start at or above the homogeneity "
            "radius epsilon");

    std::mt19937_64 rng(seed);
    constexpr int kRadii = 8;
    const double lo = std::log(radius_range.first);
    const double hi = std::log(radius_range.second);

    double worst = 0.0;
    std::vector<double> x(static_cast<std::size_t>(V.dimension));
    for (int s = 0; s < direction_samples; ++s) {
        const auto dir = random_direction(rng, V.dimension);
        for (int j = 0; j < kRadii; ++j) {
            const double t = kRadii == 1 ? 0.0 : static_cast<double>(j) / (kRadii - 1);
            const double r = std::exp(lo + (hi - lo) * t);
            for (int i = 0; i < V.dimension; ++i)
                x[static_cast<std::size_t>(i)] = r * dir[static_cast<std::size_t>(i)];
            const double v = V.value(x);
            const auto g = V.gradient(x);
            double euler = 0.0;
            for (int i = 0; i < V.dimension; ++i)
                euler += g[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            worst = std::max(worst, std::abs(euler - k * v) / (1.0 + std::abs(v)));
        }
    }
    return worst;
}

double gradient_consistency(const Potential& V, int samples, double radius, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rad(0.5 * radius, radius);
    double worst = 0.0;
    std::vector<double> x(static_cast<std::size_t>(V.dimension));
    for (int s = 0; s < samples; ++s) {
        const auto dir = random_direction(rng, V.dimension);
        const double r = rad(rng);
        for (int i = 0; i < V.dimension; ++i)
            x[static_cast<std::size_t>(i)] = r * dir[static_cast<std::size_t>(i)];
        const auto g = V.gradient(x);
        const double h = 1e-5 * std::max(1.0, r);
        for (int i = 0; i < V.dimension; ++i) {
            std::vector<double> xp(x), xm(x);
            xp[static_cast<std::size_t>(i)] += h;
            xm[static_cast<std::size_t>(i)] -= h;
            const double fd = (V.value(xp) - V.value(xm)) / (2.0 * h);
            const double denom = std::max({1.0, std::abs(fd), std::abs(g[static_cast<std::size_t>(i)])});
            worst = std::max(worst, std::abs(fd - g[static_cast<std::size_t>(i)]) / denom);
        }
    }
    return worst;
}

}  // namespace toruswell::wells
