#include "toruswell/embeddings.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace toruswell::embeddings {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double vec_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

ExplicitEmbedding kronecker_embedding(double alpha, double c1, double c2) {
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw std::invalid_argument("kronecker_embedding: c1, c2 must be > 0");

    ExplicitEmbedding emb;
    emb.source = "T^2 with Y = d/dx + alpha d/dy, alpha = " + std::to_string(alpha);
    emb.source_dim = 2;
    emb.ambient_dim = 4;
    emb.scale = std::sqrt(c1 * c1 + c2 * c2);

    emb.Q = [c1, c2](std::span<const double> a) {
        return std::vector<double>{c1 * std::cos(kTwoPi * a[0]), c1 * std::sin(kTwoPi * a[0]),
                                   c2 * std::cos(kTwoPi * a[1]), c2 * std::sin(kTwoPi * a[1])};
    };
    emb.P = [alpha, c1, c2](std::span<const double> a) {
        return std::vector<double>{-kTwoPi * c1 * std::sin(kTwoPi * a[0]),
                                   kTwoPi * c1 * std::cos(kTwoPi * a[0]),
                                   -kTwoPi * alpha * c2 * std::sin(kTwoPi * a[1]),
                                   kTwoPi * alpha * c2 * std::cos(kTwoPi * a[1])};
    };
    emb.YP = [alpha, c1, c2](std::span<const double> a) {
        const double w2 = kTwoPi * kTwoPi;
        return std::vector<double>{-w2 * c1 * std::cos(kTwoPi * a[0]),
                                   -w2 * c1 * std::sin(kTwoPi * a[0]),
                                   -w2 * alpha * alpha * c2 * std::cos(kTwoPi * a[1]),
                                   -w2 * alpha * alpha * c2 * std::sin(kTwoPi * a[1])};
    };
    emb.source_flow = [alpha](std::span<const double> a, double t) {
        return std::vector<double>{a[0] + t, a[1] + alpha * t};
    };

    const double w2 = kTwoPi * kTwoPi;
    std::vector<double> A(16, 0.0);
    A[0 * 4 + 0] = w2;
    A[1 * 4 + 1] = w2;
    A[2 * 4 + 2] = w2 * alpha * alpha;
    A[3 * 4 + 3] = w2 * alpha * alpha;
    emb.potential = wells::quadratic_potential(std::move(A), 4);
    emb.potential.description = "2 pi^2 (|z1|^2 + alpha^2 |z2|^2)";
    return emb;
}

ExplicitEmbedding circle_product_embedding(int n) {
    if (n < 1) throw std::invalid_argument("circle_product_embedding: n must be >= 1");

    ExplicitEmbedding emb;
    emb.source = "(S^1)^" + std::to_string(n) + " with Y(a) = i a";
    emb.source_dim = n;
    emb.ambient_dim = 2 * n;
    emb.scale = std::sqrt(static_cast<double>(n));

    // Source points are angle tuples; a_j = e^{i phi_j} interleaved as
    // (re, im) pairs.
    emb.Q = [n](std::span<const double> phi) {
        std::vector<double> q(static_cast<std::size_t>(2 * n));
        for (int j = 0; j < n; ++j) {
            q[static_cast<std::size_t>(2 * j)] = std::cos(phi[static_cast<std::size_t>(j)]);
            q[static_cast<std::size_t>(2 * j) + 1] = std::sin(phi[static_cast<std::size_t>(j)]);
        }
        return q;
    };
    emb.P = [n](std::span<const double> phi) {
        std::vector<double> p(static_cast<std::size_t>(2 * n));
        for (int j = 0; j < n; ++j) {
            p[static_cast<std::size_t>(2 * j)] = -std::sin(phi[static_cast<std::size_t>(j)]);
            p[static_cast<std::size_t>(2 * j) + 1] = std::cos(phi[static_cast<std::size_t>(j)]);
        }
        return p;
    };
    emb.YP = [n, emb_q = emb.Q](std::span<const double> phi) {
        auto q = emb_q(phi);
        for (auto& v : q) v = -v;  // YP = i(ia) = -a = -Q
        return q;
    };
    emb.source_flow = [n](std::span<const double> phi, double t) {
        std::vector<double> out(phi.begin(), phi.end());
        for (auto& v : out) v += t;
        return out;
    };

    std::vector<double> A(static_cast<std::size_t>(2 * n) * (2 * n), 0.0);
    for (int j = 0; j < 2 * n; ++j) A[static_cast<std::size_t>(j) * 2 * n + j] = 1.0;
    emb.potential = wells::quadratic_potential(std::move(A), 2 * n);
    emb.potential.description = "|x|^2 / 2";
    return emb;
}

double verify_conjugacy(const ExplicitEmbedding& emb, std::span<const double> start,
                        double t_max, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("verify_conjugacy: dt must be > 0");
    if (t_max < 0.0) throw std::invalid_argument("verify_conjugacy: t_max must be >= 0");

    const long steps = std::lround(t_max / dt);
    wells::PhaseState s0{emb.Q(start), emb.P(start)};
    if (steps == 0) return 0.0;

    const auto traj = wells::integrate(emb.potential, s0, dt, steps);
    if (traj.status != wells::TrajectoryStatus::completed)
        throw std::runtime_error("verify_conjugacy: well trajectory stopped early (" +
                                 std::string(to_string(traj.status)) + ")");

    double dev = 0.0;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const double t = static_cast<double>(i) * dt;
        const auto src = emb.source_flow(start, t);
        const auto q_exact = emb.Q(src);
        const auto p_exact = emb.P(src);
        double s = 0.0;
        for (std::size_t j = 0; j < q_exact.size(); ++j) {
            const double dq = traj.states[i].q[j] - q_exact[j];
            const double dp = traj.states[i].p[j] - p_exact[j];
            s += dq * dq + dp * dp;
        }
        dev = std::max(dev, std::sqrt(s));
    }
    return dev;
}

EmbeddingInvariants check_embedding_invariants(const ExplicitEmbedding& emb, int grid_n) {
    EmbeddingInvariants inv;
    inv.q_min_norm = std::numeric_limits<double>::infinity();

    // Sample the source: full grid for 1- and 2-dimensional sources,
    // diagonal slices otherwise.
    std::vector<std::vector<double>> points;
    const double period = emb.source.rfind("T^2", 0) == 0 ? 1.0 : kTwoPi;
    if (emb.source_dim == 1) {
        for (int i = 0; i < grid_n * grid_n; ++i)
            points.push_back({period * i / (grid_n * grid_n)});
    } else if (emb.source_dim == 2) {
        for (int i = 0; i < grid_n; ++i)
            for (int j = 0; j < grid_n; ++j)
                points.push_back({period * i / grid_n, period * j / grid_n});
    } else {
        for (int i = 0; i < grid_n * grid_n; ++i) {
            std::vector<double> a(static_cast<std::size_t>(emb.source_dim));
            for (int d = 0; d < emb.source_dim; ++d)
                a[static_cast<std::size_t>(d)] = period * ((d + 1.0) * i) / (grid_n * grid_n);
            points.push_back(std::move(a));
        }
    }

    const double h = 1e-6;
    for (const auto& a : points) {
        const auto q = emb.Q(a);
        const auto p = emb.P(a);
        const auto yp = emb.YP(a);
        const auto grad = emb.potential.gradient(q);

        inv.q_min_norm = std::min(inv.q_min_norm, vec_norm(q));

        const auto fwd = emb.Q(emb.source_flow(a, h));
        const auto bwd = emb.Q(emb.source_flow(a, -h));
        for (std::size_t j = 0; j < q.size(); ++j) {
            const double fd = (fwd[j] - bwd[j]) / (2.0 * h);
            inv.p_equals_yq = std::max(inv.p_equals_yq, std::abs(fd - p[j]));
            inv.yp_plus_grad_v = std::max(inv.yp_plus_grad_v, std::abs(yp[j] + grad[j]));
        }
    }

    inv.euler_degree2 = wells::euler_residual(emb.potential, 2.0, 32, {0.5, 4.0});
    return inv;
}

std::vector<ScalarField> kronecker_q_fields(double alpha, double c1, double c2) {
    (void)alpha;
    // cos and sin of each circle factor: coefficients at modes (+-1, 0)
    // and (0, +-1).
    std::vector<ScalarField> q;
    q.push_back(ScalarField::harmonic(1, 0, {0.5 * c1, 0.0}));   // c1 cos(2 pi x)
    q.push_back(ScalarField::harmonic(1, 0, {0.0, -0.5 * c1}));  // c1 sin(2 pi x)
    q.push_back(ScalarField::harmonic(0, 1, {0.5 * c2, 0.0}));   // c2 cos(2 pi y)
    q.push_back(ScalarField::harmonic(0, 1, {0.0, -0.5 * c2}));  // c2 sin(2 pi y)
    return q;
}

VectorField kronecker_flow_field(double alpha) {
    return VectorField(ScalarField::constant(1.0), ScalarField::constant(alpha));
}

OneForm induced_one_form(std::span<const ScalarField> Q, const VectorField& Y) {
    ScalarField t1, t2;
    for (const auto& qi : Q) {
        const ScalarField yqi = spectral::directional_derivative(Y, qi);
        t1 += yqi * qi.derivative_x();
        t2 += yqi * qi.derivative_y();
    }
    return OneForm(std::move(t1), std::move(t2));
}

Lemma1Result lemma1_wellcase_check(std::span<const ScalarField> Q, const VectorField& Y,
                                   double k, const VectorField& W, double tol) {
    using spectral::directional_derivative;
    using spectral::exterior_derivative;
    using spectral::pairing;

    Lemma1Result res;

    // <-YYQ, Q>, <-YYQ, dQ/dx>, <-YYQ, dQ/dy>, |Q|^2/2 and theta.
    ScalarField a_dot_q, a_dot_qx, a_dot_qy, q2_half;
    for (const auto& qi : Q) {
        const ScalarField yyqi =
            directional_derivative(Y, directional_derivative(Y, qi));
        a_dot_q -= yyqi * qi;
        a_dot_qx -= yyqi * qi.derivative_x();
        a_dot_qy -= yyqi * qi.derivative_y();
        q2_half += 0.5 * (qi * qi);
    }
    const OneForm theta = induced_one_form(Q, Y);

    // lhs as a 1-form: d<A,Q> - k (<A, dQ/dx> dx + <A, dQ/dy> dy), A = -YYQ.
    const OneForm lhs_form =
        exterior_derivative(a_dot_q) - k * OneForm(a_dot_qx, a_dot_qy);

    // rhs as a 1-form: k L_Y theta + d((1 - k/2)(theta.Y) - YY(|Q|^2/2)).
    const OneForm lie = spectral::lie_derivative(Y, theta);
    const ScalarField inner = (1.0 - k / 2.0) * pairing(theta, Y) -
                              directional_derivative(Y, directional_derivative(Y, q2_half));
    const OneForm rhs_form = k * lie + exterior_derivative(inner);

    res.lhs_residual = spectral::pairing(lhs_form, W).sup_norm();
    res.identity_residual = spectral::sup_norm(lhs_form - rhs_form);

    const auto exact = spectral::exactness_test(lie, tol);
    res.lie_exact = exact.is_exact;
    if (exact.is_exact && exact.primitive.has_value()) {
        const ScalarField via_l = k * (*exact.primitive) + inner;
        res.rhs_residual = directional_derivative(W, via_l).sup_norm();
    }
    return res;
}

}  // namespace toruswell::embeddings
