// search_adapted: the torus example's linear system over Fourier
// coefficients. Equality constraints (closedness of L_Y theta, vanishing
// periods, and optionally L_Y theta = d(YY r)) are assembled column by
// column from single-mode basis fields and solved as a minimum-norm least
// squares problem; positivity of the pairing is certified on a grid
// afterwards. Feasibility at a fixed truncation is a genuine witness;
// residual failure is reported as inconclusive, never infeasible. The only
// infeasibility certificate is the product-flow obstruction, which is
// truncation independent.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "toruswell/adapted.hpp"

namespace toruswell::adapted {

namespace {

using spectral::exterior_derivative;
using spectral::lie_derivative;
using spectral::pairing;

// Real parametrization of a Hermitian-symmetric table at max_mode M:
// one parameter for the mean, then (re, im) for every mode in the upper
// half {(m,n): m > 0 or (m == 0 and n > 0)}.
struct ParamMap {
    int max_mode;
    struct Entry {
        int m, n;
        bool imag;
    };
    std::vector<Entry> entries;

    explicit ParamMap(int M) : max_mode(M) {
        entries.push_back({0, 0, false});
        for (int m = 0; m <= M; ++m)
            for (int n = -M; n <= M; ++n) {
                if (m == 0 && n <= 0) continue;
                entries.push_back({m, n, false});
                entries.push_back({m, n, true});
            }
    }

    int size() const { return static_cast<int>(entries.size()); }

    ScalarField basis(int j) const {
        const Entry& e = entries[static_cast<std::size_t>(j)];
        ScalarField g(max_mode);
        g.set_coeff(e.m, e.n, e.imag ? std::complex<double>{0.0, 1.0}
                                     : std::complex<double>{1.0, 0.0});
        return g;
    }

    ScalarField assemble(const Eigen::VectorXd& u, int offset) const {
        ScalarField g(max_mode);
        for (int j = 0; j < size(); ++j) {
            const Entry& e = entries[static_cast<std::size_t>(j)];
            const double v = u(offset + j);
            if (v == 0.0) continue;
            const auto cur = g.coeff(e.m, e.n);
            g.set_coeff(e.m, e.n,
                        cur + (e.imag ? std::complex<double>{0.0, v}
                                      : std::complex<double>{v, 0.0}));
        }
        return g;
    }
};

// Row bookkeeping: real and imaginary parts of output coefficients over the
// upper half plus the mean, for a fixed output mode range.
struct RowMap {
    int max_mode;
    int rows_per_field;

    explicit RowMap(int M) : max_mode(M) {
        rows_per_field = 1;  // (0,0) real part
        for (int m = 0; m <= M; ++m)
            for (int n = -M; n <= M; ++n) {
                if (m == 0 && n <= 0) continue;
                rows_per_field += 2;
            }
    }

    // Writes the field's coefficients into column `col` starting at `row0`.
    void scatter(const ScalarField& g, Eigen::MatrixXd& A, int row0, int col) const {
        int r = row0;
        A(r++, col) = g.coeff(0, 0).real();
        for (int m = 0; m <= max_mode; ++m)
            for (int n = -max_mode; n <= max_mode; ++n) {
                if (m == 0 && n <= 0) continue;
                const auto c = g.coeff(m, n);
                A(r++, col) = c.real();
                A(r++, col) = c.imag();
            }
    }
};

InfeasibilityCertificate make_torus_obstruction(const ScalarField& f) {
    const ScalarField fprime = f.derivative_y();
    const int grid = std::max(64, 4 * (fprime.max_mode() + 1));
    double best = 0.0;
    double y_at = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double y = static_cast<double>(j) / grid;
        const double v = std::abs(fprime.evaluate(0.0, y));
        if (v > best) {
            best = v;
            y_at = y;
        }
    }
    InfeasibilityCertificate cert;
    cert.kind = InfeasibilityCertificate::Kind::torus_obstruction;
    cert.y_witness = y_at;
    cert.lower_bound = best;
    cert.explanation =
        "integrating the dy-component of L_Y theta - d(YY r) over the x-cycle "
        "forces f'(y) * integral_x theta_1 dx = 0 for every y; a strongly "
        "adapted theta has theta_1 >= delta > 0, so at y = " +
        std::to_string(y_at) + " the equation fails by at least delta * " +
        std::to_string(best) + "; no (theta, r) exists at any truncation";
    return cert;
}

}  // namespace

SearchOutcome search_adapted(const VectorField& X, int max_mode, SearchConstraint constraint,
                             int grid_n) {
    if (max_mode < 1) throw std::invalid_argument("search_adapted: max_mode must be >= 1");

    const bool product = is_product_flow(X);
    if (constraint == SearchConstraint::homwell2_joint) {
        if (!product)
            return Inconclusive{
                "homwell2_joint has a certificate theory for product flows f(y) d/dx "
                "only; no verdict for general flows",
                0.0};
        const double fprime_sup = X.x_comp.derivative_y().sup_norm();
        if (fprime_sup > spectral::kDefaultTol)
            return make_torus_obstruction(X.x_comp);
    }

    const int MX = std::max(X.x_comp.max_mode(), X.y_comp.max_mode());
    const ParamMap theta_params(max_mode);
    const int r_max_mode = max_mode;
    const bool joint = constraint == SearchConstraint::homwell2_joint;
    const ParamMap r_params(joint ? r_max_mode : 0);

    const int cols = joint ? 2 * theta_params.size() + r_params.size()
                           : 2 * theta_params.size();

    // Output range: L_Y theta reaches max_mode + MX; d(YY r) reaches
    // r_max_mode + 2 MX. Derivatives do not grow the range.
    const int M_out = joint ? std::max(max_mode + MX, r_max_mode + 2 * MX)
                            : max_mode + MX;
    const RowMap out_rows(M_out);

    int rows;
    if (joint) {
        rows = 2 * out_rows.rows_per_field + 1;  // both components + gauge
    } else {
        rows = out_rows.rows_per_field + 2 + 1;  // d(L) density + periods + gauge
    }

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);

    const auto fill_column = [&](int col, const OneForm& theta_basis,
                                 const ScalarField* r_basis) {
        OneForm constraint_form = lie_derivative(X, theta_basis);
        if (r_basis != nullptr) {
            const ScalarField yyr = spectral::directional_derivative(
                X, spectral::directional_derivative(X, *r_basis));
            constraint_form -= exterior_derivative(yyr);
        }
        if (joint) {
            out_rows.scatter(constraint_form.dx_comp.padded(M_out), A, 0, col);
            out_rows.scatter(constraint_form.dy_comp.padded(M_out), A,
                             out_rows.rows_per_field, col);
        } else {
            const spectral::TwoForm closed = exterior_derivative(constraint_form);
            out_rows.scatter(closed.density.padded(M_out), A, 0, col);
            A(out_rows.rows_per_field, col) = constraint_form.dx_comp.coeff(0, 0).real();
            A(out_rows.rows_per_field + 1, col) = constraint_form.dy_comp.coeff(0, 0).real();
        }
    };

    const ScalarField zero(max_mode);
    for (int j = 0; j < theta_params.size(); ++j) {
        fill_column(j, OneForm(theta_params.basis(j), zero), nullptr);
        fill_column(theta_params.size() + j, OneForm(zero, theta_params.basis(j)), nullptr);
    }
    if (joint) {
        const OneForm zero_form(zero, zero);
        for (int j = 0; j < r_params.size(); ++j) {
            const ScalarField rb = r_params.basis(j);
            fill_column(2 * theta_params.size() + j, zero_form, &rb);
        }
    }

    // Gauge: integral integral theta_1 = sign of the flow's mean x-component,
    // so the positive cone is reachable whichever sign f carries.
    const double gauge = X.x_comp.mean() >= 0.0 ? 1.0 : -1.0;
    A(rows - 1, 0) = 1.0;  // theta_1 mean parameter is column 0
    b(rows - 1) = gauge;

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    const Eigen::VectorXd u = cod.solve(b);
    const double equality_residual = (A * u - b).lpNorm<Eigen::Infinity>();

    OneForm theta(theta_params.assemble(u, 0), theta_params.assemble(u, theta_params.size()));
    std::optional<ScalarField> r;
    if (joint) r = r_params.assemble(u, 2 * theta_params.size());

    if (equality_residual > 1e-8)
        return Inconclusive{
            "equality residual above 1e-8 at this truncation; a finer max_mode "
            "may still admit a witness",
            equality_residual};

    const ScalarField pair = pairing(theta, X);
    if (grid_n == 0) grid_n = std::max(8, 4 * (pair.max_mode() + 1));
    const double pairing_min = pair.min_on_grid(grid_n);
    if (pairing_min <= 0.0)
        return Inconclusive{
            "equalities satisfied but the least-squares representative is not "
            "positive on the grid; the cone may still contain a witness",
            equality_residual};

    SearchWitness w;
    w.theta = std::move(theta);
    w.r = std::move(r);
    w.equality_residual = equality_residual;
    w.pairing_min = pairing_min;
    return w;
}

}  // namespace toruswell::adapted
