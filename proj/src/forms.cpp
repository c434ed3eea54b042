#include "toruswell/forms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace toruswell::spectral {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void promote(ScalarField& a, ScalarField& b) {
    const int M = std::max(a.max_mode(), b.max_mode());
    if (a.max_mode() < M) a = a.padded(M);
    if (b.max_mode() < M) b = b.padded(M);
}
}  // namespace

OneForm::OneForm(ScalarField a, ScalarField b) : dx_comp(std::move(a)), dy_comp(std::move(b)) {
    promote(dx_comp, dy_comp);
}

OneForm& OneForm::operator+=(const OneForm& rhs) {
    dx_comp += rhs.dx_comp;
    dy_comp += rhs.dy_comp;
    promote(dx_comp, dy_comp);
    return *this;
}

OneForm& OneForm::operator-=(const OneForm& rhs) {
    dx_comp -= rhs.dx_comp;
    dy_comp -= rhs.dy_comp;
    promote(dx_comp, dy_comp);
    return *this;
}

OneForm& OneForm::operator*=(double s) {
    dx_comp *= s;
    dy_comp *= s;
    return *this;
}

VectorField::VectorField(ScalarField a, ScalarField b)
    : x_comp(std::move(a)), y_comp(std::move(b)) {
    promote(x_comp, y_comp);
}

VectorField product_flow(const ScalarField& f_of_y) {
    if (!f_of_y.is_y_only())
        throw std::invalid_argument("product_flow: f must depend on y only");
    return VectorField(f_of_y, ScalarField(f_of_y.max_mode()));
}

bool is_product_flow(const VectorField& X, double tol) {
    return X.y_comp.sup_norm() <= tol && X.x_comp.is_y_only(tol);
}

OneForm exterior_derivative(const ScalarField& g) {
    return OneForm(g.derivative_x(), g.derivative_y());
}

TwoForm exterior_derivative(const OneForm& theta) {
    return TwoForm(theta.dy_comp.derivative_x() - theta.dx_comp.derivative_y());
}

ScalarField pairing(const OneForm& theta, const VectorField& X) {
    return theta.dx_comp * X.x_comp + theta.dy_comp * X.y_comp;
}

OneForm interior_product(const VectorField& X, const TwoForm& w) {
    return OneForm(-(w.density * X.y_comp), w.density * X.x_comp);
}

ScalarField directional_derivative(const VectorField& X, const ScalarField& g) {
    return X.x_comp * g.derivative_x() + X.y_comp * g.derivative_y();
}

OneForm lie_derivative(const VectorField& X, const OneForm& theta) {
    return interior_product(X, exterior_derivative(theta)) +
           exterior_derivative(pairing(theta, X));
}

ExactnessResult exactness_test(const OneForm& theta, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("exactness_test: tol must be > 0");
    ExactnessResult res;
    res.closedness_residual = sup_norm(exterior_derivative(theta));
    res.period_x = std::abs(theta.dx_comp.coeff(0, 0));
    res.period_y = std::abs(theta.dy_comp.coeff(0, 0));
    res.is_exact = res.closedness_residual <= tol && res.period_x <= tol && res.period_y <= tol;
    if (!res.is_exact) return res;

    const int M = std::max(theta.dx_comp.max_mode(), theta.dy_comp.max_mode());
    ScalarField L(M);
    for (int m = -M; m <= M; ++m)
        for (int n = -M; n <= M; ++n) {
            if (m != 0) {
                L.set_coeff(m, n, theta.dx_comp.coeff(m, n) / std::complex<double>{0.0, kTwoPi * m});
            } else if (n != 0) {
                L.set_coeff(0, n, theta.dy_comp.coeff(0, n) / std::complex<double>{0.0, kTwoPi * n});
            }
        }
    res.primitive = std::move(L);
    return res;
}

double sup_norm(const OneForm& theta, int grid_n) {
    return std::max(theta.dx_comp.sup_norm(grid_n), theta.dy_comp.sup_norm(grid_n));
}

double sup_norm(const TwoForm& w, int grid_n) { return w.density.sup_norm(grid_n); }

}  // namespace toruswell::spectral
