#pragma once

// Real band-limited functions on the 2-torus T^2 = (R/Z)^2, stored as a
// dense table of Fourier coefficients over modes (m, n) with |m|, |n| <= M:
//
//   g(x, y) = sum_{|m|,|n| <= M} ghat(m, n) e^{2 pi i (m x + n y)}
//
// Real-valuedness is kept as the Hermitian symmetry invariant
// ghat(-m, -n) = conj(ghat(m, n)). Products are exact (mode ranges add),
// capped at a configurable maximum with a sticky truncation flag.

#include <complex>
#include <functional>
#include <vector>

namespace toruswell::spectral {

/// Default tolerance for closedness / exactness style checks.
inline constexpr double kDefaultTol = 1e-9;

/// Mode-growth cap for products; exceeding it truncates and flags the result.
inline constexpr int kDefaultModeCap = 256;

class ScalarField {
public:
    /// Zero field with max_mode 0.
    ScalarField() : ScalarField(0) {}

    /// Zero field with the given mode range.
    explicit ScalarField(int max_mode);

    static ScalarField constant(double value);

    /// amp * e^{2 pi i (m x + n y)} plus the conjugate mirror term, so the
    /// result is the real field 2 Re(amp e(mx + ny)) for (m, n) != (0, 0).
    static ScalarField harmonic(int m, int n, std::complex<double> amp);

    int max_mode() const noexcept { return max_mode_; }
    bool truncated() const noexcept { return truncated_; }
    void mark_truncated() noexcept { truncated_ = true; }

    /// Coefficient at (m, n); zero outside the stored range.
    std::complex<double> coeff(int m, int n) const noexcept;

    /// Sets ghat(m, n) = c and ghat(-m, -n) = conj(c). For (0, 0) the
    /// imaginary part is dropped.
    void set_coeff(int m, int n, std::complex<double> c);

    double evaluate(double x, double y) const;
    std::complex<double> evaluate_complex(double x, double y) const;

    /// Samples on the uniform grid x_i = i/n, y_j = j/n; out[j*n + i].
    std::vector<double> evaluate_grid(int grid_n) const;

    /// Mean value = real part of ghat(0, 0).
    double mean() const { return coeff(0, 0).real(); }

    /// Max |g| over a uniform grid (grid_n == 0 picks 4*(max_mode+1),
    /// clamped to at least 8). This is a grid certificate, not a proven
    /// supremum; see lipschitz_bound for the rigorous correction.
    double sup_norm(int grid_n = 0) const;

    /// Minimum over the grid_n x grid_n uniform grid. Requires
    /// grid_n >= 4*(max_mode+1); throws std::invalid_argument otherwise
    /// (aliasing risk).
    double min_on_grid(int grid_n) const;

    double coeff_l1_norm() const;

    /// sum 2*pi*|(m,n)|_2 * |ghat(m,n)|, an upper bound for |grad g| used to
    /// turn grid minima into certified lower bounds.
    double lipschitz_bound() const;

    ScalarField padded(int new_max_mode) const;
    ScalarField truncated_to(int new_max_mode) const;

    ScalarField derivative_x() const;
    ScalarField derivative_y() const;

    /// Keeps only the m == 0 modes: the function y -> integral_x g(x, y) dx.
    ScalarField x_average() const;

    bool is_y_only(double tol = 1e-12) const;
    bool is_constant(double tol = 1e-12) const;
    bool all_finite() const;

    /// max |ghat(-m,-n) - conj(ghat(m,n))| over the table.
    double hermitian_defect() const;

    /// Averages each coefficient with the conjugate of its mirror.
    void symmetrize();

    static ScalarField multiply(const ScalarField& a, const ScalarField& b,
                                int mode_cap = kDefaultModeCap);

    ScalarField& operator+=(const ScalarField& rhs);
    ScalarField& operator-=(const ScalarField& rhs);
    ScalarField& operator*=(double s);

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(ScalarField a, double s) { return a *= s; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }
    friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
        return multiply(a, b);
    }
    friend ScalarField operator-(ScalarField a) { return a *= -1.0; }

    /// Deterministic iteration over stored modes, m ascending then n.
    void for_each_mode(const std::function<void(int, int, std::complex<double>)>& fn) const;

private:
    std::size_t index(int m, int n) const noexcept {
        return static_cast<std::size_t>(m + max_mode_) * (2 * max_mode_ + 1) +
               static_cast<std::size_t>(n + max_mode_);
    }

    int max_mode_ = 0;
    bool truncated_ = false;
    std::vector<std::complex<double>> c_;
};

/// Projection of an arbitrary (smooth, periodic) function onto the modes
/// |m|, |n| <= max_mode by trapezoidal quadrature on an oversampled grid.
struct Projected {
    ScalarField field;
    /// max |field - fn| over the quadrature grid.
    double residual = 0.0;
};

Projected project(const std::function<double(double, double)>& fn, int max_mode,
                  int oversample = 4);

}  // namespace toruswell::spectral
