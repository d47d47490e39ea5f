/*
Copyright 2026 The qcfold Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include <Eigen/Core>
#include <Eigen/LU>

#include "qcfold/error.hpp"

namespace qcfold
{

/**
 * @brief A Beltrami coefficient on the Riemann sphere
 *
 * Either a finite complex number or the distinguished point at infinity.
 * Infinity is the anti-conformal coefficient; it is never represented by a
 * large finite number.
 */
template <typename Scalar> class ExtComplex
{
public:
    using Complex = std::complex<Scalar>;

    ExtComplex() = default;
    ExtComplex(Complex v) : value_{v} {}                              // NOLINT(google-explicit-constructor)
    ExtComplex(Scalar re, Scalar im = Scalar(0)) : value_{re, im} {}  // NOLINT

    static ExtComplex infinity()
    {
        ExtComplex z;
        z.infinite_ = true;
        return z;
    }

    bool is_infinite() const { return infinite_; }

    /** Finite value; throws on infinity */
    Complex value() const
    {
        if (infinite_) {
            throw InputError("coefficient is infinite");
        }
        return value_;
    }

    Scalar real() const { return value().real(); }
    Scalar imag() const { return value().imag(); }

    /** |mu|, with |inf| = +inf */
    Scalar modulus() const { return infinite_ ? std::numeric_limits<Scalar>::infinity() : std::abs(value_); }

    friend bool operator==(const ExtComplex& a, const ExtComplex& b)
    {
        if (a.infinite_ || b.infinite_) {
            return a.infinite_ == b.infinite_;
        }
        return a.value_ == b.value_;
    }

private:
    Complex value_{0, 0};
    bool infinite_{false};
};

using ExtComplexd = ExtComplex<double>;

template <typename Scalar> using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar> using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
/** Triangle with its three vertices as columns */
template <typename Scalar> using Triangle2 = Eigen::Matrix<Scalar, 2, 3>;

/** Minimum distance of |mu| from the unit circle for an equation coefficient */
inline constexpr double kEquatorGuard = 1e-6;

/** Throws InputError if mu lies within kEquatorGuard of the unit circle */
template <typename Scalar> void check_admissible(const ExtComplex<Scalar>& mu)
{
    if (mu.is_infinite()) {
        return;
    }
    auto r = std::abs(mu.value());
    if (!std::isfinite(r) || std::abs(r - Scalar(1)) < Scalar(kEquatorGuard)) {
        std::ostringstream msg;
        msg << "Beltrami coefficient " << mu.value() << " (|mu| = " << r << ") is within " << kEquatorGuard
            << " of the unit circle";
        throw InputError(msg.str());
    }
}

/**
 * @brief Distortion matrix A of a coefficient
 *
 * A = 1/(1-|mu|^2) [[(rho-1)^2+tau^2, -2tau], [-2tau, (1+rho)^2+tau^2]],
 * det A = 1; positive definite inside the unit disk, negative definite
 * outside. A(inf) = -I.
 */
template <typename Scalar> Matrix2<Scalar> mu_to_A(const ExtComplex<Scalar>& mu)
{
    check_admissible(mu);
    if (mu.is_infinite()) {
        return -Matrix2<Scalar>::Identity();
    }
    const Scalar rho = mu.real();
    const Scalar tau = mu.imag();
    const Scalar s = Scalar(1) / (Scalar(1) - std::norm(mu.value()));
    Matrix2<Scalar> A;
    A << (rho - 1) * (rho - 1) + tau * tau, -2 * tau, -2 * tau, (1 + rho) * (1 + rho) + tau * tau;
    return s * A;
}

/**
 * @brief Symmetric square root factor P of A, P^T P = A, det P = 1
 *
 * Only defined inside the unit disk; reduce coefficients outside first.
 */
template <typename Scalar> Matrix2<Scalar> mu_to_P(const ExtComplex<Scalar>& mu)
{
    check_admissible(mu);
    if (mu.is_infinite() || std::abs(mu.value()) >= Scalar(1)) {
        throw InputError("mu_to_P requires |mu| < 1; reduce the coefficient first");
    }
    const Scalar rho = mu.real();
    const Scalar tau = mu.imag();
    const Scalar s = Scalar(1) / std::sqrt(Scalar(1) - std::norm(mu.value()));
    Matrix2<Scalar> P;
    P << 1 - rho, -tau, -tau, 1 + rho;
    return s * P;
}

template <typename Scalar> struct ReducedCoefficient
{
    /** Coefficient inside the unit disk */
    std::complex<Scalar> mu;
    /** True when the original coefficient was outside the disk */
    bool reversed{false};
};

/**
 * @brief Map a coefficient into the unit disk
 *
 * Outside the disk mu -> 1/conj(mu) (with inf -> 0), which satisfies
 * A(1/conj(mu)) = -A(mu). The conjugate of an orientation-reversing
 * solution solves the reduced equation.
 */
template <typename Scalar> ReducedCoefficient<Scalar> reduce_coefficient(const ExtComplex<Scalar>& mu)
{
    check_admissible(mu);
    if (mu.is_infinite()) {
        return {std::complex<Scalar>(0, 0), true};
    }
    const auto v = mu.value();
    if (std::abs(v) < Scalar(1)) {
        return {v, false};
    }
    return {Scalar(1) / std::conj(v), true};
}

/** Unscaled complex derivatives of an affine map with Jacobian J */
template <typename Scalar> struct ComplexDerivatives
{
    /** (u_x + v_y) + i(v_x - u_y) */
    std::complex<Scalar> fz;
    /** (u_x - v_y) + i(u_y + v_x) */
    std::complex<Scalar> fzbar;
};

/** Complex derivatives of the linear map with Jacobian [[u_x, u_y], [v_x, v_y]] */
template <typename Scalar> ComplexDerivatives<Scalar> complex_derivatives(const Matrix2<Scalar>& J)
{
    const Scalar ux = J(0, 0), uy = J(0, 1), vx = J(1, 0), vy = J(1, 1);
    return {{ux + vy, vx - uy}, {ux - vy, uy + vx}};
}

/** Twice the signed area of a triangle */
template <typename Scalar> Scalar double_area(const Triangle2<Scalar>& t)
{
    const Vector2<Scalar> a = t.col(1) - t.col(0);
    const Vector2<Scalar> b = t.col(2) - t.col(0);
    return a.x() * b.y() - a.y() * b.x();
}

/** True when the triangle's area is negligible relative to its longest edge */
template <typename Scalar> bool is_degenerate(const Triangle2<Scalar>& t)
{
    Scalar l2 = 0;
    for (int i = 0; i < 3; ++i) {
        l2 = std::max(l2, (t.col((i + 1) % 3) - t.col(i)).squaredNorm());
    }
    return !(std::abs(double_area(t)) > Scalar(1e-14) * l2);
}

/** Jacobian of the unique affine map taking domain onto image */
template <typename Scalar>
Matrix2<Scalar> affine_jacobian(const Triangle2<Scalar>& domain, const Triangle2<Scalar>& image)
{
    if (is_degenerate(domain)) {
        throw InputError("degenerate domain triangle");
    }
    Matrix2<Scalar> D, W;
    D << domain.col(1) - domain.col(0), domain.col(2) - domain.col(0);
    W << image.col(1) - image.col(0), image.col(2) - image.col(0);
    return W * D.inverse();
}

/**
 * @brief Beltrami coefficient mu = f_zbar / f_z of the affine map between
 * two triangles
 *
 * Returns infinity when |f_z| <= 1e-14 |f_zbar|; a constant image is an
 * error since mu is undefined there.
 */
template <typename Scalar>
ExtComplex<Scalar> mu_of_map(const Triangle2<Scalar>& domain, const Triangle2<Scalar>& image)
{
    const auto d = complex_derivatives<Scalar>(affine_jacobian(domain, image));
    const Scalar a = std::abs(d.fz);
    const Scalar b = std::abs(d.fzbar);
    if (a <= std::numeric_limits<Scalar>::min() && b <= std::numeric_limits<Scalar>::min()) {
        throw InputError("constant image triangle: Beltrami coefficient undefined");
    }
    if (a <= Scalar(1e-14) * b) {
        return ExtComplex<Scalar>::infinity();
    }
    return d.fzbar / d.fz;
}

/**
 * @brief Coefficient of a map whose normalized pullback metric is G
 *
 * G symmetric with det G = 1; orientation is the sign of the Jacobian.
 * The orientation-reversing identity metric gives infinity.
 */
template <typename Scalar> ExtComplex<Scalar> mu_from_metric(const Matrix2<Scalar>& G, int orientation)
{
    if (orientation != 1 && orientation != -1) {
        throw InputError("orientation must be +1 or -1");
    }
    if (std::abs(G(0, 1) - G(1, 0)) > Scalar(1e-12) * G.norm()) {
        throw InputError("metric is not symmetric");
    }
    if (std::abs(G.determinant() - Scalar(1)) > Scalar(1e-9)) {
        throw InputError("metric determinant differs from 1");
    }
    if (G(0, 0) <= 0) {
        throw InputError("metric is not positive definite");
    }
    const std::complex<Scalar> num(G(0, 0) - G(1, 1), 2 * G(0, 1));
    const Scalar den = G(0, 0) + G(1, 1) + 2 * Scalar(orientation);
    if (orientation < 0 && den <= Scalar(1e-12) * (G(0, 0) + G(1, 1))) {
        return ExtComplex<Scalar>::infinity();
    }
    return num / den;
}

/**
 * @brief Image of the third vertex (x, y) of the triangle [(0,0),(1,0),(x,y)]
 * under the affine map with coefficient mu fixing the first two vertices
 *
 * [[1, 2tau/D], [0, (1-|mu|^2)/D]] applied to (x, y), D = (1+rho)^2 + tau^2.
 * Infinity reflects about the x-axis.
 */
template <typename Scalar>
Vector2<Scalar> third_vertex_image(const ExtComplex<Scalar>& mu, const Vector2<Scalar>& p)
{
    check_admissible(mu);
    if (mu.is_infinite()) {
        return {p.x(), -p.y()};
    }
    const Scalar rho = mu.real();
    const Scalar tau = mu.imag();
    const Scalar D = (1 + rho) * (1 + rho) + tau * tau;
    Matrix2<Scalar> T;
    T << 1, 2 * tau / D, 0, (1 - std::norm(mu.value())) / D;
    return T * p;
}

}  // namespace qcfold
