#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "splitwell/error.hpp"

namespace splitwell {

inline constexpr int kRootIterationCap = 200;
inline constexpr double kRootTol = 1e-12;

struct Bracket {
    double lo;
    double hi;
};

// Brent's method. Returns a point inside [b.lo, b.hi].
template <class F>
double find_root(F&& f, Bracket b, double tol = kRootTol) {
    if (!(b.lo < b.hi)) throw DomainError("find_root: bracket must satisfy lo < hi");
    double a = b.lo, x = b.hi;
    double fa = f(a), fx = f(x);
    if (fa == 0.0) return a;
    if (fx == 0.0) return x;
    if ((fa > 0) == (fx > 0)) throw NoSignChange("find_root: no sign change across bracket");
    double c = x, fc = fx, d = x - a, e = d;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < kRootIterationCap; ++it) {
        if ((fx > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            e = d = x - a;
        }
        if (std::abs(fc) < std::abs(fx)) {
            a = x;
            x = c;
            c = a;
            fa = fx;
            fx = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(x) + 0.5 * tol;
        const double xm = 0.5 * (c - x);
        if (std::abs(xm) <= tol1 || fx == 0.0) return std::clamp(x, b.lo, b.hi);
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fx)) {
            double p, q;
            const double s = fx / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fx / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (x - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = x;
        fa = fx;
        x += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
        fx = f(x);
    }
    throw NoConvergence("find_root: iteration cap reached");
}

// Evaluates f on a uniform subdivision and returns every root found by
// bracketing sign changes. Exact zeros on the mesh are returned as-is.
template <class F>
std::vector<double> scan_roots(F&& f, double lo, double hi, int panels, double tol = kRootTol) {
    std::vector<double> roots;
    if (panels < 1 || !(lo < hi)) return roots;
    const double h = (hi - lo) / panels;
    double x0 = lo, f0 = f(lo);
    if (f0 == 0.0) roots.push_back(lo);
    for (int i = 1; i <= panels; ++i) {
        const double x1 = (i == panels) ? hi : lo + i * h;
        const double f1 = f(x1);
        if (f1 == 0.0) {
            roots.push_back(x1);
        } else if (f0 != 0.0 && (f0 > 0) != (f1 > 0)) {
            roots.push_back(find_root(f, {x0, x1}, tol));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t n) : m_(Eigen::MatrixXd::Zero(n, n)) {
        if (n == 0) throw DomainError("SymmetricMatrix: dimension must be positive");
    }
    explicit SymmetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() == 0)
            throw DomainError("SymmetricMatrix: need a non-empty square array");
        for (Eigen::Index i = 0; i < m_.rows(); ++i)
            for (Eigen::Index j = 0; j < i; ++j)
                if (m_(i, j) != m_(j, i)) throw DomainError("SymmetricMatrix: input not symmetric");
    }

    std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    void set(std::size_t i, std::size_t j, double v) {
        m_(i, j) = v;
        m_(j, i) = v;
    }
    const Eigen::MatrixXd& dense() const { return m_; }

private:
    Eigen::MatrixXd m_;
};

struct EigenPair {
    double value;
    Eigen::VectorXd vector;
};

inline std::vector<EigenPair> eig_sym(const SymmetricMatrix& m, std::size_t k) {
    if (k > m.dimension()) throw DomainError("eig_sym: k exceeds dimension");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense());
    if (es.info() != Eigen::Success) throw NoConvergence("eig_sym: eigensolver failed");
    std::vector<EigenPair> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        out.push_back({es.eigenvalues()(static_cast<Eigen::Index>(i)),
                       es.eigenvectors().col(static_cast<Eigen::Index>(i))});
    return out;
}

inline std::vector<double> eigenvalues_sym(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NoConvergence("eigenvalues_sym: eigensolver failed");
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

// ---- symmetric tridiagonal: Sturm bisection + inverse iteration ----

namespace detail {

// Number of eigenvalues strictly below x.
inline std::size_t sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
    std::size_t count = 0;
    double q = 1.0;
    constexpr double tiny = 1e-300;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double off = (i == 0) ? 0.0 : e[i - 1] * e[i - 1] / q;
        q = d[i] - x - off;
        if (q == 0.0) q = -tiny;
        if (q < 0) ++count;
    }
    return count;
}

// Solves (T - shift) y = b in place, LU with partial pivoting.
inline void tridiag_solve(const std::vector<double>& d, const std::vector<double>& e, double shift,
                          std::vector<double>& b) {
    const std::size_t n = d.size();
    std::vector<double> dd(n), dl(e), du(e), du2(n > 2 ? n - 2 : 0, 0.0);
    std::vector<char> piv(n, 0);
    for (std::size_t i = 0; i < n; ++i) dd[i] = d[i] - shift;
    constexpr double tiny = 1e-300;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(dd[i]) >= std::abs(dl[i])) {
            if (dd[i] == 0.0) dd[i] = tiny;
            const double fact = dl[i] / dd[i];
            dl[i] = fact;
            dd[i + 1] -= fact * du[i];
        } else {
            const double fact = dd[i] / dl[i];
            dd[i] = dl[i];
            dl[i] = fact;
            const double temp = du[i];
            du[i] = dd[i + 1];
            dd[i + 1] = temp - fact * dd[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            piv[i] = 1;
        }
    }
    if (dd[n - 1] == 0.0) dd[n - 1] = tiny;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!piv[i]) {
            b[i + 1] -= dl[i] * b[i];
        } else {
            const double temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - dl[i] * b[i];
        }
    }
    b[n - 1] /= dd[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
    if (n > 2)
        for (std::size_t i = n - 2; i-- > 0;) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i];
}

}  // namespace detail

struct TridiagonalEigen {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;  // unit norm, empty if not requested
};

// Lowest k eigenpairs of the symmetric tridiagonal matrix with diagonal d and
// off-diagonal e (size n-1).
inline TridiagonalEigen tridiagonal_lowest(const std::vector<double>& d, const std::vector<double>& e,
                                           std::size_t k, bool with_vectors = true) {
    const std::size_t n = d.size();
    if (n == 0 || e.size() + 1 != n) throw DomainError("tridiagonal_lowest: inconsistent sizes");
    if (k > n) throw DomainError("tridiagonal_lowest: k exceeds dimension");
    double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    TridiagonalEigen out;
    out.values.resize(k);
    double start = lo;
    for (std::size_t j = 0; j < k; ++j) {
        double a = start, b = hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (b - a <= 4.0 * eps * std::max(std::abs(a), std::abs(b)) + 1e-300) break;
            if (mid <= a || mid >= b) break;
            if (detail::sturm_count(d, e, mid) > j) b = mid;
            else a = mid;
        }
        out.values[j] = 0.5 * (a + b);
        start = a;
    }
    if (!with_vectors) return out;
    out.vectors.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double lam = out.values[j];
        const double shift = lam + 8.0 * eps * scale;
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.37 * std::sin(0.731 * static_cast<double>(i + 1) + j);
        for (int it = 0; it < 4; ++it) {
            detail::tridiag_solve(d, e, shift, v);
            // Orthogonalize against close neighbours so near-degenerate pairs stay distinct.
            for (std::size_t p = 0; p < j; ++p) {
                if (std::abs(out.values[p] - lam) > 1e-6 * std::max(1.0, std::abs(lam))) continue;
                double dot = 0;
                for (std::size_t i = 0; i < n; ++i) dot += v[i] * out.vectors[p][i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * out.vectors[p][i];
            }
            double nrm = 0;
            for (double x : v) nrm += x * x;
            nrm = std::sqrt(nrm);
            if (!(nrm > 0) || !std::isfinite(nrm)) throw NoConvergence("tridiagonal_lowest: inverse iteration broke down");
            for (double& x : v) x /= nrm;
        }
        // Sign: first significant component positive.
        double big = 0;
        for (double x : v) big = std::max(big, std::abs(x));
        for (double x : v) {
            if (std::abs(x) > 1e-3 * big) {
                if (x < 0)
                    for (double& y : v) y = -y;
                break;
            }
        }
        out.vectors[j] = std::move(v);
    }
    return out;
}

// ---- special functions ----

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

inline double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: argument must be positive");
    return std::lgamma(x);
}

// 1/Γ(x), zero at the poles of Γ.
inline double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 170.0) return 0.0;
    return 1.0 / std::tgamma(x);
}

// Kummer's M(a, b, z) by its power series.
inline double kummer_m(double a, double b, double z) {
    if (is_nonpositive_integer(b)) throw DomainError("kummer_m: b is a pole");
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 20000; ++n) {
        term *= (a + n) / (b + n) * z / (n + 1);
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(term) < 1e-17 * std::abs(sum) && n > std::abs(z)) return sum;
    }
    throw NoConvergence("kummer_m: series did not converge");
}

// Tricomi's U(a, b, z) for non-integer b and z >= 0.
inline double kummer_u(double a, double b, double z) {
    if (b == std::floor(b)) throw DomainError("kummer_u: integer b not supported");
    if (z < 0.0) throw DomainError("kummer_u: z must be non-negative");
    if (z == 0.0) {
        if (b > 1.0) throw DomainError("kummer_u: U(a, b, 0) diverges for b > 1");
        return std::tgamma(1.0 - b) * rgamma(a - b + 1.0);
    }
    const double t1 = std::tgamma(1.0 - b) * rgamma(a - b + 1.0) * kummer_m(a, b, z);
    const double t2 = std::tgamma(b - 1.0) * rgamma(a) * std::pow(z, 1.0 - b) * kummer_m(a - b + 1.0, 2.0 - b, z);
    return t1 + t2;
}

// Parabolic cylinder function D_nu(x) for real x of moderate size.
inline double parabolic_d(double nu, double x) {
    const double y = 0.5 * x * x;
    const double sq_pi = std::sqrt(std::numbers::pi);
    const double even = sq_pi * rgamma(0.5 * (1.0 - nu)) * kummer_m(-0.5 * nu, 0.5, y);
    const double odd = std::sqrt(2.0 * std::numbers::pi) * x * rgamma(-0.5 * nu) * kummer_m(0.5 * (1.0 - nu), 1.5, y);
    return std::pow(2.0, 0.5 * nu) * std::exp(-0.25 * x * x) * (even - odd);
}

// ---- quadrature ----

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

inline QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double mu0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NoConvergence("quadrature: Jacobi eigenproblem failed");
    QuadratureRule q;
    const auto n = diag.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        q.nodes.push_back(es.eigenvalues()(i));
        const double v0 = es.eigenvectors()(0, i);
        q.weights.push_back(mu0 * v0 * v0);
    }
    return q;
}

}  // namespace detail

// Nodes and weights for the weight function exp(-x^2).
inline QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw DomainError("gauss_hermite: need n >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), off(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(0.5 * k);
    return detail::golub_welsch(diag, off, std::sqrt(std::numbers::pi));
}

// Same nodes with weights times exp(x^2), for integrands that already carry
// their Gaussian. Uses w e^{x^2} = 1 / sum_k psi_k(x)^2 over Hermite functions;
// the eigenvector route loses the outer weights to underflow.
inline QuadratureRule gauss_hermite_scaled(int n) {
    QuadratureRule q = gauss_hermite(n);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double x = q.nodes[i];
        double prev = 0.0, cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x), sum = cur * cur;
        for (int k = 0; k + 1 < n; ++k) {
            const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        q.weights[i] = 1.0 / sum;
    }
    return q;
}

// Nodes and weights on [lo, hi] with unit weight.
inline QuadratureRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0) {
    if (n < 1) throw DomainError("gauss_legendre: need n >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), off(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
    QuadratureRule q = detail::golub_welsch(diag, off, 2.0);
    const double c = 0.5 * (hi + lo), s = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        q.nodes[i] = c + s * q.nodes[i];
        q.weights[i] *= s;
    }
    return q;
}

// Least-squares polynomial fit; coefficients in ascending powers.
inline std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
    if (x.size() != y.size() || static_cast<int>(x.size()) <= degree)
        throw DomainError("polyfit: need more points than the degree");
    Eigen::MatrixXd a(x.size(), degree + 1);
    Eigen::VectorXd b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double p = 1.0;
        for (int j = 0; j <= degree; ++j) {
            a(static_cast<Eigen::Index>(i), j) = p;
            p *= x[i];
        }
        b(static_cast<Eigen::Index>(i)) = y[i];
    }
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    return {c.data(), c.data() + c.size()};
}

}  // namespace splitwell
