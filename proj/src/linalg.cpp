#include "schmidt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

namespace schmidt::linalg {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument("matrix entry count does not match its shape");
    }
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : order_(m.rows()), entries_(m.entries().begin(), m.entries().end()) {
    if (m.rows() != m.cols()) throw std::invalid_argument("Hermitian matrix must be square");
    double scale = 1.0;
    for (const auto& z : entries_) scale = std::max(scale, std::abs(z));
    for (std::size_t r = 0; r < order_; ++r) {
        for (std::size_t c = r; c < order_; ++c) {
            if (std::abs(m(r, c) - std::conj(m(c, r))) > hermiticity_tolerance * scale) {
                throw std::invalid_argument("matrix is not Hermitian at (" + std::to_string(r) + "," +
                                            std::to_string(c) + ")");
            }
        }
        entries_[r * order_ + r] = entries_[r * order_ + r].real();
    }
}

HermitianMatrix::HermitianMatrix(Unchecked, std::size_t order, std::vector<Complex> entries)
    : order_(order), entries_(std::move(entries)) {}

double HermitianMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < order_; ++i) t += entries_[i * order_ + i].real();
    return t;
}

HermitianMatrix gram_matrix(const ComplexMatrix& c) {
    const std::size_t n = c.rows();
    const std::size_t k = c.cols();
    std::vector<Complex> g(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ri = c.row(i);
        for (std::size_t j = 0; j <= i; ++j) {
            const auto rj = c.row(j);
            double re = 0.0;
            double im = 0.0;
            for (std::size_t l = 0; l < k; ++l) {
                // ri[l] * conj(rj[l])
                re += ri[l].real() * rj[l].real() + ri[l].imag() * rj[l].imag();
                im += ri[l].imag() * rj[l].real() - ri[l].real() * rj[l].imag();
            }
            g[i * n + j] = {re, im};
            g[j * n + i] = {re, -im};
        }
        g[i * n + i] = g[i * n + i].real();
    }
    return HermitianMatrix(HermitianMatrix::Unchecked{}, n, std::move(g));
}

namespace {

// Implicit QL with Wilkinson shift on (d, e); e[i] couples i and i+1,
// e must have length d.size() with e.back() ignored. Eigenvalues land in d.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    e[n - 1] = 0.0;
    const int budget = 30 * n;
    int iterations = 0;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int l = 0; l < n; ++l) {
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iterations > budget) {
                throw ConvergenceError("tridiagonal QL did not converge within " + std::to_string(budget) +
                                       " iterations");
            }
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            int i = m - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
}

// Householder reduction of a Hermitian matrix to a real symmetric tridiagonal
// one with the same spectrum. Only the lower triangle of the working copy is
// referenced. Returns (diag, offdiag) with offdiag padded to length n.
std::pair<std::vector<double>, std::vector<double>> householder_tridiagonal(const HermitianMatrix& h) {
    const std::size_t n = h.order();
    std::vector<Complex> a(h.entries().begin(), h.entries().end());
    auto at = [&](std::size_t r, std::size_t c) -> Complex& { return a[r * n + c]; };

    std::vector<double> diag(n);
    std::vector<double> off(n, 0.0);
    std::vector<Complex> v(n);
    std::vector<Complex> p(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        diag[k] = at(k, k).real();
        const std::size_t m = n - k - 1;
        const Complex x0 = at(k + 1, k);
        double sigma = 0.0;
        for (std::size_t j = 1; j < m; ++j) sigma += std::norm(at(k + 1 + j, k));
        if (sigma == 0.0) {
            off[k] = std::abs(x0);
            continue;
        }
        const double x0_abs = std::abs(x0);
        const double xnorm = std::sqrt(x0_abs * x0_abs + sigma);
        const Complex phase = x0_abs > 0.0 ? x0 / x0_abs : Complex(1.0, 0.0);
        off[k] = xnorm;

        // v = (x + phase*|x| e1) / ||.||
        const double vnorm = std::sqrt(2.0 * xnorm * (xnorm + x0_abs));
        v[0] = (x0 + phase * xnorm) / vnorm;
        for (std::size_t j = 1; j < m; ++j) v[j] = at(k + 1 + j, k) / vnorm;

        // p = B v on the trailing block, using the lower triangle.
        const std::size_t o = k + 1;
        std::fill(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(m), Complex{});
        for (std::size_t r = 0; r < m; ++r) {
            Complex acc = at(o + r, o + r).real() * v[r];
            for (std::size_t c = 0; c < r; ++c) {
                const Complex brc = at(o + r, o + c);
                acc += brc * v[c];
                p[c] += std::conj(brc) * v[r];
            }
            p[r] += acc;
        }
        double kappa = 0.0;
        for (std::size_t j = 0; j < m; ++j) kappa += (std::conj(v[j]) * p[j]).real();
        for (std::size_t j = 0; j < m; ++j) p[j] -= kappa * v[j];

        // B <- B - 2 (v p^dagger + p v^dagger), lower triangle only.
        for (std::size_t r = 0; r < m; ++r) {
            const Complex vr2 = 2.0 * v[r];
            const Complex pr2 = 2.0 * p[r];
            for (std::size_t c = 0; c <= r; ++c) {
                at(o + r, o + c) -= vr2 * std::conj(p[c]) + pr2 * std::conj(v[c]);
            }
        }
    }
    if (n >= 2) {
        diag[n - 2] = at(n - 2, n - 2).real();
        off[n - 2] = std::abs(at(n - 1, n - 2));
    }
    diag[n - 1] = at(n - 1, n - 1).real();
    return {std::move(diag), std::move(off)};
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h) {
    auto [d, e] = householder_tridiagonal(h);
    tridiagonal_ql(d, e);
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
}

std::vector<double> hermitian_eigenvalues_jacobi(const HermitianMatrix& h) {
    const std::size_t n = h.order();
    std::vector<Complex> a(h.entries().begin(), h.entries().end());
    auto at = [&](std::size_t r, std::size_t c) -> Complex& { return a[r * n + c]; };

    double total = 0.0;
    for (const auto& z : a) total += std::norm(z);
    const double threshold = 1e-13 * std::sqrt(total);
    constexpr int max_sweeps = 64;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (r != c) s += std::norm(at(r, c));
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > threshold) {
        if (++sweep > max_sweeps) {
            throw ConvergenceError("Jacobi eigensolver did not converge within 64 sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = at(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                // Phase D = diag(1, .., e^{-i theta} at q, ..) makes the (p,q) entry real.
                const Complex phase = apq / r;
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const Complex bkp = at(k, p);
                    const Complex bkq = at(k, q) * std::conj(phase);
                    const Complex nkp = c * bkp - s * bkq;
                    const Complex nkq = s * bkp + c * bkq;
                    at(k, p) = nkp;
                    at(k, q) = nkq;
                    at(p, k) = std::conj(nkp);
                    at(q, k) = std::conj(nkq);
                }
                at(p, p) = app - t * r;
                at(q, q) = aqq + t * r;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
            }
        }
    }

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = at(i, i).real();
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::vector<double> gram_spectrum(const ComplexMatrix& c) {
    if (c.rows() > c.cols()) {
        throw std::invalid_argument("gram_spectrum requires rows <= cols");
    }
    const HermitianMatrix g = gram_matrix(c);
    auto values = hermitian_eigenvalues(g);
    const double floor = -1e-12 * std::max(1.0, g.trace());
    for (double& v : values) {
        if (v < floor) {
            throw std::domain_error("Gram matrix has a negative eigenvalue " + std::to_string(v));
        }
        if (v < 0.0) v = 0.0;
    }
    return values;
}

std::vector<double> symmetric_tridiagonal_eigenvalues(std::span<const double> diag, std::span<const double> offdiag) {
    if (diag.empty()) throw std::invalid_argument("tridiagonal matrix must be non-empty");
    if (offdiag.size() + 1 != diag.size()) {
        throw std::invalid_argument("tridiagonal off-diagonal must have length n-1");
    }
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(offdiag.begin(), offdiag.end());
    e.push_back(0.0);
    tridiagonal_ql(d, e);
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> laguerre_zeros(std::size_t n, double alpha) {
    if (n == 0) throw std::invalid_argument("Laguerre degree must be positive");
    if (!(alpha > -1.0)) throw std::invalid_argument("Laguerre parameter alpha must exceed -1");
    std::vector<double> diag(n);
    std::vector<double> off(n - 1);
    for (std::size_t j = 0; j < n; ++j) diag[j] = 2.0 * static_cast<double>(j) + alpha + 1.0;
    for (std::size_t j = 1; j < n; ++j) {
        const double jd = static_cast<double>(j);
        off[j - 1] = std::sqrt(jd * (jd + alpha));
    }
    return symmetric_tridiagonal_eigenvalues(diag, off);
}

double laguerre_value(std::size_t n, double alpha, double x) {
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double next = ((2.0 * kd + 1.0 + alpha - x) * cur - (kd + alpha) * prev) / (kd + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace schmidt::linalg
