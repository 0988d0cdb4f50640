#include "shearscat/gmres.hpp"

#include <cmath>

namespace shearscat {

namespace {

double norm2(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
}

Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s(0.0, 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::conj(b[k]);
    return s;
}

void axpy(Complex alpha, const std::vector<Complex>& x, std::vector<Complex>& y) {
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += alpha * x[k];
}

// Rotation [c, s; -conj(s), c] with real c zeroing the second entry.
void make_givens(Complex a, Complex b, double& c, Complex& s) {
    if (b == Complex(0.0, 0.0)) {
        c = 1.0;
        s = Complex(0.0, 0.0);
        return;
    }
    if (a == Complex(0.0, 0.0)) {
        c = 0.0;
        s = std::conj(b) / std::abs(b);
        return;
    }
    const double t = std::sqrt(std::norm(a) + std::norm(b));
    c = std::abs(a) / t;
    s = (a / std::abs(a)) * std::conj(b) / t;
}

} // namespace

GmresResult gmres(const LinearMap& apply, const std::vector<Complex>& b,
                  const GmresOptions& options, const std::vector<Complex>* initial) {
    if (!(options.tol > 0.0 && options.tol < 1.0))
        throw std::invalid_argument("gmres: tol must lie in (0,1)");
    if (options.restart < 1)
        throw std::invalid_argument("gmres: restart must be >= 1");

    const std::size_t dim = b.size();
    const double bnorm = norm2(b);
    GmresResult result;
    result.x.assign(dim, Complex(0.0, 0.0));
    if (bnorm == 0.0) return result;
    if (initial) {
        if (initial->size() != dim) throw std::invalid_argument("gmres: initial guess size mismatch");
        result.x = *initial;
    }

    const int m = options.restart;
    std::vector<std::vector<Complex>> basis;
    std::vector<Complex> hess(static_cast<std::size_t>(m + 1) * m); // column major, (m+1) rows
    std::vector<double> cs(m);
    std::vector<Complex> sn(m);
    std::vector<Complex> g(m + 1);
    std::vector<Complex> w(dim), r(dim);

    auto hcol = [&](int col) { return hess.data() + static_cast<std::size_t>(col) * (m + 1); };

    int total_iters = 0;
    double rel = 1.0;

    while (true) {
        apply(result.x, r);
        for (std::size_t k = 0; k < dim; ++k) r[k] = b[k] - r[k];
        const double beta = norm2(r);
        rel = beta / bnorm;
        if (rel <= options.tol) {
            result.relative_residual = rel;
            result.iterations = total_iters;
            return result;
        }
        if (total_iters >= options.maxiter)
            throw SolverError("gmres: no convergence after " + std::to_string(total_iters) +
                                  " iterations (relative residual " + std::to_string(rel) + ")",
                              rel, total_iters);

        basis.assign(1, r);
        for (Complex& z : basis[0]) z /= beta;
        std::fill(g.begin(), g.end(), Complex(0.0, 0.0));
        g[0] = beta;

        int j = 0;
        bool breakdown = false;
        for (; j < m && total_iters < options.maxiter; ++j) {
            apply(basis[static_cast<std::size_t>(j)], w);
            ++total_iters;
            Complex* h = hcol(j);
            for (int i = 0; i <= j; ++i) {
                h[i] = inner(w, basis[static_cast<std::size_t>(i)]);
                axpy(-h[i], basis[static_cast<std::size_t>(i)], w);
            }
            const double hnext = norm2(w);
            h[j + 1] = hnext;

            for (int i = 0; i < j; ++i) {
                const Complex tmp = cs[i] * h[i] + sn[i] * h[i + 1];
                h[i + 1] = -std::conj(sn[i]) * h[i] + cs[i] * h[i + 1];
                h[i] = tmp;
            }
            make_givens(h[j], h[j + 1], cs[j], sn[j]);
            h[j] = cs[j] * h[j] + sn[j] * h[j + 1];
            h[j + 1] = Complex(0.0, 0.0);
            g[j + 1] = -std::conj(sn[j]) * g[j];
            g[j] = cs[j] * g[j];

            rel = std::abs(g[j + 1]) / bnorm;
            // Happy breakdown: the Krylov space is invariant, the least
            // squares solution is exact.
            if (hnext <= 1e-14 * beta) {
                breakdown = true;
                ++j;
                break;
            }
            if (rel <= options.tol) {
                ++j;
                break;
            }
            basis.push_back(w);
            for (Complex& z : basis.back()) z /= hnext;
        }

        // Back substitution for y over the first j columns.
        std::vector<Complex> y(static_cast<std::size_t>(j));
        for (int i = j - 1; i >= 0; --i) {
            Complex s = g[i];
            for (int k2 = i + 1; k2 < j; ++k2) s -= hcol(k2)[i] * y[static_cast<std::size_t>(k2)];
            y[static_cast<std::size_t>(i)] = s / hcol(i)[i];
        }
        for (int i = 0; i < j; ++i) axpy(y[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(i)], result.x);

        if (breakdown || rel <= options.tol) {
            // Confirm with the true residual before returning.
            apply(result.x, r);
            for (std::size_t k = 0; k < dim; ++k) r[k] = b[k] - r[k];
            rel = norm2(r) / bnorm;
            if (rel <= options.tol || breakdown) {
                result.relative_residual = rel;
                result.iterations = total_iters;
                return result;
            }
        }
    }
}

} // namespace shearscat
