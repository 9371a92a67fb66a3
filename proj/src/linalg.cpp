#include "delpair/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace delpair {

RealMat RealMat::identity(int n) {
    RealMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

RealMat RealMat::transpose() const {
    RealMat t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RealMat RealMat::operator*(const RealMat& o) const {
    RealMat r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double aik = (*this)(i, k);
            for (int j = 0; j < n; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

rvec RealMat::operator*(const rvec& v) const {
    rvec r(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

RealMat ComplexMat::real() const {
    RealMat r(n);
    for (int i = 0; i < n * n; ++i) r.a[i] = a[i].real();
    return r;
}

RealMat ComplexMat::imag() const {
    RealMat r(n);
    for (int i = 0; i < n * n; ++i) r.a[i] = a[i].imag();
    return r;
}

ComplexMat ComplexMat::conj() const {
    ComplexMat r(n);
    for (int i = 0; i < n * n; ++i) r.a[i] = std::conj(a[i]);
    return r;
}

ComplexMat ComplexMat::operator-() const {
    ComplexMat r(n);
    for (int i = 0; i < n * n; ++i) r.a[i] = -a[i];
    return r;
}

cvec ComplexMat::operator*(const cvec& v) const {
    cvec r(n, cplx{0, 0});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

RealMat cholesky(const RealMat& m) {
    const int n = m.n;
    RealMat L(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            if (i == j) {
                if (s <= 0.0 || !std::isfinite(s))
                    throw Error("NotPositiveDefinite", "pivot " + std::to_string(i) + " is " + std::to_string(s));
                L(i, i) = std::sqrt(s);
            } else {
                L(i, j) = s / L(j, j);
            }
        }
    }
    return L;
}

rvec cholesky_solve(const RealMat& L, const rvec& b) {
    const int n = L.n;
    rvec y(n), x(n);
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= L(i, k) * y[k];
        y[i] = s / L(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < n; ++k) s -= L(k, i) * x[k];
        x[i] = s / L(i, i);
    }
    return x;
}

RealMat cholesky_inverse(const RealMat& L) {
    const int n = L.n;
    RealMat inv(n);
    rvec e(n, 0.0);
    for (int j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        rvec col = cholesky_solve(L, e);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    // symmetrize away the last rounding
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            double v = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = inv(j, i) = v;
        }
    return inv;
}

double symmetric_min_eigenvalue(const RealMat& m) {
    const int n = m.n;
    if (n == 1) return m(0, 0);
    RealMat a = m;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    double lo = a(0, 0);
    for (int i = 1; i < n; ++i) lo = std::min(lo, a(i, i));
    return lo;
}

double max_abs(const RealMat& m) {
    double v = 0.0;
    for (double x : m.a) v = std::max(v, std::abs(x));
    return v;
}

} // namespace delpair
