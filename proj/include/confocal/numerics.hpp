#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "confocal/error.hpp"
#include "confocal/vec.hpp"

namespace confocal {

/// Root bracket [lo, hi] with an absolute tolerance on the bracket width.
struct Bracket {
    double lo;
    double hi;
    double tol;

    Bracket(double lo_, double hi_, double tol_) : lo(lo_), hi(hi_), tol(tol_) {
        if (!(lo < hi)) throw Error(ErrorKind::InvalidInput, "bracket requires lo < hi");
        if (!(tol > 0)) throw Error(ErrorKind::InvalidInput, "bracket tolerance must be positive");
    }
};

/// Root of f in a sign-changing bracket.  Secant steps are attempted but the
/// bracket is always kept and bisection is forced on alternate iterations, so
/// the width halves at a guaranteed rate and the result stays inside [lo, hi].
template <class F>
double bracketed_root(F&& f, Bracket b) {
    double lo = b.lo, hi = b.hi;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0 || fhi == 0.0 || (flo > 0) == (fhi > 0))
        throw Error(ErrorKind::NoSignChange, "f must take nonzero opposite signs at bracket ends");

    const double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 220; ++iter) {
        double width = hi - lo;
        double limit = std::max(b.tol, 4.0 * eps * std::max({1.0, std::fabs(lo), std::fabs(hi)}));
        if (width <= limit) break;

        double c = 0.5 * (lo + hi);
        if (iter % 2 == 0 && fhi != flo) {
            double s = (lo * fhi - hi * flo) / (fhi - flo);
            double margin = 1e-3 * width;
            if (std::isfinite(s) && s > lo + margin && s < hi - margin) c = s;
        }
        double fc = f(c);
        if (fc == 0.0) return c;
        if ((fc > 0) == (flo > 0)) {
            lo = c;
            flo = fc;
        } else {
            hi = c;
            fhi = fc;
        }
    }
    return 0.5 * (lo + hi);
}

/// Dense symmetric matrix storing each entry once (packed lower triangle).
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(int order)
        : order_(order), data_(static_cast<std::size_t>(order) * (order + 1) / 2, 0.0) {
        if (order < 1) throw Error(ErrorKind::InvalidInput, "matrix order must be positive");
    }

    int order() const { return order_; }

    double at(int i, int j) const { return data_[index(i, j)]; }
    void set(int i, int j, double v) { data_[index(i, j)] = v; }
    void add(int i, int j, double v) { data_[index(i, j)] += v; }

    double max_abs() const {
        double m = 0;
        for (int i = 0; i < order_; ++i)
            for (int j = 0; j <= i; ++j) m = std::max(m, std::fabs(at(i, j)));
        return m;
    }

private:
    std::size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i >= order_ || j >= order_)
            throw Error(ErrorKind::IndexOutOfRange, "symmetric matrix index out of range");
        if (i < j) std::swap(i, j);
        return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
    }

    int order_;
    std::vector<double> data_;
};

struct EigenSystem {
    Vec eigenvalues;       // descending
    Cols eigenvectors;     // eigenvectors[k] pairs with eigenvalues[k], orthonormal
};

/// Cyclic Jacobi sweeps; converges quadratically for the orders used here
/// (capped at 64 sweeps, ample for order <= 16).
inline EigenSystem jacobi_eigen(const SymmetricMatrix& s) {
    int n = s.order();
    std::vector<Vec> a(n, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = s.at(i, j);
    std::vector<Vec> v(n, Vec(n, 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;

    double scale = s.max_abs();
    const double thresh = (scale == 0 ? 0 : scale * 1e-15);
    bool converged = (n == 1);
    for (int sweep = 0; sweep < 64 && !converged; ++sweep) {
        double off = 0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a[p][q]));
        if (off <= thresh) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p][q];
                if (std::fabs(apq) <= thresh * 1e-2) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - sn * akq;
                    a[k][q] = sn * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - sn * aqk;
                    a[q][k] = sn * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - sn * vkq;
                    v[k][q] = sn * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) {
        double off = 0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a[p][q]));
        if (off > thresh)
            throw Error(ErrorKind::NonConvergence, "jacobi sweeps exhausted before convergence");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] > a[j][j]; });

    EigenSystem res;
    res.eigenvalues.resize(n);
    res.eigenvectors.assign(n, Vec(n));
    for (int k = 0; k < n; ++k) {
        res.eigenvalues[k] = a[order[k]][order[k]];
        for (int i = 0; i < n; ++i) res.eigenvectors[k][i] = v[i][order[k]];
    }
    return res;
}

/// Fix a unit vector's overall sign so its first component of noticeable
/// magnitude is positive.
inline void fix_sign(Vec& v) {
    for (double x : v) {
        if (std::fabs(x) > 1e-9) {
            if (x < 0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

/// Unit vector orthogonal to the n-1 given n-dimensional columns.
/// Rank is checked with a pivot threshold of 1e-9 times the largest column
/// norm; the result is re-orthogonalized to machine precision.
inline Vec null_space_1d(const Cols& columns) {
    if (columns.empty()) throw Error(ErrorKind::InvalidInput, "null space of no columns");
    std::size_t n = columns[0].size();
    if (columns.size() != n - 1)
        throw Error(ErrorKind::DimensionMismatch, "expected n-1 columns of dimension n");

    double max_norm = 0;
    for (const Vec& c : columns) {
        if (c.size() != n) throw Error(ErrorKind::DimensionMismatch, "ragged columns");
        max_norm = std::max(max_norm, norm(c));
    }
    const double pivot_tol = 1e-9 * max_norm;

    Cols basis;
    for (const Vec& c : columns) {
        Vec w = c;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& u : basis) w = axpy(w, -dot(u, w), u);
        double nw = norm(w);
        if (nw <= pivot_tol)
            throw Error(ErrorKind::RankDeficient, "columns do not have full rank n-1");
        basis.push_back(scale(w, 1.0 / nw));
    }

    // Start from the coordinate direction least represented in the span.
    Vec best;
    double best_norm = -1;
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        for (const Vec& u : basis) e = axpy(e, -dot(u, e), u);
        double ne = norm(e);
        if (ne > best_norm) {
            best_norm = ne;
            best = e;
        }
    }
    for (const Vec& u : basis) best = axpy(best, -dot(u, best), u);
    best = scale(best, 1.0 / norm(best));
    fix_sign(best);
    return best;
}

/// Elementary symmetric polynomial e_k of the values, by the stable
/// one-row recurrence.
inline double elementary_symmetric(const Vec& values, int k) {
    int n = static_cast<int>(values.size());
    if (k < 0 || k > n)
        throw Error(ErrorKind::IndexOutOfRange, "elementary symmetric degree out of range");
    Vec e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (int m = 0; m < n; ++m)
        for (int j = std::min(k, m + 1); j >= 1; --j) e[j] += values[m] * e[j - 1];
    return e[k];
}

/// Domain for 1-D minimization: an interval, optionally periodic with
/// period hi - lo.
struct Domain1D {
    double lo;
    double hi;
    bool periodic = false;
};

struct MinResult {
    double arg;
    double value;
};

namespace detail {

template <class F>
MinResult golden_section(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? MinResult{x1, f1} : MinResult{x2, f2};
}

} // namespace detail

/// Global grid scan (default 1024 cells) followed by golden-section
/// refinement around the best cell.  Deterministic; periodic domains wrap.
template <class F>
MinResult minimize_1d(F&& f, Domain1D dom, double tol = 1e-10, int grid = 1024) {
    if (!(dom.lo < dom.hi)) throw Error(ErrorKind::InvalidInput, "empty minimization domain");
    if (grid < 2) grid = 2;
    double span = dom.hi - dom.lo;

    auto wrap = [&](double x) {
        if (!dom.periodic) return std::clamp(x, dom.lo, dom.hi);
        double t = std::fmod(x - dom.lo, span);
        if (t < 0) t += span;
        return dom.lo + t;
    };
    auto g = [&](double x) { return f(wrap(x)); };

    int cells = dom.periodic ? grid : grid + 1;
    double best_x = dom.lo;
    double best_f = g(dom.lo);
    for (int i = 1; i < cells; ++i) {
        double x = dom.lo + span * i / grid;
        double fx = g(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    double h = span / grid;
    double lo = best_x - h, hi = best_x + h;
    if (!dom.periodic) {
        lo = std::max(lo, dom.lo);
        hi = std::min(hi, dom.hi);
    }
    MinResult r = detail::golden_section(g, lo, hi, tol);
    if (best_f < r.value) r = {best_x, best_f};
    r.arg = wrap(r.arg);
    return r;
}

} // namespace confocal
