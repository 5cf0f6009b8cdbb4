#include "vode/linalg.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace vode {

IVec to_interval(const DVec& v) {
    IVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Interval(v[i]);
    return r;
}

IMat to_interval(const DMat& m) {
    IMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Interval(m(i, j));
    return r;
}

DVec mid(const IVec& v) {
    DVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = mid(v[i]);
    return r;
}

DMat mid(const IMat& m) {
    DMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = mid(m(i, j));
    return r;
}

IVec operator*(const IMat& a, const DVec& v) { return a * to_interval(v); }
IMat operator*(const IMat& a, const DMat& b) { return a * to_interval(b); }
IMat operator*(const DMat& a, const IMat& b) { return to_interval(a) * b; }
IVec operator*(const DMat& a, const IVec& v) { return to_interval(a) * v; }

IVec hull(const IVec& a, const IVec& b) {
    detail::require(a.size() == b.size(), "hull");
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
    return r;
}

IMat hull(const IMat& a, const IMat& b) {
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "hull");
    IMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = hull(a(i, j), b(i, j));
    return r;
}

std::optional<IVec> intersect(const IVec& a, const IVec& b) {
    detail::require(a.size() == b.size(), "intersect");
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto c = intersect(a[i], b[i]);
        if (!c) return std::nullopt;
        r[i] = *c;
    }
    return r;
}

bool subset(const IVec& a, const IVec& b) {
    detail::require(a.size() == b.size(), "subset");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!contains(b[i], a[i])) return false;
    return true;
}

bool interior_subset(const IVec& a, const IVec& b) {
    detail::require(a.size() == b.size(), "interior_subset");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!interior_contains(b[i], a[i])) return false;
    return true;
}

bool contains(const IVec& box, const DVec& point) {
    detail::require(box.size() == point.size(), "contains");
    for (std::size_t i = 0; i < box.size(); ++i)
        if (!contains(box[i], point[i])) return false;
    return true;
}

double max_diam(const IVec& v) {
    double d = 0.0;
    for (const auto& x : v) d = std::max(d, diam(x));
    return d;
}

IVec widen(const IVec& v, double r) {
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = widen(v[i], r);
    return out;
}

IVec ball(std::size_t n, double r) { return IVec(n, ball(r)); }

double norm_inf(const DVec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double norm_inf(const IVec& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, mag(x));
    return m;
}

double norm_inf(const IMat& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s = rounding::add_up(s, mag(m(i, j)));
        best = std::max(best, s);
    }
    return best;
}

double norm_inf(const DMat& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += std::fabs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

DMat approximate_inverse(const DMat& a) {
    detail::require(a.rows() == a.cols(), "inverse of a non-square matrix");
    const std::size_t n = a.rows();
    DMat m = a;
    DMat inv = DMat::identity(n);
    const double scale = std::max(norm_inf(a), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(m(i, k)) > std::fabs(m(p, k))) p = i;
        if (!(std::fabs(m(p, k)) > 1e-15 * scale)) throw RankDeficient("matrix is numerically singular");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(p, j), m(k, j));
                std::swap(inv(p, j), inv(k, j));
            }
        const double piv = m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = m(i, k);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

IMat solve_gauss(const IMat& a, const IMat& b) {
    detail::require(a.rows() == a.cols(), "solve_gauss needs a square matrix");
    detail::require(a.rows() == b.rows(), "solve_gauss right-hand side");
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();

    DMat precond;
    try {
        precond = approximate_inverse(mid(a));
    } catch (const RankDeficient&) {
        throw SingularPivot("midpoint matrix is singular");
    }
    IMat A = precond * a;
    IMat B = precond * b;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (mig(A(i, k)) > mig(A(p, k))) p = i;
        if (contains_zero(A(p, k))) throw SingularPivot("pivot interval " + to_string(A(p, k)) + " contains zero");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(p, j), A(k, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(B(p, j), B(k, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Interval f = A(i, k) / A(k, k);
            A(i, k) = Interval(0.0);
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
            for (std::size_t j = 0; j < m; ++j) B(i, j) -= f * B(k, j);
        }
    }
    IMat X(n, m);
    for (std::size_t jj = 0; jj < m; ++jj) {
        for (std::size_t ii = n; ii-- > 0;) {
            Interval acc = B(ii, jj);
            for (std::size_t j = ii + 1; j < n; ++j) acc -= A(ii, j) * X(j, jj);
            X(ii, jj) = acc / A(ii, ii);
        }
    }
    return X;
}

IVec solve_gauss(const IMat& a, const IVec& b) {
    IMat B(b.size(), 1);
    B.set_column(0, b);
    return solve_gauss(a, B).column(0);
}

IMat inverse(const IMat& a) { return solve_gauss(a, IMat::identity(a.rows())); }

OrthoFrame near_orthogonalize(const DMat& a) {
    detail::require(a.rows() == a.cols(), "near_orthogonalize needs a square matrix");
    const std::size_t n = a.rows();
    DMat q = a;
    std::vector<double> original(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a(i, j) * a(i, j);
        original[j] = std::sqrt(s);
        if (!(original[j] > 0.0) || !std::isfinite(original[j])) throw RankDeficient("zero or non-finite column");
    }
    // Two passes of modified Gram-Schmidt restore orthogonality lost to cancellation.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < j; ++k) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
            }
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += q(i, j) * q(i, j);
            const double norm = std::sqrt(s);
            if (pass == 0 && !(norm > 1e-13 * original[j])) throw RankDeficient("columns are numerically dependent");
            if (!(norm > 0.0)) throw RankDeficient("columns are numerically dependent");
            for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
        }
    }
    OrthoFrame frame;
    frame.q = q;
    try {
        frame.inverse = inverse(to_interval(q));
    } catch (const SingularPivot&) {
        throw RankDeficient("orthogonalized frame is not verifiably invertible");
    }
    return frame;
}

namespace {

// Root t/2 + sign*sqrt(disc)/2 of the characteristic polynomial of [[a,b],[c,d]].
Interval char_root(const Interval& a, const Interval& b, const Interval& c, const Interval& d, double sign) {
    const Interval disc = sqr(a - d) + Interval(4.0) * b * c;
    if (disc.hi() < 0.0) throw DomainError("negative discriminant");
    const Interval s = sqrt(Interval::unchecked(std::max(disc.lo(), 0.0), disc.hi()));
    return (a + d + Interval(sign) * s) * Interval(0.5);
}

// When a root is monotone in some entries over the box, evaluating at the
// extremal corners removes the dependency between trace and discriminant.
Interval monotone_root(const IMat& m, double sign, const Interval& naive) {
    const Interval& a = m(0, 0);
    const Interval& b = m(0, 1);
    const Interval& c = m(1, 0);
    const Interval& d = m(1, 1);
    const Interval disc = sqr(a - d) + Interval(4.0) * b * c;
    if (!(disc.lo() > 0.0)) return naive;
    const Interval s = sqrt(disc);
    const Interval half(0.5);
    const Interval ratio = (a - d) / (Interval(2.0) * s);
    const Interval grads[4] = {half + Interval(sign) * ratio, Interval(sign) * c / s, Interval(sign) * b / s,
                               half - Interval(sign) * ratio};
    const Interval* entries[4] = {&a, &b, &c, &d};
    Interval low[4], high[4];
    for (int k = 0; k < 4; ++k) {
        const Interval& e = *entries[k];
        if (grads[k].lo() >= 0.0) {
            low[k] = Interval(e.lo());
            high[k] = Interval(e.hi());
        } else if (grads[k].hi() <= 0.0) {
            low[k] = Interval(e.hi());
            high[k] = Interval(e.lo());
        } else {
            low[k] = e;
            high[k] = e;
        }
    }
    const double lo = char_root(low[0], low[1], low[2], low[3], sign).lo();
    const double hi = char_root(high[0], high[1], high[2], high[3], sign).hi();
    if (lo > hi) return naive;
    return intersect(naive, Interval::unchecked(lo, hi)).value_or(naive);
}

}  // namespace

SpectralVerdict eig_bounds_2x2(const IMat& a) {
    detail::require(a.rows() == 2 && a.cols() == 2, "eig_bounds_2x2 needs a 2x2 matrix");
    const Interval t = a(0, 0) + a(1, 1);
    const Interval d = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const Interval disc = sqr(a(0, 0) - a(1, 1)) + Interval(4.0) * a(0, 1) * a(1, 0);

    SpectralVerdict v;
    if (disc.lo() > 0.0) {
        v.kind = SpectralVerdict::Kind::real_pair;
        const Interval s = sqrt(disc);
        const Interval plus = monotone_root(a, 1.0, (t + s) * Interval(0.5));
        const Interval minus = monotone_root(a, -1.0, (t - s) * Interval(0.5));
        if (t.hi() < 0.0) {
            v.lambda1 = minus;
            v.lambda2 = plus;
        } else {
            v.lambda1 = plus;
            v.lambda2 = minus;
        }
        if ((t.lo() > 0.0 || t.hi() < 0.0) && !contains_zero(v.lambda1)) {
            // lambda2 = det / lambda1 pointwise; often much sharper for small roots.
            if (auto sharper = intersect(v.lambda2, d / v.lambda1)) v.lambda2 = *sharper;
        }
    } else if (disc.hi() < 0.0) {
        v.kind = SpectralVerdict::Kind::complex_pair;
        v.re = t * Interval(0.5);
        v.im = sqrt(-disc) * Interval(0.5);
    }
    return v;
}

bool posdef_sym_2x2(const IMat& m) {
    detail::require(m.rows() == 2 && m.cols() == 2, "posdef_sym_2x2 needs a 2x2 matrix");
    const Interval m12 = hull(m(0, 1), m(1, 0));
    if (!(m(0, 0).lo() > 0.0)) return false;
    const Interval det = m(0, 0) * m(1, 1) - sqr(m12);
    return det.lo() > 0.0;
}

std::string to_string(const IVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

std::string to_string(const IMat& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ", (" : "(";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ", ";
            s += to_string(m(i, j));
        }
        s += ")";
    }
    return s + "]";
}

}  // namespace vode
