#include "vode/sets.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace vode {

namespace {

struct Frame {
    DMat Q;
    IMat Q_inv;
};

// Lohner's QR strategy: orthogonalize mid(A·Q) with columns ordered by how
// much error they carry, so the dominant error direction is kept exactly.
// `weight[j]` measures the spread attached to column j.
Frame lohner_frame(const IMat& AQ, const std::vector<double>& weight, const DMat& Q_old, const IMat& Q_inv_old) {
    const std::size_t n = AQ.rows();
    const DMat M = mid(AQ);
    std::vector<double> key(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += M(i, j) * M(i, j);
        key[j] = std::sqrt(s) * weight[j];
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
    DMat P(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) P(i, j) = M(i, order[j]);
    try {
        auto f = near_orthogonalize(P);
        return {f.q, f.inverse};
    } catch (const RankDeficient&) {
        return {Q_old, Q_inv_old};
    }
}

std::vector<double> radii(const IVec& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = std::max(rad(v[i]), 1e-300);
    return r;
}

IVec points(const DVec& v) { return to_interval(v); }

void check_step_dims(std::size_t n, const IMat& A, const IVec& rem, const IVec& center) {
    if (A.rows() != n || A.cols() != n || rem.size() != n || center.size() != n)
        throw DimensionMismatch("affine_advance dimensions");
}

// Shared doubleton update of the (x, C) part; returns the error vector that
// must be absorbed by the remaining frames.
IVec advance_center(IVec& x, IMat& C, const IVec& r0, const IMat& A, const IVec& remainder, const IVec& center_image) {
    const IVec image = center_image + remainder;
    const IVec xn = points(mid(image));
    const IMat AC = A * C;
    const IMat Cn = to_interval(mid(AC));
    IVec e = (image - xn) + (AC - Cn) * r0;
    x = xn;
    C = Cn;
    return e;
}

nlohmann::json jvec(const IVec& v) {
    auto a = nlohmann::json::array();
    for (const auto& x : v) a.push_back({x.lo(), x.hi()});
    return a;
}

nlohmann::json jmat(const IMat& m) {
    auto a = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).lo(), m(i, j).hi()});
        a.push_back(row);
    }
    return a;
}

nlohmann::json jmat(const DMat& m) { return jmat(to_interval(m)); }

}  // namespace

IVec BoxSet::center() const { return points(mid(box)); }

IVec DoubletonSet::hull() const { return x + C * r0 + Q * q; }

IVec TripletonSet::hull() const {
    const IVec br = B * r, qq = Q * q;
    const IVec v = intersect(br, qq).value_or(qq);
    return x + C * r0 + v;
}

IMat C1DoubletonSet::V() const { return to_interval(Vc) + Qv * E; }

DoubletonSet from_affine(const IVec& x0, const IMat& C, const IVec& r0, const Interval& time) {
    const std::size_t n = x0.size();
    if (C.rows() != n || C.cols() != r0.size()) throw DimensionMismatch("from_affine dimensions");
    DoubletonSet s;
    s.x = points(mid(x0));
    s.C = C;
    s.r0 = r0;
    s.Q = DMat::identity(n);
    s.Q_inv = IMat::identity(n);
    s.q = x0 - s.x;
    s.time = time;
    return s;
}

DoubletonSet from_box(const IVec& box, const Interval& time) {
    const IVec c = points(mid(box));
    return from_affine(c, IMat::identity(box.size()), box - c, time);
}

TripletonSet tripleton_from_affine(const IVec& x0, const IMat& C, const IVec& r0, const Interval& time) {
    const DoubletonSet d = from_affine(x0, C, r0, time);
    TripletonSet t;
    t.x = d.x;
    t.C = d.C;
    t.r0 = d.r0;
    t.B = d.Q;
    t.B_inv = d.Q_inv;
    t.r = d.q;
    t.Q = d.Q;
    t.Q_inv = d.Q_inv;
    t.q = d.q;
    t.time = time;
    return t;
}

BoxSet box_set(const IVec& box, const Interval& time) { return {box, time}; }

C1DoubletonSet c1_from(const DoubletonSet& base) {
    const std::size_t n = base.dimension();
    return c1_from(base, IMat::identity(n));
}

C1DoubletonSet c1_from(const DoubletonSet& base, const IMat& V0) {
    const std::size_t n = base.dimension();
    if (V0.rows() != n) throw DimensionMismatch("V0 rows");
    C1DoubletonSet s;
    s.base = base;
    s.Vc = mid(V0);
    s.Qv = DMat::identity(n);
    s.Qv_inv = IMat::identity(n);
    s.E = V0 - to_interval(s.Vc);
    return s;
}

DoubletonSet affine_advance(const DoubletonSet& s, const IMat& A, const IVec& remainder, const IVec& center_image) {
    const std::size_t n = s.dimension();
    check_step_dims(n, A, remainder, center_image);
    DoubletonSet out = s;
    const IVec e = advance_center(out.x, out.C, s.r0, A, remainder, center_image);
    const IMat AQ = A * s.Q;
    const Frame f = lohner_frame(AQ, radii(s.q), s.Q, s.Q_inv);
    out.Q = f.Q;
    out.Q_inv = f.Q_inv;
    out.q = (f.Q_inv * AQ) * s.q + f.Q_inv * e;
    return out;
}

TripletonSet affine_advance(const TripletonSet& s, const IMat& A, const IVec& remainder, const IVec& center_image) {
    const std::size_t n = s.dimension();
    check_step_dims(n, A, remainder, center_image);
    TripletonSet out = s;
    const IVec e = advance_center(out.x, out.C, s.r0, A, remainder, center_image);

    // Non-orthogonal frame: follow mid(A·B) while it stays well conditioned.
    const IMat AB = A * s.B;
    DMat Bn = mid(AB);
    IMat Bn_inv;
    bool reset = false;
    try {
        const double cond = norm_inf(Bn) * norm_inf(approximate_inverse(Bn));
        reset = !(cond <= 1e6);
        if (!reset) Bn_inv = inverse(to_interval(Bn));
    } catch (const Error&) {
        reset = true;
    }
    if (reset) {
        Bn = DMat::identity(n);
        Bn_inv = IMat::identity(n);
    }
    out.B = Bn;
    out.B_inv = Bn_inv;
    out.r = (Bn_inv * AB) * s.r + Bn_inv * e;

    const IMat AQ = A * s.Q;
    const Frame f = lohner_frame(AQ, radii(s.q), s.Q, s.Q_inv);
    out.Q = f.Q;
    out.Q_inv = f.Q_inv;
    out.q = (f.Q_inv * AQ) * s.q + f.Q_inv * e;

    // Both frames enclose the same vector; each bound tightens the other.
    out.r = intersect(out.r, out.B_inv * (out.Q * out.q)).value_or(out.r);
    out.q = intersect(out.q, out.Q_inv * (out.B * out.r)).value_or(out.q);
    return out;
}

BoxSet affine_advance(const BoxSet& s, const IMat& A, const IVec& remainder, const IVec& center_image) {
    check_step_dims(s.box.size(), A, remainder, center_image);
    const IVec c = s.center();
    return {center_image + remainder + A * (s.box - c), s.time};
}

void advance_derivative(C1DoubletonSet& s, const IMat& D) {
    const std::size_t n = s.dimension();
    if (D.rows() != n || D.cols() != n) throw DimensionMismatch("advance_derivative");
    const IMat DV = D * s.Vc;
    const DMat Vn = mid(DV);
    const IMat DQ = D * s.Qv;
    std::vector<double> w(n, 1e-300);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < s.E.cols(); ++j) w[i] = std::max(w[i], rad(s.E(i, j)));
    const Frame f = lohner_frame(DQ, w, s.Qv, s.Qv_inv);
    s.E = (f.Q_inv * DQ) * s.E + f.Q_inv * (DV - to_interval(Vn));
    s.Vc = Vn;
    s.Qv = f.Q;
    s.Qv_inv = f.Q_inv;
}

DoubletonSet linear_image(const IMat& A, const DoubletonSet& s) {
    const std::size_t n = s.dimension();
    if (A.rows() != n || A.cols() != n) throw DimensionMismatch("linear_image needs a square conforming matrix");
    DoubletonSet out = s;
    const IVec Ax = A * s.x;
    out.x = points(mid(Ax));
    out.C = A * s.C;
    const IMat AQ = A * s.Q;
    const Frame f = lohner_frame(AQ, radii(s.q), s.Q, s.Q_inv);
    out.Q = f.Q;
    out.Q_inv = f.Q_inv;
    out.q = (f.Q_inv * AQ) * s.q + f.Q_inv * (Ax - out.x);
    return out;
}

DoubletonSet translate(const DoubletonSet& s, const IVec& shift) {
    if (shift.size() != s.dimension()) throw DimensionMismatch("translate");
    DoubletonSet out = s;
    const IVec moved = s.x + shift;
    out.x = points(mid(moved));
    out.q = s.q + s.Q_inv * (moved - out.x);
    return out;
}

std::string to_json(const DoubletonSet& s) {
    nlohmann::ordered_json j;
    j["kind"] = "doubleton";
    j["time"] = {s.time.lo(), s.time.hi()};
    j["x"] = jvec(s.x);
    j["C"] = jmat(s.C);
    j["r0"] = jvec(s.r0);
    j["Q"] = jmat(s.Q);
    j["q"] = jvec(s.q);
    return j.dump();
}

std::string to_json(const TripletonSet& s) {
    nlohmann::ordered_json j;
    j["kind"] = "tripleton";
    j["time"] = {s.time.lo(), s.time.hi()};
    j["x"] = jvec(s.x);
    j["C"] = jmat(s.C);
    j["r0"] = jvec(s.r0);
    j["B"] = jmat(s.B);
    j["r"] = jvec(s.r);
    j["Q"] = jmat(s.Q);
    j["q"] = jvec(s.q);
    return j.dump();
}

std::string to_json(const C1DoubletonSet& s) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(to_json(s.base));
    j["kind"] = "c1-doubleton";
    j["Vc"] = jmat(s.Vc);
    j["Qv"] = jmat(s.Qv);
    j["E"] = jmat(s.E);
    return j.dump();
}

}  // namespace vode
