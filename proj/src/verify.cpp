#include "vode/verify.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <utility>

namespace vode {

bool holds(const Interval& bound, const std::string& op, double threshold) {
    if (op == "<") return bound.hi() < threshold;
    if (op == ">") return bound.lo() > threshold;
    if (op == "<=") return bound.hi() <= threshold;
    if (op == ">=") return bound.lo() >= threshold;
    throw DomainError("unknown comparison '" + op + "'");
}

bool Certificate::add(std::string description, const Interval& bound, std::string op, double threshold) {
    const bool pass = holds(bound, op, threshold);
    checks.push_back({std::move(description), bound, std::move(op), threshold, pass});
    overall = overall && pass;
    return pass;
}

void Certificate::add_failure(std::string description) {
    // An entire-line bound fails every comparison on re-check as well.
    const double big = std::numeric_limits<double>::max();
    checks.push_back({std::move(description), Interval(-big, big), "<", 0.0, false});
    overall = false;
}

void Certificate::merge(const Certificate& other) {
    for (const Check& c : other.checks) checks.push_back(c);
    overall = overall && other.overall;
}

bool Certificate::recheck() const {
    bool all = true;
    for (const Check& c : checks) {
        const bool pass = holds(c.bound, c.op, c.threshold);
        if (pass != c.pass) return false;
        all = all && pass;
    }
    return all == overall;
}

nlohmann::ordered_json Certificate::to_json() const {
    nlohmann::ordered_json j;
    j["claim_id"] = claim_id;
    j["checks"] = nlohmann::ordered_json::array();
    for (const Check& c : checks) {
        nlohmann::ordered_json k;
        k["description"] = c.description;
        k["bound"] = {c.bound.lo(), c.bound.hi()};
        k["op"] = c.op;
        k["threshold"] = c.threshold;
        k["pass"] = c.pass;
        j["checks"].push_back(std::move(k));
    }
    j["overall"] = overall;
    j["config"] = config;
    j["field_hash"] = field_hash;
    return j;
}

std::string Certificate::dump(int indent) const { return dump17(to_json(), indent); }

Certificate Certificate::from_json(const nlohmann::ordered_json& j) {
    Certificate c;
    c.claim_id = j.at("claim_id").get<std::string>();
    for (const auto& k : j.at("checks")) {
        const auto& b = k.at("bound");
        c.checks.push_back({k.at("description").get<std::string>(), Interval(b.at(0).get<double>(), b.at(1).get<double>()),
                            k.at("op").get<std::string>(), k.at("threshold").get<double>(), k.at("pass").get<bool>()});
    }
    c.overall = j.at("overall").get<bool>();
    c.config = j.at("config");
    c.field_hash = j.at("field_hash").get<std::string>();
    return c;
}

std::string field_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

namespace {

void dump_into(std::string& out, const nlohmann::ordered_json& j, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += nlohmann::ordered_json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_into(out, it.value(), indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto& v : j) flat = flat && !v.is_structured();
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += flat && indent >= 0 ? ", " : ",";
                if (!flat) newline(depth + 1);
                dump_into(out, j[i], indent, depth + 1);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump17(const nlohmann::ordered_json& j, int indent) {
    std::string out;
    dump_into(out, j, indent, 0);
    return out;
}

NewtonVerdict newton_step(const NewtonProblem& F, const IVec& x0, const IVec& X) {
    if (x0.size() != X.size()) throw DimensionMismatch("newton_step");
    NewtonVerdict v;
    v.X = X;
    const IVec fx = F.value(x0);
    const IMat J = F.jacobian(X);
    try {
        v.N = x0 - solve_gauss(J, fx);
    } catch (const SingularPivot&) {
        v.status = NewtonVerdict::Status::inconclusive;
        return v;
    }
    const auto common = intersect(v.N, X);
    if (!common) {
        v.status = NewtonVerdict::Status::no_zero;
    } else if (interior_subset(v.N, X)) {
        v.status = NewtonVerdict::Status::unique_zero;
        v.refined = *common;
    } else {
        v.status = NewtonVerdict::Status::inconclusive;
    }
    return v;
}

NewtonVerdict interval_newton(const NewtonProblem& F, const IVec& x0, const IVec& X, int max_enlargements) {
    IVec box = X;
    for (int k = 0;; ++k) {
        NewtonVerdict v = newton_step(F, x0, box);
        v.enlargements = k;
        if (v.status != NewtonVerdict::Status::inconclusive || k >= max_enlargements) return v;
        box = x0 + Interval(4.0) * (box - x0);
    }
}

NewtonVerdict newton_refine(const NewtonProblem& F, NewtonVerdict v, int max_iter) {
    if (v.status != NewtonVerdict::Status::unique_zero) return v;
    for (int k = 0; k < max_iter; ++k) {
        const IVec X = v.refined;
        const IVec x0 = to_interval(mid(X));
        IVec N;
        try {
            N = x0 - solve_gauss(F.jacobian(X), F.value(x0));
        } catch (const SingularPivot&) {
            break;
        }
        // The zero is known to lie in X, hence in N ∩ X.
        const auto next = intersect(N, X);
        if (!next) break;
        const double before = max_diam(X);
        v.refined = *next;
        if (max_diam(v.refined) > 0.99 * before) break;
    }
    return v;
}

Certificate sign_change_existence(const std::string& claim_id, const std::function<Interval(double)>& g,
                                  const Interval& Y) {
    Certificate c;
    c.claim_id = claim_id;
    const Interval a = g(Y.lo()), b = g(Y.hi());
    // Orientation follows the left endpoint; an undecided left end fails both ways.
    const bool rising = a.hi() < 0.0 || (!(a.lo() > 0.0) && b.lo() > 0.0);
    c.add("g at lower end of Y", a, rising ? "<" : ">", 0.0);
    c.add("g at upper end of Y", b, rising ? ">" : "<", 0.0);
    return c;
}

Certificate covering_check(const std::string& claim_id, const std::vector<CoveringEdge>& edges,
                           const std::function<Interval(const IVec&)>& projection, int max_depth) {
    Certificate c;
    c.claim_id = claim_id;
    for (const CoveringEdge& e : edges) {
        if (e.op != "<" && e.op != ">") throw DomainError("covering edges compare with < or >");
        std::optional<Interval> all;
        std::string stuck;
        Interval stuck_bound;
        std::vector<std::pair<IVec, int>> stack{{e.set, 0}};
        long pieces = 0;
        while (!stack.empty() && stuck.empty()) {
            auto [piece, depth] = std::move(stack.back());
            stack.pop_back();
            Interval bound;
            bool ok = true;
            try {
                bound = projection(piece);
            } catch (const Error&) {
                ok = false;
            }
            if (ok && holds(bound, e.op, e.threshold)) {
                all = all ? hull(*all, bound) : bound;
                ++pieces;
                continue;
            }
            if (depth >= max_depth) {
                stuck = to_string(piece);
                stuck_bound = ok ? bound : Interval(-std::numeric_limits<double>::max(), std::numeric_limits<double>::max());
                break;
            }
            std::size_t k = 0;
            for (std::size_t i = 1; i < piece.size(); ++i)
                if (diam(piece[i]) > diam(piece[k])) k = i;
            const double m = mid(piece[k]);
            IVec lo = piece, hi = piece;
            lo[k] = Interval(piece[k].lo(), m);
            hi[k] = Interval(m, piece[k].hi());
            // Depth-first, lower half first, so piece order is deterministic.
            stack.push_back({hi, depth + 1});
            stack.push_back({lo, depth + 1});
        }
        if (!stuck.empty()) {
            c.add(e.description + ": piece " + stuck + " at depth limit", stuck_bound, e.op, e.threshold);
        } else {
            c.add(e.description + " (" + std::to_string(pieces) + " pieces)", *all, e.op, e.threshold);
        }
    }
    return c;
}

IMat cone_matrix(const IMat& DP2, double lambda, double mu) {
    if (DP2.rows() != 2 || DP2.cols() != 2) throw DimensionMismatch("cone_condition needs 2x2 matrices");
    const Interval l(lambda), u(mu);
    const Interval& a = DP2(0, 0);
    const Interval& b = DP2(0, 1);
    const Interval& c = DP2(1, 0);
    const Interval& d = DP2(1, 1);
    IMat M(2, 2);
    M(0, 0) = l * sqr(a) + u * sqr(c) - l;
    M(1, 1) = l * sqr(b) + u * sqr(d) - u;
    M(0, 1) = l * a * b + u * c * d;
    M(1, 0) = M(0, 1);
    return M;
}

Certificate cone_condition(const std::string& claim_id, const std::vector<IMat>& DP2, double lambda, double mu) {
    if (!(lambda > 0.0 && mu < 0.0)) throw DomainError("cone_condition needs lambda > 0 > mu");
    Certificate c;
    c.claim_id = claim_id;
    if (DP2.empty()) {
        c.add_failure("no pieces to check");
        return c;
    }
    std::optional<Interval> m11, det;
    for (std::size_t k = 0; k < DP2.size(); ++k) {
        const IMat M = cone_matrix(DP2[k], lambda, mu);
        const Interval m12 = hull(M(0, 1), M(1, 0));
        const Interval dk = M(0, 0) * M(1, 1) - sqr(m12);
        if (!(M(0, 0).lo() > 0.0) || !(dk.lo() > 0.0)) {
            c.add("M11 on piece " + std::to_string(k), M(0, 0), ">", 0.0);
            c.add("det M on piece " + std::to_string(k), dk, ">", 0.0);
            return c;
        }
        m11 = m11 ? hull(*m11, M(0, 0)) : M(0, 0);
        det = det ? hull(*det, dk) : dk;
    }
    c.add("M11 over " + std::to_string(DP2.size()) + " pieces", *m11, ">", 0.0);
    c.add("det M over " + std::to_string(DP2.size()) + " pieces", *det, ">", 0.0);
    return c;
}

Certificate saddle_verdict(const std::string& claim_id, const IMat& DP) {
    if (DP.rows() != 2 || DP.cols() != 2) throw DimensionMismatch("saddle_verdict needs a 2x2 matrix");
    Certificate c;
    c.claim_id = claim_id;
    const Interval disc = sqr(DP(0, 0) - DP(1, 1)) + Interval(4.0) * DP(0, 1) * DP(1, 0);
    if (!c.add("discriminant (real eigenvalues)", disc, ">", 0.0)) return c;
    const SpectralVerdict v = eig_bounds_2x2(DP);
    c.add("|lambda1|", abs(v.lambda1), ">", 1.0);
    c.add("|lambda2|", abs(v.lambda2), "<", 1.0);
    return c;
}

}  // namespace vode
