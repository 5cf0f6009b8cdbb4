#include "vode/vector_field.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace vode {

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Parser

class FieldBuilder {
public:
    explicit FieldBuilder(std::string_view src) : src_(src) {}

    VectorField build();

private:
    struct Section {
        std::string name;
        std::size_t name_pos;
        std::size_t body_pos;
        std::string_view body;
    };

    std::string_view src_;
    VectorField f_;
    std::map<std::tuple<int, int, int, int, std::string>, int> interned_;
    std::map<std::string, std::pair<NodeKind, int>> symbols_;

    // expression cursor
    std::size_t pos_ = 0;
    std::size_t end_ = 0;

    int intern(Node n) {
        auto key = std::make_tuple(static_cast<int>(n.kind), n.a, n.b, n.index, n.literal);
        auto it = interned_.find(key);
        if (it != interned_.end()) return it->second;
        const int id = static_cast<int>(f_.nodes_.size());
        f_.nodes_.push_back(std::move(n));
        interned_.emplace(std::move(key), id);
        return id;
    }

    int unary(NodeKind k, int a) {
        Node n;
        n.kind = k;
        n.a = a;
        return intern(n);
    }

    int binary(NodeKind k, int a, int b) {
        Node n;
        n.kind = k;
        n.a = a;
        n.b = b;
        return intern(n);
    }

    int constant(const std::string& literal) {
        Node n;
        n.kind = NodeKind::Const;
        n.literal = literal;
        n.value = from_decimal(literal);
        return intern(n);
    }

    int power(int base, unsigned long n) {
        if (n == 0) return constant("1");
        if (n == 1) return base;
        if (n % 2 == 0) return unary(NodeKind::Sqr, power(base, n / 2));
        return binary(NodeKind::Mul, base, power(base, n - 1));
    }

    [[noreturn]] void fail(std::size_t at, const std::string& msg) const { throw SyntaxError(at, msg); }

    void skip_ws() {
        while (pos_ < end_ && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < end_ && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ >= end_ || !ident_start(src_[pos_])) fail(pos_, "expected identifier");
        while (pos_ < end_ && ident_char(src_[pos_])) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    int expr();
    int term();
    int unary_expr();
    int power_expr();
    int primary();

    std::vector<Section> split_sections();
    std::vector<std::pair<std::size_t, std::size_t>> split_items(std::size_t begin, std::size_t end);
    void declare(const std::string& name, std::size_t at, NodeKind kind, int index);
};

int FieldBuilder::expr() {
    int lhs = term();
    for (;;) {
        if (accept('+')) lhs = binary(NodeKind::Add, lhs, term());
        else if (accept('-')) lhs = binary(NodeKind::Sub, lhs, term());
        else return lhs;
    }
}

int FieldBuilder::term() {
    int lhs = unary_expr();
    for (;;) {
        if (accept('*')) lhs = binary(NodeKind::Mul, lhs, unary_expr());
        else if (accept('/')) lhs = binary(NodeKind::Div, lhs, unary_expr());
        else return lhs;
    }
}

int FieldBuilder::unary_expr() {
    if (accept('-')) return unary(NodeKind::Neg, unary_expr());
    if (accept('+')) return unary_expr();
    return power_expr();
}

int FieldBuilder::power_expr() {
    int base = primary();
    while (accept('^')) {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail(start, "exponent must be a nonnegative integer literal");
        if (pos_ < end_ && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
            fail(start, "exponent must be a nonnegative integer literal");
        const std::string digits(src_.substr(start, pos_ - start));
        if (digits.size() > 6) fail(start, "exponent too large");
        base = power(base, std::stoul(digits));
    }
    return base;
}

int FieldBuilder::primary() {
    skip_ws();
    if (pos_ >= end_) fail(pos_, "unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
        ++pos_;
        const int e = expr();
        if (!accept(')')) fail(pos_, "expected ')'");
        return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        const std::size_t start = pos_;
        while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < end_ && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < end_ && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < end_ && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p >= end_ || !std::isdigit(static_cast<unsigned char>(src_[p]))) fail(p, "malformed exponent");
            while (p < end_ && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
            pos_ = p;
        }
        const std::string lit(src_.substr(start, pos_ - start));
        if (lit == ".") fail(start, "malformed number");
        return constant(lit);
    }
    if (ident_start(c)) {
        const std::size_t start = pos_;
        const std::string name = identifier();
        static const std::map<std::string, NodeKind> functions = {
            {"sin", NodeKind::Sin}, {"cos", NodeKind::Cos}, {"exp", NodeKind::Exp}, {"sqrt", NodeKind::Sqrt}};
        if (auto fn = functions.find(name); fn != functions.end()) {
            if (!accept('(')) fail(pos_, "expected '(' after " + name);
            const int arg = expr();
            if (!accept(')')) fail(pos_, "expected ')'");
            return unary(fn->second, arg);
        }
        auto sym = symbols_.find(name);
        if (sym == symbols_.end()) throw UnknownIdentifier(start, name);
        Node n;
        n.kind = sym->second.first;
        n.index = sym->second.second;
        return intern(n);
    }
    fail(pos_, std::string("unexpected character '") + c + "'");
}

std::vector<FieldBuilder::Section> FieldBuilder::split_sections() {
    std::vector<Section> out;
    std::size_t i = 0;
    while (i < src_.size()) {
        std::size_t semi = src_.find(';', i);
        if (semi == std::string_view::npos) semi = src_.size();
        std::size_t a = i;
        while (a < semi && std::isspace(static_cast<unsigned char>(src_[a]))) ++a;
        if (a < semi) {
            const std::size_t colon = src_.find(':', a);
            if (colon == std::string_view::npos || colon > semi) fail(a, "expected 'name:' at start of section");
            std::size_t b = colon;
            while (b > a && std::isspace(static_cast<unsigned char>(src_[b - 1]))) --b;
            out.push_back({std::string(src_.substr(a, b - a)), a, colon + 1, src_.substr(colon + 1, semi - colon - 1)});
        }
        i = semi + 1;
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FieldBuilder::split_items(std::size_t begin, std::size_t end) {
    std::vector<std::pair<std::size_t, std::size_t>> items;
    int depth = 0;
    std::size_t start = begin;
    for (std::size_t i = begin; i < end; ++i) {
        if (src_[i] == '(') ++depth;
        else if (src_[i] == ')') --depth;
        else if (src_[i] == ',' && depth == 0) {
            items.emplace_back(start, i);
            start = i + 1;
        }
    }
    items.emplace_back(start, end);
    return items;
}

void FieldBuilder::declare(const std::string& name, std::size_t at, NodeKind kind, int index) {
    static const std::set<std::string> reserved = {"sin", "cos", "exp", "sqrt", "par", "time", "var", "fun"};
    if (reserved.count(name)) fail(at, "'" + name + "' is reserved");
    if (!symbols_.emplace(name, std::make_pair(kind, index)).second) fail(at, "duplicate name '" + name + "'");
}

VectorField FieldBuilder::build() {
    const auto sections = split_sections();
    const Section* par = nullptr;
    const Section* time = nullptr;
    const Section* var = nullptr;
    const Section* fun = nullptr;
    for (const auto& s : sections) {
        const Section** slot = s.name == "par" ? &par : s.name == "time" ? &time : s.name == "var" ? &var
                               : s.name == "fun" ? &fun : nullptr;
        if (!slot) fail(s.name_pos, "unknown section '" + s.name + "'");
        if (*slot) fail(s.name_pos, "section '" + s.name + "' given twice");
        *slot = &s;
    }
    if (!var) fail(src_.size(), "missing 'var' section");
    if (!fun) fail(src_.size(), "missing 'fun' section");

    auto names_of = [&](const Section& s) {
        std::vector<std::pair<std::string, std::size_t>> names;
        for (auto [b, e] : split_items(s.body_pos, s.body_pos + s.body.size())) {
            pos_ = b;
            end_ = e;
            const std::string id = identifier();
            const std::size_t at = pos_ - id.size();
            skip_ws();
            if (pos_ != end_) fail(pos_, "expected ',' or ';' after identifier");
            names.emplace_back(id, at);
        }
        return names;
    };

    if (par)
        for (auto& [name, at] : names_of(*par)) {
            declare(name, at, NodeKind::Param, static_cast<int>(f_.par_names_.size()));
            f_.par_names_.push_back(name);
        }
    if (time) {
        auto names = names_of(*time);
        if (names.size() != 1) fail(time->body_pos, "time section takes exactly one name");
        declare(names[0].first, names[0].second, NodeKind::Time, 0);
        f_.time_name_ = names[0].first;
    }
    for (auto& [name, at] : names_of(*var)) {
        declare(name, at, NodeKind::Var, static_cast<int>(f_.var_names_.size()));
        f_.var_names_.push_back(name);
    }
    for (auto [b, e] : split_items(fun->body_pos, fun->body_pos + fun->body.size())) {
        pos_ = b;
        end_ = e;
        skip_ws();
        if (pos_ == end_) fail(pos_, "empty expression");
        const int root = expr();
        skip_ws();
        if (pos_ != end_) fail(pos_, "unexpected trailing input");
        f_.outputs_.push_back(root);
    }
    if (f_.outputs_.size() != f_.var_names_.size())
        throw ArityMismatch("fun section has " + std::to_string(f_.outputs_.size()) + " expressions for " +
                            std::to_string(f_.var_names_.size()) + " variables");
    f_.params_ = IVec(f_.par_names_.size(), Interval(0.0));
    return std::move(f_);
}

VectorField VectorField::parse(std::string_view source) { return FieldBuilder(source).build(); }

void VectorField::set_parameter(std::string_view name, const Interval& value) {
    for (std::size_t i = 0; i < par_names_.size(); ++i)
        if (par_names_[i] == name) return set_parameter(i, value);
    throw UnknownIdentifier(0, std::string(name));
}

void VectorField::set_parameter(std::size_t i, const Interval& value) {
    if (i >= params_.size()) throw DimensionMismatch("parameter index out of range");
    params_[i] = value;
}

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

}  // namespace

std::string VectorField::render() const {
    std::vector<std::string> text(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        auto A = [&] { return text[n.a]; };
        auto B = [&] { return text[n.b]; };
        switch (n.kind) {
            case NodeKind::Const: text[i] = n.literal; break;
            case NodeKind::Param: text[i] = par_names_[n.index]; break;
            case NodeKind::Var: text[i] = var_names_[n.index]; break;
            case NodeKind::Time: text[i] = *time_name_; break;
            case NodeKind::Add: text[i] = "(" + A() + "+" + B() + ")"; break;
            case NodeKind::Sub: text[i] = "(" + A() + "-" + B() + ")"; break;
            case NodeKind::Mul: text[i] = "(" + A() + "*" + B() + ")"; break;
            case NodeKind::Div: text[i] = "(" + A() + "/" + B() + ")"; break;
            case NodeKind::Sqr: text[i] = "(" + A() + ")^2"; break;
            case NodeKind::Sin: text[i] = "sin(" + A() + ")"; break;
            case NodeKind::Cos: text[i] = "cos(" + A() + ")"; break;
            case NodeKind::Exp: text[i] = "exp(" + A() + ")"; break;
            case NodeKind::Sqrt: text[i] = "sqrt(" + A() + ")"; break;
            case NodeKind::Neg: text[i] = "(-" + A() + ")"; break;
        }
    }
    std::string s;
    if (!par_names_.empty()) s += "par:" + join(par_names_) + ";";
    if (time_name_) s += "time:" + *time_name_ + ";";
    s += "var:" + join(var_names_) + ";fun:";
    for (std::size_t i = 0; i < outputs_.size(); ++i) s += (i ? "," : "") + text[outputs_[i]];
    return s + ";";
}

std::uint64_t VectorField::fingerprint() const {
    std::string s = render();
    for (const auto& p : params_) s += "|" + to_string(p);
    return fnv1a(s);
}

// ---------------------------------------------------------------------------
// Taylor coefficients by automatic differentiation

namespace {

inline double ad_sqr(double x) { return x * x; }
inline double ad_sin(double x) { return std::sin(x); }
inline double ad_cos(double x) { return std::cos(x); }
inline double ad_exp(double x) { return std::exp(x); }
inline double ad_sqrt(double x) {
    if (x < 0.0) throw DomainError("sqrt of a negative number");
    return std::sqrt(x);
}
inline bool ad_has_zero(double x) { return x == 0.0; }
inline double ad_value(const Interval& v, double*) { return mid(v); }

inline Interval ad_sqr(const Interval& x) { return sqr(x); }
inline Interval ad_sin(const Interval& x) { return sin(x); }
inline Interval ad_cos(const Interval& x) { return cos(x); }
inline Interval ad_exp(const Interval& x) { return exp(x); }
inline Interval ad_sqrt(const Interval& x) { return sqrt(x); }
inline bool ad_has_zero(const Interval& x) { return contains_zero(x); }
inline Interval ad_value(const Interval& v, Interval*) { return v; }

template <class T>
T ad_div(const T& a, const T& b) {
    if (ad_has_zero(b)) throw DomainError("division by an enclosure containing zero");
    return a / b;
}

/// Evaluates node jets order by order. `m` is the number of tangent
/// directions carried alongside (0 for plain jets).
template <class T>
class TaylorEngine {
public:
    TaylorEngine(const VectorField& f, const T& t0, int order, std::size_t m)
        : f_(f), P_(order), K_(order + 1), m_(m), n_(f.dimension()), N_(f.nodes().size()), t0_(t0) {
        c_.assign(N_ * K_, T(0.0));
        s_.assign(N_ * K_, T(0.0));
        x_.assign(n_ * K_, T(0.0));
        if (m_) {
            g_.assign(N_ * K_ * m_, T(0.0));
            gs_.assign(N_ * K_ * m_, T(0.0));
            gx_.assign(n_ * K_ * m_, T(0.0));
        }
        params_.reserve(f.parameter_count());
        for (const auto& p : f.parameters()) params_.push_back(ad_value(p, static_cast<T*>(nullptr)));
    }

    /// Fills x coefficients 0..P (node jets through P-1).
    void run(const Vector<T>& x0, const Matrix<T>* V0) {
        for (std::size_t i = 0; i < n_; ++i) {
            X(i, 0) = x0[i];
            for (std::size_t j = 0; j < m_; ++j) GX(i, 0, j) = (*V0)(i, j);
        }
        for (int k = 0; k < P_; ++k) {
            for (std::size_t v = 0; v < N_; ++v) step(v, k);
            const T kk(static_cast<double>(k + 1));
            for (std::size_t i = 0; i < n_; ++i) {
                const std::size_t out = f_.outputs()[i];
                X(i, k + 1) = C(out, k) / kk;
                for (std::size_t j = 0; j < m_; ++j) GX(i, k + 1, j) = G(out, k, j) / kk;
            }
        }
    }

    /// Value and tangents at order 0 only.
    void run_order0(const Vector<T>& x0, const Matrix<T>* V0) {
        for (std::size_t i = 0; i < n_; ++i) {
            X(i, 0) = x0[i];
            for (std::size_t j = 0; j < m_; ++j) GX(i, 0, j) = (*V0)(i, j);
        }
        for (std::size_t v = 0; v < N_; ++v) step(v, 0);
    }

    T& X(std::size_t i, int k) { return x_[i * K_ + k]; }
    T& GX(std::size_t i, int k, std::size_t j) { return gx_[(i * K_ + k) * m_ + j]; }
    T& C(std::size_t v, int k) { return c_[v * K_ + k]; }
    T& G(std::size_t v, int k, std::size_t j) { return g_[(v * K_ + k) * m_ + j]; }

private:
    T& S(std::size_t v, int k) { return s_[v * K_ + k]; }
    T& GS(std::size_t v, int k, std::size_t j) { return gs_[(v * K_ + k) * m_ + j]; }

    void step(std::size_t v, int k);

    const VectorField& f_;
    int P_;
    std::size_t K_, m_, n_, N_;
    T t0_;
    std::vector<T> params_;
    std::vector<T> c_, s_, x_, g_, gs_, gx_;
};

template <class T>
void TaylorEngine<T>::step(std::size_t v, int k) {
    const Node& nd = f_.nodes()[v];
    const std::size_t a = static_cast<std::size_t>(nd.a), b = static_cast<std::size_t>(nd.b);
    const T zero(0.0);
    switch (nd.kind) {
        case NodeKind::Const:
            C(v, k) = k == 0 ? ad_value(nd.value, static_cast<T*>(nullptr)) : zero;
            return;  // tangents stay zero
        case NodeKind::Param:
            C(v, k) = k == 0 ? params_[nd.index] : zero;
            return;
        case NodeKind::Time:
            C(v, k) = k == 0 ? t0_ : (k == 1 ? T(1.0) : zero);
            return;
        case NodeKind::Var:
            C(v, k) = X(nd.index, k);
            for (std::size_t j = 0; j < m_; ++j) G(v, k, j) = GX(nd.index, k, j);
            return;
        case NodeKind::Add:
            C(v, k) = C(a, k) + C(b, k);
            for (std::size_t j = 0; j < m_; ++j) G(v, k, j) = G(a, k, j) + G(b, k, j);
            return;
        case NodeKind::Sub:
            C(v, k) = C(a, k) - C(b, k);
            for (std::size_t j = 0; j < m_; ++j) G(v, k, j) = G(a, k, j) - G(b, k, j);
            return;
        case NodeKind::Neg:
            C(v, k) = -C(a, k);
            for (std::size_t j = 0; j < m_; ++j) G(v, k, j) = -G(a, k, j);
            return;
        case NodeKind::Mul: {
            T acc = zero;
            for (int i = 0; i <= k; ++i) acc += C(a, i) * C(b, k - i);
            C(v, k) = acc;
            for (std::size_t j = 0; j < m_; ++j) {
                T g = zero;
                for (int i = 0; i <= k; ++i) g += G(a, i, j) * C(b, k - i) + C(a, i) * G(b, k - i, j);
                G(v, k, j) = g;
            }
            return;
        }
        case NodeKind::Sqr: {
            T acc = zero;
            for (int i = 0; 2 * i < k; ++i) acc += C(a, i) * C(a, k - i);
            acc = T(2.0) * acc;
            if (k % 2 == 0) acc += ad_sqr(C(a, k / 2));
            C(v, k) = acc;
            for (std::size_t j = 0; j < m_; ++j) {
                T g = zero;
                for (int i = 0; i <= k; ++i) g += C(a, i) * G(a, k - i, j);
                G(v, k, j) = T(2.0) * g;
            }
            return;
        }
        case NodeKind::Div: {
            const T& b0 = C(b, 0);
            T acc = C(a, k);
            for (int i = 1; i <= k; ++i) acc -= C(b, i) * C(v, k - i);
            C(v, k) = ad_div(acc, b0);
            for (std::size_t j = 0; j < m_; ++j) {
                T g = G(a, k, j);
                for (int i = 0; i <= k; ++i) g -= G(b, i, j) * C(v, k - i);
                for (int i = 1; i <= k; ++i) g -= C(b, i) * G(v, k - i, j);
                G(v, k, j) = ad_div(g, b0);
            }
            return;
        }
        case NodeKind::Exp: {
            if (k == 0) {
                C(v, 0) = ad_exp(C(a, 0));
                for (std::size_t j = 0; j < m_; ++j) G(v, 0, j) = C(v, 0) * G(a, 0, j);
                return;
            }
            const T kk(static_cast<double>(k));
            T acc = zero;
            for (int i = 1; i <= k; ++i) acc += T(static_cast<double>(i)) * C(a, i) * C(v, k - i);
            C(v, k) = acc / kk;
            for (std::size_t j = 0; j < m_; ++j) {
                T g = zero;
                for (int i = 1; i <= k; ++i)
                    g += T(static_cast<double>(i)) * (G(a, i, j) * C(v, k - i) + C(a, i) * G(v, k - i, j));
                G(v, k, j) = g / kk;
            }
            return;
        }
        case NodeKind::Sin:
        case NodeKind::Cos: {
            // For Sin, C holds sin and S holds cos; for Cos the roles swap.
            const bool is_sin = nd.kind == NodeKind::Sin;
            if (k == 0) {
                const T sn = ad_sin(C(a, 0)), cs = ad_cos(C(a, 0));
                C(v, 0) = is_sin ? sn : cs;
                S(v, 0) = is_sin ? cs : sn;
                for (std::size_t j = 0; j < m_; ++j) {
                    const T dsin = cs * G(a, 0, j);
                    const T dcos = -(sn * G(a, 0, j));
                    G(v, 0, j) = is_sin ? dsin : dcos;
                    GS(v, 0, j) = is_sin ? dcos : dsin;
                }
                return;
            }
            // sin' = a' cos, cos' = -a' sin
            auto& sin_c = is_sin ? c_ : s_;
            auto& cos_c = is_sin ? s_ : c_;
            auto& sin_g = is_sin ? g_ : gs_;
            auto& cos_g = is_sin ? gs_ : g_;
            const T kk(static_cast<double>(k));
            T ssum = zero, csum = zero;
            for (int i = 1; i <= k; ++i) {
                const T ia = T(static_cast<double>(i)) * C(a, i);
                ssum += ia * cos_c[v * K_ + (k - i)];
                csum += ia * sin_c[v * K_ + (k - i)];
            }
            sin_c[v * K_ + k] = ssum / kk;
            cos_c[v * K_ + k] = -(csum / kk);
            for (std::size_t j = 0; j < m_; ++j) {
                T gsum = zero, gcsum = zero;
                for (int i = 1; i <= k; ++i) {
                    const T fi(static_cast<double>(i));
                    const std::size_t r = (v * K_ + (k - i)) * m_ + j;
                    gsum += fi * (G(a, i, j) * cos_c[v * K_ + (k - i)] + C(a, i) * cos_g[r]);
                    gcsum += fi * (G(a, i, j) * sin_c[v * K_ + (k - i)] + C(a, i) * sin_g[r]);
                }
                sin_g[(v * K_ + k) * m_ + j] = gsum / kk;
                cos_g[(v * K_ + k) * m_ + j] = -(gcsum / kk);
            }
            return;
        }
        case NodeKind::Sqrt: {
            if (k == 0) {
                C(v, 0) = ad_sqrt(C(a, 0));
                if (m_ && ad_has_zero(C(v, 0))) throw DomainError("sqrt is not differentiable at zero");
                for (std::size_t j = 0; j < m_; ++j) G(v, 0, j) = G(a, 0, j) / (T(2.0) * C(v, 0));
                return;
            }
            const T two_r0 = T(2.0) * C(v, 0);
            if (ad_has_zero(two_r0)) throw DomainError("sqrt jet at zero");
            T acc = C(a, k);
            for (int i = 1; i < k; ++i) acc -= C(v, i) * C(v, k - i);
            C(v, k) = acc / two_r0;
            for (std::size_t j = 0; j < m_; ++j) {
                T g = zero;
                for (int i = 1; i <= k; ++i) g += C(v, i) * G(v, k - i, j);
                G(v, k, j) = (G(a, k, j) - T(2.0) * g) / two_r0;
            }
            return;
        }
    }
}

void require_dim(const VectorField& f, std::size_t n) {
    if (n != f.dimension()) throw DimensionMismatch("state dimension does not match the vector field");
}

}  // namespace

IVec eval(const VectorField& f, const Interval& t, const IVec& x) {
    require_dim(f, x.size());
    TaylorEngine<Interval> e(f, t, 0, 0);
    e.run_order0(x, nullptr);
    IVec r(f.dimension());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = e.C(f.outputs()[i], 0);
    return r;
}

DVec eval(const VectorField& f, double t, const DVec& x) {
    require_dim(f, x.size());
    TaylorEngine<double> e(f, t, 0, 0);
    e.run_order0(x, nullptr);
    DVec r(f.dimension());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = e.C(f.outputs()[i], 0);
    return r;
}

IMat jacobian(const VectorField& f, const Interval& t, const IVec& x) {
    require_dim(f, x.size());
    const std::size_t n = f.dimension();
    const IMat I = IMat::identity(n);
    TaylorEngine<Interval> e(f, t, 0, n);
    e.run_order0(x, &I);
    IMat J(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) J(i, j) = e.G(f.outputs()[i], 0, j);
    return J;
}

DMat jacobian(const VectorField& f, double t, const DVec& x) {
    require_dim(f, x.size());
    const std::size_t n = f.dimension();
    const DMat I = DMat::identity(n);
    TaylorEngine<double> e(f, t, 0, n);
    e.run_order0(x, &I);
    DMat J(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) J(i, j) = e.G(f.outputs()[i], 0, j);
    return J;
}

TaylorJet ode_taylor(const VectorField& f, const Interval& t0, const IVec& x0, int p) {
    require_dim(f, x0.size());
    if (p < 0) throw DomainError("negative Taylor order");
    TaylorEngine<Interval> e(f, t0, p, 0);
    e.run(x0, nullptr);
    TaylorJet jet;
    jet.coeffs.assign(p + 1, IVec(f.dimension()));
    for (int k = 0; k <= p; ++k)
        for (std::size_t i = 0; i < f.dimension(); ++i) jet.coeffs[k][i] = e.X(i, k);
    return jet;
}

std::vector<DVec> ode_taylor(const VectorField& f, double t0, const DVec& x0, int p) {
    require_dim(f, x0.size());
    if (p < 0) throw DomainError("negative Taylor order");
    TaylorEngine<double> e(f, t0, p, 0);
    e.run(x0, nullptr);
    std::vector<DVec> jet(p + 1, DVec(f.dimension()));
    for (int k = 0; k <= p; ++k)
        for (std::size_t i = 0; i < f.dimension(); ++i) jet[k][i] = e.X(i, k);
    return jet;
}

VariationalJet variational_taylor(const VectorField& f, const Interval& t0, const IVec& x0, const IMat& V0, int p) {
    require_dim(f, x0.size());
    if (V0.rows() != f.dimension()) throw DimensionMismatch("V0 must have one row per state variable");
    if (p < 0) throw DomainError("negative Taylor order");
    const std::size_t n = f.dimension(), m = V0.cols();
    TaylorEngine<Interval> e(f, t0, p, m);
    e.run(x0, &V0);
    VariationalJet jet;
    jet.x.assign(p + 1, IVec(n));
    jet.V.assign(p + 1, IMat(n, m));
    for (int k = 0; k <= p; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            jet.x[k][i] = e.X(i, k);
            for (std::size_t j = 0; j < m; ++j) jet.V[k](i, j) = e.GX(i, k, j);
        }
    return jet;
}

}  // namespace vode
