#include "petbox/polyalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace petbox {

int Monomial::total_degree() const { return z_exp + h_degree(); }

int Monomial::h_degree() const {
    int d = 0;
    for (int e : h_exps) d += e;
    return d;
}

bool Monomial::h_multilinear() const {
    for (int e : h_exps)
        if (e > 1) return false;
    return true;
}

void VectorPoly::add_term(const Monomial& m, const Vec& coeff) {
    if (static_cast<int>(coeff.size()) != dim_) throw domain_error("coefficient dimension mismatch");
    if (static_cast<int>(m.h_exps.size()) != num_h_) throw domain_error("monomial arity mismatch");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!is_zero_vec(coeff)) terms_.emplace(m, coeff);
        return;
    }
    it->second = add_vec(it->second, coeff);
    if (is_zero_vec(it->second)) terms_.erase(it);
}

Vec VectorPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Vec(dim_, Int(0)) : it->second;
}

Vec VectorPoly::eval(const Int& z, const std::vector<Int>& h) const {
    if (static_cast<int>(h.size()) != num_h_) throw domain_error("evaluation arity mismatch");
    Vec acc(dim_, Int(0));
    for (const auto& [m, c] : terms_) {
        Int scale = pow_int(z, m.z_exp);
        for (int i = 0; i < num_h_; ++i) scale *= pow_int(h[i], m.h_exps[i]);
        acc = add_vec(acc, scale_vec(scale, c));
    }
    return acc;
}

VectorPoly VectorPoly::coeff_in_z(int i) const {
    VectorPoly out(dim_, num_h_);
    for (const auto& [m, c] : terms_) {
        if (m.z_exp != i) continue;
        Monomial hm{0, m.h_exps};
        out.add_term(hm, c);
    }
    return out;
}

std::optional<int> VectorPoly::deg_z() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_)
        if (!d || m.z_exp > *d) d = m.z_exp;
    return d;
}

VectorPoly VectorPoly::leading_coeff_z() const {
    auto d = deg_z();
    if (!d) throw domain_error("leading coefficient of the zero polynomial");
    return coeff_in_z(*d);
}

int VectorPoly::h_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.h_degree());
    return d;
}

bool VectorPoly::is_multilinear() const {
    for (const auto& [m, c] : terms_)
        if (!m.h_multilinear()) return false;
    return true;
}

VectorPoly VectorPoly::sigma_shift() const {
    VectorPoly out(dim_, num_h_ + 1);
    for (const auto& [m, c] : terms_) {
        for (int l = 1; l <= m.z_exp; ++l) {
            Monomial nm;
            nm.z_exp = l;
            nm.h_exps = m.h_exps;
            nm.h_exps.push_back(m.z_exp - l);
            out.add_term(nm, scale_vec(binomial_int(m.z_exp, l), c));
        }
    }
    return out;
}

VectorPoly VectorPoly::promote_num_h(int new_r) const {
    if (new_r < num_h_) throw domain_error("cannot shrink h-arity");
    VectorPoly out(dim_, new_r);
    for (const auto& [m, c] : terms_) {
        Monomial nm = m;
        nm.h_exps.resize(new_r, 0);
        out.add_term(nm, c);
    }
    return out;
}

VectorPoly operator+(const VectorPoly& a, const VectorPoly& b) {
    if (a.dim_ != b.dim_ || a.num_h_ != b.num_h_) throw domain_error("polynomial shape mismatch in +");
    VectorPoly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

VectorPoly operator-(const VectorPoly& a, const VectorPoly& b) { return a + (-b); }

VectorPoly VectorPoly::operator-() const {
    VectorPoly out(dim_, num_h_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, negate_vec(c));
    return out;
}

bool operator<(const VectorPoly& a, const VectorPoly& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    if (a.num_h_ != b.num_h_) return a.num_h_ < b.num_h_;
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
        [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first < y.first;
            return VecLess{}(x.second, y.second);
        });
}

namespace {

void render_scalar_term(std::ostream& os, bool& first, const Int& c, const Monomial& m, int dim, int axis) {
    Int mag = abs_int(c);
    if (first) {
        if (c.sign() < 0) os << "-";
        first = false;
    } else {
        os << (c.sign() < 0 ? " - " : " + ");
    }
    bool printed = false;
    if (mag != Int(1)) {
        os << mag.str();
        printed = true;
    }
    auto star = [&] {
        if (printed) os << "*";
        printed = true;
    };
    if (m.z_exp > 0) {
        star();
        os << "z";
        if (m.z_exp > 1) os << "^" << m.z_exp;
    }
    for (std::size_t i = 0; i < m.h_exps.size(); ++i) {
        if (m.h_exps[i] == 0) continue;
        star();
        os << "h" << (i + 1);
        if (m.h_exps[i] > 1) os << "^" << m.h_exps[i];
    }
    if (dim > 1) {
        star();
        os << "e" << (axis + 1);
    }
    if (!printed) os << "1";
}

}  // namespace

std::string VectorPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        for (int axis = 0; axis < dim_; ++axis) {
            if (c[axis].is_zero()) continue;
            render_scalar_term(os, first, c[axis], m, dim_, axis);
        }
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    PolyParser(const std::string& text, int dim, int num_h) : text_(text), dim_(dim), num_h_(num_h) {}

    VectorPoly run() {
        VectorPoly out(dim_, num_h_);
        skip_ws();
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            if (get() == '-') sign = -1;
        }
        parse_term(out, sign);
        skip_ws();
        while (pos_ < text_.size()) {
            char op = get();
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            parse_term(out, op == '-' ? -1 : 1);
            skip_ws();
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw domain_error("polynomial parse error at position " + std::to_string(pos_) + ": " + msg);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    long long parse_number() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (get() - '0');
            if (v > (1LL << 60)) fail("numeric literal too large");
        }
        return v;
    }

    int parse_exponent() {
        skip_ws();
        if (peek() != '^') return 1;
        get();
        long long e = parse_number();
        if (e > 64) fail("exponent too large");
        return static_cast<int>(e);
    }

    void parse_term(VectorPoly& out, int sign) {
        Int coeff = sign;
        Monomial m;
        m.h_exps.assign(num_h_, 0);
        int axis = -1;
        bool any = false;
        for (;;) {
            skip_ws();
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= Int(parse_number());
                int e = parse_exponent();
                Int base = coeff;
                for (int i = 1; i < e; ++i) coeff *= base;  // rarely used; constants^k
                any = true;
            } else if (c == 'z') {
                get();
                m.z_exp += parse_exponent();
                any = true;
            } else if (c == 'h') {
                get();
                long long idx = parse_number();
                if (idx < 1 || idx > num_h_) fail("h-index out of range (family has " + std::to_string(num_h_) + " h-variables)");
                m.h_exps[idx - 1] += parse_exponent();
                any = true;
            } else if (c == 'e') {
                get();
                long long idx = parse_number();
                if (idx < 1 || idx > dim_) fail("basis index out of range for dimension " + std::to_string(dim_));
                if (axis >= 0) fail("more than one basis vector in a term");
                int e = parse_exponent();
                if (e != 1) fail("basis vectors cannot carry exponents");
                axis = static_cast<int>(idx - 1);
                any = true;
            } else if (c == '(') {
                get();
                skip_ws();
                int inner_sign = 1;
                if (peek() == '-') {
                    get();
                    inner_sign = -1;
                }
                coeff *= Int(inner_sign) * Int(parse_number());
                skip_ws();
                if (get() != ')') fail("expected ')'");
                any = true;
            } else {
                break;
            }
            skip_ws();
            if (peek() == '*') {
                get();
                continue;
            }
            // Juxtaposition is also accepted: "2z^2h1e1".
            char n = peek();
            if (n == 'z' || n == 'h' || n == 'e' || std::isdigit(static_cast<unsigned char>(n)) || n == '(') continue;
            break;
        }
        if (!any) fail("empty term");
        if (axis < 0) {
            if (coeff.is_zero()) return;  // a literal zero needs no basis vector
            if (dim_ != 1) fail("term needs a basis vector e1..e" + std::to_string(dim_));
            axis = 0;
        }
        Vec v(dim_, Int(0));
        v[axis] = coeff;
        out.add_term(m, v);
    }

    const std::string& text_;
    int dim_;
    int num_h_;
    std::size_t pos_ = 0;
};

}  // namespace

VectorPoly VectorPoly::parse(const std::string& text, int dim, int num_h) {
    return PolyParser(text, dim, num_h).run();
}

Vec unit_vec(int dim, int axis) {
    if (axis < 0 || axis >= dim) throw domain_error("axis out of range");
    Vec v(dim, Int(0));
    v[axis] = Int(1);
    return v;
}

VectorPoly monomial_poly(int dim, int num_h, const Monomial& m, const Vec& coeff) {
    VectorPoly p(dim, num_h);
    p.add_term(m, coeff);
    return p;
}

VectorPoly z_power_poly(const Vec& coeff, int z_exp, int num_h) {
    Monomial m;
    m.z_exp = z_exp;
    m.h_exps.assign(num_h, 0);
    return monomial_poly(static_cast<int>(coeff.size()), num_h, m, coeff);
}

}  // namespace petbox
