#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "petbox/lattice.hpp"

namespace petbox {

// Monomial z^zExp · h1^hExps[0] ··· hr^hExps[r-1].  The length of hExps is
// the number of h-variables of the containing polynomial.
struct Monomial {
    int z_exp = 0;
    std::vector<int> h_exps;

    int total_degree() const;
    int h_degree() const;
    bool h_multilinear() const;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.z_exp == b.z_exp && a.h_exps == b.h_exps;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.z_exp != b.z_exp) return a.z_exp < b.z_exp;
        return a.h_exps < b.h_exps;
    }
};

// Polynomial in z, h_1..h_r with coefficients in Z^D.  Zero coefficients are
// never stored, so structural equality of the term maps is exact polynomial
// equality.
class VectorPoly {
public:
    VectorPoly() : dim_(0), num_h_(0) {}
    VectorPoly(int dim, int num_h) : dim_(dim), num_h_(num_h) {}

    int dim() const { return dim_; }
    int num_h() const { return num_h_; }
    const std::map<Monomial, Vec>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Vec& coeff);
    Vec coeff(const Monomial& m) const;

    Vec eval(const Int& z, const std::vector<Int>& h) const;

    // Coefficient of z^i, as a polynomial in h only.
    VectorPoly coeff_in_z(int i) const;
    // Degree in z; nullopt is the MINUS_INFINITY of the zero polynomial.
    std::optional<int> deg_z() const;
    VectorPoly leading_coeff_z() const;

    int h_degree() const;
    bool is_multilinear() const;

    // Q(z + h_{r+1}, h) - Q(h_{r+1}, h): appends one h-variable and removes
    // everything independent of z, so the result vanishes at z = 0.
    VectorPoly sigma_shift() const;

    VectorPoly promote_num_h(int new_r) const;

    friend VectorPoly operator+(const VectorPoly& a, const VectorPoly& b);
    friend VectorPoly operator-(const VectorPoly& a, const VectorPoly& b);
    VectorPoly operator-() const;
    friend bool operator==(const VectorPoly& a, const VectorPoly& b) {
        return a.dim_ == b.dim_ && a.num_h_ == b.num_h_ && a.terms_ == b.terms_;
    }
    friend bool operator<(const VectorPoly& a, const VectorPoly& b);

    // Text form like "2*z^2*h1*e1 - 3*z*e2"; parse accepts the same grammar.
    std::string str() const;
    static VectorPoly parse(const std::string& text, int dim, int num_h);

private:
    int dim_;
    int num_h_;
    std::map<Monomial, Vec> terms_;
};

// Convenience constructors used throughout tests and the CLI.
Vec unit_vec(int dim, int axis);                      // e_{axis+1} in Z^dim
VectorPoly monomial_poly(int dim, int num_h, const Monomial& m, const Vec& coeff);
VectorPoly z_power_poly(const Vec& coeff, int z_exp, int num_h = 0);

}  // namespace petbox
