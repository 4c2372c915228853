#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gpk {

using BigInt = boost::multiprecision::cpp_int;

// Indeterminates are interned names; ids are process-local, all canonical
// orderings go through the name so output is stable across runs.
int intern_indeterminate(const std::string& name);
const std::string& indeterminate_name(int id);

// Sorted by id, exponents > 0. Empty monomial = constant term.
using Monomial = std::vector<std::pair<int, int>>;

// Canonical term order: walk the name-sorted (name, exponent) sequence,
// names ascending, exponents descending, end-of-sequence sorting first.
// Gives "X^2 + X + Y" and "q^2 + q*v".
bool monomial_canonical_less(const Monomial& a, const Monomial& b);

class Polynomial {
public:
    Polynomial() = default;
    static Polynomial constant(BigInt c);
    static Polynomial variable(const std::string& name, int power = 1);

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return terms_ != o.terms_; }

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator*=(const Polynomial& o) { *this = *this * o; return *this; }
    Polynomial pow(unsigned n) const;

    // Substitutes a polynomial for every occurrence of an indeterminate.
    Polynomial substitute(const std::string& name, const Polynomial& value) const;

    // True when every coefficient is positive (ℕ-coefficients check).
    bool coefficients_positive() const;

    BigInt coefficient(const Monomial& m) const;
    const std::map<Monomial, BigInt>& terms() const { return terms_; }

    // Canonical text: "3*X^2*Y + q*v - 1", "0" for the zero polynomial.
    std::string to_text() const;
    // One line per term: coefficient as decimal string plus {name: exp} pairs,
    // in canonical order. Used by machine output.
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, int>>>> canonical_terms() const;

    static Polynomial parse(const std::string& text);

private:
    void add_term(const Monomial& m, const BigInt& c);
    std::map<Monomial, BigInt> terms_;  // id-ordered keys; zero coefficients erased
};

} // namespace gpk
