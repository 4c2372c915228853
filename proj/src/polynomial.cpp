#include "gpk/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "gpk/error.hpp"

namespace gpk {

namespace {
std::mutex g_intern_mu;
std::unordered_map<std::string, int> g_intern;
std::vector<std::string> g_names;
} // namespace

int intern_indeterminate(const std::string& name) {
    std::lock_guard<std::mutex> lk(g_intern_mu);
    auto it = g_intern.find(name);
    if (it != g_intern.end()) return it->second;
    int id = static_cast<int>(g_names.size());
    g_names.push_back(name);
    g_intern.emplace(name, id);
    return id;
}

const std::string& indeterminate_name(int id) {
    std::lock_guard<std::mutex> lk(g_intern_mu);
    return g_names.at(static_cast<size_t>(id));
}

bool monomial_canonical_less(const Monomial& a, const Monomial& b) {
    auto named = [](const Monomial& m) {
        std::vector<std::pair<std::string, int>> v;
        v.reserve(m.size());
        for (auto& [id, e] : m) v.emplace_back(indeterminate_name(id), e);
        std::sort(v.begin(), v.end(), [](auto& x, auto& y) { return x.first < y.first; });
        return v;
    };
    auto va = named(a), vb = named(b);
    size_t n = std::min(va.size(), vb.size());
    for (size_t i = 0; i < n; ++i) {
        if (va[i].first != vb[i].first) return va[i].first < vb[i].first;
        if (va[i].second != vb[i].second) return va[i].second > vb[i].second;
    }
    return va.size() < vb.size();
}

Polynomial Polynomial::constant(BigInt c) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(Monomial{}, std::move(c));
    return p;
}

Polynomial Polynomial::variable(const std::string& name, int power) {
    if (power < 0) throw Error("negative exponent for indeterminate " + name);
    if (power == 0) return constant(1);
    Polynomial p;
    p.terms_.emplace(Monomial{{intern_indeterminate(name), power}}, BigInt(1));
    return p;
}

void Polynomial::add_term(const Monomial& m, const BigInt& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

namespace {
Monomial merge_monomials(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) r.push_back(a[i++]);
        else if (b[j].first < a[i].first) r.push_back(b[j++]);
        else { r.emplace_back(a[i].first, a[i].second + b[j].second); ++i; ++j; }
    }
    while (i < a.size()) r.push_back(a[i++]);
    while (j < b.size()) r.push_back(b[j++]);
    return r;
}
} // namespace

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : o.terms_)
            r.add_term(merge_monomials(ma, mb), ca * cb);
    return r;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial r = constant(1);
    Polynomial base = *this;
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

Polynomial Polynomial::substitute(const std::string& name, const Polynomial& value) const {
    int id = intern_indeterminate(name);
    Polynomial r;
    for (auto& [m, c] : terms_) {
        Monomial rest;
        int power = 0;
        for (auto& [vid, e] : m) {
            if (vid == id) power = e;
            else rest.emplace_back(vid, e);
        }
        Polynomial part;
        part.terms_.emplace(rest, c);
        if (power > 0) part *= value.pow(static_cast<unsigned>(power));
        r += part;
    }
    return r;
}

bool Polynomial::coefficients_positive() const {
    for (auto& [m, c] : terms_)
        if (c <= 0) return false;
    return true;
}

BigInt Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigInt(0) : it->second;
}

std::vector<std::pair<std::string, std::vector<std::pair<std::string, int>>>>
Polynomial::canonical_terms() const {
    std::vector<const std::pair<const Monomial, BigInt>*> order;
    order.reserve(terms_.size());
    for (auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        return monomial_canonical_less(a->first, b->first);
    });
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, int>>>> out;
    out.reserve(order.size());
    for (auto* t : order) {
        std::vector<std::pair<std::string, int>> mono;
        for (auto& [id, e] : t->first) mono.emplace_back(indeterminate_name(id), e);
        std::sort(mono.begin(), mono.end(), [](auto& x, auto& y) { return x.first < y.first; });
        out.emplace_back(t->second.str(), std::move(mono));
    }
    return out;
}

std::string Polynomial::to_text() const {
    auto ts = canonical_terms();
    if (ts.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [coeff, mono] : ts) {
        bool neg = coeff[0] == '-';
        std::string mag = neg ? coeff.substr(1) : coeff;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool unit = mag == "1" && !mono.empty();
        if (!unit) os << mag;
        bool lead = unit;
        for (auto& [name, e] : mono) {
            if (!lead) os << "*";
            lead = false;
            os << name;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

namespace {
struct PolyLexer {
    const std::string& s;
    size_t i = 0;
    void skip() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool eof() { skip(); return i >= s.size(); }
    char peek() { skip(); return i < s.size() ? s[i] : '\0'; }
};
} // namespace

Polynomial Polynomial::parse(const std::string& text) {
    PolyLexer lx{text};
    Polynomial sum;
    bool expect_term = true;
    int sign = 1;
    while (!lx.eof()) {
        char c = lx.peek();
        if (expect_term) {
            if (c == '-') { sign = -sign; ++lx.i; continue; }
            if (c == '+') { ++lx.i; continue; }
            // term: factors joined by '*'
            Polynomial term = constant(sign);
            sign = 1;
            bool more = true;
            while (more) {
                c = lx.peek();
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    std::string num;
                    while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i])))
                        num += lx.s[lx.i++];
                    term *= constant(BigInt(num));
                } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                    std::string name;
                    while (lx.i < lx.s.size() &&
                           (std::isalnum(static_cast<unsigned char>(lx.s[lx.i])) || lx.s[lx.i] == '_'))
                        name += lx.s[lx.i++];
                    int e = 1;
                    if (lx.peek() == '^') {
                        ++lx.i;
                        if (!std::isdigit(static_cast<unsigned char>(lx.peek())))
                            throw Error("polynomial parse: exponent expected in '" + text + "'");
                        std::string num;
                        while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i])))
                            num += lx.s[lx.i++];
                        e = std::stoi(num);
                    }
                    term *= variable(name, e);
                } else {
                    throw Error("polynomial parse: unexpected '" + std::string(1, c) + "' in '" + text + "'");
                }
                if (lx.peek() == '*') { ++lx.i; continue; }
                more = false;
            }
            sum += term;
            expect_term = false;
        } else {
            if (c == '+') { ++lx.i; expect_term = true; }
            else if (c == '-') { ++lx.i; sign = -1; expect_term = true; }
            else throw Error("polynomial parse: expected + or - in '" + text + "'");
        }
    }
    if (expect_term && !sum.is_zero())
        throw Error("polynomial parse: dangling sign in '" + text + "'");
    return sum;
}

} // namespace gpk
