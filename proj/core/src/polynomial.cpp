#include "tvlab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "tvlab/errors.hpp"

namespace tvlab {

Monomial::Monomial(std::vector<std::uint32_t> exponents) : exps_(std::move(exponents)) {}

Monomial Monomial::one(int dim) {
    return Monomial(std::vector<std::uint32_t>(static_cast<std::size_t>(dim), 0));
}

Monomial Monomial::variable(int dim, int var) {
    if (var < 0 || var >= dim) throw input_error("monomial variable index out of range");
    std::vector<std::uint32_t> e(static_cast<std::size_t>(dim), 0);
    e[static_cast<std::size_t>(var)] = 1;
    return Monomial(std::move(e));
}

int Monomial::degree() const {
    int d = 0;
    for (auto e : exps_) d += static_cast<int>(e);
    return d;
}

Monomial Monomial::raised_by(int var) const {
    auto e = exps_;
    e[static_cast<std::size_t>(var)] += 1;
    return Monomial(std::move(e));
}

Monomial Monomial::lowered_by(int var) const {
    auto e = exps_;
    if (e[static_cast<std::size_t>(var)] == 0) throw input_error("cannot lower zero exponent");
    e[static_cast<std::size_t>(var)] -= 1;
    return Monomial(std::move(e));
}

Complex Monomial::eval(std::span<const Complex> z) const {
    if (z.size() != exps_.size()) throw input_error("point dimension does not match monomial");
    Complex v = 1.0;
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        Complex p = 1.0;
        Complex base = z[j];
        for (std::uint32_t k = 0; k < exps_[j]; ++k) p *= base;
        v *= p;
    }
    return v;
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da < db;
    // within a degree: larger power of the earliest variable comes first
    const auto& ea = a.exponents();
    const auto& eb = b.exponents();
    return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
}

namespace {

void enum_degree(int dim, int deg, int pos, std::vector<std::uint32_t>& work,
                 std::vector<Monomial>& out) {
    if (pos == dim - 1) {
        work[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(deg);
        out.emplace_back(work);
        return;
    }
    for (int e = deg; e >= 0; --e) {
        work[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(e);
        enum_degree(dim, deg - e, pos + 1, work, out);
    }
}

} // namespace

std::vector<Monomial> monomials_of_degree(int dim, int deg) {
    if (dim < 1) throw input_error("ambient dimension must be >= 1");
    std::vector<Monomial> out;
    std::vector<std::uint32_t> work(static_cast<std::size_t>(dim), 0);
    enum_degree(dim, deg, 0, work, out);
    return out;
}

std::vector<Monomial> monomials_up_to_degree(int dim, int deg) {
    std::vector<Monomial> out;
    for (int n = 0; n <= deg; ++n) {
        auto shell = monomials_of_degree(dim, n);
        out.insert(out.end(), shell.begin(), shell.end());
    }
    return out;
}

Polynomial::Polynomial(int dim) : dim_(dim) {
    if (dim < 1) throw input_error("ambient dimension must be >= 1");
}

Polynomial Polynomial::constant(int dim, Complex c) {
    Polynomial p(dim);
    p.add_term(Monomial::one(dim), c);
    return p;
}

Polynomial Polynomial::variable(int dim, int var) {
    Polynomial p(dim);
    p.add_term(Monomial::variable(dim, var), 1.0);
    return p;
}

Polynomial Polynomial::term(const Monomial& mono, Complex c) {
    Polynomial p(mono.dim());
    p.add_term(mono, c);
    return p;
}

int Polynomial::degree() const {
    if (terms_.empty()) return -1;
    // graded order: the last term has maximal degree
    return terms_.rbegin()->first.degree();
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Complex Polynomial::coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

void Polynomial::add_term(const Monomial& mono, Complex c) {
    if (mono.dim() != dim_) throw input_error("monomial dimension does not match polynomial");
    if (c == Complex(0.0)) return;
    auto [it, inserted] = terms_.emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex(0.0)) terms_.erase(it); // exact-zero pruning only
    }
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    if (dim_ != rhs.dim_) throw input_error("polynomial dimensions differ");
    Polynomial out = *this;
    for (const auto& [mono, c] : rhs.terms_) out.add_term(mono, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    if (dim_ != rhs.dim_) throw input_error("polynomial dimensions differ");
    Polynomial out = *this;
    for (const auto& [mono, c] : rhs.terms_) out.add_term(mono, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (dim_ != rhs.dim_) throw input_error("polynomial dimensions differ");
    Polynomial out(dim_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            std::vector<std::uint32_t> e(ma.exponents());
            for (int j = 0; j < dim_; ++j) e[static_cast<std::size_t>(j)] += mb[j];
            out.add_term(Monomial(std::move(e)), ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::operator*(Complex c) const {
    Polynomial out(dim_);
    for (const auto& [mono, coeff] : terms_) out.add_term(mono, coeff * c);
    return out;
}

Polynomial Polynomial::operator-() const { return (*this) * Complex(-1.0); }

Polynomial Polynomial::pow(std::uint32_t e) const {
    Polynomial out = Polynomial::constant(dim_, 1.0);
    for (std::uint32_t k = 0; k < e; ++k) out = out * (*this);
    return out;
}

Polynomial Polynomial::derivative(int var) const {
    if (var < 0 || var >= dim_) throw input_error("derivative variable index out of range");
    Polynomial out(dim_);
    for (const auto& [mono, c] : terms_) {
        const std::uint32_t e = mono[var];
        if (e == 0) continue;
        out.add_term(mono.lowered_by(var), c * static_cast<double>(e));
    }
    return out;
}

Complex Polynomial::eval(std::span<const Complex> z) const {
    if (static_cast<int>(z.size()) != dim_) throw input_error("point dimension does not match polynomial");
    Complex v = 0.0;
    for (const auto& [mono, c] : terms_) v += c * mono.eval(z);
    return v;
}

std::map<int, Polynomial> Polynomial::homogeneous_parts() const {
    std::map<int, Polynomial> parts;
    for (const auto& [mono, c] : terms_) {
        auto [it, inserted] = parts.emplace(mono.degree(), Polynomial(dim_));
        it->second.add_term(mono, c);
    }
    return parts;
}

Polynomial Polynomial::eliminate_at_zero(int var) const {
    if (dim_ < 2) throw input_error("cannot eliminate the only variable");
    if (var < 0 || var >= dim_) throw input_error("eliminated variable index out of range");
    Polynomial out(dim_ - 1);
    for (const auto& [mono, c] : terms_) {
        if (mono[var] != 0) continue;
        std::vector<std::uint32_t> e;
        e.reserve(static_cast<std::size_t>(dim_ - 1));
        for (int j = 0; j < dim_; ++j)
            if (j != var) e.push_back(mono[j]);
        out.add_term(Monomial(std::move(e)), c);
    }
    return out;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    return dim_ == rhs.dim_ && terms_ == rhs.terms_;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string format_complex(Complex c) {
    if (c.imag() == 0.0) return format_double(c.real());
    std::string s = "(";
    s += format_double(c.real());
    s += (c.imag() < 0.0 || (c.imag() == 0.0 && std::signbit(c.imag()))) ? "-" : "+";
    s += format_double(std::abs(c.imag()));
    s += "i)";
    return s;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
        std::string monos;
        for (int j = 0; j < dim_; ++j) {
            const std::uint32_t e = mono[j];
            if (e == 0) continue;
            if (!monos.empty()) monos += "*";
            monos += "z" + std::to_string(j + 1);
            if (e > 1) monos += "^" + std::to_string(e);
        }
        bool negated = false;
        Complex coeff = c;
        if (coeff.imag() == 0.0 && coeff.real() < 0.0 && !first) {
            negated = true;
            coeff = -coeff;
        }
        std::string coefs;
        if (monos.empty()) {
            coefs = format_complex(coeff);
        } else if (coeff == Complex(1.0)) {
            coefs.clear();
        } else {
            coefs = format_complex(coeff) + "*";
        }
        if (!first) out += negated ? " - " : " + ";
        out += coefs + monos;
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parser: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
// factor := base ('^' uint)?; base := number | 'i' | zK | '(' expr ')' | '-' base

namespace {

class Parser {
public:
    Parser(std::string_view text, int dim) : text_(text), dim_(dim) {}

    Polynomial run() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        return p;
    }

private:
    std::string_view text_;
    int dim_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw input_error("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Polynomial expr() {
        Polynomial acc = eat('-') ? -term() : (eat('+'), term());
        while (true) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial b = base();
        if (eat('^')) {
            skip_ws();
            std::uint32_t e = 0;
            auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), e);
            if (res.ec != std::errc()) fail("expected non-negative integer exponent");
            pos_ = static_cast<std::size_t>(res.ptr - text_.data());
            return b.pow(e);
        }
        return b;
    }

    Polynomial base() {
        const char c = peek();
        if (c == '(') {
            eat('(');
            Polynomial inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            eat('-');
            return -base();
        }
        if (c == 'i') {
            ++pos_;
            return Polynomial::constant(dim_, Complex(0.0, 1.0));
        }
        if (c == 'z') {
            ++pos_;
            int idx = 0;
            auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), idx);
            if (res.ec != std::errc() || idx < 1) fail("expected variable index after 'z'");
            pos_ = static_cast<std::size_t>(res.ptr - text_.data());
            if (idx > dim_) fail("variable z" + std::to_string(idx) + " exceeds ambient dimension");
            return Polynomial::variable(dim_, idx - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
            if (res.ec != std::errc()) fail("malformed number");
            pos_ = static_cast<std::size_t>(res.ptr - text_.data());
            // numeric literal immediately followed by 'i' is an imaginary literal
            if (pos_ < text_.size() && text_[pos_] == 'i') {
                ++pos_;
                return Polynomial::constant(dim_, Complex(0.0, v));
            }
            return Polynomial::constant(dim_, Complex(v, 0.0));
        }
        fail("unexpected character");
    }
};

} // namespace

Polynomial Polynomial::parse(std::string_view text, int dim) {
    return Parser(text, dim).run();
}

Ideal::Ideal(std::vector<Polynomial> gens) : generators(std::move(gens)) {
    if (generators.empty()) throw input_error("ideal requires at least one generator");
    dim = generators.front().dim();
    homogeneous = true;
    for (const auto& g : generators) {
        if (g.dim() != dim) throw input_error("ideal generators have mismatched dimensions");
        if (g.is_zero()) throw input_error("ideal generator is identically zero");
        degrees.push_back(g.degree());
        homogeneous = homogeneous && g.is_homogeneous();
    }
}

int Ideal::max_degree() const { return *std::max_element(degrees.begin(), degrees.end()); }

double Ideal::residual(std::span<const Complex> z) const {
    double r = 0.0;
    for (const auto& g : generators) r = std::max(r, std::abs(g.eval(z)));
    return r;
}

Eigen::MatrixXcd jacobian(const Ideal& ideal, std::span<const Complex> z) {
    if (static_cast<int>(z.size()) != ideal.dim) throw input_error("point dimension does not match ideal");
    Eigen::MatrixXcd J(ideal.generator_count(), ideal.dim);
    for (int i = 0; i < ideal.generator_count(); ++i)
        for (int j = 0; j < ideal.dim; ++j)
            J(i, j) = ideal.generators[static_cast<std::size_t>(i)].derivative(j).eval(z);
    return J;
}

} // namespace tvlab
