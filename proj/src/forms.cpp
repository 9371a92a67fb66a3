#include "delpair/forms.hpp"

#include <algorithm>
#include <sstream>

namespace delpair {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::constant(cplx v) { return monomial(0, v); }

LaurentPoly LaurentPoly::monomial(int degree, cplx v) {
    LaurentPoly p;
    p.set(degree, v);
    return p;
}

cplx LaurentPoly::coeff(int degree) const {
    if (degree < kMinDeg || degree > kMaxDeg) return {0, 0};
    return c_[degree - kMinDeg];
}

void LaurentPoly::set(int degree, cplx v) {
    if (degree < kMinDeg || degree > kMaxDeg)
        throw Error("LaurentWindowOverflow", "degree " + std::to_string(degree));
    c_[degree - kMinDeg] = v;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (int d1 = kMinDeg; d1 <= kMaxDeg; ++d1) {
        cplx a = coeff(d1);
        if (a == cplx{0, 0}) continue;
        for (int d2 = kMinDeg; d2 <= kMaxDeg; ++d2) {
            cplx b = o.coeff(d2);
            if (b == cplx{0, 0}) continue;
            int d = d1 + d2;
            if (d < kMinDeg || d > kMaxDeg)
                throw Error("LaurentWindowOverflow", "product degree " + std::to_string(d));
            r.c_[d - kMinDeg] += a * b;
        }
    }
    return r;
}

LaurentPoly LaurentPoly::operator*(cplx s) const {
    LaurentPoly r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
    return r;
}

LaurentPoly LaurentPoly::conjugated() const {
    LaurentPoly r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = std::conj(c_[i]);
    return r;
}

cplx LaurentPoly::eval(cplx lambda) const {
    cplx v{0, 0};
    for (int d = kMinDeg; d <= kMaxDeg; ++d) {
        cplx a = coeff(d);
        if (a != cplx{0, 0}) v += a * std::pow(lambda, d);
    }
    return v;
}

bool LaurentPoly::is_zero(double tol) const {
    for (const cplx& v : c_)
        if (std::abs(v) > tol) return false;
    return true;
}

double LaurentPoly::max_abs() const {
    double m = 0.0;
    for (const cplx& v : c_) m = std::max(m, std::abs(v));
    return m;
}

int LaurentPoly::min_degree() const {
    for (int d = kMinDeg; d <= kMaxDeg; ++d)
        if (coeff(d) != cplx{0, 0}) return d;
    return 0;
}

int LaurentPoly::max_degree() const {
    for (int d = kMaxDeg; d >= kMinDeg; --d)
        if (coeff(d) != cplx{0, 0}) return d;
    return 0;
}

// ----------------------------------------------------------------- Generators

int Generators::conjugate(int id) const {
    if (is_dlambda(id)) return id;
    if (id < 2 * genus) return id + 2 * genus;
    return id - 2 * genus;
}

std::string Generators::name(int id) const {
    if (is_dlambda(id)) return "dlambda";
    int kind = id / genus;
    int idx = id % genus + 1;
    static const char* names[] = {"dt", "ds", "dtbar", "dsbar"};
    return names[kind] + std::to_string(idx);
}

namespace {

// Sort a generator list; returns the permutation sign, or 0 on a repeat.
int normalize_monomial(Monomial& m) {
    int sign = 1;
    for (std::size_t i = 1; i < m.size(); ++i)
        for (std::size_t j = i; j > 0 && m[j] < m[j - 1]; --j) {
            std::swap(m[j], m[j - 1]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < m.size(); ++i)
        if (m[i] == m[i - 1]) return 0;
    return sign;
}

} // namespace

// ------------------------------------------------------------------- FormExpr

FormExpr FormExpr::generator(int genus, int id) {
    FormExpr f(genus);
    f.terms_[{id}] = LaurentPoly::constant({1, 0});
    return f;
}

FormExpr FormExpr::scalar(int genus, cplx v) {
    FormExpr f(genus);
    if (v != cplx{0, 0}) f.terms_[{}] = LaurentPoly::constant(v);
    return f;
}

LaurentPoly FormExpr::coeff(const Monomial& m) const {
    Monomial key = m;
    int sign = normalize_monomial(key);
    if (sign == 0) return {};
    auto it = terms_.find(key);
    if (it == terms_.end()) return {};
    return it->second * cplx(sign, 0);
}

void FormExpr::add_term(Monomial m, const LaurentPoly& c) {
    int sign = normalize_monomial(m);
    if (sign == 0 || c.is_zero()) return;
    LaurentPoly add = (sign == 1) ? c : c * cplx(-1, 0);
    auto [it, inserted] = terms_.emplace(std::move(m), add);
    if (!inserted) it->second = it->second + add;
    if (it->second.is_zero()) terms_.erase(it);
}

FormExpr FormExpr::operator+(const FormExpr& o) const {
    FormExpr r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

FormExpr FormExpr::operator-(const FormExpr& o) const {
    FormExpr r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c * cplx(-1, 0));
    return r;
}

FormExpr FormExpr::operator*(cplx s) const {
    FormExpr r(genus());
    if (s == cplx{0, 0}) return r;
    for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
    return r;
}

FormExpr FormExpr::operator*(const LaurentPoly& s) const {
    FormExpr r(genus());
    for (const auto& [m, c] : terms_) {
        LaurentPoly p = c * s;
        if (!p.is_zero()) r.terms_[m] = p;
    }
    return r;
}

FormExpr FormExpr::conjugated() const {
    FormExpr r(genus());
    for (const auto& [m, c] : terms_) {
        Monomial mapped(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) mapped[i] = gens_.conjugate(m[i]);
        r.add_term(std::move(mapped), c.conjugated());
    }
    return r;
}

FormExpr FormExpr::eval_lambda(cplx lambda) const {
    FormExpr r(genus());
    for (const auto& [m, c] : terms_) r.add_term(m, LaurentPoly::constant(c.eval(lambda)));
    return r;
}

FormExpr FormExpr::restrict_unitary() const {
    FormExpr r(genus());
    const int g = genus();
    for (const auto& [m, c] : terms_) {
        Monomial mapped(m.size());
        int sign = 1;
        for (std::size_t i = 0; i < m.size(); ++i) {
            int id = m[i];
            if (id >= 2 * g && id < 3 * g) { // dtbar_i -> -ds_i
                mapped[i] = g + (id - 2 * g);
                sign = -sign;
            } else if (id >= 3 * g && id < 4 * g) { // dsbar_i -> -dt_i
                mapped[i] = id - 3 * g;
                sign = -sign;
            } else {
                mapped[i] = id;
            }
        }
        r.add_term(std::move(mapped), c * cplx(sign, 0));
    }
    return r;
}

FormExpr FormExpr::lambda_component(int degree) const {
    FormExpr r(genus());
    for (const auto& [m, c] : terms_) {
        cplx v = c.coeff(degree);
        if (v != cplx{0, 0}) r.terms_[m] = LaurentPoly::constant(v);
    }
    return r;
}

FormExpr FormExpr::drop_dlambda() const {
    FormExpr r(genus());
    for (const auto& [m, c] : terms_) {
        bool has = std::find(m.begin(), m.end(), gens_.dlambda()) != m.end();
        if (!has) r.terms_[m] = c;
    }
    return r;
}

int FormExpr::min_lambda_degree() const {
    int d = LaurentPoly::kMaxDeg + 1;
    for (const auto& [m, c] : terms_) d = std::min(d, c.min_degree());
    return terms_.empty() ? 0 : d;
}

int FormExpr::max_lambda_degree() const {
    int d = LaurentPoly::kMinDeg - 1;
    for (const auto& [m, c] : terms_) d = std::max(d, c.max_degree());
    return terms_.empty() ? 0 : d;
}

double FormExpr::max_abs_coeff() const {
    double v = 0.0;
    for (const auto& [m, c] : terms_) v = std::max(v, c.max_abs());
    return v;
}

bool FormExpr::is_zero(double tol) const {
    for (const auto& [m, c] : terms_)
        if (!c.is_zero(tol)) return false;
    return true;
}

std::string FormExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(";
        bool fc = true;
        for (int d = LaurentPoly::kMinDeg; d <= LaurentPoly::kMaxDeg; ++d) {
            cplx v = c.coeff(d);
            if (v == cplx{0, 0}) continue;
            if (!fc) os << " + ";
            fc = false;
            os << v;
            if (d != 0) os << "*L^" << d;
        }
        os << ")";
        for (int id : m) os << " " << gens_.name(id);
    }
    return os.str();
}

FormExpr wedge(const FormExpr& x, const FormExpr& y) {
    FormExpr r(x.genus());
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) {
            Monomial m;
            m.reserve(mx.size() + my.size());
            m.insert(m.end(), mx.begin(), mx.end());
            m.insert(m.end(), my.begin(), my.end());
            r.add_term(std::move(m), cx * cy);
        }
    return r;
}

// -------------------------------------------------------------- fiber pairing

cplx fiber_pairing(const PeriodMatrix& om, const RelClass& c1, const RelClass& c2) {
    const int g = om.genus();
    if (c1.genus != g || c2.genus != g) throw Error("GenusMismatch", "fiber_pairing");
    cplx out{0, 0};
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            cplx pair = -2.0 * kI * om.imag()(i, j);
            out += c1.omega(i) * c2.omegabar(j) * pair;
            out -= c1.omegabar(i) * c2.omega(j) * pair; // pi_*(conj u holo) = +2i Im
        }
    return out;
}

// -------------------------------------------------------- Gauss-Manin algebra

GaussManinInvariant GaussManinInvariant::zero(int g) {
    GaussManinInvariant v;
    v.genus = g;
    v.omega_coeff.assign(g, FormExpr::zero(g));
    v.omegabar_coeff.assign(g, FormExpr::zero(g));
    return v;
}

GaussManinInvariant GaussManinInvariant::universal(int g) {
    GaussManinInvariant v = zero(g);
    Generators gens{g};
    for (int i = 0; i < g; ++i) {
        v.omega_coeff[i] = FormExpr::generator(g, gens.dt(i));
        v.omegabar_coeff[i] = FormExpr::generator(g, gens.ds(i));
    }
    return v;
}

GaussManinInvariant GaussManinInvariant::chern_family(int g) {
    GaussManinInvariant v = zero(g);
    Generators gens{g};
    for (int i = 0; i < g; ++i) {
        v.omega_coeff[i] = FormExpr::generator(g, gens.dsbar(i)) * cplx(-1, 0);
        v.omegabar_coeff[i] = FormExpr::generator(g, gens.ds(i));
    }
    return v;
}

GaussManinInvariant GaussManinInvariant::holomorphic_part() const {
    GaussManinInvariant v = *this;
    for (FormExpr& f : v.omegabar_coeff) f = FormExpr::zero(genus);
    return v;
}

GaussManinInvariant GaussManinInvariant::antiholomorphic_part() const {
    GaussManinInvariant v = *this;
    for (FormExpr& f : v.omega_coeff) f = FormExpr::zero(genus);
    return v;
}

GaussManinInvariant GaussManinInvariant::conjugated() const {
    GaussManinInvariant v = zero(genus);
    for (int i = 0; i < genus; ++i) {
        v.omega_coeff[i] = omegabar_coeff[i].conjugated();
        v.omegabar_coeff[i] = omega_coeff[i].conjugated();
    }
    return v;
}

FormExpr gm_cup_pushforward(const PeriodMatrix& om, const GaussManinInvariant& a,
                            const GaussManinInvariant& b) {
    const int g = om.genus();
    if (a.genus != g || b.genus != g) throw Error("GenusMismatch", "gm_cup_pushforward");
    FormExpr out = FormExpr::zero(g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            cplx pair = -2.0 * kI * om.imag()(i, j);
            out = out + wedge(a.omega_coeff[i], b.omegabar_coeff[j]) * pair;
            out = out - wedge(a.omegabar_coeff[i], b.omega_coeff[j]) * pair;
        }
    return out;
}

FormExpr intersection_curvature(const PeriodMatrix& om, const GaussManinInvariant& nu_l,
                                const GaussManinInvariant& nu_m) {
    return gm_cup_pushforward(om, nu_l, nu_m) * (1.0 / kTwoPiI);
}

FormExpr trace_curvature(const PeriodMatrix& om, const GaussManinInvariant& nu_l,
                         const GaussManinInvariant& nu_m) {
    GaussManinInvariant l1 = nu_l.holomorphic_part();
    GaussManinInvariant l2 = nu_l.antiholomorphic_part();
    GaussManinInvariant m2 = nu_m.antiholomorphic_part();
    FormExpr f = gm_cup_pushforward(om, l1, m2) - gm_cup_pushforward(om, l2, m2.conjugated());
    return f * (1.0 / kTwoPiI);
}

} // namespace delpair
