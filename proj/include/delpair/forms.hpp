#ifndef DELPAIR_FORMS_HPP
#define DELPAIR_FORMS_HPP

#include "delpair/period.hpp"

#include <array>
#include <map>
#include <string>

namespace delpair {

// Laurent polynomial in the formal variable lambda, degrees in [-4, 4].
// The window is deliberate: the twistor expansion needs exactly -2..1, and
// an overflow signals an algebra bug.
class LaurentPoly {
public:
    static constexpr int kMinDeg = -4;
    static constexpr int kMaxDeg = 4;

    LaurentPoly() { c_.fill(cplx{0, 0}); }
    static LaurentPoly constant(cplx v);
    static LaurentPoly monomial(int degree, cplx v);

    cplx coeff(int degree) const;
    void set(int degree, cplx v);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator*(cplx s) const;
    LaurentPoly conjugated() const; // conjugates coefficients; lambda stays formal
    cplx eval(cplx lambda) const;

    bool is_zero(double tol = 0.0) const;
    double max_abs() const;
    int min_degree() const; // lowest degree with nonzero coefficient; 0 if zero
    int max_degree() const;

private:
    std::array<cplx, kMaxDeg - kMinDeg + 1> c_;
};

// 1-form generators over the moduli coordinates: dt_i, ds_i, their conjugates,
// and dlambda. Encoded as small integers; kind order fixes the monomial sort.
struct Generators {
    int genus;

    int dt(int i) const { return i; }
    int ds(int i) const { return genus + i; }
    int dtbar(int i) const { return 2 * genus + i; }
    int dsbar(int i) const { return 3 * genus + i; }
    int dlambda() const { return 4 * genus; }
    int count() const { return 4 * genus + 1; }

    bool is_dlambda(int id) const { return id == 4 * genus; }
    int conjugate(int id) const; // dt <-> dtbar, ds <-> dsbar, dlambda fixed
    std::string name(int id) const;
};

using Monomial = std::vector<int>; // strictly increasing generator ids

// Element of the exterior algebra over the generators with LaurentPoly coefficients.
class FormExpr {
public:
    FormExpr() = default;
    explicit FormExpr(int genus) : gens_{genus} {}

    static FormExpr zero(int genus) { return FormExpr(genus); }
    static FormExpr generator(int genus, int id);
    static FormExpr scalar(int genus, cplx v);

    int genus() const { return gens_.genus; }
    const std::map<Monomial, LaurentPoly>& terms() const { return terms_; }
    LaurentPoly coeff(const Monomial& m) const;
    void add_term(Monomial m, const LaurentPoly& c); // sorts and signs the monomial

    FormExpr operator+(const FormExpr& o) const;
    FormExpr operator-(const FormExpr& o) const;
    FormExpr operator*(cplx s) const;
    FormExpr operator*(const LaurentPoly& s) const;

    // conjugate coefficients, flip conjugation bits; lambda is kept formal
    FormExpr conjugated() const;

    // substitute a numeric lambda into the coefficients (degree collapses to 0)
    FormExpr eval_lambda(cplx lambda) const;

    // pull back along the unitary locus t = -conj(s): dtbar_i -> -ds_i, dsbar_i -> -dt_i
    FormExpr restrict_unitary() const;

    // extract the sub-form whose coefficients sit at a single lambda degree
    FormExpr lambda_component(int degree) const;
    // drop every monomial containing dlambda
    FormExpr drop_dlambda() const;

    int min_lambda_degree() const;
    int max_lambda_degree() const;

    double max_abs_coeff() const;
    bool is_zero(double tol = 0.0) const;
    std::string to_string() const;

private:
    void prune();

    Generators gens_{0};
    std::map<Monomial, LaurentPoly> terms_;
};

FormExpr wedge(const FormExpr& x, const FormExpr& y);

// Class in relative deRham cohomology: coefficients over {omega_i (first g),
// conj(omega_i) (last g)}.
struct RelClass {
    int genus = 0;
    cvec coeff; // size 2g

    static RelClass zero(int g) { return {g, cvec(2 * g, cplx{0, 0})}; }
    cplx omega(int i) const { return coeff[i]; }
    cplx omegabar(int i) const { return coeff[genus + i]; }
};

// Fiber integration of a cup product via the Riemann bilinear relations:
//   pi_*(omega_i u conj(omega_j)) = -2i (Im Omega)_ij, holomorphic x holomorphic = 0.
cplx fiber_pairing(const PeriodMatrix& om, const RelClass& c1, const RelClass& c2);

// Gauss-Manin invariant: each cohomology basis class paired with a base 1-form.
struct GaussManinInvariant {
    int genus = 0;
    std::vector<FormExpr> omega_coeff;    // paired with omega_i
    std::vector<FormExpr> omegabar_coeff; // paired with conj(omega_i)

    static GaussManinInvariant zero(int g);
    // universal family: omega_i <-> dt_i, conj(omega_i) <-> ds_i
    static GaussManinInvariant universal(int g);
    // family of Chern connections of the universal bundle: omega_i <-> -dsbar_i,
    // conj(omega_i) <-> ds_i
    static GaussManinInvariant chern_family(int g);

    GaussManinInvariant holomorphic_part() const;     // keep omega block
    GaussManinInvariant antiholomorphic_part() const; // keep conj block
    GaussManinInvariant conjugated() const;
};

// pi_*(A cup B) as a 2-form on the base.
FormExpr gm_cup_pushforward(const PeriodMatrix& om, const GaussManinInvariant& a,
                            const GaussManinInvariant& b);

// Curvature of the intersection connection: (1/2 pi i) pi_*(A cup B).
FormExpr intersection_curvature(const PeriodMatrix& om, const GaussManinInvariant& nu_l,
                                const GaussManinInvariant& nu_m);

// Curvature of the trace connection for a constant-period family (vanishing
// period-map derivative):
//   (1/2 pi i) pi_*( A' cup B'' - A'' cup conj(B'') ).
FormExpr trace_curvature(const PeriodMatrix& om, const GaussManinInvariant& nu_l,
                         const GaussManinInvariant& nu_m);

} // namespace delpair

#endif
