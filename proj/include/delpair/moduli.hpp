#ifndef DELPAIR_MODULI_HPP
#define DELPAIR_MODULI_HPP

#include "delpair/forms.hpp"

namespace delpair {

// Point of the deRham moduli space in the coordinates nu = sum t_i omega_i + s_i conj(omega_i).
struct DeRhamPoint {
    int genus = 0;
    cvec t;
    cvec s;

    static DeRhamPoint make(cvec t, cvec s);
    static DeRhamPoint zero(int g) { return {g, cvec(g, cplx{0, 0}), cvec(g, cplx{0, 0})}; }
    // distance to the unitary locus t = -conj(s)
    double unitary_defect() const;
};

// Character exponents: chi(alpha_j) = exp(2 pi i a_j), chi(beta_j) = exp(2 pi i b_j).
struct BettiCharacter {
    int genus = 0;
    cvec a;
    cvec b;
    bool normalized = false; // Re parts reduced into [0,1)

    BettiCharacter normalize() const;
};

// Point of the Jacobian: reduced lift u with the recorded lattice shift,
// original = u + m + Omega n.
struct JacobianPoint {
    int genus = 0;
    cvec u;
    std::vector<int> m;
    std::vector<int> n;
};

// Holonomy of the flat connection: 2 pi i a_j = t_j + s_j,
// 2 pi i b_j = sum_k t_k Omega_kj + s_k conj(Omega)_kj.
BettiCharacter betti_of_deRham(const DeRhamPoint& p, const PeriodMatrix& om);

// Character of the Chern connection: 2 pi i a_j = s_j - conj(s_j),
// 2 pi i b_j = sum_k s_k conj(Omega)_kj - conj(s_k) Omega_kj. Output is real.
BettiCharacter unitary_betti(const DeRhamPoint& p, const PeriodMatrix& om);

// u_j = -(1/pi) sum_k s_k (Im Omega)_kj, reduced to the canonical lift.
JacobianPoint jacobian_of_deRham(const DeRhamPoint& p, const PeriodMatrix& om);

// Section of the Jacobian into the unitary locus:
// s_j = -pi sum_k u_k (Im Omega)^{-1}_kj, t = -conj(s).
DeRhamPoint unitary_section(const cvec& u, const PeriodMatrix& om);

// Gauss-Manin invariant of the universal family (identity pairings).
GaussManinInvariant gm_invariant(int genus);

// Curvature of the trace connection on the pairing of the universal bundle with
// the family through nu_m_point. Only the antiholomorphic variation of the
// second family enters, which is the same for every point of the atlas.
FormExpr trace_curvature_at(const PeriodMatrix& om, const GaussManinInvariant& nu_l,
                            const DeRhamPoint& nu_m_point);

// Reduce u modulo Z^g + Omega Z^g to real coordinates in [0,1)^2g.
JacobianPoint reduce_mod_lattice(const cvec& u, const PeriodMatrix& om);

// Distance of u1 - u2 to the nearest lattice point.
double lattice_distance(const cvec& u1, const cvec& u2, const PeriodMatrix& om);

// |u_jacobian(p) - (b - a^T Omega)| mod lattice, both routes independent.
double jacobian_cross_check(const DeRhamPoint& p, const PeriodMatrix& om);

} // namespace delpair

#endif
