/**
 * Hochschild and cyclic cohomology of a finite-dimensional algebra given by
 * structure constants: the operators b, B0, A, B, the (b,B)-bicomplex, the
 * total-complex periodic cohomology, and the E-infinity quotients of the
 * filtration by the number of B-steps.
 *
 * A degree-n cochain is a multilinear functional on n+1 algebra arguments,
 * stored as its value tensor on basis tuples, flattened row-major (first
 * argument varies slowest).
 */

#ifndef HCE_CYCLIC_HPP
#define HCE_CYCLIC_HPP

#include <optional>

#include "hce/complexes.hpp"

namespace hce {

/**
 * A finite-dimensional algebra over Q by structure constants:
 * e_i * e_j = sum_k c(i,j,k) e_k.
 */
class FDAlgebra {
 public:
    Index dim = 0;
    std::vector<Rational> structure;   // flattened (i*dim + j)*dim + k
    std::optional<QVector> unit;       // coordinates of the unit, when declared

    FDAlgebra() = default;
    FDAlgebra(Index d, std::vector<Rational> c, std::optional<QVector> u = std::nullopt);

    const Rational& structureConst(Index i, Index j, Index k) const;
    Rational& structureConst(Index i, Index j, Index k);

    /** Product of coordinate vectors. */
    QVector multiply(const QVector& x, const QVector& y) const;

    /** Associativity on all basis triples, and the unit axioms if declared. */
    Verdict validate() const;

    bool isUnital() const { return unit.has_value(); }

    // Ready-made algebras used as fixtures and acceptance inputs.
    static FDAlgebra groundField();                 // Q
    static FDAlgebra product2();                    // Q x Q
    static FDAlgebra matrix2();                     // 2x2 matrices, basis e11,e12,e21,e22
    static FDAlgebra dualNumbers();                 // Q[eps]/(eps^2), basis 1, eps
    static FDAlgebra polynomialQuotient(const std::vector<Rational>& monic);  // Q[x]/(p)
};

/**
 * Adjoin a unit unconditionally: dimension grows by one and the new basis
 * vector is a two-sided identity, whether or not the input already had one.
 */
FDAlgebra adjoinUnit(const FDAlgebra& a);

/** A Hochschild cochain: degree n and the value tensor, dim^(n+1) entries. */
struct Cochain {
    int degree = 0;
    QVector values;
};

/** Number of coordinates of a degree-n cochain. */
Index cochainSpaceDim(const FDAlgebra& a, int degree);

/** Matrix of the Hochschild differential b : C^n -> C^{n+1}. */
QMatrix hochschildBMatrix(const FDAlgebra& a, int degree);

/** b applied to one cochain. */
Cochain hochschildB(const FDAlgebra& a, const Cochain& phi);

/**
 * Matrix of the signed cyclic shift lambda on C^n:
 * (lambda phi)(a_0,...,a_n) = (-1)^n phi(a_n, a_0, ..., a_{n-1}).
 * Cyclic cochains are exactly its fixed vectors.
 */
QMatrix cyclicShiftMatrix(const FDAlgebra& a, int degree);

/** Matrix of A = sum of the signed cyclic powers on C^n. */
QMatrix cyclicSymmetrizerMatrix(const FDAlgebra& a, int degree);

/** The projection (1/(n+1)) A phi onto cyclic cochains. */
Cochain projectCyclic(const FDAlgebra& a, const Cochain& phi);

/** Basis of the cyclic cochain subspace of C^n. */
QMatrix cyclicSubspaceBasis(const FDAlgebra& a, int degree);

/** Matrix of B0 : C^{n+1} -> C^n; requires a declared unit. */
QMatrix connesB0Matrix(const FDAlgebra& a, int degree);

/** Matrix of B = A B0 : C^{n+1} -> C^n; requires a declared unit. */
QMatrix connesBMatrix(const FDAlgebra& a, int degree);

/** B applied to one cochain (degree drops by one). */
Cochain connesB(const FDAlgebra& a, const Cochain& phi);

/** Cohomology at one degree: dimension and representative cocycles. */
struct CohomologyResult {
    Index dim = 0;
    QMatrix representatives;   // cochain-space coordinates, one column each
};

CohomologyResult hochschildCohomology(const FDAlgebra& a, int degree);
CohomologyResult cyclicCohomology(const FDAlgebra& a, int degree);

/**
 * Exactness at the Hochschild node of the SBI couple in degree n:
 * the image of I : HC^n -> H^n must equal the kernel of B : H^n -> HC^{n-1}.
 */
struct SbiReport {
    Index hDim = 0;
    Index imageI = 0;
    Index kernelB = 0;
    bool equal = false;        // as subspaces of H^n, not only dimensions
};
SbiReport sbiCheck(const FDAlgebra& a, int degree);

/**
 * The (b,B)-bicomplex window: C(m,n) = C^{m-n}(A) for m >= n, with
 * D1 = (m-n+1) b raising m and D2 = B/(m-n) raising n (zero on m = n).
 */
Bicomplex buildBBBicomplex(const FDAlgebra& a, int mMax, int nMax);

/**
 * Dimension of the total-complex cohomology in the requested parity,
 * evaluated at the deepest total degree the window determines.  `stable`
 * requires agreement with the next-lower degree of the same parity and
 * with the same computation at window + 1.
 */
struct PeriodicResult {
    Index dim = 0;
    bool stable = false;
    int evaluatedDegree = 0;
};
PeriodicResult periodicCohomology(const FDAlgebra& a, int parity, int window);

/**
 * dim E_inf^n(A): the E-infinity quotient of the filtration by B-steps in
 * the bidegree whose diagonal carries Hochschild degree n.  `determined`
 * is false when the window cannot decide the value.
 */
struct EinfResult {
    Index dim = 0;
    bool determined = false;
    bool stable = false;
    int evaluatedDegree = 0;   // total degree used
};
EinfResult algebraEinf(const FDAlgebra& a, int degree, int window);

}  // namespace hce

#endif  // HCE_CYCLIC_HPP
