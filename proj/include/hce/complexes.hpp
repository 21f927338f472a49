/**
 * Finite chain complexes over Q, chain maps, equivariant complexes, exactness
 * checking, bicomplexes, and the spectral sequence of a filtered complex.
 *
 * Degrees are bounded below at 0 and supports are finite; queries outside
 * the support return zero-dimensional spaces.
 */

#ifndef HCE_COMPLEXES_HPP
#define HCE_COMPLEXES_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hce/linalg.hpp"

namespace hce {

/** Outcome of an invariant check, with the first failure described. */
struct Verdict {
    bool ok = true;
    std::string message;
};

/**
 * A finite chain complex: per-degree dimensions and boundary maps
 * d_n : C_n -> C_{n-1}.  Missing boundary entries are zero maps, so purely
 * diagonal models (spheres, tori with zero differential) need no matrices.
 */
class ChainComplex {
 public:
    std::map<int, Index> dims;         // degree -> dimension, entries > 0
    std::map<int, QMatrix> boundary;   // n -> matrix of d_n, shape dim(n-1) x dim(n)

    Index dim(int n) const;
    QMatrix boundaryAt(int n) const;   // stored matrix or zero of the right shape
    int minDegree() const;             // 0 when empty
    int maxDegree() const;             // -1 when empty

    /**
     * Shape consistency is enforced with exceptions; the d*d = 0 invariant
     * is reported through the verdict, naming the first failing degree.
     */
    Verdict validate() const;

    Index eulerCharacteristic() const;
};

/** A degreewise linear map; used for alpha and for test fixtures. */
struct ChainMap {
    std::map<int, QMatrix> maps;       // degree -> matrix
    QMatrix at(int n, Index rows, Index cols) const;
};

/**
 * A chain complex with a commuting endomorphism alpha — the finite model
 * of a current space with the action induced by a diffeomorphism.
 */
class EquivariantComplex {
 public:
    ChainComplex complex;
    ChainMap alpha;

    QMatrix alphaAt(int n) const;      // square, dim(n) x dim(n)
    Verdict validate() const;          // complex invariants + alpha commutes
};

/** Homology in one degree: dimension plus representative cycles (columns). */
struct HomologyResult {
    Index dim = 0;
    QMatrix representatives;
};

HomologyResult homology(const ChainComplex& c, int n);

/** Sums of even / odd homology dimensions over the support. */
std::pair<Index, Index> homologyParitySums(const ChainComplex& c);

/**
 * The kernel subcomplex of (1 - alpha), in kernel-basis coordinates.
 * `inclusion` maps the new coordinates back into the ambient complex.
 */
struct KernelSubcomplex {
    ChainComplex complex;
    std::map<int, QMatrix> inclusion;  // degree -> ambient x kernel-dim
};
KernelSubcomplex kerSubcomplex(const EquivariantComplex& e);

/**
 * The cokernel complex of (1 - alpha) with the induced boundary.  The
 * quotient basis in each degree is a deterministic set of standard basis
 * vectors; `section` realises it in the ambient complex and `projection`
 * is the left inverse killing im(1 - alpha).
 */
struct QuotientComplex {
    ChainComplex complex;
    std::map<int, QMatrix> section;     // degree -> ambient x quotient-dim
    std::map<int, QMatrix> projection;  // degree -> quotient-dim x ambient
};
QuotientComplex cokerComplex(const EquivariantComplex& e);

/**
 * Exactness check for 0 -> V_1 -> V_2 -> ... -> V_k -> 0 given the interior
 * maps as matrices (map i has shape dim V_{i+1} x dim V_i).
 *
 * `defects[i]` is dim ker(map_{i+1}) - dim im(map_i) at the interior node
 * V_{i+1}; exactness additionally requires injectivity at the head and
 * surjectivity at the tail, and all consecutive composites to vanish.
 */
struct ExactnessReport {
    bool exact = false;
    bool compositesVanish = true;
    Index headKernel = 0;              // dim ker of the first map
    Index tailCokernel = 0;            // codim of the image of the last map
    std::vector<Index> defects;
};
ExactnessReport checkExactSequence(const std::vector<QMatrix>& maps);

/**
 * A cochain complex over a finite degree window with a decreasing filtration
 * F^0 >= F^1 >= ... preserved by the differential.  Degrees outside the
 * window are zero when the corresponding `zeroBelow` / `zeroAbove` flag is
 * set, and unknown (truncated) otherwise; `complete[n]` records whether the
 * space at degree n is fully represented.
 */
class FilteredComplex {
 public:
    int degLo = 0, degHi = -1;
    std::map<int, Index> dims;               // per degree in [degLo, degHi]
    std::map<int, QMatrix> d;                // n -> matrix C^n -> C^{n+1}
    int filtLo = 0, filtHi = -1;             // F^{filtLo} full, F^{filtHi+1} = 0
    std::map<int, std::map<int, QMatrix>> filtration;  // degree -> stage -> basis
    bool zeroBelow = true;
    bool zeroAbove = false;
    std::map<int, bool> complete;            // degree -> fully represented?

    Index dimAt(int n) const;
    QMatrix dAt(int n) const;                // zero-shaped when absent
    QMatrix filtrationBasis(int stage, int n) const;  // full below filtLo, zero above filtHi
    bool degreeAvailable(int n) const;       // usable in subquotient formulas

    Verdict validate() const;  // nesting, d-compatibility, F^{filtLo} full
};

/** One spectral sequence entry: dimension, or flagged as undetermined. */
struct SpectralEntry {
    Index dim = 0;
    bool determined = true;
};

/**
 * Pages E_r^{p,q} of the spectral sequence of the filtration, for
 * r = 0..rMax, computed by the standard subquotient recipe
 *
 *   Z_r = F^p C^n  ∩  d^{-1}(F^{p+r} C^{n+1}),        n = p + q,
 *   E_r = Z_r / (Z_{r-1}[p+1, q-1] + d Z_{r-1}[p-r+1, q+r-2]).
 *
 * Entries whose formula touches a truncated degree are flagged rather than
 * reported as zero.  `stabilizedAt` is the first page after which all
 * determined dimensions stop changing, when that happens before rMax.
 */
struct SpectralPages {
    std::vector<std::map<std::pair<int, int>, SpectralEntry>> pages;
    std::optional<int> stabilizedAt;
};
SpectralPages spectralPages(const FilteredComplex& f, int rMax);

/**
 * A first-quadrant bicomplex window: spaces indexed by (m, n) with
 * differentials D1 raising m and D2 raising n, D1*D1 = D2*D2 = 0 and
 * D1 D2 + D2 D1 = 0 wherever all four maps exist.
 */
class Bicomplex {
 public:
    int mMax = -1, nMax = -1;
    std::map<std::pair<int, int>, Index> dims;
    std::map<std::pair<int, int>, QMatrix> d1;  // (m,n): C(m,n) -> C(m+1,n)
    std::map<std::pair<int, int>, QMatrix> d2;  // (m,n): C(m,n) -> C(m,n+1)

    Index dimAt(int m, int n) const;
    QMatrix d1At(int m, int n) const;
    QMatrix d2At(int m, int n) const;
    Verdict validate() const;
};

/**
 * Totalisation of a bicomplex window by total degree N = m + n, together
 * with the filtration by the second index.  Diagonals that the window
 * truncates are marked incomplete.
 */
FilteredComplex totalFilteredComplex(const Bicomplex& b);

/** Cohomology dimension of the total complex at degree n (window data). */
Index totalCohomologyDim(const FilteredComplex& f, int n);

}  // namespace hce

#endif  // HCE_COMPLEXES_HPP
