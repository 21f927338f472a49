/**
 * Exact linear algebra over the rationals and the integers: reduced row
 * echelon forms, kernel/image bases, maps induced on subquotients, Smith
 * normal form and integer kernels of rational matrices.
 *
 * Everything here is deterministic: pivots are always the first usable
 * column in echelon order, so repeated runs produce identical bases.
 */

#ifndef HCE_LINALG_HPP
#define HCE_LINALG_HPP

#include <vector>

#include "hce/scalar.hpp"

namespace hce {

/** A map on subquotients failed to descend (precondition violation). */
struct DescentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Reduced row echelon form together with its pivot bookkeeping.
 */
template <typename Scalar>
struct EchelonForm {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> reduced;
    std::vector<Index> pivotCols;  // pivot column of row i, strictly increasing
    Index rank() const { return static_cast<Index>(pivotCols.size()); }
};

/**
 * Gauss-Jordan elimination with exact scalar arithmetic.  The pivot in each
 * column is the first nonzero entry scanning down; pivots are normalised
 * to 1 and cleared above and below.
 */
template <typename Scalar>
EchelonForm<Scalar> rowEchelonForm(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m)
{
    EchelonForm<Scalar> out;
    const Index rows = m.rows(), cols = m.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c)
    {
        Index pivot = -1;
        for (Index i = r; i < rows; ++i)
            if (m(i, c) != 0) { pivot = i; break; }
        if (pivot == -1)
            continue;
        if (pivot != r)
            m.row(pivot).swap(m.row(r));
        Scalar inv = Scalar(1) / m(r, c);
        for (Index j = c; j < cols; ++j)
            m(r, j) *= inv;
        for (Index i = 0; i < rows; ++i)
        {
            if (i == r || m(i, c) == 0)
                continue;
            Scalar f = m(i, c);
            for (Index j = c; j < cols; ++j)
                m(i, j) -= f * m(r, j);
        }
        out.pivotCols.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

template <typename Scalar>
Index rank(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m)
{
    return rowEchelonForm<Scalar>(m).rank();
}

/**
 * Basis of the (right) null space {v : Mv = 0}, as columns.  The basis is
 * the standard one read off the reduced echelon form: one vector per free
 * column, with a 1 in the free coordinate.
 */
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
kernelBasisOf(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m)
{
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const auto ech = rowEchelonForm<Scalar>(m);
    const Index cols = m.cols();
    std::vector<Index> freeCols;
    {
        std::size_t next = 0;
        for (Index c = 0; c < cols; ++c)
        {
            if (next < ech.pivotCols.size() && ech.pivotCols[next] == c)
                ++next;
            else
                freeCols.push_back(c);
        }
    }
    Mat basis = Mat::Zero(cols, static_cast<Index>(freeCols.size()));
    for (std::size_t k = 0; k < freeCols.size(); ++k)
    {
        const Index f = freeCols[k];
        basis(f, static_cast<Index>(k)) = Scalar(1);
        for (std::size_t i = 0; i < ech.pivotCols.size(); ++i)
            basis(ech.pivotCols[i], static_cast<Index>(k)) = -ech.reduced(static_cast<Index>(i), f);
    }
    return basis;
}

/**
 * Basis of the column space: the original columns sitting at pivot
 * positions, in order.
 */
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
imageBasisOf(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m)
{
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const auto ech = rowEchelonForm<Scalar>(m);
    Mat basis(m.rows(), ech.rank());
    for (Index k = 0; k < ech.rank(); ++k)
        basis.col(k) = m.col(ech.pivotCols[static_cast<std::size_t>(k)]);
    return basis;
}

/**
 * Solve A X = B exactly for all columns of B at once.  Free variables are
 * set to zero, so the solution is deterministic.
 *
 * @returns The solution matrix, or throws DescentError if some column of B
 *          is outside the column space of A.
 */
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
solveExact(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
           const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& b)
{
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (a.rows() != b.rows())
        throw std::invalid_argument("solveExact: row count mismatch");
    Mat aug(a.rows(), a.cols() + b.cols());
    aug << a, b;
    const auto ech = rowEchelonForm<Scalar>(aug);
    for (Index pc : ech.pivotCols)
        if (pc >= a.cols())
            throw DescentError("solveExact: right-hand side not in column span");
    Mat x = Mat::Zero(a.cols(), b.cols());
    for (std::size_t i = 0; i < ech.pivotCols.size(); ++i)
        x.row(ech.pivotCols[i]) = ech.reduced.block(static_cast<Index>(i), a.cols(), 1, b.cols());
    return x;
}

/** True iff every column of v lies in the column span of basis. */
template <typename Scalar>
bool inSpan(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& basis,
            const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& v)
{
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Mat aug(basis.rows(), basis.cols() + v.cols());
    aug << basis, v;
    return rank<Scalar>(aug) == rank<Scalar>(basis);
}

/**
 * A spanned subspace of Q^ambient, carried as an independent column basis.
 */
struct Subspace {
    Index ambient = 0;
    QMatrix basis;  // ambient x dim, columns linearly independent

    Index dim() const { return basis.cols(); }

    /** Span of arbitrary columns; dependent columns are dropped. */
    static Subspace span(Index ambientDim, const QMatrix& columns);
    /** The zero subspace. */
    static Subspace zero(Index ambientDim);
    /** The whole space, with the standard basis. */
    static Subspace full(Index ambientDim);
};

/** Intersection of two column spans inside the same ambient space. */
QMatrix intersectSpans(const QMatrix& a, const QMatrix& b);

/** Span of the union of two generating sets. */
QMatrix sumSpans(const QMatrix& a, const QMatrix& b);

/** Basis of {x : Mx in span(w)}. */
QMatrix preimageOfSpan(const QMatrix& m, const QMatrix& w);

/**
 * Columns of z whose classes complete span(b) to span([b z]);`indices`
 * reports their positions inside z.  This is the deterministic quotient
 * basis used everywhere: pivot columns of [b | z] beyond the b block.
 */
struct QuotientReps {
    QMatrix reps;
    std::vector<Index> indices;
};
QuotientReps pickQuotientReps(const QMatrix& b, const QMatrix& z);

/**
 * Coordinates of v in the quotient span([b q])/span(b) with respect to the
 * classes of the columns of q: solve [b q] c = v and keep the q block.
 */
QMatrix quotientCoords(const QMatrix& b, const QMatrix& q, const QMatrix& v);

/**
 * Matrix of the map induced by m on the quotients
 * span(domCycles)/span(domBoundaries) -> span(codCycles)/span(codBoundaries),
 * in the deterministic quotient bases of pickQuotientReps.
 *
 * Throws DescentError when m does not map cycles to cycles or boundaries to
 * boundaries, or when the boundary spaces are not contained in the cycle
 * spaces ("map does not descend").
 */
QMatrix inducedMap(const QMatrix& m,
                   const Subspace& domCycles, const Subspace& domBoundaries,
                   const Subspace& codCycles, const Subspace& codBoundaries);

/** kernel/image entry points on the Subspace vocabulary. */
Subspace kernelBasis(const QMatrix& m);
Subspace imageBasis(const QMatrix& m);

/**
 * Smith normal form of an integer matrix: D = U M V with U, V unimodular,
 * D diagonal with nonnegative entries and d_i | d_{i+1}.
 */
struct SmithResult {
    IMatrix u, d, v;
};
SmithResult smithNormalForm(IMatrix m);

/**
 * Basis of the lattice {g integral : Mg = 0} for a rational matrix M,
 * returned as columns of an integer matrix of full column rank.
 */
IMatrix integerKernel(const QMatrix& m);

/** Exact determinant (echelon with pivot tracking); for test oracles. */
Rational determinant(QMatrix m);

}  // namespace hce

#endif  // HCE_LINALG_HPP
