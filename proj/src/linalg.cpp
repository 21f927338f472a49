#include "hce/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace hce {

Rational parseRational(const std::string& text)
{
    const auto slash = text.find('/');
    const std::string numPart = text.substr(0, slash);
    auto checkInteger = [&](const std::string& s, bool allowSign) {
        if (s.empty())
            throw ParseError("empty rational component in \"" + text + "\"");
        std::size_t start = (allowSign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (start == s.size())
            throw ParseError("sign without digits in \"" + text + "\"");
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw ParseError("invalid rational literal \"" + text + "\"");
    };
    checkInteger(numPart, true);
    Integer num(numPart);
    Integer den(1);
    if (slash != std::string::npos)
    {
        const std::string denPart = text.substr(slash + 1);
        checkInteger(denPart, false);
        den = Integer(denPart);
        if (den == 0)
            throw ParseError("zero denominator in \"" + text + "\"");
    }
    return Rational(num, den);
}

std::string formatRational(const Rational& value)
{
    std::ostringstream os;
    os << value;
    return os.str();
}

Subspace Subspace::span(Index ambientDim, const QMatrix& columns)
{
    if (columns.rows() != ambientDim)
        throw std::invalid_argument("Subspace::span: ambient dimension mismatch");
    return Subspace{ambientDim, imageBasisOf<Rational>(columns)};
}

Subspace Subspace::zero(Index ambientDim)
{
    return Subspace{ambientDim, QMatrix(ambientDim, 0)};
}

Subspace Subspace::full(Index ambientDim)
{
    return Subspace{ambientDim, QMatrix(QMatrix::Identity(ambientDim, ambientDim))};
}

QMatrix intersectSpans(const QMatrix& a, const QMatrix& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("intersectSpans: ambient mismatch");
    if (a.cols() == 0 || b.cols() == 0)
        return QMatrix(a.rows(), 0);
    QMatrix stacked(a.rows(), a.cols() + b.cols());
    stacked << a, -b;
    QMatrix ker = kernelBasisOf<Rational>(stacked);
    QMatrix result = a * ker.topRows(a.cols());
    // Columns are independent when a and b each have independent columns;
    // prune anyway so arbitrary generating sets are accepted.
    return imageBasisOf<Rational>(result);
}

QMatrix sumSpans(const QMatrix& a, const QMatrix& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("sumSpans: ambient mismatch");
    QMatrix joined(a.rows(), a.cols() + b.cols());
    joined << a, b;
    return imageBasisOf<Rational>(joined);
}

QMatrix preimageOfSpan(const QMatrix& m, const QMatrix& w)
{
    if (m.rows() != w.rows())
        throw std::invalid_argument("preimageOfSpan: ambient mismatch");
    if (w.cols() == 0)
        return kernelBasisOf<Rational>(m);
    QMatrix stacked(m.rows(), m.cols() + w.cols());
    stacked << m, -w;
    QMatrix ker = kernelBasisOf<Rational>(stacked);
    return imageBasisOf<Rational>(QMatrix(ker.topRows(m.cols())));
}

QuotientReps pickQuotientReps(const QMatrix& b, const QMatrix& z)
{
    if (b.rows() != z.rows())
        throw std::invalid_argument("pickQuotientReps: ambient mismatch");
    QMatrix joined(b.rows(), b.cols() + z.cols());
    joined << b, z;
    const auto ech = rowEchelonForm<Rational>(joined);
    QuotientReps out;
    std::vector<Index> picked;
    for (Index pc : ech.pivotCols)
        if (pc >= b.cols())
            picked.push_back(pc - b.cols());
    out.reps.resize(z.rows(), static_cast<Index>(picked.size()));
    for (std::size_t k = 0; k < picked.size(); ++k)
        out.reps.col(static_cast<Index>(k)) = z.col(picked[k]);
    out.indices = std::move(picked);
    return out;
}

QMatrix quotientCoords(const QMatrix& b, const QMatrix& q, const QMatrix& v)
{
    QMatrix joined(b.rows(), b.cols() + q.cols());
    joined << b, q;
    QMatrix sol = solveExact<Rational>(joined, v);
    return sol.bottomRows(q.cols());
}

QMatrix inducedMap(const QMatrix& m,
                   const Subspace& domCycles, const Subspace& domBoundaries,
                   const Subspace& codCycles, const Subspace& codBoundaries)
{
    if (m.cols() != domCycles.ambient || m.rows() != codCycles.ambient)
        throw std::invalid_argument("inducedMap: matrix shape does not match ambient spaces");
    if (domBoundaries.ambient != domCycles.ambient || codBoundaries.ambient != codCycles.ambient)
        throw std::invalid_argument("inducedMap: ambient mismatch between cycles and boundaries");
    if (!inSpan<Rational>(domCycles.basis, domBoundaries.basis))
        throw DescentError("map does not descend: domain boundaries not inside cycles");
    if (!inSpan<Rational>(codCycles.basis, codBoundaries.basis))
        throw DescentError("map does not descend: codomain boundaries not inside cycles");
    if (!inSpan<Rational>(codCycles.basis, QMatrix(m * domCycles.basis)))
        throw DescentError("map does not descend: image of cycles leaves codomain cycles");
    if (!inSpan<Rational>(codBoundaries.basis, QMatrix(m * domBoundaries.basis)))
        throw DescentError("map does not descend: image of boundaries leaves codomain boundaries");

    const QuotientReps domQ = pickQuotientReps(domBoundaries.basis, domCycles.basis);
    const QuotientReps codQ = pickQuotientReps(codBoundaries.basis, codCycles.basis);
    if (domQ.reps.cols() == 0)
        return QMatrix(codQ.reps.cols(), 0);
    return quotientCoords(codBoundaries.basis, codQ.reps, QMatrix(m * domQ.reps));
}

Subspace kernelBasis(const QMatrix& m)
{
    return Subspace{m.cols(), kernelBasisOf<Rational>(m)};
}

Subspace imageBasis(const QMatrix& m)
{
    return Subspace{m.rows(), imageBasisOf<Rational>(m)};
}

namespace {

// Row/column elementary operations tracked on the transforms.
void addRow(IMatrix& m, IMatrix& u, Index dst, Index src, const Integer& f)
{
    m.row(dst) += f * m.row(src);
    u.row(dst) += f * u.row(src);
}
void addCol(IMatrix& m, IMatrix& v, Index dst, Index src, const Integer& f)
{
    m.col(dst) += f * m.col(src);
    v.col(dst) += f * v.col(src);
}

Integer absInt(const Integer& x) { return x < 0 ? Integer(-x) : x; }

}  // namespace

SmithResult smithNormalForm(IMatrix m)
{
    const Index rows = m.rows(), cols = m.cols();
    IMatrix u = IMatrix::Identity(rows, rows);
    IMatrix v = IMatrix::Identity(cols, cols);

    const Index steps = std::min(rows, cols);
    for (Index t = 0; t < steps; ++t)
    {
        // Find the nonzero entry of smallest magnitude in the trailing block.
        Index pr = -1, pc = -1;
        Integer best(0);
        for (Index i = t; i < rows; ++i)
            for (Index j = t; j < cols; ++j)
                if (m(i, j) != 0)
                {
                    Integer a = absInt(m(i, j));
                    if (pr == -1 || a < best)
                    {
                        best = a;
                        pr = i;
                        pc = j;
                    }
                }
        if (pr == -1)
            break;  // trailing block is zero
        if (pr != t) { m.row(pr).swap(m.row(t)); u.row(pr).swap(u.row(t)); }
        if (pc != t) { m.col(pc).swap(m.col(t)); v.col(pc).swap(v.col(t)); }

        bool clean = false;
        while (!clean)
        {
            clean = true;
            for (Index i = t + 1; i < rows; ++i)
            {
                if (m(i, t) == 0)
                    continue;
                Integer q = m(i, t) / m(t, t);
                addRow(m, u, i, t, Integer(-q));
                if (m(i, t) != 0)
                {
                    // Remainder smaller than the pivot: promote it and restart.
                    m.row(i).swap(m.row(t));
                    u.row(i).swap(u.row(t));
                    clean = false;
                }
            }
            for (Index j = t + 1; j < cols; ++j)
            {
                if (m(t, j) == 0)
                    continue;
                Integer q = m(t, j) / m(t, t);
                addCol(m, v, j, t, Integer(-q));
                if (m(t, j) != 0)
                {
                    m.col(j).swap(m.col(t));
                    v.col(j).swap(v.col(t));
                    clean = false;
                }
            }
        }

        // Enforce divisibility of the trailing block by the pivot.
        bool divides = true;
        for (Index i = t + 1; i < rows && divides; ++i)
            for (Index j = t + 1; j < cols && divides; ++j)
                if (m(i, j) % m(t, t) != 0)
                {
                    addRow(m, u, t, i, Integer(1));
                    divides = false;
                }
        if (!divides)
        {
            --t;  // redo this step with the enlarged row
            continue;
        }
        if (m(t, t) < 0)
        {
            m.row(t) = -m.row(t);
            u.row(t) = -u.row(t);
        }
    }
    return SmithResult{std::move(u), std::move(m), std::move(v)};
}

IMatrix integerKernel(const QMatrix& m)
{
    // Clearing denominators row by row does not change the kernel.
    IMatrix scaled(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
    {
        Integer l(1);
        for (Index j = 0; j < m.cols(); ++j)
            l = boost::multiprecision::lcm(l, denominator(m(i, j)));
        for (Index j = 0; j < m.cols(); ++j)
        {
            Rational scaledEntry = m(i, j) * Rational(l);
            scaled(i, j) = numerator(scaledEntry);
        }
    }
    const SmithResult snf = smithNormalForm(scaled);
    Index r = 0;
    const Index diag = std::min(snf.d.rows(), snf.d.cols());
    while (r < diag && snf.d(r, r) != 0)
        ++r;
    // Columns of V beyond the rank span the kernel lattice.
    return snf.v.rightCols(m.cols() - r);
}

Rational determinant(QMatrix m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    const Index n = m.rows();
    Rational det(1);
    for (Index c = 0; c < n; ++c)
    {
        Index pivot = -1;
        for (Index i = c; i < n; ++i)
            if (m(i, c) != 0) { pivot = i; break; }
        if (pivot == -1)
            return Rational(0);
        if (pivot != c)
        {
            m.row(pivot).swap(m.row(c));
            det = -det;
        }
        det *= m(c, c);
        Rational inv = Rational(1) / m(c, c);
        for (Index i = c + 1; i < n; ++i)
        {
            if (m(i, c) == 0)
                continue;
            Rational f = m(i, c) * inv;
            for (Index j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

}  // namespace hce
