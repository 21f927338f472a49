#include "hce/cyclic.hpp"

#include <algorithm>

namespace hce {

namespace {

// Flat index of a basis tuple (first argument varies slowest).
Index tupleIndex(const std::vector<Index>& tuple, Index dim)
{
    Index idx = 0;
    for (Index t : tuple)
        idx = idx * dim + t;
    return idx;
}

bool nextTuple(std::vector<Index>& tuple, Index dim)
{
    for (std::size_t i = tuple.size(); i-- > 0;)
    {
        if (++tuple[i] < dim)
            return true;
        tuple[i] = 0;
    }
    return false;
}

Index powDim(Index dim, int exponent)
{
    Index out = 1;
    for (int i = 0; i < exponent; ++i)
        out *= dim;
    return out;
}

}  // namespace

FDAlgebra::FDAlgebra(Index d, std::vector<Rational> c, std::optional<QVector> u)
    : dim(d), structure(std::move(c)), unit(std::move(u))
{
    if (static_cast<Index>(structure.size()) != d * d * d)
        throw std::invalid_argument("structure tensor must have dim^3 entries");
    if (unit && unit->size() != d)
        throw std::invalid_argument("unit vector length must equal dim");
}

const Rational& FDAlgebra::structureConst(Index i, Index j, Index k) const
{
    return structure[static_cast<std::size_t>((i * dim + j) * dim + k)];
}

Rational& FDAlgebra::structureConst(Index i, Index j, Index k)
{
    return structure[static_cast<std::size_t>((i * dim + j) * dim + k)];
}

QVector FDAlgebra::multiply(const QVector& x, const QVector& y) const
{
    QVector out = QVector::Zero(dim);
    for (Index i = 0; i < dim; ++i)
    {
        if (x(i) == 0)
            continue;
        for (Index j = 0; j < dim; ++j)
        {
            if (y(j) == 0)
                continue;
            Rational f = x(i) * y(j);
            for (Index k = 0; k < dim; ++k)
                out(k) += f * structureConst(i, j, k);
        }
    }
    return out;
}

Verdict FDAlgebra::validate() const
{
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j)
            for (Index k = 0; k < dim; ++k)
            {
                for (Index q = 0; q < dim; ++q)
                {
                    Rational lhs(0), rhs(0);
                    for (Index p = 0; p < dim; ++p)
                    {
                        lhs += structureConst(i, j, p) * structureConst(p, k, q);
                        rhs += structureConst(j, k, p) * structureConst(i, p, q);
                    }
                    if (lhs != rhs)
                        return Verdict{false, "associativity fails on basis triple (" +
                                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                                  std::to_string(k) + ")"};
                }
            }
    if (unit)
    {
        for (Index i = 0; i < dim; ++i)
        {
            QVector e = QVector::Zero(dim);
            e(i) = 1;
            if (multiply(*unit, e) != e || multiply(e, *unit) != e)
                return Verdict{false, "declared unit does not act as identity on basis vector " +
                                          std::to_string(i)};
        }
    }
    return Verdict{};
}

FDAlgebra FDAlgebra::groundField()
{
    QVector u(1);
    u << 1;
    return FDAlgebra(1, {Rational(1)}, u);
}

FDAlgebra FDAlgebra::product2()
{
    std::vector<Rational> c(8, Rational(0));
    FDAlgebra a(2, std::move(c));
    a.structureConst(0, 0, 0) = 1;
    a.structureConst(1, 1, 1) = 1;
    QVector u(2);
    u << 1, 1;
    a.unit = u;
    return a;
}

FDAlgebra FDAlgebra::matrix2()
{
    // Basis e11, e12, e21, e22: e_{ab} e_{cd} = delta_{bc} e_{ad}.
    std::vector<Rational> c(64, Rational(0));
    FDAlgebra m(4, std::move(c));
    auto idx = [](Index a, Index b) { return 2 * a + b; };
    for (Index a = 0; a < 2; ++a)
        for (Index b = 0; b < 2; ++b)
            for (Index d = 0; d < 2; ++d)
                m.structureConst(idx(a, b), idx(b, d), idx(a, d)) = 1;
    QVector u(4);
    u << 1, 0, 0, 1;
    m.unit = u;
    return m;
}

FDAlgebra FDAlgebra::dualNumbers()
{
    std::vector<Rational> c(8, Rational(0));
    FDAlgebra a(2, std::move(c));
    a.structureConst(0, 0, 0) = 1;
    a.structureConst(0, 1, 1) = 1;
    a.structureConst(1, 0, 1) = 1;
    QVector u(2);
    u << 1, 0;
    a.unit = u;
    return a;
}

FDAlgebra FDAlgebra::polynomialQuotient(const std::vector<Rational>& monic)
{
    const Index d = static_cast<Index>(monic.size());
    if (d == 0)
        throw std::invalid_argument("polynomialQuotient: degree must be positive");
    // Powers of x reduced modulo x^d + a_{d-1} x^{d-1} + ... + a_0.
    std::vector<QVector> power;
    for (Index t = 0; t < d; ++t)
    {
        QVector e = QVector::Zero(d);
        e(t) = 1;
        power.push_back(e);
    }
    for (Index t = d; t <= 2 * (d - 1); ++t)
    {
        const QVector& prev = power.back();
        QVector next = QVector::Zero(d);
        for (Index i = 0; i + 1 < d; ++i)
            next(i + 1) = prev(i);
        Rational overflow = prev(d - 1);
        for (Index i = 0; i < d; ++i)
            next(i) -= overflow * monic[static_cast<std::size_t>(i)];
        power.push_back(next);
    }
    std::vector<Rational> c(static_cast<std::size_t>(d * d * d), Rational(0));
    FDAlgebra a(d, std::move(c));
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            for (Index k = 0; k < d; ++k)
                a.structureConst(i, j, k) = power[static_cast<std::size_t>(i + j)](k);
    QVector u = QVector::Zero(d);
    u(0) = 1;
    a.unit = u;
    return a;
}

FDAlgebra adjoinUnit(const FDAlgebra& a)
{
    const Index d = a.dim, dd = d + 1;
    std::vector<Rational> c(static_cast<std::size_t>(dd * dd * dd), Rational(0));
    FDAlgebra out(dd, std::move(c));
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            for (Index k = 0; k < d; ++k)
                out.structureConst(i, j, k) = a.structureConst(i, j, k);
    for (Index i = 0; i < dd; ++i)
    {
        out.structureConst(d, i, i) = 1;
        if (i < d)
            out.structureConst(i, d, i) = 1;
    }
    QVector u = QVector::Zero(dd);
    u(d) = 1;
    out.unit = u;
    return out;
}

Index cochainSpaceDim(const FDAlgebra& a, int degree)
{
    if (degree < 0)
        return 0;
    return powDim(a.dim, degree + 1);
}

QMatrix hochschildBMatrix(const FDAlgebra& a, int degree)
{
    if (degree < 0)
        throw std::invalid_argument("hochschildBMatrix: negative degree");
    const Index d = a.dim;
    const int n = degree;
    QMatrix m = QMatrix::Zero(cochainSpaceDim(a, n + 1), cochainSpaceDim(a, n));
    std::vector<Index> out(static_cast<std::size_t>(n + 2), 0);
    std::vector<Index> in(static_cast<std::size_t>(n + 1), 0);
    if (d == 0)
        return m;
    do
    {
        const Index row = tupleIndex(out, d);
        for (int i = 0; i <= n; ++i)
        {
            // phi(a_0, ..., a_i a_{i+1}, ..., a_{n+1}) with sign (-1)^i
            const Rational sign = (i % 2 == 0) ? Rational(1) : Rational(-1);
            for (std::size_t t = 0, u = 0; t < out.size(); ++t)
            {
                if (static_cast<int>(t) == i + 1)
                    continue;
                in[u++] = out[t];
            }
            for (Index k = 0; k < d; ++k)
            {
                const Rational& c = a.structureConst(out[static_cast<std::size_t>(i)],
                                                     out[static_cast<std::size_t>(i + 1)], k);
                if (c == 0)
                    continue;
                in[static_cast<std::size_t>(i)] = k;
                m(row, tupleIndex(in, d)) += sign * c;
            }
        }
        // (-1)^{n+1} phi(a_{n+1} a_0, a_1, ..., a_n)
        const Rational sign = ((n + 1) % 2 == 0) ? Rational(1) : Rational(-1);
        for (std::size_t t = 1; t <= static_cast<std::size_t>(n); ++t)
            in[t] = out[t];
        for (Index k = 0; k < d; ++k)
        {
            const Rational& c = a.structureConst(out[static_cast<std::size_t>(n + 1)], out[0], k);
            if (c == 0)
                continue;
            in[0] = k;
            m(row, tupleIndex(in, d)) += sign * c;
        }
    } while (nextTuple(out, d));
    return m;
}

Cochain hochschildB(const FDAlgebra& a, const Cochain& phi)
{
    if (phi.values.size() != cochainSpaceDim(a, phi.degree))
        throw std::invalid_argument("hochschildB: cochain shape does not match its degree");
    return Cochain{phi.degree + 1, hochschildBMatrix(a, phi.degree) * phi.values};
}

QMatrix cyclicShiftMatrix(const FDAlgebra& a, int degree)
{
    const Index d = a.dim;
    const int n = degree;
    QMatrix m = QMatrix::Zero(cochainSpaceDim(a, n), cochainSpaceDim(a, n));
    if (d == 0)
        return m;
    const Rational sign = (n % 2 == 0) ? Rational(1) : Rational(-1);
    std::vector<Index> out(static_cast<std::size_t>(n + 1), 0);
    std::vector<Index> in(static_cast<std::size_t>(n + 1), 0);
    do
    {
        // (lambda phi)(a_0, ..., a_n) = (-1)^n phi(a_n, a_0, ..., a_{n-1})
        in[0] = out[static_cast<std::size_t>(n)];
        for (std::size_t t = 1; t <= static_cast<std::size_t>(n); ++t)
            in[t] = out[t - 1];
        m(tupleIndex(out, d), tupleIndex(in, d)) = sign;
    } while (nextTuple(out, d));
    return m;
}

QMatrix cyclicSymmetrizerMatrix(const FDAlgebra& a, int degree)
{
    const Index size = cochainSpaceDim(a, degree);
    QMatrix shift = cyclicShiftMatrix(a, degree);
    QMatrix acc = QMatrix::Identity(size, size);
    QMatrix sum = QMatrix::Zero(size, size);
    for (int j = 0; j <= degree; ++j)
    {
        sum += acc;
        acc = shift * acc;
    }
    return sum;
}

Cochain projectCyclic(const FDAlgebra& a, const Cochain& phi)
{
    if (phi.values.size() != cochainSpaceDim(a, phi.degree))
        throw std::invalid_argument("projectCyclic: cochain shape does not match its degree");
    QVector symmetrized = cyclicSymmetrizerMatrix(a, phi.degree) * phi.values;
    return Cochain{phi.degree, QVector(symmetrized * Rational(1, phi.degree + 1))};
}

QMatrix cyclicSubspaceBasis(const FDAlgebra& a, int degree)
{
    const Index size = cochainSpaceDim(a, degree);
    QMatrix fixed = cyclicShiftMatrix(a, degree) - QMatrix::Identity(size, size);
    return kernelBasisOf<Rational>(fixed);
}

QMatrix connesB0Matrix(const FDAlgebra& a, int degree)
{
    if (!a.unit)
        throw InvariantError("Connes B requires a unital algebra; adjoin a unit first");
    if (degree < 0)
        throw std::invalid_argument("connesB0Matrix: negative degree");
    const Index d = a.dim;
    const int n = degree;  // target degree; source is n + 1
    QMatrix m = QMatrix::Zero(cochainSpaceDim(a, n), cochainSpaceDim(a, n + 1));
    const QVector& u = *a.unit;
    std::vector<Index> out(static_cast<std::size_t>(n + 1), 0);
    std::vector<Index> in(static_cast<std::size_t>(n + 2), 0);
    if (d == 0)
        return m;
    const Rational tailSign = ((n + 1) % 2 == 0) ? Rational(-1) : Rational(1);  // -(-1)^{n+1}
    do
    {
        const Index row = tupleIndex(out, d);
        for (Index j = 0; j < d; ++j)
        {
            if (u(j) == 0)
                continue;
            // phi(I, a^0, ..., a^n)
            in[0] = j;
            for (std::size_t t = 0; t <= static_cast<std::size_t>(n); ++t)
                in[t + 1] = out[t];
            m(row, tupleIndex(in, d)) += u(j);
            // -(-1)^{n+1} phi(a^0, ..., a^n, I)
            for (std::size_t t = 0; t <= static_cast<std::size_t>(n); ++t)
                in[t] = out[t];
            in[static_cast<std::size_t>(n + 1)] = j;
            m(row, tupleIndex(in, d)) += tailSign * u(j);
        }
    } while (nextTuple(out, d));
    return m;
}

QMatrix connesBMatrix(const FDAlgebra& a, int degree)
{
    return cyclicSymmetrizerMatrix(a, degree) * connesB0Matrix(a, degree);
}

Cochain connesB(const FDAlgebra& a, const Cochain& phi)
{
    if (phi.degree < 1)
        throw std::invalid_argument("connesB: source degree must be at least 1");
    if (phi.values.size() != cochainSpaceDim(a, phi.degree))
        throw std::invalid_argument("connesB: cochain shape does not match its degree");
    return Cochain{phi.degree - 1, connesBMatrix(a, phi.degree - 1) * phi.values};
}

CohomologyResult hochschildCohomology(const FDAlgebra& a, int degree)
{
    if (degree < 0)
        return CohomologyResult{};
    QMatrix cycles = kernelBasisOf<Rational>(hochschildBMatrix(a, degree));
    QMatrix boundaries(cochainSpaceDim(a, degree), 0);
    if (degree > 0)
        boundaries = imageBasisOf<Rational>(hochschildBMatrix(a, degree - 1));
    QuotientReps reps = pickQuotientReps(boundaries, cycles);
    return CohomologyResult{reps.reps.cols(), reps.reps};
}

namespace {

// Cycles of the cyclic subcomplex at one degree, in ambient coordinates.
QMatrix cyclicCycles(const FDAlgebra& a, int degree)
{
    QMatrix sub = cyclicSubspaceBasis(a, degree);
    QMatrix restricted = hochschildBMatrix(a, degree) * sub;
    return QMatrix(sub * kernelBasisOf<Rational>(restricted));
}

// b-boundaries of the cyclic subcomplex at one degree (image from below).
QMatrix cyclicBoundaries(const FDAlgebra& a, int degree)
{
    if (degree == 0)
        return QMatrix(cochainSpaceDim(a, 0), 0);
    QMatrix below = cyclicSubspaceBasis(a, degree - 1);
    return imageBasisOf<Rational>(QMatrix(hochschildBMatrix(a, degree - 1) * below));
}

}  // namespace

CohomologyResult cyclicCohomology(const FDAlgebra& a, int degree)
{
    if (degree < 0)
        return CohomologyResult{};
    QuotientReps reps = pickQuotientReps(cyclicBoundaries(a, degree), cyclicCycles(a, degree));
    return CohomologyResult{reps.reps.cols(), reps.reps};
}

SbiReport sbiCheck(const FDAlgebra& a, int degree)
{
    if (!a.unit)
        throw InvariantError("sbiCheck requires a unital algebra");
    if (degree < 0)
        throw std::invalid_argument("sbiCheck: negative degree");
    const Index ambient = cochainSpaceDim(a, degree);

    Subspace hCycles{ambient, kernelBasisOf<Rational>(hochschildBMatrix(a, degree))};
    QMatrix hBoundaries(ambient, 0);
    if (degree > 0)
        hBoundaries = imageBasisOf<Rational>(hochschildBMatrix(a, degree - 1));
    Subspace hBound{ambient, hBoundaries};

    SbiReport report;
    report.hDim = hCycles.dim() - hBound.dim();

    // I : HC^n -> H^n, induced by the inclusion of cyclic cochains.
    Subspace cCycles{ambient, cyclicCycles(a, degree)};
    Subspace cBound{ambient, cyclicBoundaries(a, degree)};
    QMatrix iInduced = inducedMap(QMatrix(QMatrix::Identity(ambient, ambient)),
                                  cCycles, cBound, hCycles, hBound);
    QMatrix imageI = imageBasisOf<Rational>(iInduced);
    report.imageI = imageI.cols();

    // B : H^n -> HC^{n-1}; in degree zero the target is the zero space.
    QMatrix kernelB;
    if (degree == 0)
        kernelB = QMatrix::Identity(report.hDim, report.hDim);
    else
    {
        const Index below = cochainSpaceDim(a, degree - 1);
        Subspace cCyclesBelow{below, cyclicCycles(a, degree - 1)};
        Subspace cBoundBelow{below, cyclicBoundaries(a, degree - 1)};
        QMatrix bInduced = inducedMap(connesBMatrix(a, degree - 1),
                                      hCycles, hBound, cCyclesBelow, cBoundBelow);
        kernelB = kernelBasisOf<Rational>(bInduced);
    }
    report.kernelB = kernelB.cols();
    report.equal = inSpan<Rational>(imageI, kernelB) && inSpan<Rational>(kernelB, imageI);
    return report;
}

Bicomplex buildBBBicomplex(const FDAlgebra& a, int mMax, int nMax)
{
    if (!a.unit)
        throw InvariantError("the (b,B)-bicomplex requires a unital algebra");
    if (mMax < 0 || nMax < 0)
        throw std::invalid_argument("buildBBBicomplex: window bounds must be nonnegative");
    Bicomplex b;
    b.mMax = mMax;
    b.nMax = nMax;

    std::vector<QMatrix> bMat, bigB;
    for (int k = 0; k <= mMax; ++k)
        bMat.push_back(hochschildBMatrix(a, k));
    for (int k = 1; k <= mMax; ++k)
        bigB.push_back(connesBMatrix(a, k - 1));  // C^k -> C^{k-1}

    for (int m = 0; m <= mMax; ++m)
        for (int n = 0; n <= nMax; ++n)
        {
            const int k = m - n;
            if (k < 0)
                continue;
            b.dims[{m, n}] = cochainSpaceDim(a, k);
            if (m + 1 <= mMax)
                b.d1[{m, n}] = QMatrix(Rational(k + 1) * bMat[static_cast<std::size_t>(k)]);
            if (n + 1 <= nMax && k >= 1)
                b.d2[{m, n}] = QMatrix(Rational(1, k) * bigB[static_cast<std::size_t>(k - 1)]);
        }
    return b;
}

namespace {

struct ParityEvaluation {
    Index dim = 0;
    int degree = -1;
    bool innerStable = false;
};

ParityEvaluation evaluateTotalParity(const FDAlgebra& a, int parity, int window)
{
    FilteredComplex total = totalFilteredComplex(buildBBBicomplex(a, window, window));
    int n = window - 1;
    while (n >= 0 && (n % 2) != parity)
        --n;
    ParityEvaluation eval;
    if (n < 0)
        return eval;
    eval.degree = n;
    eval.dim = totalCohomologyDim(total, n);
    if (n >= 2)
        eval.innerStable = totalCohomologyDim(total, n - 2) == eval.dim;
    return eval;
}

}  // namespace

PeriodicResult periodicCohomology(const FDAlgebra& a, int parity, int window)
{
    if (parity != 0 && parity != 1)
        throw std::invalid_argument("parity must be 0 or 1");
    if (window < 2)
        throw std::invalid_argument("periodicCohomology: window must be at least 2");
    ParityEvaluation here = evaluateTotalParity(a, parity, window);
    ParityEvaluation next = evaluateTotalParity(a, parity, window + 1);
    PeriodicResult out;
    out.dim = here.dim;
    out.evaluatedDegree = here.degree;
    out.stable = here.innerStable && next.degree >= 0 && next.dim == here.dim;
    return out;
}

namespace {

EinfResult evaluateEinf(const FDAlgebra& a, int degree, int window)
{
    EinfResult out;
    FilteredComplex total = totalFilteredComplex(buildBBBicomplex(a, window, window));
    int n = window - 1;
    while (n >= degree && ((n - degree) % 2 != 0))
        --n;
    if (n < degree)
        return out;  // window cannot place the requested diagonal
    SpectralPages pages = spectralPages(total, window + 2);
    const int p = (n - degree) / 2;  // filtration stage: number of B-steps
    const auto& entry = pages.pages.back().at({p, n - p});
    out.dim = entry.dim;
    out.determined = entry.determined;
    out.evaluatedDegree = n;
    return out;
}

}  // namespace

EinfResult algebraEinf(const FDAlgebra& a, int degree, int window)
{
    if (degree < 0)
        throw std::invalid_argument("algebraEinf: negative degree");
    if (window < 2)
        throw std::invalid_argument("algebraEinf: window must be at least 2");
    EinfResult here = evaluateEinf(a, degree, window);
    if (!here.determined)
        return here;
    EinfResult next = evaluateEinf(a, degree, window + 1);
    here.stable = next.determined && next.dim == here.dim;
    return here;
}

}  // namespace hce
