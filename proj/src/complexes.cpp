#include "hce/complexes.hpp"

#include <sstream>

namespace hce {

namespace {

bool isZeroMatrix(const QMatrix& m)
{
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                return false;
    return true;
}

}  // namespace

Index ChainComplex::dim(int n) const
{
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
}

QMatrix ChainComplex::boundaryAt(int n) const
{
    auto it = boundary.find(n);
    if (it != boundary.end())
        return it->second;
    return QMatrix::Zero(dim(n - 1), dim(n));
}

int ChainComplex::minDegree() const
{
    return dims.empty() ? 0 : dims.begin()->first;
}

int ChainComplex::maxDegree() const
{
    return dims.empty() ? -1 : dims.rbegin()->first;
}

Verdict ChainComplex::validate() const
{
    for (const auto& [n, d] : dims)
    {
        if (n < 0)
            return Verdict{false, "negative degree " + std::to_string(n) + " in support"};
        if (d <= 0)
            return Verdict{false, "nonpositive dimension at degree " + std::to_string(n)};
    }
    for (const auto& [n, mat] : boundary)
    {
        if (mat.rows() != dim(n - 1) || mat.cols() != dim(n))
        {
            std::ostringstream os;
            os << "boundary shape mismatch at degree " << n << ": got "
               << mat.rows() << "x" << mat.cols() << ", expected "
               << dim(n - 1) << "x" << dim(n);
            throw std::invalid_argument(os.str());
        }
    }
    for (const auto& [n, unused] : dims)
    {
        (void)unused;
        QMatrix square = boundaryAt(n - 1) * boundaryAt(n);
        if (!isZeroMatrix(square))
            return Verdict{false, "boundary squared nonzero at degree " + std::to_string(n)};
    }
    return Verdict{};
}

Index ChainComplex::eulerCharacteristic() const
{
    Index chi = 0;
    for (const auto& [n, d] : dims)
        chi += (n % 2 == 0) ? d : -d;
    return chi;
}

QMatrix ChainMap::at(int n, Index rows, Index cols) const
{
    auto it = maps.find(n);
    if (it == maps.end())
        return QMatrix::Zero(rows, cols);
    if (it->second.rows() != rows || it->second.cols() != cols)
        throw std::invalid_argument("chain map shape mismatch at degree " + std::to_string(n));
    return it->second;
}

QMatrix EquivariantComplex::alphaAt(int n) const
{
    return alpha.at(n, complex.dim(n), complex.dim(n));
}

Verdict EquivariantComplex::validate() const
{
    Verdict base = complex.validate();
    if (!base.ok)
        return base;
    for (const auto& [n, unused] : complex.dims)
    {
        (void)unused;
        QMatrix diff = complex.boundaryAt(n) * alphaAt(n) - alphaAt(n - 1) * complex.boundaryAt(n);
        if (!isZeroMatrix(diff))
            return Verdict{false, "alpha does not commute with boundary at degree " + std::to_string(n)};
    }
    return Verdict{};
}

HomologyResult homology(const ChainComplex& c, int n)
{
    if (c.dim(n) == 0)
        return HomologyResult{0, QMatrix(0, 0)};
    QMatrix cycles = kernelBasisOf<Rational>(c.boundaryAt(n));
    QMatrix boundaries = imageBasisOf<Rational>(c.boundaryAt(n + 1));
    QuotientReps reps = pickQuotientReps(boundaries, cycles);
    return HomologyResult{reps.reps.cols(), reps.reps};
}

std::pair<Index, Index> homologyParitySums(const ChainComplex& c)
{
    Index even = 0, odd = 0;
    for (const auto& [n, unused] : c.dims)
    {
        (void)unused;
        Index h = homology(c, n).dim;
        (n % 2 == 0 ? even : odd) += h;
    }
    return {even, odd};
}

KernelSubcomplex kerSubcomplex(const EquivariantComplex& e)
{
    KernelSubcomplex out;
    for (const auto& [n, d] : e.complex.dims)
    {
        QMatrix oneMinus = QMatrix::Identity(d, d) - e.alphaAt(n);
        QMatrix k = kernelBasisOf<Rational>(oneMinus);
        out.inclusion[n] = k;
        if (k.cols() > 0)
            out.complex.dims[n] = k.cols();
    }
    for (const auto& [n, d] : out.complex.dims)
    {
        (void)d;
        auto below = out.inclusion.find(n - 1);
        Index belowDim = below == out.inclusion.end() ? 0 : below->second.cols();
        if (belowDim == 0)
            continue;
        // d maps ker(1-alpha) into ker(1-alpha): express in kernel coordinates.
        QMatrix restricted = solveExact<Rational>(below->second,
                                                  QMatrix(e.complex.boundaryAt(n) * out.inclusion.at(n)));
        out.complex.boundary[n] = restricted;
    }
    return out;
}

QuotientComplex cokerComplex(const EquivariantComplex& e)
{
    QuotientComplex out;
    for (const auto& [n, d] : e.complex.dims)
    {
        QMatrix oneMinus = QMatrix::Identity(d, d) - e.alphaAt(n);
        QMatrix w = imageBasisOf<Rational>(oneMinus);
        QuotientReps reps = pickQuotientReps(w, QMatrix(QMatrix::Identity(d, d)));
        out.section[n] = reps.reps;
        if (reps.reps.cols() > 0)
            out.complex.dims[n] = reps.reps.cols();
        QMatrix joined(d, w.cols() + reps.reps.cols());
        joined << w, reps.reps;
        QMatrix coords = solveExact<Rational>(joined, QMatrix(QMatrix::Identity(d, d)));
        out.projection[n] = coords.bottomRows(reps.reps.cols());
    }
    for (const auto& [n, d] : out.complex.dims)
    {
        (void)d;
        Index belowDim = 0;
        auto below = out.projection.find(n - 1);
        if (below != out.projection.end())
            belowDim = below->second.rows();
        if (belowDim == 0)
            continue;
        out.complex.boundary[n] = below->second * e.complex.boundaryAt(n) * out.section.at(n);
    }
    return out;
}

ExactnessReport checkExactSequence(const std::vector<QMatrix>& maps)
{
    if (maps.empty())
        throw std::invalid_argument("checkExactSequence: no maps given");
    for (std::size_t i = 0; i + 1 < maps.size(); ++i)
        if (maps[i + 1].cols() != maps[i].rows())
            throw std::invalid_argument("checkExactSequence: maps not composable at position " +
                                        std::to_string(i));
    ExactnessReport report;
    for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    {
        QMatrix comp = maps[i + 1] * maps[i];
        if (!isZeroMatrix(comp))
            report.compositesVanish = false;
    }
    report.headKernel = maps.front().cols() - rank<Rational>(maps.front());
    report.tailCokernel = maps.back().rows() - rank<Rational>(maps.back());
    for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    {
        Index kerNext = maps[i + 1].cols() - rank<Rational>(maps[i + 1]);
        Index imPrev = rank<Rational>(maps[i]);
        report.defects.push_back(kerNext - imPrev);
    }
    bool interiorExact = true;
    for (Index d : report.defects)
        interiorExact = interiorExact && d == 0;
    report.exact = report.compositesVanish && interiorExact &&
                   report.headKernel == 0 && report.tailCokernel == 0;
    return report;
}

Index FilteredComplex::dimAt(int n) const
{
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
}

QMatrix FilteredComplex::dAt(int n) const
{
    auto it = d.find(n);
    if (it != d.end())
        return it->second;
    return QMatrix::Zero(dimAt(n + 1), dimAt(n));
}

QMatrix FilteredComplex::filtrationBasis(int stage, int n) const
{
    const Index dn = dimAt(n);
    if (stage <= filtLo)
        return QMatrix::Identity(dn, dn);
    if (stage > filtHi)
        return QMatrix(dn, 0);
    if (dn == 0)
        return QMatrix(0, 0);
    auto deg = filtration.find(n);
    if (deg == filtration.end())
        throw std::logic_error("filtration missing at degree " + std::to_string(n));
    auto st = deg->second.find(stage);
    if (st == deg->second.end())
        throw std::logic_error("filtration missing stage " + std::to_string(stage));
    return st->second;
}

bool FilteredComplex::degreeAvailable(int n) const
{
    if (n < degLo)
        return zeroBelow;
    if (n > degHi)
        return zeroAbove;
    auto it = complete.find(n);
    return it == complete.end() ? true : it->second;
}

Verdict FilteredComplex::validate() const
{
    for (int n = degLo; n <= degHi; ++n)
    {
        QMatrix base = filtrationBasis(filtLo, n);
        if (rank<Rational>(base) != dimAt(n))
            return Verdict{false, "filtration does not start at the full space, degree " + std::to_string(n)};
        for (int p = filtLo; p <= filtHi; ++p)
        {
            QMatrix outer = filtrationBasis(p, n);
            QMatrix inner = filtrationBasis(p + 1, n);
            if (!inSpan<Rational>(outer, inner))
                return Verdict{false, "filtration not nested at degree " + std::to_string(n) +
                                          ", stage " + std::to_string(p)};
        }
        if (n + 1 <= degHi)
        {
            for (int p = filtLo; p <= filtHi; ++p)
            {
                QMatrix img = dAt(n) * filtrationBasis(p, n);
                if (!inSpan<Rational>(filtrationBasis(p, n + 1), img))
                    return Verdict{false, "differential does not preserve filtration stage " +
                                              std::to_string(p) + " at degree " + std::to_string(n)};
            }
        }
    }
    return Verdict{};
}

namespace {

// Z_r^{p, n-p} = F^p(C^n) ∩ d^{-1}(F^{p+r}(C^{n+1})), memoised.
struct ZCache {
    const FilteredComplex& f;
    std::map<std::tuple<int, int, int>, QMatrix> memo;

    const QMatrix& get(int r, int p, int n)
    {
        auto key = std::make_tuple(r, p, n);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        QMatrix value;
        if (r <= 0)
            value = f.filtrationBasis(p, n);  // d preserves the filtration
        else
        {
            QMatrix pre = preimageOfSpan(f.dAt(n), f.filtrationBasis(p + r, n + 1));
            value = intersectSpans(f.filtrationBasis(p, n), pre);
        }
        return memo.emplace(key, std::move(value)).first->second;
    }
};

}  // namespace

SpectralPages spectralPages(const FilteredComplex& f, int rMax)
{
    if (rMax < 0)
        throw std::invalid_argument("spectralPages: rMax must be nonnegative");
    SpectralPages out;
    ZCache cache{f, {}};
    for (int r = 0; r <= rMax; ++r)
    {
        std::map<std::pair<int, int>, SpectralEntry> page;
        for (int p = f.filtLo; p <= f.filtHi; ++p)
        {
            for (int n = f.degLo; n <= f.degHi; ++n)
            {
                const int q = n - p;
                SpectralEntry entry;
                if (r == 0)
                {
                    entry.determined = f.degreeAvailable(n);
                    if (entry.determined)
                        entry.dim = f.filtrationBasis(p, n).cols() - f.filtrationBasis(p + 1, n).cols();
                }
                else
                {
                    entry.determined = f.degreeAvailable(n - 1) && f.degreeAvailable(n) &&
                                       f.degreeAvailable(n + 1);
                    if (entry.determined)
                    {
                        const QMatrix& z = cache.get(r, p, n);
                        const QMatrix& zIn = cache.get(r - 1, p + 1, n);
                        QMatrix boundaryPart = f.dAt(n - 1) * cache.get(r - 1, p - r + 1, n - 1);
                        QMatrix b = sumSpans(zIn, imageBasisOf<Rational>(boundaryPart));
                        entry.dim = z.cols() - b.cols();
                    }
                }
                page[{p, q}] = entry;
            }
        }
        out.pages.push_back(std::move(page));
    }
    // First page from which all determined dimensions agree with every later page.
    for (int r0 = 1; r0 < static_cast<int>(out.pages.size()); ++r0)
    {
        bool stable = true;
        for (int r = r0 + 1; r < static_cast<int>(out.pages.size()) && stable; ++r)
            for (const auto& [key, entry] : out.pages[static_cast<std::size_t>(r0)])
            {
                const auto& other = out.pages[static_cast<std::size_t>(r)].at(key);
                if (entry.determined && other.determined && entry.dim != other.dim)
                {
                    stable = false;
                    break;
                }
            }
        if (stable)
        {
            out.stabilizedAt = r0;
            break;
        }
    }
    return out;
}

Index Bicomplex::dimAt(int m, int n) const
{
    auto it = dims.find({m, n});
    return it == dims.end() ? 0 : it->second;
}

QMatrix Bicomplex::d1At(int m, int n) const
{
    auto it = d1.find({m, n});
    if (it != d1.end())
        return it->second;
    return QMatrix::Zero(dimAt(m + 1, n), dimAt(m, n));
}

QMatrix Bicomplex::d2At(int m, int n) const
{
    auto it = d2.find({m, n});
    if (it != d2.end())
        return it->second;
    return QMatrix::Zero(dimAt(m, n + 1), dimAt(m, n));
}

Verdict Bicomplex::validate() const
{
    for (const auto& [key, mat] : d1)
    {
        auto [m, n] = key;
        if (mat.rows() != dimAt(m + 1, n) || mat.cols() != dimAt(m, n))
            throw std::invalid_argument("bicomplex D1 shape mismatch");
    }
    for (const auto& [key, mat] : d2)
    {
        auto [m, n] = key;
        if (mat.rows() != dimAt(m, n + 1) || mat.cols() != dimAt(m, n))
            throw std::invalid_argument("bicomplex D2 shape mismatch");
    }
    for (int m = 0; m <= mMax; ++m)
        for (int n = 0; n <= nMax; ++n)
        {
            if (m + 1 < mMax && !isZeroMatrix(QMatrix(d1At(m + 1, n) * d1At(m, n))))
                return Verdict{false, "D1*D1 nonzero at (" + std::to_string(m) + "," + std::to_string(n) + ")"};
            if (n + 1 < nMax && !isZeroMatrix(QMatrix(d2At(m, n + 1) * d2At(m, n))))
                return Verdict{false, "D2*D2 nonzero at (" + std::to_string(m) + "," + std::to_string(n) + ")"};
            if (m + 1 <= mMax && n + 1 <= nMax)
            {
                QMatrix anti = d2At(m + 1, n) * d1At(m, n) + d1At(m, n + 1) * d2At(m, n);
                if (!isZeroMatrix(anti))
                    return Verdict{false, "D1 D2 + D2 D1 nonzero at (" + std::to_string(m) + "," +
                                              std::to_string(n) + ")"};
            }
        }
    return Verdict{};
}

FilteredComplex totalFilteredComplex(const Bicomplex& b)
{
    FilteredComplex f;
    f.degLo = 0;
    f.degHi = b.mMax + b.nMax;
    f.filtLo = 0;
    f.filtHi = b.nMax;
    f.zeroBelow = true;
    f.zeroAbove = false;

    // Blocks along each diagonal N = m + n, ordered by increasing n; the
    // filtration by the second index then consists of coordinate suffixes.
    std::map<int, std::vector<std::pair<int, int>>> blocks;
    std::map<std::pair<int, int>, Index> offsets;
    for (int totalDeg = 0; totalDeg <= f.degHi; ++totalDeg)
    {
        Index dim = 0;
        for (int n = 0; n <= std::min(b.nMax, totalDeg); ++n)
        {
            const int m = totalDeg - n;
            if (m < 0 || m > b.mMax || b.dimAt(m, n) == 0)
                continue;
            blocks[totalDeg].push_back({m, n});
            offsets[{m, n}] = dim;
            dim += b.dimAt(m, n);
        }
        if (dim > 0)
            f.dims[totalDeg] = dim;
        // A diagonal is complete when the window holds everything the full
        // first-quadrant complex would place on it.
        f.complete[totalDeg] = (totalDeg <= b.mMax) && (totalDeg / 2 <= b.nMax);
    }
    for (int totalDeg = 0; totalDeg < f.degHi; ++totalDeg)
    {
        const Index rows = f.dimAt(totalDeg + 1), cols = f.dimAt(totalDeg);
        if (rows == 0 || cols == 0)
            continue;
        QMatrix mat = QMatrix::Zero(rows, cols);
        auto it = blocks.find(totalDeg);
        if (it != blocks.end())
            for (auto [m, n] : it->second)
            {
                const Index src = offsets.at({m, n});
                if (b.dimAt(m + 1, n) > 0 && offsets.count({m + 1, n}))
                    mat.block(offsets.at({m + 1, n}), src, b.dimAt(m + 1, n), b.dimAt(m, n)) +=
                        b.d1At(m, n);
                if (b.dimAt(m, n + 1) > 0 && offsets.count({m, n + 1}))
                    mat.block(offsets.at({m, n + 1}), src, b.dimAt(m, n + 1), b.dimAt(m, n)) +=
                        b.d2At(m, n);
            }
        f.d[totalDeg] = std::move(mat);
    }
    for (int totalDeg = 0; totalDeg <= f.degHi; ++totalDeg)
    {
        const Index dim = f.dimAt(totalDeg);
        for (int stage = f.filtLo + 1; stage <= f.filtHi; ++stage)
        {
            Index count = 0, start = dim;
            auto it = blocks.find(totalDeg);
            if (it != blocks.end())
                for (auto [m, n] : it->second)
                    if (n >= stage)
                    {
                        start = std::min(start, offsets.at({m, n}));
                        count += b.dimAt(m, n);
                    }
            QMatrix basis = QMatrix::Zero(dim, count);
            for (Index k = 0; k < count; ++k)
                basis(start + k, k) = 1;
            f.filtration[totalDeg][stage] = std::move(basis);
        }
    }
    return f;
}

Index totalCohomologyDim(const FilteredComplex& f, int n)
{
    if (!f.degreeAvailable(n - 1) || !f.degreeAvailable(n) || !f.degreeAvailable(n + 1))
        throw InvariantError("total cohomology undetermined near window boundary at degree " +
                             std::to_string(n));
    const Index kernel = f.dimAt(n) - rank<Rational>(f.dAt(n));
    const Index image = rank<Rational>(f.dAt(n - 1));
    return kernel - image;
}

}  // namespace hce
