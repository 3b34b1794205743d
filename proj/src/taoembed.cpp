#include <orthospace/taoembed.hpp>

#include <utility>

namespace orthospace {

std::vector<RationalVector> tao_vectors(const GraphSpec& g)
{
    const std::size_t n = g.size();
    if (n == 0)
        throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
    if (n > 24)
        throw Error(ErrorKind::SizeLimitExceeded, "ambient dimension 2^(n-1) too large for n = " + std::to_string(n));

    std::vector<RationalVector> us{RationalVector{Rational(1)}};
    for (std::size_t m = 1; m < n; ++m) {
        // us holds m vectors of dimension dim; vertex m is the new one
        const std::size_t dim = us.front().size();
        std::vector<RationalVector> ws;
        ws.reserve(m + 1);
        for (std::size_t i = 0; i < m; ++i) {
            RationalVector w(2 * dim, Rational(0));
            std::copy(us[i].begin(), us[i].end(), w.begin());
            if (!g.adjacent(i, m))
                w[dim + i] = 1;
            ws.push_back(std::move(w));
        }
        RationalVector last(2 * dim, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            last[dim + i] = 1;
        ws.push_back(std::move(last));
        us = std::move(ws);
    }
    return us;
}

std::size_t matrix_rank(const RationalMatrix& m)
{
    if (m.empty())
        return 0;
    const std::size_t rows = m.size(), cols = m.front().size();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        Integer l = 1;
        for (const auto& q : m[r])
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        for (std::size_t c = 0; c < cols; ++c)
            a[r][c] = m[r][c].get_num() * (l / m[r][c].get_den());
    }

    // Bareiss: every intermediate entry is an integer minor
    Integer prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                a[r][k] = a[r][k] * a[rank][c] - a[rank][k] * a[r][c];
                mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), prev.get_mpz_t());
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

GramReport verify_gram(const std::vector<RationalVector>& vectors, const GraphSpec& g)
{
    const std::size_t n = g.size();
    if (vectors.size() != n)
        throw Error(ErrorKind::DimensionMismatch,
                    std::to_string(vectors.size()) + " vectors for " + std::to_string(n) + " vertices");
    for (const auto& v : vectors)
        if (v.size() != vectors.front().size())
            throw Error(ErrorKind::DimensionMismatch, "vectors of unequal dimension");

    GramReport report;
    report.gram.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Rational s = 0;
            for (std::size_t k = 0; k < vectors[i].size(); ++k)
                s += vectors[i][k] * vectors[j][k];
            report.gram[i][j] = s;
            report.gram[j][i] = s;
        }
    report.pattern_ok = true;
    report.nonneg_ok = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int sign = sgn(report.gram[i][j]);
            if (sign < 0)
                report.nonneg_ok = false;
            bool zero = sign == 0;
            bool edge = i != j && g.adjacent(i, j);
            if (zero != edge)
                report.pattern_ok = false;
        }
    report.rank = matrix_rank(report.gram);
    return report;
}

}  // namespace orthospace
