#include "okvalid/embeddings.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "okvalid/error.hpp"

namespace okvalid {

namespace {

void check_dim(int dim) {
    if (dim < 1 || dim > 3) {
        throw DomainError("embedding constants exist for d = 1, 2, 3 only, got " +
                          std::to_string(dim));
    }
}

// counts[n] = #{z in Z^d : |z|^2 = n} for n < limit.
std::vector<std::int64_t> lattice_counts(int dim, std::int64_t limit) {
    std::vector<std::int64_t> r1(static_cast<std::size_t>(limit), 0);
    for (std::int64_t a = 0; a * a < limit; ++a) r1[a * a] += a == 0 ? 1 : 2;
    std::vector<std::int64_t> acc = r1;
    for (int level = 1; level < dim; ++level) {
        std::vector<std::int64_t> next(static_cast<std::size_t>(limit), 0);
        for (std::int64_t a = 0; a * a < limit; ++a) {
            const std::int64_t w = a == 0 ? 1 : 2;
            const std::int64_t shift = a * a;
            for (std::int64_t m = 0; m + shift < limit; ++m) next[m + shift] += w * acc[m];
        }
        acc.swap(next);
    }
    return acc;
}

}  // namespace

EmbeddingConstants table_constants(int dim) {
    check_dim(dim);
    static constexpr double cm[] = {1.010947, 1.030255, 1.081202};
    static constexpr double cmbar[] = {0.149072, 0.248740, 0.411972};
    static constexpr double cb[] = {1.471443, 1.488231, 1.554916};
    EmbeddingConstants c;
    c.dim = dim;
    c.Cm = cm[dim - 1];
    c.CmBar = cmbar[dim - 1];
    c.Cb = cb[dim - 1];
    c.equivFactor = equiv_factor().hi();
    return c;
}

Interval lattice_tail_bound(int dim, int ncut) {
    check_dim(dim);
    if (ncut < 2) throw DomainError("ncut must be at least 2");
    const Interval n(static_cast<double>(ncut));
    if (dim == 1) {
        // 2 * (N^-4 + int_N^inf t^-4 dt)
        return Interval(2.0) * (Interval(1.0) / pow(n, 4) + Interval(1.0) / (Interval(3.0) * pow(n, 3)));
    }
    // Each lattice point z owns the unit cube around it; on that cube
    // |y| <= |z| + s with s = sqrt(d)/2, so |z|^-4 <= (|y| - s)^-4 and the
    // cubes of |z| >= N fill |y| >= N - s. Substituting t = |y| - s leaves
    // t >= t0 = N - 2s.
    const Interval s = sqrt(Interval(static_cast<double>(dim))) / Interval(2.0);
    const Interval t0 = n - Interval(2.0) * s;
    if (t0.lo() <= 0) throw DomainError("ncut too small for the tail bound");
    const Interval inv = Interval(1.0) / t0;
    if (dim == 2) {
        return Interval(2.0) * pi() * (sqr(inv) / Interval(2.0) + s * pow(inv, 3) / Interval(3.0));
    }
    return Interval(4.0) * pi() * (inv + s * sqr(inv) + sqr(s) * pow(inv, 3) / Interval(3.0));
}

Interval cmbar_partial_sum(int dim, int ncut) {
    check_dim(dim);
    if (ncut < 2) throw DomainError("ncut must be at least 2");
    const std::int64_t limit = static_cast<std::int64_t>(ncut) * ncut;
    const std::vector<std::int64_t> counts = lattice_counts(dim, limit);
    // sum over k in N_0^d of c_k^2 g(|k|) equals the sum of g(|z|) over Z^d.
    Interval sum(0.0);
    for (std::int64_t n = limit - 1; n >= 1; --n) {
        if (counts[n] == 0) continue;
        const Interval nn(static_cast<double>(n));
        sum += Interval(static_cast<double>(counts[n])) / sqr(nn);
    }
    return sum;
}

Interval recompute_cmbar(int dim, int ncut) {
    const Interval partial = cmbar_partial_sum(dim, ncut);
    const Interval tail = lattice_tail_bound(dim, ncut);
    const Interval pi4 = pow(pi(), 4);
    const Interval lo = partial / pi4;
    const Interval hi = (partial + tail) / pi4;
    return sqrt(Interval(lo.lo(), hi.hi()));
}

Interval equiv_factor() {
    const Interval pi2 = sqr(pi());
    return sqrt(Interval(1.0) + sqr(pi2)) / pi2;
}

}  // namespace okvalid
