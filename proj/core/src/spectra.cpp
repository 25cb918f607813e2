#include "cuttail/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cuttail {
namespace {

struct Eig {
    double re;
    double im; // >= 0; a conjugate pair is stored once
};

void hessenberg_reduce(Matrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale = std::max(scale, std::abs(h(i, k)));
        if (scale == 0.0) continue;
        Vec v(n, 0.0);
        double sigma = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = h(i, k) / scale;
            sigma += v[i] * v[i];
        }
        double alpha = std::sqrt(sigma);
        if (v[k + 1] > 0.0) alpha = -alpha;
        v[k + 1] -= alpha;
        double vv = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vv += v[i] * v[i];
        if (vv == 0.0) continue;
        const double beta = 2.0 / vv;
        // H <- P H, P = I - beta v v^T
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * h(i, j);
            s *= beta;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
        }
        // H <- H P
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * v[j];
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

void eig_2x2(double a, double b, double c, double d, std::vector<Eig>& out) {
    const double tr = a + d;
    const double det = a * d - b * c;
    const double disc = 0.25 * tr * tr - det;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        out.push_back({0.5 * tr + sq, 0.0});
        out.push_back({0.5 * tr - sq, 0.0});
    } else {
        out.push_back({0.5 * tr, std::sqrt(-disc)});
    }
}

// One implicit double-shift (Francis) sweep on the active block [l, hgh].
void francis_step(Matrix& h, std::size_t l, std::size_t hgh, bool exceptional) {
    const std::size_t n = h.rows();
    const std::size_t m = hgh - 1;
    double s, t;
    if (exceptional) {
        const double w = std::abs(h(hgh, hgh - 1)) + std::abs(h(m, m > 0 ? m - 1 : 0));
        s = 1.5 * w;
        t = w * w;
    } else {
        s = h(m, m) + h(hgh, hgh);
        t = h(m, m) * h(hgh, hgh) - h(m, hgh) * h(hgh, m);
    }
    double x = h(l, l) * h(l, l) + h(l, l + 1) * h(l + 1, l) - s * h(l, l) + t;
    double y = h(l + 1, l) * (h(l, l) + h(l + 1, l + 1) - s);
    double z = (l + 2 <= hgh) ? h(l + 2, l + 1) * h(l + 1, l) : 0.0;

    for (std::size_t k = l; k <= hgh - 2; ++k) {
        // Householder vector annihilating (y, z) below x
        double vv[3] = {x, y, z};
        double scale = std::abs(x) + std::abs(y) + std::abs(z);
        if (scale != 0.0) {
            vv[0] /= scale;
            vv[1] /= scale;
            vv[2] /= scale;
            double alpha = std::sqrt(vv[0] * vv[0] + vv[1] * vv[1] + vv[2] * vv[2]);
            if (vv[0] > 0.0) alpha = -alpha;
            vv[0] -= alpha;
            const double vsq = vv[0] * vv[0] + vv[1] * vv[1] + vv[2] * vv[2];
            if (vsq > 1e-300) {
                const double beta = 2.0 / vsq;
                const std::size_t q = (k > l) ? k - 1 : l;
                for (std::size_t j = q; j < n; ++j) {
                    double sum = vv[0] * h(k, j) + vv[1] * h(k + 1, j);
                    if (k + 2 <= hgh) sum += vv[2] * h(k + 2, j);
                    sum *= beta;
                    h(k, j) -= sum * vv[0];
                    h(k + 1, j) -= sum * vv[1];
                    if (k + 2 <= hgh) h(k + 2, j) -= sum * vv[2];
                }
                const std::size_t imax = std::min(hgh, k + 3);
                for (std::size_t i = 0; i <= imax; ++i) {
                    double sum = vv[0] * h(i, k) + vv[1] * h(i, k + 1);
                    if (k + 2 <= hgh) sum += vv[2] * h(i, k + 2);
                    sum *= beta;
                    h(i, k) -= sum * vv[0];
                    h(i, k + 1) -= sum * vv[1];
                    if (k + 2 <= hgh) h(i, k + 2) -= sum * vv[2];
                }
            }
        }
        x = h(k + 1, k);
        if (k + 2 <= hgh) y = h(k + 2, k);
        z = (k + 3 <= hgh) ? h(k + 3, k) : 0.0;
    }
    // final Givens rotation on (x, y) at column hgh-2
    {
        const std::size_t k = hgh - 1;
        const double r = std::hypot(x, y);
        if (r > 1e-300) {
            const double co = x / r, si = y / r;
            const std::size_t q = (k > l) ? k - 1 : l;
            for (std::size_t j = q; j < n; ++j) {
                const double a = h(k, j), b = h(k + 1, j);
                h(k, j) = co * a + si * b;
                h(k + 1, j) = -si * a + co * b;
            }
            for (std::size_t i = 0; i <= hgh; ++i) {
                const double a = h(i, k), b = h(i, k + 1);
                h(i, k) = co * a + si * b;
                h(i, k + 1) = -si * a + co * b;
            }
        }
    }
}

std::vector<Eig> schur_eigenvalues(Matrix h, int sweep_cap) {
    const std::size_t n = h.rows();
    std::vector<Eig> out;
    if (n == 0) return out;
    if (n == 1) {
        out.push_back({h(0, 0), 0.0});
        return out;
    }
    hessenberg_reduce(h);
    const double eps = 1e-15;
    std::ptrdiff_t hgh = static_cast<std::ptrdiff_t>(n) - 1;
    int sweeps = 0;
    int block_iters = 0;
    while (hgh >= 0) {
        // deflation scan
        std::ptrdiff_t l = hgh;
        while (l > 0) {
            const double off = std::abs(h(l, l - 1));
            const double diag = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (off <= eps * std::max(diag, 1e-300)) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hgh) {
            out.push_back({h(hgh, hgh), 0.0});
            --hgh;
            block_iters = 0;
            continue;
        }
        if (l == hgh - 1) {
            eig_2x2(h(l, l), h(l, hgh), h(hgh, l), h(hgh, hgh), out);
            hgh -= 2;
            block_iters = 0;
            continue;
        }
        if (++sweeps > sweep_cap)
            throw std::runtime_error("eigenvalues: QR iteration did not converge within the sweep cap");
        ++block_iters;
        francis_step(h, static_cast<std::size_t>(l), static_cast<std::size_t>(hgh),
                     block_iters % 11 == 10);
    }
    return out;
}

struct Cluster {
    double alpha;
    double beta;
    int multiplicity; // merged eigenvalue entries (a conjugate pair counts once)
    int block;
};

} // namespace

int Spectrum::dim_pa() const {
    int d = 0;
    for (const auto& c : components) d += c.dim_contribution();
    return d;
}

double Spectrum::min_abs_alpha() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : components) best = std::min(best, std::abs(c.alpha));
    return best;
}

double Spectrum::max_beta() const {
    double best = 0.0;
    for (const auto& c : components) best = std::max(best, c.beta);
    return best;
}

Spectrum Spectrum::time_scaled(double c) const {
    Spectrum s = *this;
    for (auto& comp : s.components) {
        comp.alpha *= c;
        comp.beta *= c;
    }
    return s;
}

bool is_hurwitz(const Spectrum& s, double margin) {
    for (const auto& c : s.components)
        if (!(c.alpha < -margin)) return false;
    return !s.components.empty();
}

double default_cluster_tol(const Matrix& m) { return 1e-8 * (1.0 + m.norm_inf()); }

int minimal_poly_degree(const Matrix& m, double rank_tol) {
    if (!m.square()) throw std::invalid_argument("minimal_poly_degree: matrix not square");
    const std::size_t d = m.rows();
    const std::size_t nn = d * d;

    // Krylov family in vectorized form: columns vec(m^k), k = 0..d.
    std::vector<Vec> cols;
    Matrix power = Matrix::identity(d);
    for (std::size_t k = 0; k <= d; ++k) {
        Vec v(nn);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) v[i * d + j] = power(i, j);
        cols.push_back(std::move(v));
        if (k < d) power = power * m;
    }
    if (rank_tol <= 0.0) {
        Matrix krylov(nn, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < nn; ++i) krylov(i, j) = cols[j][i];
        rank_tol = 1e-8 * krylov.norm_spectral();
    }

    // Modified Gram-Schmidt with re-orthogonalization; dependency at step k
    // means degree k.
    std::vector<Vec> basis;
    for (std::size_t k = 0; k <= d; ++k) {
        Vec w = cols[k];
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& q : basis) {
                const double proj = dot(w, q);
                for (std::size_t i = 0; i < nn; ++i) w[i] -= proj * q[i];
            }
        const double nw = norm2(w);
        if (nw <= rank_tol) return static_cast<int>(k);
        for (double& x : w) x /= nw;
        basis.push_back(std::move(w));
    }
    return static_cast<int>(d); // Cayley-Hamilton guarantees we never get here
}

Spectrum eigenvalues(const Matrix& m, double cluster_tol) {
    if (!m.square() || !m.all_finite())
        throw std::invalid_argument("eigenvalues: matrix must be square and finite");
    const std::size_t d = m.rows();
    if (cluster_tol <= 0.0) cluster_tol = default_cluster_tol(m);

    const int cap = 100 * static_cast<int>(d) * static_cast<int>(d);
    std::vector<Eig> eigs = schur_eigenvalues(m, std::max(cap, 200));

    // An entry whose tiny imaginary part collapses to zero came from a 2x2
    // Schur block holding a (near-)defective real double eigenvalue: it
    // stands for two real eigenvalues, so it carries weight two.
    std::vector<int> weight(eigs.size(), 1);
    for (std::size_t i = 0; i < eigs.size(); ++i)
        if (eigs[i].im != 0.0 && std::abs(eigs[i].im) < cluster_tol) {
            eigs[i].im = 0.0;
            weight[i] = 2;
        }

    std::vector<std::size_t> order(eigs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return eigs[a].re != eigs[b].re ? eigs[a].re < eigs[b].re : eigs[a].im < eigs[b].im;
    });

    std::vector<Cluster> clusters;
    for (std::size_t idx : order) {
        const Eig& e = eigs[idx];
        const int w = weight[idx];
        bool merged = false;
        for (auto& c : clusters) {
            if ((c.beta == 0.0) == (e.im == 0.0) && std::abs(c.alpha - e.re) <= cluster_tol &&
                std::abs(c.beta - e.im) <= cluster_tol) {
                // running mean keeps the cluster centre stable
                c.alpha = (c.alpha * c.multiplicity + e.re * w) / (c.multiplicity + w);
                c.beta = (c.beta * c.multiplicity + e.im * w) / (c.multiplicity + w);
                c.multiplicity += w;
                merged = true;
                break;
            }
        }
        if (!merged) clusters.push_back({e.re, e.im, w, 1});
    }

    // Jordan block sizes via the minimal-polynomial dimension count.
    const int target = minimal_poly_degree(m);
    auto total = [&clusters]() {
        int t = 0;
        for (const auto& c : clusters) t += c.block * (c.beta == 0.0 ? 1 : 2);
        return t;
    };
    while (total() < target) {
        Cluster* pick = nullptr;
        for (auto& c : clusters) {
            if (c.block >= c.multiplicity) continue;
            if (total() + (c.beta == 0.0 ? 1 : 2) > target) continue;
            if (pick == nullptr || c.multiplicity > pick->multiplicity) pick = &c;
        }
        if (pick == nullptr) break; // tolerance mismatch; keep the consistent lower structure
        ++pick->block;
    }

    Spectrum s;
    for (const auto& c : clusters) s.components.push_back({c.alpha, c.beta, c.block});
    std::sort(s.components.begin(), s.components.end(),
              [](const SpectralComponent& a, const SpectralComponent& b) {
                  return a.alpha != b.alpha ? a.alpha > b.alpha : a.beta < b.beta;
              });
    return s;
}

Matrix matrix_exponential(const Matrix& m, double t) {
    if (!m.square()) throw std::invalid_argument("matrix_exponential: matrix not square");
    if (!std::isfinite(t)) throw std::invalid_argument("matrix_exponential: t not finite");
    const std::size_t n = m.rows();
    Matrix a = m.scaled(t);

    const double theta13 = 5.371920351148152;
    const double nrm = a.norm_inf();
    int s = 0;
    if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    if (s > 0) a = a.scaled(std::ldexp(1.0, -s));

    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const Matrix id = Matrix::identity(n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;

    Matrix u = a * (a6 * (a6.scaled(b[13]) + a4.scaled(b[11]) + a2.scaled(b[9])) +
                    a6.scaled(b[7]) + a4.scaled(b[5]) + a2.scaled(b[3]) + id.scaled(b[1]));
    Matrix v = a6 * (a6.scaled(b[12]) + a4.scaled(b[10]) + a2.scaled(b[8])) +
               a6.scaled(b[6]) + a4.scaled(b[4]) + a2.scaled(b[2]) + id.scaled(b[0]);

    // (V - U) X = (V + U), solved column by column
    Matrix lhs = v - u;
    Matrix rhs = v + u;
    Matrix x(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, j);
        Vec sol = solve_linear(lhs, col);
        for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
    }
    for (int k = 0; k < s; ++k) x = x * x;
    if (!x.all_finite())
        throw std::runtime_error("matrix_exponential: overflow (unstable matrix with large t)");
    return x;
}

std::vector<Vec> sample_trajectory(const Matrix& m, const Vec& x0,
                                   const std::vector<double>& times) {
    std::vector<Vec> out;
    out.reserve(times.size());
    std::map<double, Matrix> cache;
    Vec x = x0;
    double prev = 0.0;
    bool first = true;
    for (double t : times) {
        if (t < 0.0 || (!first && t < prev))
            throw std::invalid_argument("sample_trajectory: times must be sorted and nonnegative");
        const double dt = first ? t : t - prev;
        if (dt != 0.0) {
            auto it = cache.find(dt);
            if (it == cache.end()) it = cache.emplace(dt, matrix_exponential(m, dt)).first;
            x = it->second * x;
        }
        out.push_back(x);
        prev = t;
        first = false;
    }
    return out;
}

Matrix matrix_from_spectrum(const Spectrum& s) {
    const int d = s.dim_pa();
    Matrix m(d, d);
    int off = 0;
    for (const auto& c : s.components) {
        if (c.beta == 0.0) {
            for (int i = 0; i < c.block; ++i) {
                m(off + i, off + i) = c.alpha;
                if (i + 1 < c.block) m(off + i, off + i + 1) = 1.0;
            }
            off += c.block;
        } else {
            for (int i = 0; i < c.block; ++i) {
                const int p = off + 2 * i;
                m(p, p) = c.alpha;
                m(p, p + 1) = c.beta;
                m(p + 1, p) = -c.beta;
                m(p + 1, p + 1) = c.alpha;
                if (i + 1 < c.block) {
                    m(p, p + 2) = 1.0;
                    m(p + 1, p + 3) = 1.0;
                }
            }
            off += 2 * c.block;
        }
    }
    return m;
}

} // namespace cuttail
