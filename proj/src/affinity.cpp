// SPDX-License-Identifier: Apache-2.0

#include "aefg/affinity.hpp"

#include "aefg/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aefg {

namespace {

void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
    }
}

} // namespace

void AffinityParams::validate() const {
    if (!(sigma_b > 0.0)) throw ConfigError("sigma_b must be positive");
    if (!(sigma_fg > 0.0)) throw ConfigError("sigma_fg must be positive");
    if (!(phi > 0.0 && phi <= std::numbers::pi / 2.0)) throw ConfigError("phi must lie in (0, pi/2]");
}

PairEnergies pair_energies(double b, double f, double e_p, double e_q) {
    require_unit(b, "b");
    require_unit(f, "f");
    require_unit(e_p, "e(p)");
    require_unit(e_q, "e(q)");
    // Probability of a boundary between p and q with neither endpoint on one.
    const double clean_boundary = (1.0 - e_p) * b * (1.0 - e_q);
    const double g = 1.0 - f;
    return {b, 1.0 - clean_boundary * f, 1.0 - clean_boundary * g};
}

cplx pair_affinity(double b, double f, double e_p, double e_q, const AffinityParams& params) {
    const PairEnergies en = pair_energies(b, f, e_p, e_q);
    const double cb = std::exp(-en.binding / params.sigma_b);
    const double cf = std::exp(-en.figure / params.sigma_fg);
    const double cg = std::exp(-en.ground / params.sigma_fg);
    // Written out so exchanging cf and cg conjugates the result exactly.
    return {cb + (cf + cg) * std::cos(params.phi), (cf - cg) * std::sin(params.phi)};
}

double total_abs_angle(const SparseHermitianMatrix& w) {
    double sum = 0.0;
    for (const cplx& v : w.values()) sum += std::abs(std::arg(v));
    return sum;
}

SparseHermitianMatrix rescale_theta(const SparseHermitianMatrix& w) {
    const double mass = total_abs_angle(w);
    if (mass == 0.0) return w;
    const double scale = (std::numbers::pi / 2.0) / mass;

    SparseHermitianMatrix out = w;
    for (std::size_t p = 0; p < w.dim(); ++p) {
        auto cols = w.row_cols(p);
        auto in = w.row_values(p);
        auto dst = out.row_values(p);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const std::size_t q = cols[j];
            if (q < p) {
                const cplx mirror = w.at(q, p);
                if (mirror == std::conj(in[j])) {
                    dst[j] = std::conj(out.at(q, p));
                    continue;
                }
            }
            dst[j] = std::polar(std::abs(in[j]), std::arg(in[j]) * scale);
        }
    }
    return out;
}

SparseHermitianMatrix symmetrize(const SparseHermitianMatrix& w) {
    SparseHermitianMatrix out = w;
    for (std::size_t p = 0; p < w.dim(); ++p) {
        auto cols = w.row_cols(p);
        auto in = w.row_values(p);
        auto dst = out.row_values(p);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const std::size_t q = cols[j];
            if (!w.contains(q, p)) {
                throw ValidationError("cannot symmetrize: entry (" + std::to_string(p) + "," +
                                      std::to_string(q) + ") has no transpose partner");
            }
            if (q == p) {
                dst[j] = {in[j].real(), 0.0};
            } else if (q > p) {
                dst[j] = 0.5 * (in[j] + std::conj(w.at(q, p)));
            } else {
                dst[j] = std::conj(0.5 * (w.at(q, p) + std::conj(in[j])));
            }
        }
    }
    return out;
}

DegreeVector degree_of(const SparseHermitianMatrix& w) {
    DegreeVector d;
    d.values.assign(w.dim(), 0.0);
    for (std::size_t p = 0; p < w.dim(); ++p) {
        for (const cplx& v : w.row_values(p)) d.values[p] += std::abs(v);
    }
    return d;
}

AffinitySystem assemble(const RelationMap& rel, const AffinityParams& params) {
    params.validate();
    const GridDomain& dom = rel.domain();
    const Stencil& st = rel.stencil();
    if (dom.size() < 1 || st.size() == 0) throw ConfigError("cannot assemble an empty affinity graph");

    const std::vector<double> e = boundary_prob(rel);

    std::vector<Triplet> entries;
    entries.reserve(dom.size() * st.size());
    for (std::size_t p = 0; p < dom.size(); ++p) {
        for (std::size_t k = 0; k < st.size(); ++k) {
            auto q = neighbor_of(dom, p, st[k]);
            if (!q) continue;
            const cplx w = pair_affinity(rel.b(k, p), rel.f(k, p), e[p], e[*q], params);
            entries.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(*q), w});
        }
    }

    SparseHermitianMatrix w = SparseHermitianMatrix::from_triplets(dom.size(), std::move(entries));
    if (params.wedge_rescale) w = rescale_theta(w);
    w = symmetrize(w);
    DegreeVector d = degree_of(w);
    return {std::move(w), std::move(d)};
}

} // namespace aefg
