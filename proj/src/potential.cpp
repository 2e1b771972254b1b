#include "wnlse/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wnlse/rng.hpp"

namespace wnlse {

double Potential::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

double Potential::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

namespace {

std::vector<double> evaluate_trig(const Grid& grid, double constant,
                                  const std::vector<TrigTerm>& terms) {
    std::vector<double> values(grid.total_points(), constant);
    for (const TrigTerm& t : terms) {
        for (std::size_t g = 0; g < values.size(); ++g) {
            const auto x = grid.point(g);
            const double phase = t.wavevector[0] * x[0] +
                                 (grid.dim == 2 ? t.wavevector[1] * x[1] : 0.0);
            values[g] += t.cos_amp * std::cos(phase) + t.sin_amp * std::sin(phase);
        }
    }
    return values;
}

Potential finish_trig(const Grid& grid, double constant, std::vector<TrigTerm> terms,
                      PotentialDescription desc) {
    std::vector<double> values = evaluate_trig(grid, constant, terms);
    const double vmin = *std::min_element(values.begin(), values.end());
    double shift = 0.0;
    if (vmin < 1.0) {
        shift = 1.0 - vmin;
        for (double& v : values) v += shift;
    }
    desc.constant = constant + shift;
    desc.terms = std::move(terms);
    desc.applied_shift = shift;
    return Potential{grid, std::move(values), std::move(desc)};
}

}  // namespace

Potential make_constant_potential(const Grid& grid, double c) {
    if (c < 1.0)
        throw std::domain_error("make_constant_potential: constant potential must be >= 1");
    PotentialDescription desc;
    desc.kind = PotentialKind::Constant;
    desc.constant = c;
    return Potential{grid, std::vector<double>(grid.total_points(), c), desc};
}

Potential make_trig_potential(const Grid& grid, double constant, std::vector<TrigTerm> terms) {
    PotentialDescription desc;
    desc.kind = PotentialKind::TrigPolynomial;
    return finish_trig(grid, constant, std::move(terms), desc);
}

Potential make_random_trig_potential(const Grid& grid, std::uint64_t seed, int degree,
                                     double amplitude) {
    if (degree < 1) throw std::invalid_argument("make_random_trig_potential: degree >= 1");
    auto engine = seeded_engine(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<TrigTerm> terms;
    if (grid.dim == 1) {
        for (int k = 1; k <= degree; ++k) {
            TrigTerm t;
            t.wavevector = {k, 0};
            t.cos_amp = amplitude * uni(engine) / k;
            t.sin_amp = amplitude * uni(engine) / k;
            terms.push_back(t);
        }
    } else {
        // half-plane of wavevectors so the potential is a generic real trig poly
        for (int kx = -degree; kx <= degree; ++kx) {
            for (int ky = 0; ky <= degree; ++ky) {
                if (ky == 0 && kx <= 0) continue;
                const double norm = std::sqrt(double(kx * kx + ky * ky));
                TrigTerm t;
                t.wavevector = {kx, ky};
                t.cos_amp = amplitude * uni(engine) / norm;
                t.sin_amp = amplitude * uni(engine) / norm;
                terms.push_back(t);
            }
        }
    }
    PotentialDescription desc;
    desc.kind = PotentialKind::RandomTrig;
    desc.seed = seed;
    desc.degree = degree;
    desc.amplitude = amplitude;
    return finish_trig(grid, 1.0, std::move(terms), desc);
}

Potential potential_from_description(const Grid& grid, const PotentialDescription& desc) {
    switch (desc.kind) {
        case PotentialKind::Constant:
            return make_constant_potential(grid, desc.constant);
        case PotentialKind::TrigPolynomial:
        case PotentialKind::RandomTrig: {
            // the recorded constant already includes the applied shift
            std::vector<double> values = evaluate_trig(grid, desc.constant, desc.terms);
            Potential p{grid, std::move(values), desc};
            if (p.min_value() < 1.0 - 1e-12)
                throw std::domain_error("potential_from_description: rebuilt potential below 1");
            return p;
        }
    }
    throw std::invalid_argument("potential_from_description: unknown kind");
}

std::string potential_kind_name(PotentialKind kind) {
    switch (kind) {
        case PotentialKind::Constant: return "constant";
        case PotentialKind::TrigPolynomial: return "trig_polynomial";
        case PotentialKind::RandomTrig: return "random_trig";
    }
    return "unknown";
}

PotentialKind potential_kind_from_name(const std::string& name) {
    if (name == "constant") return PotentialKind::Constant;
    if (name == "trig_polynomial") return PotentialKind::TrigPolynomial;
    if (name == "random_trig") return PotentialKind::RandomTrig;
    throw std::invalid_argument("unknown potential kind: " + name);
}

}  // namespace wnlse
