#include "oneq/discord.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "oneq/dqc1.hpp"

namespace oneq {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::pair<Matrix, Matrix> BlochMeasurement::projectors() const {
    const double ax = std::sin(theta) * std::cos(phi);
    const double ay = std::sin(theta) * std::sin(phi);
    const double az = std::cos(theta);
    const Matrix dot = ax * pauli_x() + ay * pauli_y() + az * pauli_z();
    const Matrix id = identity(2);
    return {(id + dot) / 2.0, (id - dot) / 2.0};
}

double mutual_information(const DensityMatrix& rho, const BipartiteSplit& split) {
    const double ha = von_neumann_entropy(partial_trace(rho, split, /*keep_a=*/true));
    const double hb = von_neumann_entropy(partial_trace(rho, split, /*keep_a=*/false));
    const double hab = von_neumann_entropy(rho);
    return ha + hb - hab;
}

namespace {

void require_single_qubit_part(const BipartiteSplit& split) {
    if (split.size_a() != 1) {
        throw std::invalid_argument("measured part must be a single qubit");
    }
}

// Unnormalized post-measurement state of B for a one-qubit element E on the
// measured qubit q:  tr_A[(E (x) I) rho] = sum_{k,l} E(l,k) rho^{(k,l)},
// where rho^{(k,l)} are the 2x2-block slices along qubit q.  For projectors
// this equals tr_A(Pi rho Pi) since Pi^2 = Pi.
Matrix reduced_after_element(const Matrix& rho, const BipartiteSplit& split, const Matrix& e) {
    const int n = split.total_qubits();
    const int q = split.part_a().front();
    const int bitpos = n - 1 - q;
    const std::int64_t db = std::int64_t{1} << (n - 1);
    const std::uint64_t low_mask = (std::uint64_t{1} << bitpos) - 1;

    auto expand = [&](std::int64_t r, int k) {
        const std::uint64_t ur = static_cast<std::uint64_t>(r);
        return static_cast<std::int64_t>(((ur >> bitpos) << (bitpos + 1)) |
                                         (static_cast<std::uint64_t>(k) << bitpos) |
                                         (ur & low_mask));
    };

    Matrix out = Matrix::Zero(db, db);
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            const Complex weight = e(l, k);
            if (weight == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::int64_t r = 0; r < db; ++r) {
                const std::int64_t row = expand(r, k);
                for (std::int64_t s = 0; s < db; ++s) {
                    out(r, s) += weight * rho(row, expand(s, l));
                }
            }
        }
    }
    return out;
}

double branch_weighted_entropy(const Matrix& rho, const BipartiteSplit& split, const Matrix& e) {
    Matrix reduced = reduced_after_element(rho, split, e);
    const double p = reduced.trace().real();
    if (p < tol::entropy_clip) {
        return 0.0;
    }
    reduced /= p;
    // symmetrize away roundoff before the eigensolve
    const Matrix sym = (reduced + reduced.adjoint()) / 2.0;
    return p * entropy_of_spectrum(hermitian_spectrum(sym).values);
}

}  // namespace

double conditional_entropy_measured(const DensityMatrix& rho, const BipartiteSplit& split,
                                    const BlochMeasurement& meas) {
    require_single_qubit_part(split);
    const auto [pi_plus, pi_minus] = meas.projectors();
    return branch_weighted_entropy(rho.matrix(), split, pi_plus) +
           branch_weighted_entropy(rho.matrix(), split, pi_minus);
}

double conditional_entropy_povm(const DensityMatrix& rho, const BipartiteSplit& split,
                                const std::vector<Matrix>& elements) {
    require_single_qubit_part(split);
    Matrix sum = Matrix::Zero(2, 2);
    double total = 0.0;
    for (const Matrix& e : elements) {
        sum += e;
        total += branch_weighted_entropy(rho.matrix(), split, e);
    }
    if ((sum - identity(2)).cwiseAbs().maxCoeff() > 1e-8) {
        throw std::invalid_argument("POVM elements must sum to the identity");
    }
    return total;
}

DiscordReport discord(const DensityMatrix& rho, const BipartiteSplit& split,
                      const OptimizerConfig& config) {
    require_single_qubit_part(split);
    long evals = 0;
    auto objective = [&](double theta, double phi) {
        ++evals;
        return conditional_entropy_measured(rho, split, BlochMeasurement{theta, phi});
    };

    // coarse grid
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::pair<double, double>>> scored;
    scored.reserve(static_cast<std::size_t>(config.grid_theta) * config.grid_phi);
    for (int it = 0; it < config.grid_theta; ++it) {
        const double theta = kPi * it / (config.grid_theta - 1);
        for (int ip = 0; ip < config.grid_phi; ++ip) {
            const double phi = 2.0 * kPi * ip / config.grid_phi;
            const double v = objective(theta, phi);
            scored.push_back({v, {theta, phi}});
        }
    }
    std::sort(scored.begin(), scored.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    // Nelder-Mead from the best grid points
    double best_theta = scored.front().second.first;
    double best_phi = scored.front().second.second;
    best_val = scored.front().first;
    const int starts = std::min<int>(config.refine_starts, static_cast<int>(scored.size()));
    for (int s = 0; s < starts; ++s) {
        double t0 = scored[s].second.first;
        double p0 = scored[s].second.second;
        const double step_t = kPi / (config.grid_theta - 1);
        const double step_p = 2.0 * kPi / config.grid_phi;

        struct Pt {
            double t, p, v;
        };
        std::array<Pt, 3> simplex{Pt{t0, p0, objective(t0, p0)},
                                  Pt{t0 + step_t, p0, objective(t0 + step_t, p0)},
                                  Pt{t0, p0 + step_p, objective(t0, p0 + step_p)}};
        auto order = [&]() {
            std::sort(simplex.begin(), simplex.end(),
                      [](const Pt& x, const Pt& y) { return x.v < y.v; });
        };
        order();
        for (int it = 0; it < config.max_refine_iters; ++it) {
            if (simplex[2].v - simplex[0].v < config.improvement_tol) {
                break;
            }
            const double ct = (simplex[0].t + simplex[1].t) / 2.0;
            const double cp = (simplex[0].p + simplex[1].p) / 2.0;
            const double rt = ct + (ct - simplex[2].t);
            const double rp = cp + (cp - simplex[2].p);
            const double rv = objective(rt, rp);
            if (rv < simplex[0].v) {
                const double et = ct + 2.0 * (ct - simplex[2].t);
                const double ep = cp + 2.0 * (cp - simplex[2].p);
                const double ev = objective(et, ep);
                simplex[2] = ev < rv ? Pt{et, ep, ev} : Pt{rt, rp, rv};
            } else if (rv < simplex[1].v) {
                simplex[2] = Pt{rt, rp, rv};
            } else {
                const double kt = ct + 0.5 * (simplex[2].t - ct);
                const double kp = cp + 0.5 * (simplex[2].p - cp);
                const double kv = objective(kt, kp);
                if (kv < simplex[2].v) {
                    simplex[2] = Pt{kt, kp, kv};
                } else {
                    for (int i = 1; i < 3; ++i) {
                        simplex[i].t = (simplex[i].t + simplex[0].t) / 2.0;
                        simplex[i].p = (simplex[i].p + simplex[0].p) / 2.0;
                        simplex[i].v = objective(simplex[i].t, simplex[i].p);
                    }
                }
            }
            order();
        }
        if (simplex[0].v < best_val) {
            best_val = simplex[0].v;
            best_theta = simplex[0].t;
            best_phi = simplex[0].p;
        }
    }

    // Normalize the reported angles.  {Pi+, Pi-} is unchanged under
    // a -> -a, so every measurement has a representative in the closed
    // upper hemisphere; report that one.
    best_theta = std::fmod(best_theta, 2.0 * kPi);
    if (best_theta < 0.0) {
        best_theta += 2.0 * kPi;
    }
    if (best_theta > kPi) {
        best_theta = 2.0 * kPi - best_theta;
        best_phi += kPi;
    }
    if (best_theta > kPi / 2.0) {
        best_theta = kPi - best_theta;
        best_phi += kPi;
    }
    best_phi = std::fmod(best_phi, 2.0 * kPi);
    if (best_phi < 0.0) {
        best_phi += 2.0 * kPi;
    }

    const double ha = von_neumann_entropy(partial_trace(rho, split, /*keep_a=*/true));
    const double hb = von_neumann_entropy(partial_trace(rho, split, /*keep_a=*/false));
    const double hab = von_neumann_entropy(rho);

    DiscordReport report;
    report.mutual_information = ha + hb - hab;
    report.classical_correlation = hb - best_val;
    double d = report.mutual_information - report.classical_correlation;
    if (d < 0.0 && d > -tol::hermitian) {
        d = 0.0;
    }
    report.discord = d;
    report.optimal_measurement = BlochMeasurement{best_theta, best_phi};
    report.optimizer_evals = evals;
    return report;
}

DensityMatrix horodecki_state(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("horodecki_state: p must lie in [0, 1]");
    }
    Matrix m = Matrix::Zero(8, 8);
    for (int i : {0, 1, 2, 3}) {
        m(i, i) = p;
    }
    m(0, 5) = m(5, 0) = p;
    m(1, 6) = m(6, 1) = p;
    m(2, 7) = m(7, 2) = p;
    m(5, 5) = p;
    m(6, 6) = p;
    m(4, 4) = (1.0 + p) / 2.0;
    m(7, 7) = (1.0 + p) / 2.0;
    m(4, 7) = m(7, 4) = std::sqrt(1.0 - p * p) / 2.0;
    m /= (1.0 + 7.0 * p);
    return DensityMatrix(std::move(m), 3, DensityMatrix::Unchecked{});
}

DiscordReport dqc1_discord_numeric(const UnitaryOperator& u, double alpha,
                                   const OptimizerConfig& config) {
    const DQC1State state = build_state(u, alpha);
    const BipartiteSplit split({0}, u.num_qubits() + 1);
    return discord(state.state, split, config);
}

double dqc1_discord_analytic(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw std::invalid_argument("dqc1_discord_analytic: alpha must lie in [0, 1]");
    }
    const double root = std::sqrt(1.0 - alpha * alpha);
    return 2.0 - binary_entropy((1.0 - alpha) / 2.0) - std::log2(1.0 + root) -
           (1.0 - root) * std::log2(std::numbers::e);
}

double separable_discord_bound(const DensityMatrix& rho, const BipartiteSplit& split) {
    const double ha = von_neumann_entropy(partial_trace(rho, split, /*keep_a=*/true));
    const double hb = von_neumann_entropy(partial_trace(rho, split, /*keep_a=*/false));
    const double hab = von_neumann_entropy(rho);
    return std::min({ha, hb, ha + hb - hab});
}

}  // namespace oneq
