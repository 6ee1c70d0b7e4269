#include "oneq/correlations.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oneq {

namespace {

int rank_from_singulars(const Eigen::VectorXd& sv, double tol) {
    if (sv.size() == 0) {
        return 0;
    }
    const double cutoff = tol * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            ++rank;
        }
    }
    return rank;
}

}  // namespace

Matrix reshape_state(const Vector& psi, const BipartiteSplit& split) {
    const int n = split.total_qubits();
    if (psi.size() != (std::int64_t{1} << n)) {
        throw std::invalid_argument("reshape_state: split inconsistent with vector");
    }
    const auto a_qubits = split.part_a();
    const auto b_qubits = split.part_b();
    Matrix m = Matrix::Zero(split.dim_a(), split.dim_b());
    for (std::int64_t i = 0; i < psi.size(); ++i) {
        std::int64_t row = 0, col = 0;
        for (int q : a_qubits) {
            row = (row << 1) | ((static_cast<std::uint64_t>(i) & qubit_bit(n, q)) ? 1 : 0);
        }
        for (int q : b_qubits) {
            col = (col << 1) | ((static_cast<std::uint64_t>(i) & qubit_bit(n, q)) ? 1 : 0);
        }
        m(row, col) = psi(i);
    }
    return m;
}

int schmidt_rank(const Vector& psi, const BipartiteSplit& split, double tol) {
    if (psi.norm() == 0.0) {
        throw std::invalid_argument("schmidt_rank: zero vector");
    }
    Eigen::BDCSVD<Matrix> svd(reshape_state(psi, split));
    return rank_from_singulars(svd.singularValues(), tol);
}

int operator_schmidt_rank(const DensityMatrix& rho, const BipartiteSplit& split, double tol) {
    if (rho.dim() > (std::int64_t{1} << 12)) {
        throw std::invalid_argument("operator_schmidt_rank: dimension above 2^12");
    }
    if (rho.num_qubits() != split.total_qubits()) {
        throw std::invalid_argument("operator_schmidt_rank: split inconsistent with state");
    }
    const int n = split.total_qubits();
    const auto a_qubits = split.part_a();
    const auto b_qubits = split.part_b();
    const std::int64_t da = split.dim_a();
    const std::int64_t db = split.dim_b();

    auto subidx = [&](std::int64_t i, const std::vector<int>& qubits) {
        std::int64_t s = 0;
        for (int q : qubits) {
            s = (s << 1) | ((static_cast<std::uint64_t>(i) & qubit_bit(n, q)) ? 1 : 0);
        }
        return s;
    };

    // realignment: R[(a1 a2), (b1 b2)] = rho[(a1 b1), (a2 b2)]
    Matrix realigned = Matrix::Zero(da * da, db * db);
    for (std::int64_t i = 0; i < rho.dim(); ++i) {
        const std::int64_t a1 = subidx(i, a_qubits);
        const std::int64_t b1 = subidx(i, b_qubits);
        for (std::int64_t j = 0; j < rho.dim(); ++j) {
            const std::int64_t a2 = subidx(j, a_qubits);
            const std::int64_t b2 = subidx(j, b_qubits);
            realigned(a1 * da + a2, b1 * db + b2) = rho.matrix()(i, j);
        }
    }
    Eigen::BDCSVD<Matrix> svd(realigned);
    return rank_from_singulars(svd.singularValues(), tol);
}

int dqc1_rank_lower_bound(const UnitaryOperator& u, const BipartiteSplit& split,
                          const Vector& probe, double tol) {
    const int total = u.num_qubits() + 1;
    if (split.total_qubits() != total || probe.size() != (std::int64_t{1} << total)) {
        throw std::invalid_argument("dqc1_rank_lower_bound: inconsistent dimensions");
    }
    // the probe must be a computational basis state (one nonzero amplitude)
    std::int64_t basis = -1;
    for (std::int64_t i = 0; i < probe.size(); ++i) {
        if (std::abs(probe(i)) > 1e-12) {
            if (basis >= 0) {
                throw std::invalid_argument(
                    "dqc1_rank_lower_bound: probe is not a computational product state");
            }
            basis = i;
        }
    }
    if (basis < 0) {
        throw std::invalid_argument("dqc1_rank_lower_bound: zero probe");
    }

    const std::int64_t big_n = u.dim();
    const int t = (basis >= big_n) ? 1 : 0;
    const std::int64_t rest = basis & (big_n - 1);  // the |i,j> part

    // rho |t,i,j> = (1/2N) (|t,i,j> + |1-t> (x) U^{(dag)} |i,j>)
    Vector psi = Vector::Zero(2 * big_n);
    psi(basis) = 1.0;
    if (t == 0) {
        psi.segment(big_n, big_n) += u.matrix().col(rest);
    } else {
        psi.segment(0, big_n) += u.matrix().adjoint().col(rest);
    }
    psi /= psi.norm();
    return schmidt_rank(psi, split, tol);
}

MinRankResult min_equal_split_rank(const Vector& psi, double tol, RngSeed seed) {
    const int n = qubits_for_dim(psi.size());
    if (n % 2 != 0) {
        throw std::invalid_argument("min_equal_split_rank: even qubit count required");
    }
    if (n > 14) {
        throw std::invalid_argument("min_equal_split_rank: n <= 14 required");
    }
    const int half = n / 2;
    MinRankResult res;
    res.rank = 1 << half;  // cannot exceed full rank
    int examined = 0;

    auto consider = [&](const std::vector<int>& part) {
        const BipartiteSplit split(part, n);
        res.rank = std::min(res.rank, schmidt_rank(psi, split, tol));
        ++examined;
    };

    if (n <= 10) {
        // all balanced splits containing qubit 0 (complements are equivalent)
        std::vector<int> part;
        std::vector<int> comb(half - 1);
        std::iota(comb.begin(), comb.end(), 1);
        while (true) {
            part.assign(1, 0);
            part.insert(part.end(), comb.begin(), comb.end());
            consider(part);
            int i = half - 2;
            while (i >= 0 && comb[i] == n - (half - 1 - i)) {
                --i;
            }
            if (i < 0) {
                break;
            }
            ++comb[i];
            for (int j = i + 1; j < half - 1; ++j) {
                comb[j] = comb[j - 1] + 1;
            }
        }
    } else {
        res.exhaustive = false;
        // contiguous windows (with wraparound)
        for (int start = 0; start < n; ++start) {
            std::vector<int> part(half);
            for (int k = 0; k < half; ++k) {
                part[k] = (start + k) % n;
            }
            std::sort(part.begin(), part.end());
            consider(part);
        }
        // 200 seeded random balanced splits
        Rng rng(seed);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<int> all(n);
            std::iota(all.begin(), all.end(), 0);
            for (int k = n - 1; k > 0; --k) {
                const int j = static_cast<int>(rng.uniform_index(k + 1));
                std::swap(all[k], all[j]);
            }
            std::vector<int> part(all.begin(), all.begin() + half);
            std::sort(part.begin(), part.end());
            consider(part);
        }
    }
    res.splits_examined = examined;
    return res;
}

double max_overlap_at_rank(const Vector& psi, const BipartiteSplit& split, int chi_prime) {
    if (chi_prime < 1) {
        throw std::invalid_argument("max_overlap_at_rank: chi_prime >= 1 required");
    }
    const std::int64_t max_rank = std::min(split.dim_a(), split.dim_b());
    if (chi_prime > max_rank) {
        throw std::invalid_argument("max_overlap_at_rank: chi_prime exceeds min(d_A, d_B)");
    }
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("max_overlap_at_rank: zero vector");
    }
    Eigen::BDCSVD<Matrix> svd(reshape_state(psi / norm, split));
    double sum = 0.0;
    for (int i = 0; i < chi_prime && i < svd.singularValues().size(); ++i) {
        sum += svd.singularValues()(i) * svd.singularValues()(i);
    }
    return norm * std::sqrt(sum);
}

}  // namespace oneq
