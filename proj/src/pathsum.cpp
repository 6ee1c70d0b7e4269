#include "oneq/pathsum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oneq {

void GateCircuit::validate() const {
    if (num_qubits < 1) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
    for (const Gate& g : gates) {
        auto check = [&](int q) {
            if (q < 0 || q >= num_qubits) {
                throw std::invalid_argument("gate qubit index out of range");
            }
        };
        switch (g.kind) {
            case GateKind::H:
            case GateKind::T:
                check(g.q0);
                break;
            case GateKind::CNOT:
                check(g.q0);
                check(g.q1);
                if (g.q0 == g.q1) {
                    throw std::invalid_argument("CNOT operands must be distinct");
                }
                break;
            case GateKind::TOFFOLI:
                check(g.q0);
                check(g.q1);
                check(g.q2);
                if (g.q0 == g.q1 || g.q0 == g.q2 || g.q1 == g.q2) {
                    throw std::invalid_argument("Toffoli operands must be distinct");
                }
                break;
        }
    }
}

GateCircuit GateCircuit::parse(std::istream& in) {
    GateCircuit circuit;
    bool saw_header = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) {
            continue;
        }
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + why);
        };
        if (tok == "QUBITS") {
            if (saw_header) {
                fail("duplicate QUBITS header");
            }
            if (!(ls >> circuit.num_qubits) || circuit.num_qubits < 1) {
                fail("bad qubit count");
            }
            saw_header = true;
            continue;
        }
        if (!saw_header) {
            fail("QUBITS header must come first");
        }
        int a = -1, b = -1, c = -1;
        if (tok == "H" || tok == "T") {
            if (!(ls >> a)) {
                fail("expected one qubit index");
            }
            circuit.gates.push_back(tok == "H" ? Gate::h(a) : Gate::t(a));
        } else if (tok == "CNOT") {
            if (!(ls >> a >> b)) {
                fail("expected control and target");
            }
            circuit.gates.push_back(Gate::cnot(a, b));
        } else if (tok == "TOFFOLI") {
            if (!(ls >> a >> b >> c)) {
                fail("expected two controls and a target");
            }
            circuit.gates.push_back(Gate::toffoli(a, b, c));
        } else {
            fail("unknown gate '" + tok + "'");
        }
        std::string extra;
        if (ls >> extra) {
            fail("trailing tokens");
        }
    }
    if (!saw_header) {
        throw std::invalid_argument("circuit file missing QUBITS header");
    }
    circuit.validate();
    return circuit;
}

GateCircuit GateCircuit::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

GateCircuit GateCircuit::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open circuit file: " + path);
    }
    return parse(in);
}

int PathPolynomialSystem::max_degree() const {
    std::size_t deg = 0;
    for (const auto& m : monomials) {
        deg = std::max(deg, m.size());
    }
    return static_cast<int>(deg);
}

namespace {

// Wires carry homogeneous linear Z2 forms: sorted variable-index sets.
using LinearForm = std::vector<int>;

LinearForm xor_merge(const LinearForm& a, const LinearForm& b) {
    LinearForm out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

class PolyBuilder {
  public:
    // toggles a monomial; repeated variables collapse (x^2 = x over Z2)
    void toggle(std::vector<int> vars) {
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        const auto it = monomials_.find(vars);
        if (it == monomials_.end()) {
            monomials_.insert(std::move(vars));
        } else {
            monomials_.erase(it);
        }
    }

    // adds u * y for a linear form u and a single fresh variable y
    void add_product(const LinearForm& u, int y) {
        for (int v : u) {
            toggle({v, y});
        }
    }

    // adds x * y * z for linear forms x, y and a single variable z
    void add_triple(const LinearForm& x, const LinearForm& y, int z) {
        for (int p : x) {
            for (int q : y) {
                toggle({p, q, z});
            }
        }
    }

    std::vector<std::vector<int>> take() {
        return std::vector<std::vector<int>>(monomials_.begin(), monomials_.end());
    }

  private:
    std::set<std::vector<int>> monomials_;
};

struct CompileState {
    int n;
    std::vector<LinearForm> wires;  // current value of each qubit wire
    PolyBuilder poly;
    int next_var;
    int h = 0;

    explicit CompileState(int num_qubits) : n(num_qubits), next_var(2 * num_qubits) {
        wires.resize(n);
        for (int q = 0; q < n; ++q) {
            wires[q] = {n + q};  // post-sandwich bit of qubit q
        }
    }

    // Hadamard on wire q: phase (-1)^(u . y), wire becomes the fresh bit y.
    int hadamard(int q) {
        const int y = next_var++;
        poly.add_product(wires[q], y);
        wires[q] = {y};
        ++h;
        return y;
    }

    void finish_sandwich() {
        // a . (b + c) from the Hadamard layers before and after the circuit
        for (int q = 0; q < n; ++q) {
            LinearForm b_plus_c = xor_merge(wires[q], {n + q});
            for (int v : b_plus_c) {
                poly.toggle({q, v});
            }
        }
    }
};

}  // namespace

PathPolynomialSystem compile_toffoli_path_sum(const GateCircuit& circuit) {
    circuit.validate();
    CompileState st(circuit.num_qubits);
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::H:
                st.hadamard(g.q0);
                break;
            case GateKind::TOFFOLI: {
                // target value z + xy feeds the first trailing Hadamard,
                // leaving one cubic term and a fresh linear wire
                const LinearForm x = st.wires[g.q0];
                const LinearForm y = st.wires[g.q1];
                const LinearForm z = st.wires[g.q2];
                const int y1 = st.next_var++;
                st.poly.add_product(z, y1);
                st.poly.add_triple(x, y, y1);
                st.wires[g.q2] = {y1};
                st.h += 1;
                st.hadamard(g.q2);
                break;
            }
            default:
                throw std::invalid_argument(
                    "compile_toffoli_path_sum accepts only H and TOFFOLI gates");
        }
    }
    st.finish_sandwich();

    PathPolynomialSystem out;
    out.variant = PathPolynomialSystem::Variant::CubicZ2;
    out.num_qubits = circuit.num_qubits;
    out.hadamard_count = st.h;
    out.num_path_bits = st.next_var;
    out.monomials = st.poly.take();
    return out;
}

PathPolynomialSystem compile_clifford_t_path_sum(const GateCircuit& circuit) {
    circuit.validate();
    CompileState st(circuit.num_qubits);
    std::vector<std::pair<int, int>> t_inputs;  // (variable, count)
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::H:
                st.hadamard(g.q0);
                break;
            case GateKind::CNOT:
                st.wires[g.q1] = xor_merge(st.wires[g.q1], st.wires[g.q0]);
                break;
            case GateKind::T: {
                // Hadamard pair first, so the T input is one fresh bit
                st.hadamard(g.q0);
                const int y2 = st.hadamard(g.q0);
                t_inputs.push_back({y2, 1});
                break;
            }
            default:
                throw std::invalid_argument(
                    "compile_clifford_t_path_sum accepts only H, T, and CNOT gates");
        }
    }
    st.finish_sandwich();

    PathPolynomialSystem out;
    out.variant = PathPolynomialSystem::Variant::QuadZ2LinearZ8;
    out.num_qubits = circuit.num_qubits;
    out.hadamard_count = st.h;
    out.num_path_bits = st.next_var;
    out.monomials = st.poly.take();
    out.chi.assign(out.num_path_bits, 0);
    for (const auto& [var, count] : t_inputs) {
        out.chi[var] = (out.chi[var] + count) % 8;
    }
    return out;
}

namespace {

struct CompiledEval {
    std::vector<std::uint64_t> monomial_masks;
    std::vector<std::pair<std::uint64_t, int>> chi_terms;  // (bit mask, coefficient)

    explicit CompiledEval(const PathPolynomialSystem& polys) {
        if (polys.num_path_bits > 63) {
            throw std::invalid_argument("path system too large for 64-bit evaluation");
        }
        for (const auto& m : polys.monomials) {
            std::uint64_t mask = 0;
            for (int v : m) {
                mask |= std::uint64_t{1} << v;
            }
            monomial_masks.push_back(mask);
        }
        for (std::size_t v = 0; v < polys.chi.size(); ++v) {
            if (polys.chi[v] != 0) {
                chi_terms.push_back({std::uint64_t{1} << v, polys.chi[v]});
            }
        }
    }

    int sign_bit(std::uint64_t x) const {
        int parity = 0;
        for (std::uint64_t m : monomial_masks) {
            parity ^= ((x & m) == m) ? 1 : 0;
        }
        return parity;
    }

    int chi_mod8(std::uint64_t x) const {
        int s = 0;
        for (const auto& [mask, coeff] : chi_terms) {
            if (x & mask) {
                s += coeff;
            }
        }
        return s & 7;
    }
};

Complex eighth_root(int j) {
    return std::polar(1.0, std::numbers::pi / 4.0 * j);
}

}  // namespace

Complex exact_trace_by_counting(const PathPolynomialSystem& polys, Exec exec) {
    if (polys.num_path_bits > 26) {
        throw std::invalid_argument("exact_trace_by_counting: more than 26 path bits");
    }
    const CompiledEval eval(polys);
    const std::uint64_t total = std::uint64_t{1} << polys.num_path_bits;
    const bool has_chi = polys.variant == PathPolynomialSystem::Variant::QuadZ2LinearZ8;

    // 16 integer buckets (chi value x sign); integer accumulation keeps the
    // result identical for any chunking and thread count.
    using Buckets = std::array<long long, 16>;
    const std::size_t chunk = std::size_t{1} << 16;
    const std::size_t num_chunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
    std::vector<Buckets> partial(num_chunks);
    for_each_index(num_chunks, exec, [&](std::size_t ci) {
        Buckets local{};
        const std::uint64_t lo = static_cast<std::uint64_t>(ci) * chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
        for (std::uint64_t x = lo; x < hi; ++x) {
            const int sign = eval.sign_bit(x);
            const int j = has_chi ? eval.chi_mod8(x) : 0;
            ++local[2 * j + sign];
        }
        partial[ci] = local;
    });
    Buckets counts{};
    for (const Buckets& p : partial) {
        for (int i = 0; i < 16; ++i) {
            counts[i] += p[i];
        }
    }

    Complex sum(0.0, 0.0);
    for (int j = 0; j < 8; ++j) {
        const double net = static_cast<double>(counts[2 * j] - counts[2 * j + 1]);
        if (net != 0.0) {
            sum += eighth_root(j) * net;
        }
    }
    const double log2_norm =
        2.0 * polys.num_qubits + 0.5 * polys.hadamard_count;  // tr(U)/2^n scale
    return sum * std::pow(2.0, -log2_norm);
}

TraceSampleReport sampled_trace(const PathPolynomialSystem& polys, long long samples,
                                RngSeed seed, Exec exec) {
    if (samples < 1) {
        throw std::invalid_argument("sampled_trace: samples >= 1 required");
    }
    const CompiledEval eval(polys);
    const std::uint64_t mask = (polys.num_path_bits == 63)
                                   ? ~std::uint64_t{0} >> 1
                                   : (std::uint64_t{1} << polys.num_path_bits) - 1;
    const double magnitude = std::pow(2.0, 0.5 * polys.hadamard_count);
    const bool has_chi = polys.variant == PathPolynomialSystem::Variant::QuadZ2LinearZ8;

    struct Partial {
        Complex sum{0.0, 0.0};
        double sumsq = 0.0;
    };
    const long long chunk = 1 << 12;
    const std::size_t num_chunks = static_cast<std::size_t>((samples + chunk - 1) / chunk);
    std::vector<Partial> partial(num_chunks);
    for_each_index(num_chunks, exec, [&](std::size_t ci) {
        Rng rng = Rng::derived(seed, ci);
        const long long lo = static_cast<long long>(ci) * chunk;
        const long long hi = std::min(lo + chunk, samples);
        Partial p;
        for (long long s = lo; s < hi; ++s) {
            const std::uint64_t x = rng.next_u64() & mask;
            const int sign = eval.sign_bit(x);
            Complex g = has_chi ? eighth_root(eval.chi_mod8(x)) : Complex(1.0, 0.0);
            if (sign) {
                g = -g;
            }
            g *= magnitude;
            p.sum += g;
            p.sumsq += magnitude * magnitude;
        }
        partial[ci] = p;
    });

    Complex sum(0.0, 0.0);
    double sumsq = 0.0;
    for (const Partial& p : partial) {
        sum += p.sum;
        sumsq += p.sumsq;
    }
    TraceSampleReport report;
    report.samples = samples;
    report.estimate = sum / static_cast<double>(samples);
    if (samples > 1) {
        report.empirical_variance =
            (sumsq - samples * std::norm(report.estimate)) / static_cast<double>(samples - 1);
    }
    return report;
}

Matrix circuit_unitary(const GateCircuit& circuit) {
    circuit.validate();
    if (circuit.num_qubits > 12) {
        throw std::invalid_argument("circuit_unitary: more than 12 qubits");
    }
    const int n = circuit.num_qubits;
    const std::int64_t d = std::int64_t{1} << n;
    Matrix u = Matrix::Identity(d, d);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const Complex t_phase = std::polar(1.0, std::numbers::pi / 4.0);

    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::H: {
                const std::uint64_t bit = qubit_bit(n, g.q0);
                for (std::int64_t r = 0; r < d; ++r) {
                    if (static_cast<std::uint64_t>(r) & bit) {
                        continue;
                    }
                    const std::int64_t r1 = static_cast<std::int64_t>(r | bit);
                    for (std::int64_t c = 0; c < d; ++c) {
                        const Complex lo = u(r, c);
                        const Complex hi = u(r1, c);
                        u(r, c) = (lo + hi) * inv_sqrt2;
                        u(r1, c) = (lo - hi) * inv_sqrt2;
                    }
                }
                break;
            }
            case GateKind::T: {
                const std::uint64_t bit = qubit_bit(n, g.q0);
                for (std::int64_t r = 0; r < d; ++r) {
                    if (static_cast<std::uint64_t>(r) & bit) {
                        u.row(r) *= t_phase;
                    }
                }
                break;
            }
            case GateKind::CNOT: {
                const std::uint64_t cb = qubit_bit(n, g.q0);
                const std::uint64_t tb = qubit_bit(n, g.q1);
                for (std::int64_t r = 0; r < d; ++r) {
                    const std::uint64_t ur = static_cast<std::uint64_t>(r);
                    if ((ur & cb) && !(ur & tb)) {
                        u.row(r).swap(u.row(static_cast<std::int64_t>(ur | tb)));
                    }
                }
                break;
            }
            case GateKind::TOFFOLI: {
                const std::uint64_t c1 = qubit_bit(n, g.q0);
                const std::uint64_t c2 = qubit_bit(n, g.q1);
                const std::uint64_t tb = qubit_bit(n, g.q2);
                for (std::int64_t r = 0; r < d; ++r) {
                    const std::uint64_t ur = static_cast<std::uint64_t>(r);
                    if ((ur & c1) && (ur & c2) && !(ur & tb)) {
                        u.row(r).swap(u.row(static_cast<std::int64_t>(ur | tb)));
                    }
                }
                break;
            }
        }
    }
    return u;
}

Complex matrix_trace_oracle(const GateCircuit& circuit) {
    const Matrix u = circuit_unitary(circuit);
    return u.trace() / static_cast<double>(u.rows());
}

}  // namespace oneq
