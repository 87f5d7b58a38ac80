#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chred/tucker.hpp"

namespace chred {

// Boolean values live in {-1,+1}: -1 is False, +1 is True.

// Reference to a gate input: either an earlier gate (1-based index) or one of
// the N x 7N circuit inputs.
struct WireRef {
    enum class Kind { Gate, Input } kind = Kind::Gate;
    int gate = 0;  // 1-based gate index
    int i = 0;     // input row, 1..N
    int j = 0;     // input column, 1..7N

    static WireRef of_gate(int t) { return {Kind::Gate, t, 0, 0}; }
    static WireRef of_input(int i, int j) { return {Kind::Input, 0, i, j}; }
    bool is_gate() const { return kind == Kind::Gate; }
};

bool operator==(const WireRef& a, const WireRef& b);

enum class GateKind { Not, Nand };

struct Gate {
    GateKind kind = GateKind::Not;
    WireRef in1;
    WireRef in2;  // ignored for NOT
};

// N x 7N input matrix with entries in {-1,+1}.
struct BitMatrix {
    int n = 0;
    std::vector<std::int8_t> bits;  // row-major, (i-1)*7N + (j-1)

    explicit BitMatrix(int n_) : n(n_), bits(static_cast<std::size_t>(n_) * 7 * n_, -1) {}
    std::int8_t get(int i, int j) const { return bits[static_cast<std::size_t>(i - 1) * 7 * n + (j - 1)]; }
    void set(int i, int j, std::int8_t v) { bits[static_cast<std::size_t>(i - 1) * 7 * n + (j - 1)] = v; }
    BitMatrix negated() const;
};

// Circuit over NOT/NAND with inputs indexed by [N] x [7N]; the N outputs are
// the last N gates.
struct Circuit {
    int n = 0;
    std::vector<Gate> gates;

    int gate_count() const { return static_cast<int>(gates.size()); }
    // Validates reference ranges and output positioning ("dangling gate
    // reference" is a structural error at load time, not eval time).
    void validate() const;
};

std::vector<std::int8_t> eval_circuit(const Circuit& c, const BitMatrix& x);

// Values of every gate, 0-indexed by gate position (outputs are the tail).
std::vector<std::int8_t> eval_all_gates(const Circuit& c, const BitMatrix& x);

// Arithmetic phi: phi_i(x) = ceil((8N + 1/2 + sum_j x_ij) / 2N), in [8].
// Integer form: the least b with 16N + 1 + 2*sum <= 4Nb.
int phi_bucket_of_sum(long long row_sum, int n);
std::vector<int> phi(const BitMatrix& x);

// --- Construction -----------------------------------------------------------

class CircuitBuilder {
public:
    explicit CircuitBuilder(int n) : circuit_{n, {}} {}

    WireRef input(int i, int j) const { return WireRef::of_input(i, j); }
    WireRef not_(WireRef a);
    WireRef nand_(WireRef a, WireRef b);

    // Derived gates, each expanded into NOT/NAND.
    WireRef and_(WireRef a, WireRef b) { return not_(nand_(a, b)); }
    WireRef or_(WireRef a, WireRef b) { return nand_(not_(a), not_(b)); }
    WireRef xor_(WireRef a, WireRef b);
    WireRef mux(WireRef sel, WireRef a, WireRef b);  // sel=+1 -> a, else b
    WireRef const_true(WireRef any);                 // NAND(w, NOT w)
    WireRef const_false(WireRef any);

    WireRef and_tree(const std::vector<WireRef>& ws);
    WireRef or_tree(const std::vector<WireRef>& ws);  // requires non-empty

    // Comparator network sorting the wires descending (position 0 carries the
    // OR of all, the last the AND of all). After sorting, wire p (0-based) is
    // +1 iff at least p+1 inputs are +1.
    std::vector<WireRef> sort_descending(std::vector<WireRef> wires);

    // Emits the 8 one-hot bucket indicators [phi_i = b] for one row of 7N
    // wires: a sorted unary tally followed by threshold comparisons.
    std::vector<WireRef> phi_bucket_indicators(const std::vector<WireRef>& row);

    // Marks the given wires as circuit outputs by appending double-NOT chains
    // so they occupy the last N gate slots, then returns the finished circuit.
    Circuit finish_with_outputs(const std::vector<WireRef>& outputs);

    const Circuit& circuit() const { return circuit_; }

private:
    Circuit circuit_;
    WireRef emit(GateKind kind, WireRef a, WireRef b);
};

// Pure comparator schedule of the sorting network (index pairs on n lanes),
// exposed so tests can certify it with the 0-1 principle.
std::vector<std::pair<int, int>> merge_exchange_schedule(int n);

// Compiles the explicit label table on [8]^N into the modified circuit:
// outputs equal lambda(phi(x)) for every pure input, last N gates are the
// outputs, only NOT/NAND gates.
Circuit build_lambda_hat(const LabelGrid& lambda);

// Rewrites the circuit so every NAND output feeds only NOT gates and is never
// a circuit output (NAND(a,a) becomes NOT(a); a NOT/NOT chain is appended
// after each NAND and consumers are rerouted). Gate values are preserved.
Circuit normalize_nand_followers(const Circuit& c);

}  // namespace chred
