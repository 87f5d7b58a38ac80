#include "chred/circuit.hpp"

#include <stdexcept>
#include <utility>

namespace chred {

bool operator==(const WireRef& a, const WireRef& b) {
    if (a.kind != b.kind) return false;
    return a.is_gate() ? a.gate == b.gate : (a.i == b.i && a.j == b.j);
}

BitMatrix BitMatrix::negated() const {
    BitMatrix y(n);
    for (std::size_t p = 0; p < bits.size(); ++p) y.bits[p] = static_cast<std::int8_t>(-bits[p]);
    return y;
}

void Circuit::validate() const {
    if (n < 1) throw std::invalid_argument("circuit: N must be >= 1");
    if (gate_count() < n) throw std::invalid_argument("circuit: fewer gates than outputs");
    auto check_ref = [&](const WireRef& r, int t) {
        if (r.is_gate()) {
            if (r.gate < 1 || r.gate >= t) throw std::invalid_argument("circuit: dangling gate reference");
        } else {
            if (r.i < 1 || r.i > n || r.j < 1 || r.j > 7 * n)
                throw std::invalid_argument("circuit: input reference out of range");
        }
    };
    for (int t = 1; t <= gate_count(); ++t) {
        const Gate& g = gates[static_cast<std::size_t>(t - 1)];
        check_ref(g.in1, t);
        if (g.kind == GateKind::Nand) check_ref(g.in2, t);
    }
}

std::vector<std::int8_t> eval_all_gates(const Circuit& c, const BitMatrix& x) {
    if (x.n != c.n) throw std::invalid_argument("eval: input dimension mismatch");
    std::vector<std::int8_t> val(c.gates.size());
    auto read = [&](const WireRef& r) -> std::int8_t {
        return r.is_gate() ? val[static_cast<std::size_t>(r.gate - 1)] : x.get(r.i, r.j);
    };
    for (std::size_t t = 0; t < c.gates.size(); ++t) {
        const Gate& g = c.gates[t];
        if (g.kind == GateKind::Not) {
            val[t] = static_cast<std::int8_t>(-read(g.in1));
        } else {
            std::int8_t a = read(g.in1), b = read(g.in2);
            val[t] = static_cast<std::int8_t>((a == 1 && b == 1) ? -1 : +1);
        }
    }
    return val;
}

std::vector<std::int8_t> eval_circuit(const Circuit& c, const BitMatrix& x) {
    std::vector<std::int8_t> val = eval_all_gates(c, x);
    std::vector<std::int8_t> out(static_cast<std::size_t>(c.n));
    for (int i = 0; i < c.n; ++i) out[static_cast<std::size_t>(i)] = val[c.gates.size() - c.n + i];
    return out;
}

int phi_bucket_of_sum(long long row_sum, int n) {
    long long a = 16LL * n + 1 + 2 * row_sum;  // > 0 since row_sum >= -7N
    long long d = 4LL * n;
    long long b = (a + d - 1) / d;
    if (b < 1 || b > 8) throw std::logic_error("phi: bucket out of [8]");
    return static_cast<int>(b);
}

std::vector<int> phi(const BitMatrix& x) {
    std::vector<int> out(static_cast<std::size_t>(x.n));
    for (int i = 1; i <= x.n; ++i) {
        long long sum = 0;
        for (int j = 1; j <= 7 * x.n; ++j) sum += x.get(i, j);
        out[static_cast<std::size_t>(i - 1)] = phi_bucket_of_sum(sum, x.n);
    }
    return out;
}

WireRef CircuitBuilder::emit(GateKind kind, WireRef a, WireRef b) {
    circuit_.gates.push_back({kind, a, b});
    return WireRef::of_gate(circuit_.gate_count());
}

WireRef CircuitBuilder::not_(WireRef a) { return emit(GateKind::Not, a, a); }
WireRef CircuitBuilder::nand_(WireRef a, WireRef b) { return emit(GateKind::Nand, a, b); }

WireRef CircuitBuilder::xor_(WireRef a, WireRef b) {
    WireRef n = nand_(a, b);
    return nand_(nand_(a, n), nand_(b, n));
}

WireRef CircuitBuilder::mux(WireRef sel, WireRef a, WireRef b) {
    return or_(and_(sel, a), and_(not_(sel), b));
}

WireRef CircuitBuilder::const_true(WireRef any) { return nand_(any, not_(any)); }
WireRef CircuitBuilder::const_false(WireRef any) { return not_(const_true(any)); }

WireRef CircuitBuilder::and_tree(const std::vector<WireRef>& ws) {
    if (ws.empty()) throw std::invalid_argument("and_tree: empty");
    std::vector<WireRef> layer = ws;
    while (layer.size() > 1) {
        std::vector<WireRef> next;
        for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(and_(layer[i], layer[i + 1]));
        if (layer.size() % 2) next.push_back(layer.back());
        layer = std::move(next);
    }
    return layer[0];
}

WireRef CircuitBuilder::or_tree(const std::vector<WireRef>& ws) {
    if (ws.empty()) throw std::invalid_argument("or_tree: empty");
    std::vector<WireRef> layer = ws;
    while (layer.size() > 1) {
        std::vector<WireRef> next;
        for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(or_(layer[i], layer[i + 1]));
        if (layer.size() % 2) next.push_back(layer.back());
        layer = std::move(next);
    }
    return layer[0];
}

std::vector<std::pair<int, int>> merge_exchange_schedule(int n) {
    // Batcher's merge exchange (Knuth 5.2.2M); valid for every n >= 1.
    std::vector<std::pair<int, int>> sched;
    if (n < 2) return sched;
    int t = 0;
    while ((1 << t) < n) ++t;
    for (int p = 1 << (t - 1); p > 0; p >>= 1) {
        int q = 1 << (t - 1);
        int r = 0;
        int d = p;
        while (d > 0) {
            for (int i = 0; i + d < n; ++i)
                if ((i & p) == r) sched.emplace_back(i, i + d);
            d = q - p;
            q >>= 1;
            r = p;
        }
    }
    return sched;
}

std::vector<WireRef> CircuitBuilder::sort_descending(std::vector<WireRef> wires) {
    for (auto [u, v] : merge_exchange_schedule(static_cast<int>(wires.size()))) {
        WireRef a = wires[static_cast<std::size_t>(u)];
        WireRef b = wires[static_cast<std::size_t>(v)];
        wires[static_cast<std::size_t>(u)] = or_(a, b);
        wires[static_cast<std::size_t>(v)] = and_(a, b);
    }
    return wires;
}

std::vector<WireRef> CircuitBuilder::phi_bucket_indicators(const std::vector<WireRef>& row) {
    int n = circuit_.n;
    if (row.size() != static_cast<std::size_t>(7 * n))
        throw std::invalid_argument("phi indicators: row must have 7N wires");
    std::vector<WireRef> sorted = sort_descending(row);
    // phi <= b  <=>  count of +1 bits <= U_b, with U_b = floor((2Nb - N - 1)/2).
    // Sorted wire p (0-based) is the threshold [count >= p+1].
    auto count_at_most = [&](long long u) -> WireRef {
        if (u < 0) return const_false(row[0]);
        if (u >= 7 * n) return const_true(row[0]);
        return not_(sorted[static_cast<std::size_t>(u)]);  // NOT [count >= u+1]
    };
    std::vector<WireRef> le(9);  // le[b] = [phi <= b], b = 0..8
    for (int b = 0; b <= 8; ++b) {
        long long u = b == 0 ? -1 : (2LL * n * b - n - 1) / 2;
        le[static_cast<std::size_t>(b)] = count_at_most(u);
    }
    std::vector<WireRef> ind(8);
    for (int b = 1; b <= 8; ++b)
        ind[static_cast<std::size_t>(b - 1)] =
            and_(le[static_cast<std::size_t>(b)], not_(le[static_cast<std::size_t>(b - 1)]));
    return ind;
}

Circuit CircuitBuilder::finish_with_outputs(const std::vector<WireRef>& outputs) {
    if (outputs.size() != static_cast<std::size_t>(circuit_.n))
        throw std::invalid_argument("finish: need exactly N outputs");
    // Double-NOT chains reposition the outputs into the last N gate slots.
    std::vector<WireRef> negs;
    for (const auto& o : outputs) negs.push_back(not_(o));
    for (const auto& m : negs) not_(m);
    Circuit out = circuit_;
    out.validate();
    return out;
}

Circuit build_lambda_hat(const LabelGrid& lambda) {
    int n = lambda.n();
    for (int m : lambda.dims())
        if (m != 8) throw std::invalid_argument("lambda table must live on [8]^N");
    CircuitBuilder b(n);

    // One-hot bucket indicators per dimension.
    std::vector<std::vector<WireRef>> ind(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        std::vector<WireRef> row;
        for (int j = 1; j <= 7 * n; ++j) row.push_back(b.input(i, j));
        ind[static_cast<std::size_t>(i - 1)] = b.phi_bucket_indicators(row);
    }

    // Product indicator per table cell, then a sum of products per output.
    std::vector<WireRef> cell(lambda.cell_count());
    for (std::size_t idx = 0; idx < lambda.cell_count(); ++idx) {
        GridPoint z = lambda.point_at(idx);
        std::vector<WireRef> terms;
        for (int d = 0; d < n; ++d)
            terms.push_back(ind[static_cast<std::size_t>(d)][static_cast<std::size_t>(z[d] - 1)]);
        cell[idx] = b.and_tree(terms);
    }
    std::vector<WireRef> outputs;
    for (int d = 0; d < n; ++d) {
        std::vector<WireRef> pos;
        for (std::size_t idx = 0; idx < lambda.cell_count(); ++idx)
            if ((lambda.label_at(idx) >> d) & 1u) pos.push_back(cell[idx]);
        if (pos.empty())
            outputs.push_back(b.const_false(b.input(1, 1)));
        else
            outputs.push_back(b.or_tree(pos));
    }
    return b.finish_with_outputs(outputs);
}

Circuit normalize_nand_followers(const Circuit& c) {
    Circuit out;
    out.n = c.n;
    // remap[t] = wire carrying the value of original gate t in the new circuit.
    std::vector<WireRef> remap(c.gates.size() + 1);
    auto reroute = [&](const WireRef& r) { return r.is_gate() ? remap[static_cast<std::size_t>(r.gate)] : r; };
    std::vector<WireRef> original_outputs;
    for (std::size_t t0 = 0; t0 < c.gates.size(); ++t0) {
        Gate g = c.gates[t0];
        g.in1 = reroute(g.in1);
        g.in2 = reroute(g.in2);
        WireRef w;
        if (g.kind == GateKind::Nand && g.in1 == g.in2) {
            out.gates.push_back({GateKind::Not, g.in1, g.in1});
            w = WireRef::of_gate(out.gate_count());
        } else if (g.kind == GateKind::Nand) {
            out.gates.push_back(g);
            WireRef nand = WireRef::of_gate(out.gate_count());
            out.gates.push_back({GateKind::Not, nand, nand});
            WireRef u1 = WireRef::of_gate(out.gate_count());
            out.gates.push_back({GateKind::Not, u1, u1});
            w = WireRef::of_gate(out.gate_count());  // u2 carries the NAND value
        } else {
            out.gates.push_back(g);
            w = WireRef::of_gate(out.gate_count());
        }
        remap[t0 + 1] = w;
        if (t0 + static_cast<std::size_t>(c.n) >= c.gates.size()) original_outputs.push_back(w);
    }
    // Reposition outputs into the last N slots.
    std::vector<WireRef> negs;
    for (const auto& o : original_outputs) {
        out.gates.push_back({GateKind::Not, o, o});
        negs.push_back(WireRef::of_gate(out.gate_count()));
    }
    for (const auto& m : negs) out.gates.push_back({GateKind::Not, m, m});
    out.validate();
    return out;
}

}  // namespace chred
