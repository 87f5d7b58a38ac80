#include "chred/ch_build.hpp"

#include <stdexcept>

namespace chred {

Interval Layout::gate_span(int k, int t) const {
    long long lo = gate_lo(k, t);
    return Interval(Rational(static_cast<long>(lo)), Rational(static_cast<long>(lo + 4)));
}

Interval Layout::gate_strip(int k, int t) const {
    long long lo = gate_lo(k, t);
    return Interval(Rational(static_cast<long>(lo)), Rational(static_cast<long>(lo + 3)));
}

Interval Layout::o_gadget(int i, int k) const {
    long long lo = o_gadget_lo(i, k);
    return Interval(Rational(static_cast<long>(lo)), Rational(static_cast<long>(lo + 3)));
}

Interval Layout::o_dim(int i) const {
    long long lo = o_gadget_lo(i, 1);
    return Interval(Rational(static_cast<long>(lo)), Rational(static_cast<long>(lo + 3LL * K)));
}

Interval Layout::copy_region(int k) const {
    long long lo = c_copy_lo(k);
    return Interval(Rational(static_cast<long>(lo)), Rational(static_cast<long>(lo + 4LL * m)));
}

Layout build_layout(int N, int m, Variant variant) {
    if (N < 1) throw std::invalid_argument("layout: N must be >= 1");
    if (m < N) throw std::invalid_argument("layout: circuit must have at least N gates");
    Layout layout;
    layout.variant = variant;
    layout.N = N;
    layout.m = m;
    layout.K = (variant == Variant::Standard ? 3 : 20) * N;
    return layout;
}

std::string agent_kind_name(AgentKind k) {
    switch (k) {
        case AgentKind::Auxiliary: return "auxiliary";
        case AgentKind::NotGate: return "not_gate";
        case AgentKind::NandGate: return "nand_gate";
        case AgentKind::Feedback: return "feedback";
        case AgentKind::NotFollower: return "not_follower";
        case AgentKind::OutputCopy: return "output_copy";
    }
    return "?";
}

namespace {

Interval source_interval(const Layout& layout, int k, int t, WireRef src) {
    if (src.is_gate()) {
        if (src.gate >= t) throw std::invalid_argument("gate agent: forward reference");
        return layout.gate_sub(k, src.gate, 1);  // C^k_{t1,c}
    }
    if (src.i < 1 || src.i > layout.N || src.j < 1 || src.j > 7 * layout.N)
        throw std::invalid_argument("gate agent: input reference out of range");
    return layout.input_interval(src.i, src.j, k);
}

}  // namespace

Agent build_auxiliary_agent(const Layout& layout, int k, int t) {
    Agent a;
    a.kind = AgentKind::Auxiliary;
    a.k = k;
    a.t = t;
    a.density = PiecewiseDensity({Block(layout.gate_sub(k, t, 3), Rational(1))});
    return a;
}

Agent build_not_agent(const Layout& layout, int k, int t, WireRef source) {
    Rational h(1, 3);
    Agent a;
    a.kind = AgentKind::NotGate;
    a.k = k;
    a.t = t;
    a.density = PiecewiseDensity({
        Block(layout.gate_sub(k, t, 0), h),
        Block(layout.gate_sub(k, t, 2), h),
        Block(source_interval(layout, k, t, source), h),
    });
    return a;
}

Agent build_nand_agent(const Layout& layout, int k, int t, WireRef s1, WireRef s2) {
    Rational fifth(1, 5);
    Agent a;
    a.kind = AgentKind::NandGate;
    a.k = k;
    a.t = t;
    a.density = PiecewiseDensity({
        Block(layout.gate_sub(k, t, 2), Rational(2, 5)),
        Block(layout.gate_sub(k, t, 0), fifth),
        Block(source_interval(layout, k, t, s1), fifth),
        Block(source_interval(layout, k, t, s2), fifth),
    });
    return a;
}

Agent build_feedback_agent(const Layout& layout, int i) {
    Rational h(1, 3LL * layout.N);
    std::vector<Block> blocks;
    for (int k = 1; k <= layout.K; ++k)
        blocks.emplace_back(layout.gate_sub(k, layout.m - layout.N + i, 1), h);
    Agent a;
    a.kind = AgentKind::Feedback;
    a.i = i;
    a.density = PiecewiseDensity(std::move(blocks));
    return a;
}

Rational three_block_delta(const Rational& epsilon) {
    return (Rational(1, 5) - epsilon) / Rational(2);
}

Interval j_interval(const Layout& layout, int k, int t, const Rational& delta) {
    Rational center = Rational(static_cast<long>(layout.gate_lo(k, t) + 1));
    Rational half = delta / Rational(2);
    return Interval(center - half, center + half);
}

Agent build_nand_agent_3block(const Layout& layout, int k, int t, WireRef s1, WireRef s2) {
    if (s1 == s2) throw std::invalid_argument("3-block NAND: identical sources break uniform heights");
    Rational fifth(1, 5);
    Agent a;
    a.kind = AgentKind::NandGate;
    a.k = k;
    a.t = t;
    a.density = PiecewiseDensity({
        Block(layout.gate_strip(k, t), fifth),
        Block(source_interval(layout, k, t, s1), fifth),
        Block(source_interval(layout, k, t, s2), fifth),
    });
    return a;
}

Agent build_not_follower_agent(const Layout& layout, int k, int t, int nand_t, const Rational& delta) {
    if (nand_t >= t) throw std::invalid_argument("gate agent: forward reference");
    Rational h = Rational(1) / (Rational(3) * delta);
    auto centered = [&](const Interval& unit) {
        Rational mid = (unit.lo + unit.hi) / Rational(2);
        Rational half = delta / Rational(2);
        return Interval(mid - half, mid + half);
    };
    Agent a;
    a.kind = AgentKind::NotFollower;
    a.k = k;
    a.t = t;
    a.density = PiecewiseDensity({
        Block(centered(layout.gate_sub(k, t, 0)), h),
        Block(centered(layout.gate_sub(k, t, 2)), h),
        Block(j_interval(layout, k, nand_t, delta), h),
    });
    return a;
}

Agent build_output_copy_agent(const Layout& layout, int i, int k) {
    Rational h(1, 3);
    Agent a;
    a.kind = AgentKind::OutputCopy;
    a.i = i;
    a.k = k;
    a.density = PiecewiseDensity({
        Block(layout.o_sub(i, k, 0), h),
        Block(layout.o_sub(i, k, 2), h),
        Block(layout.gate_sub(k, layout.m - layout.N + i, 1), h),
    });
    return a;
}

Agent build_feedback_agent_3block(const Layout& layout, int i) {
    Agent a;
    a.kind = AgentKind::Feedback;
    a.i = i;
    a.density = PiecewiseDensity({Block(layout.o_dim(i), Rational(1, 60LL * layout.N))});
    return a;
}

std::size_t expected_agent_count(const Layout& layout) {
    std::size_t gate_and_aux = 2ULL * layout.K * layout.m;
    if (layout.variant == Variant::Standard) return gate_and_aux + layout.N;
    return gate_and_aux + static_cast<std::size_t>(layout.K) * layout.N + layout.N;
}

namespace {

void require_epsilon(const Rational& epsilon) {
    if (epsilon.sign() < 0 || !(epsilon < Rational(1, 5)))
        throw std::invalid_argument("epsilon out of range");
}

}  // namespace

CHInstance build_instance(const Circuit& lambda_hat, const Rational& epsilon) {
    require_epsilon(epsilon);
    lambda_hat.validate();
    CHInstance inst;
    inst.variant = Variant::Standard;
    inst.epsilon = epsilon;
    inst.layout = build_layout(lambda_hat.n, lambda_hat.gate_count(), Variant::Standard);
    for (int k = 1; k <= inst.layout.K; ++k) {
        for (int t = 1; t <= inst.layout.m; ++t) {
            const Gate& g = lambda_hat.gates[static_cast<std::size_t>(t - 1)];
            if (g.kind == GateKind::Not)
                inst.agents.push_back(build_not_agent(inst.layout, k, t, g.in1));
            else
                inst.agents.push_back(build_nand_agent(inst.layout, k, t, g.in1, g.in2));
            inst.agents.push_back(build_auxiliary_agent(inst.layout, k, t));
        }
    }
    for (int i = 1; i <= inst.layout.N; ++i)
        inst.agents.push_back(build_feedback_agent(inst.layout, i));
    return inst;
}

CHInstance build_instance_3block(const Circuit& lambda_hat, const Rational& epsilon) {
    require_epsilon(epsilon);
    Circuit c = normalize_nand_followers(lambda_hat);
    Rational delta = three_block_delta(epsilon);
    CHInstance inst;
    inst.variant = Variant::ThreeBlock;
    inst.epsilon = epsilon;
    inst.layout = build_layout(c.n, c.gate_count(), Variant::ThreeBlock);
    for (int k = 1; k <= inst.layout.K; ++k) {
        for (int t = 1; t <= inst.layout.m; ++t) {
            const Gate& g = c.gates[static_cast<std::size_t>(t - 1)];
            if (g.kind == GateKind::Nand) {
                inst.agents.push_back(build_nand_agent_3block(inst.layout, k, t, g.in1, g.in2));
            } else if (g.in1.is_gate() &&
                       c.gates[static_cast<std::size_t>(g.in1.gate - 1)].kind == GateKind::Nand) {
                inst.agents.push_back(build_not_follower_agent(inst.layout, k, t, g.in1.gate, delta));
            } else {
                inst.agents.push_back(build_not_agent(inst.layout, k, t, g.in1));
            }
            inst.agents.push_back(build_auxiliary_agent(inst.layout, k, t));
        }
    }
    for (int i = 1; i <= inst.layout.N; ++i)
        for (int k = 1; k <= inst.layout.K; ++k)
            inst.agents.push_back(build_output_copy_agent(inst.layout, i, k));
    for (int i = 1; i <= inst.layout.N; ++i)
        inst.agents.push_back(build_feedback_agent_3block(inst.layout, i));
    return inst;
}

CHInstance scale_to_unit(const CHInstance& inst) {
    if (inst.unit_scaled) return inst;
    Rational L(static_cast<long>(inst.layout.L()));
    CHInstance out = inst;
    out.unit_scaled = true;
    for (auto& agent : out.agents) {
        std::vector<Block> blocks;
        for (const auto& b : agent.density.blocks())
            blocks.emplace_back(b.interval.lo / L, b.interval.hi / L, b.height * L);
        agent.density = PiecewiseDensity(std::move(blocks));
    }
    return out;
}

}  // namespace chred
