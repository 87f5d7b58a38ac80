#include "chred/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace chred::io {

json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("expected rational as \"p/q\" string");
}

namespace {

json wire_to_json(const WireRef& w) {
    if (w.is_gate()) return w.gate;
    return json::array({"in", w.i, w.j});
}

WireRef wire_from_json(const json& j) {
    if (j.is_number_integer()) return WireRef::of_gate(j.get<int>());
    if (j.is_array() && j.size() == 3 && j[0] == "in")
        return WireRef::of_input(j[1].get<int>(), j[2].get<int>());
    throw std::invalid_argument("bad wire reference");
}

}  // namespace

json circuit_to_json(const Circuit& c) {
    json gates = json::array();
    for (const auto& g : c.gates) {
        json jg;
        jg["kind"] = g.kind == GateKind::Not ? "NOT" : "NAND";
        jg["in1"] = wire_to_json(g.in1);
        if (g.kind == GateKind::Nand) jg["in2"] = wire_to_json(g.in2);
        gates.push_back(std::move(jg));
    }
    return json{{"N", c.n}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const json& j) {
    Circuit c;
    c.n = j.at("N").get<int>();
    for (const auto& jg : j.at("gates")) {
        Gate g;
        std::string kind = jg.at("kind").get<std::string>();
        if (kind == "NOT")
            g.kind = GateKind::Not;
        else if (kind == "NAND")
            g.kind = GateKind::Nand;
        else
            throw std::invalid_argument("bad gate kind '" + kind + "'");
        g.in1 = wire_from_json(jg.at("in1"));
        g.in2 = g.kind == GateKind::Nand ? wire_from_json(jg.at("in2")) : g.in1;
        c.gates.push_back(g);
    }
    c.validate();
    return c;
}

json label_grid_to_json(const LabelGrid& g) {
    json labels = json::array();
    for (std::size_t idx = 0; idx < g.cell_count(); ++idx)
        labels.push_back(unpack_label(g.label_at(idx), g.n()));
    return json{{"dims", g.dims()}, {"labels", std::move(labels)}};
}

LabelGrid label_grid_from_json(const json& j) {
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    int n = static_cast<int>(dims.size());
    std::vector<LabelMask> labels;
    for (const auto& jl : j.at("labels")) {
        std::vector<int> vec = jl.get<std::vector<int>>();
        if (vec.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("label vector length mismatch");
        for (int v : vec)
            if (v != 1 && v != -1) throw std::invalid_argument("labels must be +1/-1");
        labels.push_back(pack_label(vec));
    }
    return LabelGrid(std::move(dims), std::move(labels));
}

json tucker2d_to_json(const Tucker2D& t) {
    json labels = json::array();
    for (auto v : t.labels) labels.push_back(static_cast<int>(v));
    return json{{"m", t.m}, {"labels", std::move(labels)}};
}

Tucker2D tucker2d_from_json(const json& j) {
    Tucker2D t;
    t.m = j.at("m").get<int>();
    if (t.m < 2) throw std::invalid_argument("tucker2d: m must be >= 2");
    for (const auto& jl : j.at("labels")) {
        int v = jl.get<int>();
        if (v == 0 || v < -2 || v > 2) throw std::invalid_argument("tucker2d: label outside {-2,-1,1,2}");
        t.labels.push_back(static_cast<std::int8_t>(v));
    }
    if (t.labels.size() != static_cast<std::size_t>(t.m) * t.m)
        throw std::invalid_argument("tucker2d: label count mismatch");
    return t;
}

namespace {

AgentKind agent_kind_from_name(const std::string& name) {
    if (name == "auxiliary") return AgentKind::Auxiliary;
    if (name == "not_gate") return AgentKind::NotGate;
    if (name == "nand_gate") return AgentKind::NandGate;
    if (name == "feedback") return AgentKind::Feedback;
    if (name == "not_follower") return AgentKind::NotFollower;
    if (name == "output_copy") return AgentKind::OutputCopy;
    throw std::invalid_argument("bad agent kind '" + name + "'");
}

}  // namespace

json instance_to_json(const CHInstance& inst) {
    if (inst.unit_scaled)
        throw std::invalid_argument("instance files store the unscaled construction");
    json agents = json::array();
    for (const auto& a : inst.agents) {
        json ja;
        ja["kind"] = agent_kind_name(a.kind);
        if (a.k) ja["k"] = a.k;
        if (a.t) ja["t"] = a.t;
        if (a.i) ja["i"] = a.i;
        json blocks = json::array();
        for (const auto& b : a.density.blocks())
            blocks.push_back(json{{"lo", rational_to_json(b.interval.lo)},
                                  {"hi", rational_to_json(b.interval.hi)},
                                  {"height", rational_to_json(b.height)}});
        ja["blocks"] = std::move(blocks);
        agents.push_back(std::move(ja));
    }
    return json{
        {"variant", inst.variant == Variant::Standard ? "standard" : "3block"},
        {"epsilon", rational_to_json(inst.epsilon)},
        {"layout",
         {{"N", inst.layout.N}, {"m", inst.layout.m}, {"K", inst.layout.K}, {"L", inst.layout.L()}}},
        {"agents", std::move(agents)},
    };
}

CHInstance instance_from_json(const json& j) {
    CHInstance inst;
    std::string variant = j.at("variant").get<std::string>();
    if (variant == "standard")
        inst.variant = Variant::Standard;
    else if (variant == "3block")
        inst.variant = Variant::ThreeBlock;
    else
        throw std::invalid_argument("bad variant '" + variant + "'");
    inst.epsilon = rational_from_json(j.at("epsilon"));
    const json& jl = j.at("layout");
    inst.layout = build_layout(jl.at("N").get<int>(), jl.at("m").get<int>(), inst.variant);
    if (jl.at("K").get<int>() != inst.layout.K || jl.at("L").get<long long>() != inst.layout.L())
        throw std::invalid_argument("layout does not match variant formulas");
    for (const auto& ja : j.at("agents")) {
        Agent a;
        a.kind = agent_kind_from_name(ja.at("kind").get<std::string>());
        a.k = ja.value("k", 0);
        a.t = ja.value("t", 0);
        a.i = ja.value("i", 0);
        std::vector<Block> blocks;
        for (const auto& jb : ja.at("blocks"))
            blocks.emplace_back(rational_from_json(jb.at("lo")), rational_from_json(jb.at("hi")),
                                rational_from_json(jb.at("height")));
        a.density = PiecewiseDensity(std::move(blocks));
        inst.agents.push_back(std::move(a));
    }
    if (inst.agents.size() != expected_agent_count(inst.layout))
        throw std::invalid_argument("agent count does not match layout");
    return inst;
}

json cutset_to_json(const CutSet& s) {
    json cuts = json::array();
    for (const auto& c : s.cuts()) cuts.push_back(rational_to_json(c));
    return json{{"cuts", std::move(cuts)}};
}

CutSet cutset_from_json(const json& j) {
    std::vector<Rational> cuts;
    for (const auto& jc : j.at("cuts")) cuts.push_back(rational_from_json(jc));
    return CutSet(std::move(cuts));
}

json pipeline_to_json(const Pipeline& p) {
    json records = json::array();
    for (const auto& r : p.records) {
        json jr;
        switch (r.kind) {
            case PipelineRecord::Kind::Pad: jr["kind"] = "pad"; break;
            case PipelineRecord::Kind::Fold: jr["kind"] = "fold"; break;
            case PipelineRecord::Kind::Pad16: jr["kind"] = "pad16"; break;
        }
        jr["dim"] = r.dim + 1;  // 1-based in files
        if (r.kind == PipelineRecord::Kind::Fold)
            jr["s"] = r.s;
        else
            jr["pad_counts"] = json::array({r.pad_left, r.pad_right});
        records.push_back(std::move(jr));
    }
    return json{{"records", std::move(records)}};
}

Pipeline pipeline_from_json(const json& j) {
    Pipeline p;
    for (const auto& jr : j.at("records")) {
        PipelineRecord r;
        std::string kind = jr.at("kind").get<std::string>();
        if (kind == "pad")
            r.kind = PipelineRecord::Kind::Pad;
        else if (kind == "fold")
            r.kind = PipelineRecord::Kind::Fold;
        else if (kind == "pad16")
            r.kind = PipelineRecord::Kind::Pad16;
        else
            throw std::invalid_argument("bad pipeline record kind '" + kind + "'");
        r.dim = jr.at("dim").get<int>() - 1;
        if (r.kind == PipelineRecord::Kind::Fold) {
            r.s = jr.at("s").get<int>();
        } else {
            auto counts = jr.at("pad_counts").get<std::vector<int>>();
            if (counts.size() != 2) throw std::invalid_argument("pad_counts must have two entries");
            r.pad_left = counts[0];
            r.pad_right = counts[1];
        }
        p.records.push_back(r);
    }
    return p;
}

json plan_to_json(const SynthesisPlan& p) {
    json j{{"a", p.a}, {"b", p.b}};
    if (!p.k0.empty()) j["k0"] = p.k0;
    return j;
}

SynthesisPlan plan_from_json(const json& j) {
    SynthesisPlan p;
    p.a = j.at("a").get<std::vector<int>>();
    p.b = j.at("b").get<std::vector<int>>();
    if (j.contains("k0")) p.k0 = j.at("k0").get<std::vector<int>>();
    return p;
}

json solution_to_json(const StrongSolution& s) {
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(p);
    return json{{"points", std::move(pts)}};
}

StrongSolution solution_from_json(const json& j) {
    StrongSolution s;
    for (const auto& jp : j.at("points")) s.points.push_back(jp.get<std::vector<int>>());
    return s;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1, ' ') << "\n";
}

}  // namespace chred::io
