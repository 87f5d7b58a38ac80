#include "chred/ch_solve.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace chred {

VerificationReport verify(const CHInstance& inst, const CutSet& cuts) {
    VerificationReport rep;
    Interval ambient = inst.ambient();
    rep.cut_count = cuts.size();
    rep.max_cuts = inst.n();
    rep.cuts_ok = rep.cut_count <= rep.max_cuts;
    rep.max_discrepancy = 0;
    for (const auto& c : cuts.cuts())
        if (!ambient.contains(c)) throw std::out_of_range("cut out of range");
    rep.discrepancies.reserve(inst.agents.size());
    for (std::size_t a = 0; a < inst.agents.size(); ++a) {
        Rational d = signed_value(inst.agents[a].density, cuts).abs();
        if (d > rep.max_discrepancy) rep.max_discrepancy = d;
        if (d > inst.epsilon) rep.failing_agents.push_back(a);
        rep.discrepancies.push_back(std::move(d));
    }
    rep.pass = rep.cuts_ok && rep.failing_agents.empty();
    return rep;
}

namespace {

long long interval_lo_ll(const Interval& iv) {
    if (!iv.lo.is_integer()) throw std::logic_error("layout interval with non-integer endpoint");
    return iv.lo.num().get_si();
}

WireRef source_from_interval(const Layout& layout, const Interval& iv) {
    long long lo = interval_lo_ll(iv);
    if (lo < layout.len_I()) {
        // I^1_{i,j}: lo = ((i-1)*7N + (j-1))*K  for copy 1
        if (lo % layout.K != 0) throw std::logic_error("reconstruct: misaligned input block");
        long long col = lo / layout.K;
        int j = static_cast<int>(col % (7 * layout.N)) + 1;
        int i = static_cast<int>(col / (7 * layout.N)) + 1;
        return WireRef::of_input(i, j);
    }
    long long off = lo - layout.c_copy_lo(1);
    if (off < 0 || off % 4 != 1) throw std::logic_error("reconstruct: misaligned gate block");
    return WireRef::of_gate(static_cast<int>(off / 4) + 1);
}

}  // namespace

std::vector<Gate> reconstruct_gates(const CHInstance& inst) {
    const Layout& layout = inst.layout;
    std::vector<Gate> gates(static_cast<std::size_t>(layout.m));
    std::vector<bool> seen(static_cast<std::size_t>(layout.m), false);
    for (const auto& agent : inst.agents) {
        if (agent.k != 1) continue;
        if (agent.kind != AgentKind::NotGate && agent.kind != AgentKind::NandGate &&
            agent.kind != AgentKind::NotFollower)
            continue;
        int t = agent.t;
        Gate g;
        Interval own_l = layout.gate_sub(1, t, 0);
        Interval own_r = layout.gate_sub(1, t, 2);
        if (agent.kind == AgentKind::NotGate) {
            g.kind = GateKind::Not;
            for (const auto& b : agent.density.blocks()) {
                if (b.interval == own_l || b.interval == own_r) continue;
                g.in1 = g.in2 = source_from_interval(layout, b.interval);
            }
        } else if (agent.kind == AgentKind::NotFollower) {
            g.kind = GateKind::Not;
            // The source NAND's J block is the one not centered in own l/r.
            for (const auto& b : agent.density.blocks()) {
                Rational center = (b.interval.lo + b.interval.hi) / Rational(2);
                if (center == (own_l.lo + own_l.hi) / Rational(2)) continue;
                if (center == (own_r.lo + own_r.hi) / Rational(2)) continue;
                // center = gate_lo(1, t1) + 1
                Rational rel = center - Rational(1) - layout.copy_region(1).lo;
                long long t1 = rel.num().get_si() / 4 + 1;
                g.in1 = g.in2 = WireRef::of_gate(static_cast<int>(t1));
            }
        } else {
            g.kind = GateKind::Nand;
            std::vector<WireRef> sources;
            for (const auto& b : agent.density.blocks()) {
                if (b.interval == own_l || b.interval == own_r) continue;
                if (b.interval.lo == layout.gate_strip(1, t).lo) continue;  // 3-block strip
                sources.push_back(source_from_interval(layout, b.interval));
                // A merged block of doubled height is the two identical sources.
                if (b.height == Rational(2, 5)) sources.push_back(sources.back());
            }
            if (sources.size() != 2) throw std::logic_error("reconstruct: NAND sources not found");
            g.in1 = sources[0];
            g.in2 = sources[1];
        }
        gates[static_cast<std::size_t>(t - 1)] = g;
        seen[static_cast<std::size_t>(t - 1)] = true;
    }
    for (bool s : seen)
        if (!s) throw std::logic_error("reconstruct: missing gate agent");
    return gates;
}

std::size_t cuts_in_copy_region(const CHInstance& inst, const CutSet& cuts, int k) {
    return cuts_in_interior(inst.layout.copy_region(k), cuts);
}

namespace {

std::size_t cuts_in_cbar(const CHInstance& inst, const CutSet& cuts, int k) {
    const Layout& layout = inst.layout;
    std::size_t count = cuts_in_interior(layout.copy_region(k), cuts);
    for (int i = 1; i <= layout.N; ++i)
        for (int j = 1; j <= 7 * layout.N; ++j)
            count += cuts_in_interior(layout.input_interval(i, j, k), cuts);
    if (layout.variant == Variant::ThreeBlock)
        for (int i = 1; i <= layout.N; ++i) count += cuts_in_interior(layout.o_gadget(i, k), cuts);
    return count;
}

std::size_t good_copy_threshold(const Layout& layout) {
    return layout.variant == Variant::Standard
               ? 2ULL * layout.m
               : 2ULL * layout.m + static_cast<std::size_t>(layout.N);
}

}  // namespace

DecodeResult decode(const CHInstance& inst, const CutSet& cuts) {
    if (inst.unit_scaled) throw std::invalid_argument("decode: instance must be unscaled");
    const Layout& layout = inst.layout;
    const int N = layout.N, K = layout.K;
    DecodeResult res;
    res.x.resize(static_cast<std::size_t>(K));
    res.pure.resize(static_cast<std::size_t>(K), true);
    res.phi_of.resize(static_cast<std::size_t>(K));
    res.y.resize(static_cast<std::size_t>(K));
    res.cuts_in_input_region =
        cuts.count_in_open(Rational(0), Rational(static_cast<long>(layout.len_I())));

    for (int k = 1; k <= K; ++k) {
        auto& row = res.x[static_cast<std::size_t>(k - 1)];
        row.reserve(static_cast<std::size_t>(N) * 7 * N);
        for (int i = 1; i <= N; ++i) {
            for (int j = 1; j <= 7 * N; ++j) {
                Rational v = interval_value(layout.input_interval(i, j, k), cuts);
                if (!(v == Rational(1) || v == Rational(-1)))
                    res.pure[static_cast<std::size_t>(k - 1)] = false;
                row.push_back(std::move(v));
            }
        }
        if (res.pure[static_cast<std::size_t>(k - 1)]) {
            std::vector<int> ph(static_cast<std::size_t>(N));
            for (int i = 1; i <= N; ++i) {
                long long sum = 0;
                for (int j = 1; j <= 7 * N; ++j)
                    sum += row[static_cast<std::size_t>(i - 1) * 7 * N + (j - 1)].sign();
                ph[static_cast<std::size_t>(i - 1)] = phi_bucket_of_sum(sum, N);
            }
            res.phi_of[static_cast<std::size_t>(k - 1)] = std::move(ph);
        }
        auto& yk = res.y[static_cast<std::size_t>(k - 1)];
        for (int i = 1; i <= N; ++i) {
            if (layout.variant == Variant::Standard) {
                yk.push_back(interval_value(layout.gate_sub(k, layout.m - N + i, 1), cuts));
            } else {
                yk.push_back(-interval_value(layout.o_sub(i, k, 1), cuts));
            }
        }
        if (cuts_in_cbar(inst, cuts, k) <= good_copy_threshold(layout)) res.good.push_back(k);
    }

    // Pairwise phi proximity over good copies (Claim precondition: at most N
    // cuts in the input region; reported either way).
    for (std::size_t a = 0; a < res.good.size() && res.phi_pairwise_ok; ++a) {
        for (std::size_t b = a + 1; b < res.good.size(); ++b) {
            const auto& pa = res.phi_of[static_cast<std::size_t>(res.good[a] - 1)];
            const auto& pb = res.phi_of[static_cast<std::size_t>(res.good[b] - 1)];
            if (pa.empty() || pb.empty()) continue;
            for (int d = 0; d < N; ++d) {
                int diff = pa[static_cast<std::size_t>(d)] - pb[static_cast<std::size_t>(d)];
                if (diff > 1 || diff < -1) {
                    res.phi_pairwise_ok = false;
                    break;
                }
            }
        }
    }

    // Extraction: labels read from good pure copies.
    std::vector<GridPoint> points;
    std::vector<LabelMask> labels;
    for (int k : res.good) {
        if (!res.pure[static_cast<std::size_t>(k - 1)]) continue;
        const auto& yk = res.y[static_cast<std::size_t>(k - 1)];
        std::vector<int> lab(static_cast<std::size_t>(N));
        bool pure_label = true;
        for (int d = 0; d < N; ++d) {
            const Rational& v = yk[static_cast<std::size_t>(d)];
            if (v == Rational(1))
                lab[static_cast<std::size_t>(d)] = +1;
            else if (v == Rational(-1))
                lab[static_cast<std::size_t>(d)] = -1;
            else
                pure_label = false;
        }
        if (!pure_label) continue;
        points.push_back(res.phi_of[static_cast<std::size_t>(k - 1)]);
        labels.push_back(pack_label(lab));
    }
    std::vector<std::size_t> picked;
    try {
        picked = lemma_r_to_n(labels, N);
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("no cover extracted");
    }
    for (auto idx : picked) res.extracted.points.push_back(points[idx]);
    return res;
}

// --- Synthesizer --------------------------------------------------------------

namespace {

struct DimChoice {
    int jstar = 0;
    int k0 = 0;
    int lo_value = 0;  // coordinate decoded by copies k < k0
    int hi_value = 0;  // coordinate decoded by copies k >= k0
};

int tau_of_dim(int i, int n) { return ((n - i) % 2 == 0) ? +1 : -1; }

// phi bucket of the row sum tau*(7N - 2j) (low side) and tau*(7N - 2j + 2)
// (high side) induced by a cut at column jstar, split k0.
int bucket_low(int jstar, int tau, int n) {
    return phi_bucket_of_sum(static_cast<long long>(tau) * (7LL * n - 2 * jstar), n);
}
int bucket_high(int jstar, int tau, int n) {
    return phi_bucket_of_sum(static_cast<long long>(tau) * (7LL * n - 2 * jstar + 2), n);
}

DimChoice choose_dim_cut(int i, int n, int K, int lo_target, int hi_target, int forced_k0) {
    const int tau = tau_of_dim(i, n);
    std::vector<int> k0_options;
    if (forced_k0 > 0) {
        k0_options.push_back(forced_k0);
    } else if (lo_target != hi_target) {
        k0_options.push_back(K / 2 + 1);
    } else {
        k0_options = {K / 2 + 1, 1, K + 1};
    }
    for (int k0 : k0_options) {
        for (int jstar = 1; jstar <= 7 * n; ++jstar) {
            bool ok;
            if (k0 == 1)
                ok = lo_target == hi_target && bucket_high(jstar, tau, n) == hi_target;
            else if (k0 == K + 1)
                ok = lo_target == hi_target && bucket_low(jstar, tau, n) == lo_target;
            else
                ok = bucket_low(jstar, tau, n) == lo_target && bucket_high(jstar, tau, n) == hi_target;
            if (ok) return {jstar, k0, lo_target, hi_target};
        }
    }
    throw std::runtime_error("plan not found: dimension " + std::to_string(i) +
                             " cannot decode targets " + std::to_string(lo_target) + "/" +
                             std::to_string(hi_target));
}

Rational half() { return Rational(1, 2); }

}  // namespace

CutSet synthesize(const CHInstance& inst, const SynthesisPlan& plan, const LabelGrid* lambda) {
    if (inst.unit_scaled) throw std::invalid_argument("synthesize: instance must be unscaled");
    const Layout& layout = inst.layout;
    const int N = layout.N, K = layout.K, m = layout.m;
    if (plan.a.size() != static_cast<std::size_t>(N) || plan.b.size() != static_cast<std::size_t>(N))
        throw std::invalid_argument("plan: point dimension mismatch");
    if (!plan.k0.empty() && plan.k0.size() != static_cast<std::size_t>(N))
        throw std::invalid_argument("plan: k0 must have one entry per dimension");
    for (int k0 : plan.k0)
        if (k0 < 1 || k0 > K + 1) throw std::invalid_argument("plan: k0 entries must lie in [1, K+1]");
    for (int d = 0; d < N; ++d) {
        if (plan.a[d] < 1 || plan.a[d] > 8 || plan.b[d] < 1 || plan.b[d] > 8)
            throw std::invalid_argument("plan: points must lie in [8]^N");
        if (plan.a[d] - plan.b[d] > 1 || plan.b[d] - plan.a[d] > 1)
            throw std::invalid_argument("plan: points not adjacent");
    }
    if (lambda != nullptr &&
        lambda->label(plan.a) != negate_label(lambda->label(plan.b), N))
        throw std::invalid_argument("plan labels not antipodal");

    // Orient (a, b) so every dimension's step agrees with the alternating
    // entering sign along the input region.
    GridPoint a = plan.a, b = plan.b;
    auto orientable = [&](const GridPoint& lo, const GridPoint& hi) {
        for (int i = 1; i <= N; ++i)
            if ((hi[i - 1] - lo[i - 1]) * tau_of_dim(i, N) < 0) return false;
        return true;
    };
    if (!orientable(a, b)) {
        if (orientable(b, a))
            std::swap(a, b);
        else
            throw std::runtime_error("plan not found: pair not orientable");
    }

    std::vector<DimChoice> choice(static_cast<std::size_t>(N));
    for (int i = 1; i <= N; ++i) {
        int forced = plan.k0.empty() ? 0 : plan.k0[static_cast<std::size_t>(i - 1)];
        choice[static_cast<std::size_t>(i - 1)] =
            choose_dim_cut(i, N, K, a[i - 1], b[i - 1], forced);
    }

    std::vector<Rational> cuts;
    for (int i = 1; i <= N; ++i) {
        const auto& ch = choice[static_cast<std::size_t>(i - 1)];
        long long pos;
        if (ch.k0 == K + 1)
            pos = layout.input_lo(i, ch.jstar, K) + 1;
        else
            pos = layout.input_lo(i, ch.jstar, std::max(ch.k0, 1));
        cuts.emplace_back(static_cast<long>(pos));
    }

    // Input bits per copy, then decoder-as-oracle validation of the targets.
    auto bit = [&](int i, int j, int k) -> int {
        const auto& ch = choice[static_cast<std::size_t>(i - 1)];
        bool left = (j < ch.jstar) || (j == ch.jstar && k < ch.k0);
        return left ? -tau_of_dim(i, N) : tau_of_dim(i, N);
    };
    for (int k = 1; k <= K; ++k) {
        for (int i = 1; i <= N; ++i) {
            long long sum = 0;
            for (int j = 1; j <= 7 * N; ++j) sum += bit(i, j, k);
            int expect = (k < choice[static_cast<std::size_t>(i - 1)].k0)
                             ? choice[static_cast<std::size_t>(i - 1)].lo_value
                             : choice[static_cast<std::size_t>(i - 1)].hi_value;
            if (phi_bucket_of_sum(sum, N) != expect)
                throw std::logic_error("synthesize: decoded bucket mismatch");
        }
    }

    // Circuit simulation per copy; every gate strip is entered from R+.
    std::vector<Gate> gates = reconstruct_gates(inst);
    std::vector<std::vector<int>> value(static_cast<std::size_t>(K),
                                        std::vector<int>(static_cast<std::size_t>(m)));
    for (int k = 1; k <= K; ++k) {
        auto& val = value[static_cast<std::size_t>(k - 1)];
        auto read = [&](const WireRef& r) {
            return r.is_gate() ? val[static_cast<std::size_t>(r.gate - 1)] : bit(r.i, r.j, k);
        };
        for (int t = 1; t <= m; ++t) {
            const Gate& g = gates[static_cast<std::size_t>(t - 1)];
            Rational base(static_cast<long>(layout.gate_lo(k, t)));
            if (g.kind == GateKind::Not) {
                int v = read(g.in1);
                cuts.push_back(base + (v > 0 ? half() : Rational(5, 2)));
                val[static_cast<std::size_t>(t - 1)] = -v;
            } else {
                int v1 = read(g.in1), v2 = read(g.in2);
                Rational offset;
                if (v1 > 0 && v2 > 0)
                    offset = half();
                else if (v1 < 0 && v2 < 0)
                    offset = layout.variant == Variant::Standard ? Rational(11, 4) : Rational(5, 2);
                else
                    offset = layout.variant == Variant::Standard ? Rational(9, 4) : Rational(3, 2);
                cuts.push_back(base + offset);
                val[static_cast<std::size_t>(t - 1)] = (v1 > 0 && v2 > 0) ? -1 : +1;
            }
            cuts.push_back(base + Rational(7, 2));  // auxiliary interval midpoint
        }
    }

    // Output-copy gadgets (three-block): entering signs alternate since each
    // gadget holds exactly one cut.
    if (layout.variant == Variant::ThreeBlock) {
        const long long total = static_cast<long long>(N) * K;
        for (int i = 1; i <= N; ++i) {
            for (int k = 1; k <= K; ++k) {
                // Entering sign counts the gadget's own cut plus one cut per
                // gadget to its right (the circuit region holds an even number).
                long long g = static_cast<long long>(i - 1) * K + k;
                int sigma = ((total - g) % 2 == 0) ? -1 : +1;
                int y = value[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m - N + i - 1)];
                Rational base(static_cast<long>(layout.o_gadget_lo(i, k)));
                cuts.push_back(base + (sigma * y > 0 ? half() : Rational(5, 2)));
            }
        }
    }

    std::sort(cuts.begin(), cuts.end());
    CutSet result(std::move(cuts));
    if (result.size() != inst.n()) throw std::logic_error("synthesize: cut count mismatch");

    // Feedback balance: exact check, reporting the violating dimension.
    for (std::size_t idx = 0; idx < inst.agents.size(); ++idx) {
        const Agent& ag = inst.agents[idx];
        if (ag.kind != AgentKind::Feedback) continue;
        Rational d = signed_value(ag.density, result).abs();
        if (d > inst.epsilon)
            throw std::runtime_error("plan unbalanced in dimension " + std::to_string(ag.i));
    }
    return result;
}

// --- Tiny brute-force solver ---------------------------------------------------

namespace {

// Linear form c0 + sum coef[v] * q_v.
struct Affine {
    Rational c0;
    std::vector<Rational> coef;
};

// Inequality sum coef[v] * q_v <= bound.
struct Ineq {
    std::vector<Rational> coef;
    Rational bound;
};

// Eliminates the last variable, recursing; on success back-substitutes a
// witness value for it.
bool fm_feasible(std::vector<Ineq> system, std::size_t vars, std::vector<Rational>& witness) {
    if (vars == 0) {
        for (const auto& q : system)
            if (Rational(0) > q.bound) return false;
        witness.clear();
        return true;
    }
    std::size_t v = vars - 1;
    std::vector<Ineq> rest;
    std::vector<Ineq> uppers, lowers;  // q_v <= ..., q_v >= ...
    for (auto& q : system) {
        int s = q.coef[v].sign();
        if (s == 0) {
            rest.push_back(q);
        } else if (s > 0) {
            uppers.push_back(q);
        } else {
            lowers.push_back(q);
        }
    }
    std::vector<Ineq> reduced = rest;
    for (const auto& up : uppers) {
        for (const auto& lo : lowers) {
            // up: a q_v + f <= b1 (a>0); lo: -c q_v + g <= b2 (c>0)
            Ineq combo;
            combo.coef.assign(vars - 1, Rational(0));
            Rational a = up.coef[v];
            Rational c = -lo.coef[v];
            for (std::size_t w = 0; w + 1 < vars; ++w)
                combo.coef[w] = up.coef[w] * c + lo.coef[w] * a;
            combo.bound = up.bound * c + lo.bound * a;
            reduced.push_back(std::move(combo));
        }
    }
    for (auto& q : reduced) q.coef.resize(vars - 1, Rational(0));
    if (!fm_feasible(reduced, vars - 1, witness)) return false;
    // Bounds for q_v at the witness values of q_0..q_{v-1}.
    bool has_lo = false, has_hi = false;
    Rational lo_bound, hi_bound;
    for (const auto& q : system) {
        int s = q.coef[v].sign();
        if (s == 0) continue;
        Rational rhs = q.bound;
        for (std::size_t w = 0; w < v; ++w) rhs -= q.coef[w] * witness[w];
        Rational limit = rhs / q.coef[v];
        if (s > 0) {
            if (!has_hi || limit < hi_bound) hi_bound = limit, has_hi = true;
        } else {
            if (!has_lo || limit > lo_bound) lo_bound = limit, has_lo = true;
        }
    }
    Rational pick;
    if (has_lo && has_hi)
        pick = (lo_bound + hi_bound) / Rational(2);
    else if (has_lo)
        pick = lo_bound;
    else if (has_hi)
        pick = hi_bound;
    else
        pick = Rational(0);
    witness.push_back(std::move(pick));
    return true;
}

// Affine discrepancy of one density for cuts assigned to cells, where cell u
// spans [pts[u], pts[u+1]] and cells never straddle a block endpoint. Pieces
// are walked right to left; the sign flips at every cut.
Affine affine_discrepancy(const PiecewiseDensity& d, const std::vector<Rational>& pts,
                          const std::vector<std::size_t>& cells) {
    const std::size_t c = cells.size();
    Affine f;
    f.c0 = 0;
    f.coef.assign(c, Rational(0));
    for (const auto& blk : d.blocks()) {
        std::vector<std::size_t> inside;
        std::size_t after = 0;
        for (std::size_t j = 0; j < c; ++j) {
            const Rational& cell_lo = pts[cells[j]];
            const Rational& cell_hi = pts[cells[j] + 1];
            if (cell_lo >= blk.interval.hi)
                ++after;
            else if (cell_hi > blk.interval.lo)
                inside.push_back(j);
        }
        int sign = (after % 2 == 0) ? +1 : -1;
        // Piece ends, right to left: hi, q_{inside[last]}, ..., q_{inside[0]}, lo.
        // Piece between bounds (x, y) with sign s contributes s*(y - x).
        Rational h = blk.height;
        // Rightmost piece: (q_last or lo, hi)
        if (inside.empty()) {
            f.c0 += h * Rational(sign) * blk.interval.length();
            continue;
        }
        f.c0 += h * Rational(sign) * blk.interval.hi;
        f.coef[inside.back()] -= h * Rational(sign);
        for (std::size_t idx = inside.size(); idx-- > 1;) {
            sign = -sign;
            f.coef[inside[idx]] += h * Rational(sign);
            f.coef[inside[idx - 1]] -= h * Rational(sign);
        }
        sign = -sign;
        f.coef[inside.front()] += h * Rational(sign);
        f.c0 -= h * Rational(sign) * blk.interval.lo;
    }
    return f;
}

}  // namespace

std::optional<CutSet> solve_tiny(const std::vector<PiecewiseDensity>& agents,
                                 const Rational& epsilon, std::size_t max_cuts,
                                 const Interval& ambient) {
    if (agents.size() > 3) throw std::invalid_argument("solve_tiny: at most 3 agents");
    std::size_t blocks = 0;
    for (const auto& a : agents) blocks += a.block_count();
    if (blocks > 24) throw std::invalid_argument("solve_tiny: at most 24 blocks");
    if (max_cuts > 3) throw std::invalid_argument("solve_tiny: at most 3 cuts");

    // Breakpoints: ambient ends and all block endpoints.
    std::vector<Rational> pts{ambient.lo, ambient.hi};
    for (const auto& a : agents) {
        for (const auto& b : a.blocks()) {
            if (!(ambient.lo <= b.interval.lo) || !(b.interval.hi <= ambient.hi))
                throw std::invalid_argument("solve_tiny: block outside ambient interval");
            pts.push_back(b.interval.lo);
            pts.push_back(b.interval.hi);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n_cells = pts.size() - 1;

    std::vector<std::size_t> cells;
    // Enumerates non-decreasing cell assignments of the remaining cuts.
    auto search = [&](auto&& self, std::size_t remaining, std::size_t from) -> std::optional<CutSet> {
        if (remaining == 0) {
            std::size_t c = cells.size();
            std::vector<Ineq> system;
            for (const auto& agent : agents) {
                Affine f = affine_discrepancy(agent, pts, cells);
                Ineq up{f.coef, epsilon - f.c0};
                Ineq down;
                down.coef.reserve(c);
                for (const auto& x : f.coef) down.coef.push_back(-x);
                down.bound = epsilon + f.c0;
                system.push_back(std::move(up));
                system.push_back(std::move(down));
            }
            for (std::size_t j = 0; j < c; ++j) {
                Ineq up;  // q_j <= cell hi
                up.coef.assign(c, Rational(0));
                up.coef[j] = 1;
                up.bound = pts[cells[j] + 1];
                Ineq down;  // -q_j <= -cell lo
                down.coef.assign(c, Rational(0));
                down.coef[j] = -1;
                down.bound = -pts[cells[j]];
                system.push_back(std::move(up));
                system.push_back(std::move(down));
            }
            for (std::size_t j = 0; j + 1 < c; ++j) {
                Ineq ord;  // q_j - q_{j+1} <= 0
                ord.coef.assign(c, Rational(0));
                ord.coef[j] = 1;
                ord.coef[j + 1] = -1;
                ord.bound = 0;
                system.push_back(std::move(ord));
            }
            std::vector<Rational> witness;
            if (!fm_feasible(system, c, witness)) return std::nullopt;
            // witness is in elimination order q_{c-1} first after recursion
            // unwinds; it is stored as q_0..q_{c-1}.
            std::vector<Rational> qs(witness.begin(), witness.end());
            std::sort(qs.begin(), qs.end());
            // Equal cuts cancel in pairs; keep odd-multiplicity positions.
            std::vector<Rational> final_cuts;
            for (std::size_t j = 0; j < qs.size();) {
                std::size_t r = j;
                while (r < qs.size() && qs[r] == qs[j]) ++r;
                if ((r - j) % 2 == 1) final_cuts.push_back(qs[j]);
                j = r;
            }
            return CutSet(std::move(final_cuts));
        }
        for (std::size_t u = from; u < n_cells; ++u) {
            cells.push_back(u);
            if (auto got = self(self, remaining - 1, u)) return got;
            cells.pop_back();
        }
        return std::nullopt;
    };

    for (std::size_t c = 0; c <= max_cuts; ++c) {
        cells.clear();
        if (auto got = search(search, c, 0)) return got;
    }
    return std::nullopt;
}

}  // namespace chred
