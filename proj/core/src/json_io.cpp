#include "equitree/json_io.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

namespace equitree {

namespace {

using nlohmann::json;

std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) + "\n" : j.dump(); }

json coloring_to_obj(const Coloring& c) {
    json j;
    j["k"] = c.k;
    j["n"] = c.n();
    j["assignment"] = c.assignment;
    j["class_sizes"] = std::vector<int>(c.class_sizes.begin() + (c.k > 0 ? 1 : 0),
                                        c.class_sizes.end());
    return j;
}

Coloring coloring_from_obj(const json& j) {
    if (!j.is_object() || !j.contains("k") || !j.contains("assignment"))
        throw std::invalid_argument("coloring json: need object with k and assignment");
    Coloring c = Coloring::from_assignment(j.at("k").get<int>(),
                                           j.at("assignment").get<std::vector<int>>());
    if (j.contains("class_sizes")) {
        auto sizes = j.at("class_sizes").get<std::vector<int>>();
        if (static_cast<int>(sizes.size()) != c.k)
            throw std::invalid_argument("coloring json: class_sizes length != k");
        for (int col = 1; col <= c.k; ++col)
            if (sizes[col - 1] != c.class_sizes[col])
                throw std::invalid_argument("coloring json: class_sizes disagree with assignment");
    }
    if (j.contains("n") && j.at("n").get<int>() != c.n())
        throw std::invalid_argument("coloring json: n disagrees with assignment length");
    return c;
}

}  // namespace

std::string coloring_to_json(const Coloring& c, bool pretty) {
    return dump(coloring_to_obj(c), pretty);
}

Coloring coloring_from_json(const std::string& text) {
    return coloring_from_obj(json::parse(text));
}

std::string decision_to_json(int k, const Decision& d, bool pretty) {
    json j;
    j["k"] = k;
    j["verdict"] = verdict_name(d.verdict);
    j["nodes"] = d.nodes;
    j["millis"] = d.millis;
    if (d.witness) j["witness"] = coloring_to_obj(*d.witness);
    return dump(j, pretty);
}

std::string verification_to_json(const VerificationReport& rep, bool pretty) {
    json j;
    j["ok"] = rep.ok();
    j["complete"] = rep.complete;
    j["forests_ok"] = rep.forests_ok;
    j["equitable_ok"] = rep.equitable_ok;
    j["size_min"] = rep.size_min;
    j["size_max"] = rep.size_max;
    j["color_min"] = rep.color_min;
    j["color_max"] = rep.color_max;
    json fails = json::array();
    for (const auto& cls : rep.classes) {
        json f;
        f["color"] = cls.color;
        f["cycle"] = cls.cycle;
        fails.push_back(std::move(f));
    }
    j["failing_classes"] = std::move(fails);
    return dump(j, pretty);
}

std::string stuck_report_to_json(const StuckReport& rep, const std::string& snapshot_path,
                                 bool pretty) {
    json j;
    j["outcome"] = "stuck";
    j["case"] = rep.case_id;
    j["failing_vertex"] = rep.failing_vertex;
    j["failing_vertex_local"] = rep.failing_vertex_local;
    {
        json h;
        h["max_degree_ge_10d"] = rep.measured.delta_ge_10d;
        h["k_ge_half_max_degree_plus_one"] = rep.measured.k_ge_theorem_min;
        j["hypotheses"] = std::move(h);
    }
    {
        const StuckMeasured& m = rep.measured;
        json mj;
        mj["n"] = m.n;
        mj["k"] = m.k;
        mj["t"] = m.t;
        mj["s"] = m.s;
        mj["mu"] = m.mu;
        mj["d"] = m.d;
        mj["r"] = m.r;
        mj["lambda"] = m.lambda;
        mj["position"] = m.position;
        mj["deg_vi"] = m.deg_vi;
        mj["max_degree"] = m.delta;
        mj["edges"] = m.e_g;
        mj["reachable_classes"] = m.y;
        mj["a_size"] = m.a_size;
        mj["b_size"] = m.b_size;
        mj["a_star_size"] = m.a_star_size;
        mj["sum_deg_a_star"] = m.sum_deg_a_star;
        mj["e_a_star"] = m.e_a_star;
        mj["e_b_reachable"] = m.e_b_frak;
        mj["m0_class"] = m.m0_class;
        mj["m0_size"] = m.m0_size;
        mj["m_star_size"] = m.m_star_size;
        mj["m_star_core"] = m.m_star_core;
        mj["e_mstar_b"] = m.e_mstar_b;
        mj["class_sizes"] = m.class_sizes;
        json embs = json::array();
        for (const auto& [cls, e] : m.small_embs) embs.push_back(json::array({cls, e}));
        mj["small_class_boundary"] = std::move(embs);
        j["measured"] = std::move(mj);
    }
    json eqs = json::array();
    for (const auto& eq : rep.inequalities) {
        json e;
        e["id"] = eq.id;
        e["name"] = eq.name;
        e["applicable"] = eq.applicable;
        e["holds"] = eq.holds;
        e["violated"] = eq.applicable && !eq.holds;
        json links = json::array();
        for (const auto& l : eq.links) {
            json lj;
            lj["lhs"] = l.lhs;
            lj["rel"] = l.rel;
            lj["rhs"] = l.rhs;
            lj["holds"] = l.holds;
            links.push_back(std::move(lj));
        }
        e["links"] = std::move(links);
        if (!eq.note.empty()) e["note"] = eq.note;
        eqs.push_back(std::move(e));
    }
    j["inequalities"] = std::move(eqs);
    j["violated"] = rep.violated;
    j["snapshot_path"] = snapshot_path;
    json trace = json::array();
    for (const auto& fr : rep.trace) {
        json f;
        f["action"] = fr.action;
        f["n"] = fr.n;
        if (fr.action == "peel") f["vertex"] = fr.vertex;
        if (fr.action == "core") f["mu"] = fr.mu;
        trace.push_back(std::move(f));
    }
    j["trace"] = std::move(trace);
    return dump(j, pretty);
}

std::string snapshot_to_json(const StuckSnapshot& snap, bool pretty) {
    json j;
    j["n"] = snap.n;
    j["k"] = snap.k;
    j["r"] = snap.r;
    json edges = json::array();
    for (const auto& [u, v] : snap.edges) edges.push_back(json::array({u, v}));
    j["edges"] = std::move(edges);
    j["star_assignment"] = snap.star_assignment;
    j["protected"] = std::vector<int>(snap.protected_flags.begin(), snap.protected_flags.end());
    j["degree_order"] = snap.degree_order;
    j["local_to_root"] = snap.local_to_root;
    return dump(j, pretty);
}

StuckSnapshot snapshot_from_json(const std::string& text) {
    json j = json::parse(text);
    StuckSnapshot snap;
    snap.n = j.at("n").get<int>();
    snap.k = j.at("k").get<int>();
    snap.r = j.at("r").get<int>();
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("snapshot json: edge entries must be pairs");
        snap.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    snap.star_assignment = j.at("star_assignment").get<std::vector<int>>();
    for (int f : j.at("protected").get<std::vector<int>>())
        snap.protected_flags.push_back(static_cast<char>(f != 0));
    snap.degree_order = j.at("degree_order").get<std::vector<int>>();
    snap.local_to_root = j.at("local_to_root").get<std::vector<int>>();
    return snap;
}

std::string gen_spec_to_json(const GenSpec& spec, bool pretty) {
    json j;
    j["kind"] = spec.kind;
    if (spec.kind == "random-d-degenerate") {
        j["n"] = spec.n;
        j["d"] = spec.d;
        j["attach"] = (spec.attach == Attachment::skewed) ? "skewed" : "uniform";
        j["seed"] = spec.seed;
        if (spec.min_delta > 0) j["min_delta"] = spec.min_delta;
    } else if (spec.kind == "complete-bipartite") {
        j["a"] = spec.a;
        j["b"] = spec.b;
    } else if (spec.kind == "treewidth-gadget") {
        j["d"] = spec.d;
        j["s_count"] = spec.s_count;
    } else {
        j["n"] = spec.n;
    }
    return dump(j, pretty);
}

GenSpec gen_spec_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("generator json: need an object with a kind");
    GenSpec spec;
    spec.kind = j.at("kind").get<std::string>();
    static const std::set<std::string> known{"kind", "n",       "d",    "a",        "b",
                                             "s_count", "attach", "seed", "min_delta"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("generator json: unknown key '" + it.key() + "'");
    if (j.contains("n")) spec.n = j.at("n").get<int>();
    if (j.contains("d")) spec.d = j.at("d").get<int>();
    if (j.contains("a")) spec.a = j.at("a").get<int>();
    if (j.contains("b")) spec.b = j.at("b").get<int>();
    if (j.contains("s_count")) spec.s_count = j.at("s_count").get<int>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("min_delta")) spec.min_delta = j.at("min_delta").get<int>();
    if (j.contains("attach")) {
        std::string a = j.at("attach").get<std::string>();
        if (a == "uniform") spec.attach = Attachment::uniform;
        else if (a == "skewed") spec.attach = Attachment::skewed;
        else throw std::invalid_argument("generator json: attach must be uniform or skewed");
    }
    return spec;
}

}  // namespace equitree
