#include "edpc/serialize.hpp"

#include <json.hpp>

#include "edpc/evaluation.hpp"

namespace edpc {

namespace {

using nlohmann::json;

json focal_to_json(const FocalElement& f) {
    if (f.is_outlier()) return json("outlier");
    return json(f.communities());
}

FocalElement focal_from_json(const json& j, int frame_size) {
    if (j.is_string()) {
        if (j.get<std::string>() != "outlier")
            throw validation_error("unknown focal element string '" + j.get<std::string>() + "'");
        return FocalElement::outlier();
    }
    if (!j.is_array() || j.empty())
        throw validation_error("focal element must be a nonempty id array or \"outlier\"");
    std::uint32_t mask = 0;
    for (const json& id : j) {
        if (!id.is_number_integer()) throw validation_error("focal community id must be integer");
        int c = id.get<int>();
        if (c < 0 || c >= frame_size)
            throw validation_error("focal community id out of frame: " + std::to_string(c));
        mask |= std::uint32_t{1} << c;
    }
    return FocalElement::subset(mask);
}

json bba_to_json(const MassFunction& m) {
    json out = json::array();
    for (const auto& [focal, mass] : m.entries())
        out.push_back({{"focal", focal_to_json(focal)}, {"mass", mass}});
    return out;
}

MassFunction bba_from_json(const json& j, int frame_size) {
    if (!j.is_array()) throw validation_error("bba must be an array");
    std::vector<std::pair<FocalElement, double>> entries;
    entries.reserve(j.size());
    for (const json& entry : j) {
        if (!entry.contains("focal") || !entry.contains("mass"))
            throw validation_error("bba entry needs 'focal' and 'mass'");
        entries.emplace_back(focal_from_json(entry.at("focal"), frame_size),
                             entry.at("mass").get<double>());
    }
    return MassFunction(std::move(entries), frame_size);
}

json hard_decision_to_json(const FocalElement& f, DecisionMode mode) {
    if (f.is_outlier()) return json("outlier");
    if (mode == DecisionMode::singletons_only) return json(f.community());
    return json(f.communities());
}

} // namespace

std::string mass_to_json(const MassFunction& m) {
    return bba_to_json(m).dump(2);
}

MassFunction mass_from_json(std::string_view json_text, int frame_size) {
    json j = json::parse(json_text, nullptr, true);
    return bba_from_json(j, frame_size);
}

std::string partition_to_json(const Graph& graph, const CredalPartition& partition) {
    if (static_cast<int>(partition.masses.size()) != graph.node_count())
        throw validation_error("partition/graph size mismatch");

    json centers = json::array();
    for (int v : partition.centers.nodes) centers.push_back(graph.external_id(v));

    json nodes = json::array();
    for (int v = 0; v < graph.node_count(); ++v) {
        const MassFunction& m = partition.masses[v];
        FocalElement all_focal = decide(m, DecisionMode::all_focal);
        FocalElement singleton = decide(m, DecisionMode::singletons_only);
        nodes.push_back({{"id", graph.external_id(v)},
                         {"bba", bba_to_json(m)},
                         {"hard_all_focal", hard_decision_to_json(all_focal, DecisionMode::all_focal)},
                         {"hard_singleton",
                          hard_decision_to_json(singleton, DecisionMode::singletons_only)}});
    }

    json doc = {{"centers", centers}, {"communities", partition.frame_size}, {"nodes", nodes}};
    return doc.dump(2) + "\n";
}

PartitionFile partition_from_json(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid partition JSON: ") + e.what());
    }
    if (!doc.contains("centers") || !doc.contains("communities") || !doc.contains("nodes"))
        throw validation_error("partition JSON needs 'centers', 'communities' and 'nodes'");

    PartitionFile out;
    out.communities = doc.at("communities").get<int>();
    if (out.communities < 1) throw validation_error("communities must be >= 1");
    for (const json& c : doc.at("centers")) out.centers.push_back(c.get<long long>());

    for (const json& node : doc.at("nodes")) {
        if (!node.contains("id")) throw validation_error("node entry needs 'id'");
        out.ids.push_back(node.at("id").get<long long>());
        out.masses.push_back(bba_from_json(node.at("bba"), out.communities));

        const json& af = node.at("hard_all_focal");
        if (af.is_string())
            out.hard_all_focal.push_back(HardPartition::kOutlier);
        else if (af.is_array())
            out.hard_all_focal.push_back(af.size() == 1 ? af.at(0).get<int>()
                                                        : HardPartition::kImprecise);
        else
            throw validation_error("hard_all_focal must be an id array or \"outlier\"");

        const json& hs = node.at("hard_singleton");
        if (hs.is_string())
            out.hard_singleton.push_back(HardPartition::kOutlier);
        else
            out.hard_singleton.push_back(hs.get<int>());
    }
    return out;
}

} // namespace edpc
