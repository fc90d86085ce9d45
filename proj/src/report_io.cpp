#include "perigid/report_io.hpp"

#include <stdexcept>

namespace perigid {

using nlohmann::json;

namespace {

json ids_out(const std::vector<EdgeId>& ids) {
    json a = json::array();
    for (EdgeId e : ids) a.push_back(e + 1);
    return a;
}

std::vector<EdgeId> ids_in(const json& a) {
    std::vector<EdgeId> ids;
    for (const auto& x : a) {
        const auto v = x.get<std::int64_t>();
        if (v < 1) throw std::invalid_argument("report: edge numbers start at 1");
        ids.push_back(static_cast<EdgeId>(v - 1));
    }
    return ids;
}

const json& field(const json& doc, const char* name) {
    if (!doc.contains(name)) throw std::invalid_argument(std::string("report: missing field '") + name + "'");
    return doc.at(name);
}

}  // namespace

json report_to_json(const AnalysisReport& r) {
    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["verdict"] = to_string(r.verdict);
    doc["method"] = r.method;
    doc["counting_target"] = r.counting_target;
    doc["edge_count"] = r.edge_count;
    doc["combinatorial_rank"] = r.combinatorial_rank;
    doc["numeric_rank"] = r.numeric_rank ? json(*r.numeric_rank) : json(nullptr);
    doc["dof"] = r.dof;
    doc["redundancy"] = r.redundancy;
    if (r.certificate) {
        json cert;
        cert["trees"] = json::array();
        for (const auto& t : r.certificate->trees) cert["trees"].push_back(ids_out(t));
        cert["pseudoforests"] = json::array();
        for (const auto& f : r.certificate->pseudoforests) {
            json heads = json::array();
            for (VertexId h : f.heads) heads.push_back(h + 1);
            cert["pseudoforests"].push_back({{"pair", {f.i + 1, f.j + 1}}, {"edges", ids_out(f.edges)}, {"heads", heads}});
        }
        cert["residual"] = ids_out(r.certificate->residual);
        doc["certificate"] = std::move(cert);
    } else {
        doc["certificate"] = nullptr;
    }
    doc["partition"] = json::array();
    for (const auto& p : r.partition) doc["partition"].push_back(ids_out(p));
    if (r.violation) {
        doc["violation"] = {{"edges", ids_out(r.violation->edges)},
                            {"size", r.violation->size},
                            {"bound", r.violation->bound}};
    } else {
        doc["violation"] = nullptr;
    }
    doc["liftable"] = r.liftable ? json(*r.liftable) : json(nullptr);
    doc["exhaustive_confirmed"] = r.exhaustive_confirmed;
    return doc;
}

AnalysisReport report_from_json(const json& doc) {
    try {
        if (field(doc, "schema_version").get<int>() != kReportSchemaVersion) {
            throw std::invalid_argument("report: unsupported schema_version");
        }
        AnalysisReport r;
        r.verdict = verdict_from_string(field(doc, "verdict").get<std::string>());
        r.method = field(doc, "method").get<std::string>();
        r.counting_target = field(doc, "counting_target").get<std::int64_t>();
        r.edge_count = field(doc, "edge_count").get<std::int64_t>();
        r.combinatorial_rank = field(doc, "combinatorial_rank").get<std::int64_t>();
        if (const auto& n = field(doc, "numeric_rank"); !n.is_null()) r.numeric_rank = n.get<std::int64_t>();
        r.dof = field(doc, "dof").get<std::int64_t>();
        r.redundancy = field(doc, "redundancy").get<std::int64_t>();
        if (const auto& c = field(doc, "certificate"); !c.is_null()) {
            Decomposition dec;
            for (const auto& t : field(c, "trees")) dec.trees.push_back(ids_in(t));
            for (const auto& f : field(c, "pseudoforests")) {
                PseudoForest pf;
                const auto& pair = field(f, "pair");
                pf.i = pair.at(0).get<int>() - 1;
                pf.j = pair.at(1).get<int>() - 1;
                pf.edges = ids_in(field(f, "edges"));
                for (const auto& h : field(f, "heads")) pf.heads.push_back(h.get<int>() - 1);
                dec.pseudoforests.push_back(std::move(pf));
            }
            dec.residual = ids_in(field(c, "residual"));
            r.certificate = std::move(dec);
        }
        for (const auto& p : field(doc, "partition")) r.partition.push_back(ids_in(p));
        if (const auto& v = field(doc, "violation"); !v.is_null()) {
            r.violation = CountViolation{ids_in(field(v, "edges")), field(v, "size").get<std::int64_t>(),
                                         field(v, "bound").get<std::int64_t>()};
        }
        if (const auto& l = field(doc, "liftable"); !l.is_null()) r.liftable = l.get<bool>();
        r.exhaustive_confirmed = field(doc, "exhaustive_confirmed").get<bool>();
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report: ") + e.what());
    }
}

}  // namespace perigid
