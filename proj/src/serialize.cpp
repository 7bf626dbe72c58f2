#include "dualramsey/serialize.hpp"

#include <sstream>

namespace dualramsey {

namespace {

template <class T>
T field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw FormatError(std::string("missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("field '") + name + "': " + e.what());
    }
}

json element_json(const Domain& d, std::uint64_t i) {
    if (d.holds_maps()) {
        const FiniteMap f = d.map_at(i);
        return json(std::vector<Value>(f.images().begin(), f.images().end()));
    }
    json points = json::array();
    const PointFamily f = d.family_at(i);
    for (const Point& p : f.entries())
        points.push_back(p.to_string());
    return points;
}

std::optional<std::uint64_t> element_index(const Domain& d, const json& e) {
    if (!e.is_array())
        throw FormatError("element must be an array");
    if (d.holds_maps()) {
        std::vector<Value> images;
        for (const json& v : e) {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
                throw FormatError("map element entries must be non-negative integers");
            images.push_back(v.get<Value>());
        }
        try {
            const std::size_t size = images.size();
            return d.index_of(FiniteMap(size, d.cod_size(), std::move(images)));
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    }
    std::vector<Point> points;
    for (const json& v : e) {
        if (!v.is_string())
            throw FormatError("family element entries must be bitstrings");
        points.push_back(Point::parse(v.get<std::string>()));
    }
    try {
        return d.index_of(PointFamily(d.width(), std::move(points)));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

json optional_json(const auto& opt) { return opt ? json(*opt) : json(nullptr); }

} // namespace

json to_json(const FiniteMap& f) {
    return {{"dom", f.dom_size()}, {"cod", f.cod_size()},
            {"images", std::vector<Value>(f.images().begin(), f.images().end())}};
}

FiniteMap map_from_json(const json& j) {
    try {
        return FiniteMap(field<std::size_t>(j, "dom"), field<std::size_t>(j, "cod"),
                         field<std::vector<Value>>(j, "images"));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

json to_json(const MappingType& tp) { return std::vector<Value>(tp.letters().begin(), tp.letters().end()); }

json to_json(const TypeCatalog& catalog) {
    json types = json::array();
    for (const MappingType& tp : catalog.types)
        types.push_back(to_json(tp));
    return {{"n", catalog.alphabet_size}, {"t", catalog.size()}, {"types", types}};
}

json to_json(const PointFamily& f) {
    json points = json::array();
    for (const Point& p : f.entries())
        points.push_back(p.to_string());
    return {{"width", f.width()}, {"points", points}};
}

PointFamily family_from_json(const json& j) {
    try {
        std::vector<Point> points;
        for (const auto& s : field<std::vector<std::string>>(j, "points"))
            points.push_back(Point::parse(s));
        return PointFamily(field<std::size_t>(j, "width"), std::move(points));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

json to_json(const Domain& d) {
    json params;
    switch (d.kind()) {
    case DomainKind::RSurj: return {{"kind", "rsurj"}, {"params", {{"M", d.dom_size()}, {"L", d.cod_size()}}}};
    case DomainKind::Map: return {{"kind", "map"}, {"params", {{"M", d.dom_size()}, {"A", d.cod_size()}}}};
    case DomainKind::Family: return {{"kind", "family"}, {"params", {{"A", d.arity()}, {"m", d.width()}}}};
    case DomainKind::Emb: return {{"kind", "emb"}, {"params", {{"n", d.arity()}, {"m", d.width()}}}};
    case DomainKind::Substructure: {
        json points = json::array();
        for (const Point& p : d.sub()->points())
            points.push_back(p.to_string());
        return {{"kind", "substructure"},
                {"params", {{"structure", structure_name(d.structure())}, {"points", points}, {"m", d.width()}}}};
    }
    }
    throw FormatError("bad domain kind");
}

Domain domain_from_json(const json& j) {
    const auto kind = field<std::string>(j, "kind");
    const json params = field<json>(j, "params");
    try {
        if (kind == "rsurj")
            return Domain::rsurj(field<std::size_t>(params, "M"), field<std::size_t>(params, "L"));
        if (kind == "map")
            return Domain::map(field<std::size_t>(params, "M"), field<std::size_t>(params, "A"));
        if (kind == "family")
            return Domain::family(field<std::size_t>(params, "A"), field<std::size_t>(params, "m"));
        if (kind == "emb")
            return Domain::emb(field<std::size_t>(params, "n"), field<std::size_t>(params, "m"));
        if (kind == "substructure") {
            std::vector<Point> points;
            for (const auto& s : field<std::vector<std::string>>(params, "points"))
                points.push_back(Point::parse(s));
            return Domain::substructure(
                Substructure(parse_structure(field<std::string>(params, "structure")), std::move(points)),
                field<std::size_t>(params, "m"));
        }
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    throw FormatError("unknown domain kind '" + kind + "'");
}

json to_json(const Coloring& c) {
    json assignments = json::array();
    for (std::uint64_t i = 0; i < c.domain().size(); ++i)
        assignments.push_back({{"element", element_json(c.domain(), i)}, {"color", c.at(i)}});
    return {{"domain", to_json(c.domain())}, {"k", c.k()}, {"assignments", assignments}};
}

Coloring coloring_from_json(const json& j) {
    const Domain domain = domain_from_json(field<json>(j, "domain"));
    const auto k = field<std::uint32_t>(j, "k");
    if (k == 0)
        throw FormatError("k must be positive");
    const json assignments = field<json>(j, "assignments");
    if (!assignments.is_array())
        throw FormatError("assignments must be an array");
    std::vector<Color> table(domain.size());
    std::vector<bool> assigned(domain.size(), false);
    for (const json& a : assignments) {
        const json& element = field<json>(a, "element");
        const auto color = field<Color>(a, "color");
        const auto idx = element_index(domain, element);
        if (!idx)
            throw FormatError("element " + element.dump() + " is not in " + domain.describe());
        if (assigned[*idx])
            throw FormatError("element " + element.dump() + " assigned twice");
        if (color >= k)
            throw FormatError("color " + std::to_string(color) + " of element " + element.dump() +
                              " is not below k=" + std::to_string(k));
        assigned[*idx] = true;
        table[*idx] = color;
    }
    for (std::uint64_t i = 0; i < domain.size(); ++i)
        if (!assigned[i])
            throw FormatError("coloring is not total: element " + element_json(domain, i).dump() + " has no color");
    return Coloring(domain, k, std::move(table));
}

std::string_view status_name(StageStatus s) {
    switch (s) {
    case StageStatus::Found: return "found";
    case StageStatus::Vacuous: return "vacuous";
    case StageStatus::Exhausted: return "exhausted";
    }
    return "?";
}

json to_json(const StageRecord& r) {
    return {{"stage", r.stage},
            {"type", to_json(r.type)},
            {"from", r.from_size},
            {"to", r.to_size},
            {"status", status_name(r.status)},
            {"witness", r.witness ? to_json(r.witness->map()) : json(nullptr)},
            {"color", optional_json(r.color)},
            {"nodes_explored", r.nodes_explored}};
}

json to_json(const WitnessReport& r) {
    json stages = json::array();
    for (const StageRecord& s : r.stage_log)
        stages.push_back(to_json(s));
    return {{"found", r.found},
            {"witness", r.witness ? to_json(r.witness->map()) : json(nullptr)},
            {"achieved_colors", r.achieved_colors},
            {"nodes_explored", r.nodes_explored},
            {"stage_log", stages},
            {"bound", optional_json(r.bound)},
            {"failed_stage", optional_json(r.failed_stage)}};
}

json to_json(const StructureRunReport& r) {
    return {{"structure", structure_name(r.structure)},
            {"alphabet_size", r.alphabet_size},
            {"bound", r.bound},
            {"pipeline", to_json(r.pipeline)},
            {"embedding_certificate", optional_json(r.embedding_certificate)},
            {"surviving_colors", r.surviving_colors},
            {"extended_colors", r.extended_colors}};
}

json to_json(const DrNumberResult& r) {
    json levels = json::array();
    for (const DrLevel& l : r.levels)
        levels.push_back({{"M", l.M},
                          {"colorings", l.colorings},
                          {"without_witness", l.without_witness},
                          {"first_counterexample", optional_json(l.first_counterexample)}});
    return {{"L", r.L},       {"N", r.N}, {"k", r.k}, {"max_M", r.max_M}, {"levels", levels},
            {"minimal_M", optional_json(r.minimal_M)}};
}

std::string csv_header() { return "found,witness,achieved_colors,color_count,nodes_explored,stages,failed_stage"; }

std::string csv_row(const WitnessReport& r) {
    std::ostringstream out;
    out << (r.found ? "true" : "false") << ',';
    if (r.witness)
        for (std::size_t i = 0; i < r.witness->dom_size(); ++i)
            out << (i ? " " : "") << (*r.witness)(i);
    out << ',';
    for (std::size_t i = 0; i < r.achieved_colors.size(); ++i)
        out << (i ? " " : "") << r.achieved_colors[i];
    out << ',' << r.achieved_colors.size() << ',' << r.nodes_explored << ',' << r.stage_log.size() << ',';
    if (r.failed_stage)
        out << *r.failed_stage;
    return out.str();
}

} // namespace dualramsey
