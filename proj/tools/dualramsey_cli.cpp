#include "dualramsey/engine.hpp"
#include "dualramsey/laws.hpp"
#include "dualramsey/manifest.hpp"
#include "dualramsey/serialize.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace dualramsey;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_exhausted = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::string kind;
    std::vector<std::size_t> positional;
    std::string suite;

    std::optional<std::size_t> m, M, n, N, L, k, max, max_M;
    std::optional<std::uint64_t> seed;
    std::string schedule, type_order;
    std::string gen;
    std::string coloring_file;
    std::string structure;
    std::string points;
    std::string witness;
    std::string out;
    std::string format;
    unsigned threads = 1;
};

std::vector<std::size_t> parse_list(const std::string& text, const char* flag) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": '" + item + "' is not a non-negative integer");
        }
    }
    if (out.empty())
        throw UsageError(std::string(flag) + ": empty list");
    return out;
}

std::size_t require(const std::optional<std::size_t>& v, const char* flag) {
    if (!v)
        throw UsageError(std::string("missing required flag ") + flag);
    return *v;
}

std::uint32_t color_count(const Options& o, std::uint32_t fallback) {
    if (!o.k)
        return fallback;
    if (*o.k == 0 || *o.k > std::numeric_limits<std::uint32_t>::max())
        throw UsageError("--k must be a positive 32-bit integer");
    return static_cast<std::uint32_t>(*o.k);
}

fs::path resolve_output(const std::string& out) {
    fs::path p(out);
    if (const char* dir = std::getenv("DUALRAMSEY_OUT_DIR"); dir && *dir && p.is_relative())
        p = fs::path(dir) / p;
    return p;
}

std::optional<Substructure> substructure_from_flags(const Options& o) {
    if (o.structure.empty())
        return std::nullopt;
    const Structure s = parse_structure(o.structure);
    if (o.points.empty()) {
        if (s != Structure::Lex)
            throw UsageError("--structure " + o.structure + " needs --points");
        return std::nullopt;
    }
    std::vector<Point> pts;
    std::stringstream in(o.points);
    std::string item;
    while (std::getline(in, item, ','))
        pts.push_back(Point::parse(item));
    return Substructure(s, std::move(pts));
}

Domain structure_domain(const Options& o) {
    const std::size_t m = require(o.m, "--m");
    if (auto sub = substructure_from_flags(o))
        return Domain::substructure(*sub, m);
    return Domain::emb(require(o.n, "--n"), m);
}

Coloring generate(const Options& o, const Domain& d) {
    if (o.gen.empty())
        throw UsageError("give a coloring with --coloring FILE or --gen {constant,random,type-index,first-bits}");
    if (o.gen == "constant")
        return constant_coloring(d, color_count(o, 1));
    if (o.gen == "random") {
        if (!o.seed)
            throw UsageError("--gen random needs an explicit --seed");
        return random_coloring(d, color_count(o, 2), *o.seed);
    }
    if (o.gen == "type-index") {
        if (d.kind() != DomainKind::Map)
            throw UsageError("--gen type-index needs a Map(M, A) domain");
        return type_index_coloring(d.dom_size(), d.cod_size());
    }
    if (o.gen == "first-bits")
        return first_bits_coloring(d);
    throw UsageError("unknown generator '" + o.gen + "'");
}

struct Input {
    Coloring coloring;
    std::optional<RunManifest::Input> file;
};

Input load_coloring(const Options& o, const Domain& fallback_domain) {
    if (o.coloring_file.empty())
        return {generate(o, fallback_domain), std::nullopt};
    if (!o.gen.empty())
        throw UsageError("--coloring and --gen are mutually exclusive");
    std::ifstream in(o.coloring_file, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + o.coloring_file);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(o.coloring_file + ": " + e.what());
    }
    return {coloring_from_json(j), RunManifest::Input{o.coloring_file, sha256_file(o.coloring_file)}};
}

PipelineConfig config_from_flags(const Options& o, PipelineConfig fallback) {
    if (!o.schedule.empty())
        fallback.size_schedule = parse_list(o.schedule, "--schedule");
    if (!o.type_order.empty())
        fallback.type_order = parse_list(o.type_order, "--type-order");
    return fallback;
}

struct Outcome {
    std::string text;
    int code = exit_ok;
};

std::string as_json(const json& j) { return j.dump(2) + "\n"; }

std::string witness_output(const Options& o, const WitnessReport& r) {
    if (o.format == "csv")
        return csv_header() + "\n" + csv_row(r) + "\n";
    return as_json(to_json(r));
}

Outcome cmd_enumerate(const Options& o) {
    const auto& p = o.positional;
    auto need = [&](std::size_t count) {
        if (p.size() != count)
            throw UsageError("enumerate " + o.kind + " takes " + std::to_string(count) + " size argument(s)");
    };
    std::vector<json> items;
    if (o.kind == "rsurj") {
        need(2);
        for (const auto& f : enumerate_rsurj(p[0], p[1]))
            items.push_back(std::vector<Value>(f.map().images().begin(), f.map().images().end()));
    } else if (o.kind == "types") {
        need(1);
        for (const auto& tp : enumerate_types(p[0]).types)
            items.push_back(to_json(tp));
    } else if (o.kind == "emb") {
        need(2);
        for (const auto& t : enumerate_emb(p[0], p[1]))
            items.push_back(to_json(t.family())["points"]);
    } else {
        throw UsageError("enumerate: kind must be rsurj, types or emb");
    }
    if (o.format == "json")
        return {as_json({{"kind", o.kind}, {"params", p}, {"count", items.size()}, {"items", items}})};
    std::string text = "# count " + std::to_string(items.size()) + "\n";
    for (const auto& item : items)
        text += item.dump() + "\n";
    return {text};
}

Outcome cmd_types(const Options& o) { return {as_json(to_json(enumerate_types(require(o.n, "--n"))))}; }

Outcome cmd_laws(const Options& o) {
    laws::LawResult r;
    if (o.suite == "functoriality")
        r = laws::functoriality(o.max.value_or(5));
    else if (o.suite == "transpose")
        r = laws::transpose(o.max.value_or(3));
    else if (o.suite == "claims")
        r = laws::claims(o.m.value_or(3), o.M.value_or(5));
    else if (o.suite == "structures")
        r = laws::structures(o.m.value_or(3), o.M.value_or(5));
    else if (o.suite == "partition")
        r = laws::partition(o.M.value_or(6), o.n.value_or(3));
    else
        throw UsageError("laws: suite must be functoriality, transpose, claims, structures or partition");
    const json j = {{"suite", r.suite},
                    {"instances", r.instances},
                    {"passed", r.passed()},
                    {"counterexample", r.counterexample ? json(*r.counterexample) : json(nullptr)}};
    return {as_json(j), r.passed() ? exit_ok : exit_exhausted};
}

Outcome cmd_search(const Options& o, RunManifest& manifest) {
    const Input in = o.coloring_file.empty() ? Input{generate(o, Domain::rsurj(require(o.M, "--M"), require(o.L, "--L"))),
                                                     std::nullopt}
                                             : load_coloring(o, Domain::rsurj(1, 1));
    if (in.file)
        manifest.inputs.push_back(*in.file);
    const std::size_t N = require(o.N, "--N");
    const Domain& d = in.coloring.domain();
    if (d.kind() != DomainKind::RSurj)
        throw UsageError("search needs a coloring of RSurj(M, L), got " + d.describe());
    if (N < d.cod_size() || N > d.dom_size())
        throw UsageError("search: need L <= N <= M, got N=" + std::to_string(N) + " for " + d.describe());
    const WitnessReport r = dual_ramsey_search(in.coloring, N, {o.threads});
    return {witness_output(o, r), r.found ? exit_ok : exit_exhausted};
}

Outcome cmd_pipeline(const Options& o, RunManifest& manifest) {
    Input in = [&] {
        if (!o.coloring_file.empty())
            return load_coloring(o, Domain::rsurj(1, 1));
        if (!o.structure.empty())
            return Input{generate(o, structure_domain(o)), std::nullopt};
        return Input{generate(o, Domain::map(require(o.M, "--M"), require(o.n, "--n"))), std::nullopt};
    }();
    if (in.file)
        manifest.inputs.push_back(*in.file);
    const Domain& d = in.coloring.domain();
    if (d.kind() == DomainKind::Map) {
        const auto config = config_from_flags(o, default_pipeline_config(d.dom_size(), d.cod_size()));
        validate_config(config, d.dom_size(), d.cod_size());
        const WitnessReport r = color_reduction_pipeline(in.coloring, config, {o.threads});
        return {witness_output(o, r), r.found ? exit_ok : exit_exhausted};
    }
    if (d.kind() == DomainKind::Emb || d.kind() == DomainKind::Substructure) {
        if (o.format == "csv")
            throw UsageError("structure runs export JSON only");
        const auto config = config_from_flags(o, default_structure_config(d));
        validate_config(config, d.width(), std::size_t{1} << d.arity());
        const StructureRunReport r = end_to_end_structure_run(in.coloring, config, {o.threads});
        return {as_json(to_json(r)), r.pipeline.found ? exit_ok : exit_exhausted};
    }
    throw UsageError("pipeline needs a coloring of Map(M, A) or of embeddings, got " + d.describe());
}

Outcome cmd_dr_number(const Options& o) {
    if (o.format == "csv")
        throw UsageError("dr-number exports JSON only");
    const std::size_t L = require(o.L, "--L"), N = require(o.N, "--N"), max_M = require(o.max_M, "--max-M");
    const auto k = color_count(o, 2);
    if (L == 0 || N < L || max_M < N)
        throw UsageError("dr-number: need 1 <= L <= N <= max-M");
    const DrNumberResult r = dr_number(L, N, k, max_M, {o.threads});
    json j = to_json(r);
    j["verdict"] = r.minimal_M ? "minimal M = " + std::to_string(*r.minimal_M) : "none <= " + std::to_string(max_M);
    return {as_json(j), r.minimal_M ? exit_ok : exit_exhausted};
}

Outcome cmd_verify(const Options& o, RunManifest& manifest) {
    Input in = [&] {
        if (!o.coloring_file.empty())
            return load_coloring(o, Domain::rsurj(1, 1));
        if (!o.structure.empty())
            return Input{generate(o, structure_domain(o)), std::nullopt};
        if (o.L)
            return Input{generate(o, Domain::rsurj(require(o.M, "--M"), *o.L)), std::nullopt};
        return Input{generate(o, Domain::map(require(o.M, "--M"), require(o.n, "--n"))), std::nullopt};
    }();
    if (in.file)
        manifest.inputs.push_back(*in.file);
    if (o.witness.empty())
        throw UsageError("verify needs --witness with the images of h, e.g. 0,0,1");
    const auto images = parse_list(o.witness, "--witness");
    const std::size_t cod = *std::max_element(images.begin(), images.end()) + 1;
    const FiniteMap h(images.size(), cod, std::vector<Value>(images.begin(), images.end()));
    const Domain& d = in.coloring.domain();
    const Domain target = d.resized(cod);
    const auto colors = verify_witness(in.coloring, h, target);
    const json j = {{"domain", to_json(d)},
                    {"witness", to_json(h)},
                    {"rigid", is_rigid_surjection(h)},
                    {"target", to_json(target)},
                    {"colors", colors},
                    {"color_count", colors.size()},
                    {"monochromatic", colors.size() == 1}};
    return {as_json(j)};
}

int run(std::vector<std::string> args, bool allow_replay = true);

int execute(const Options& o, const std::vector<std::string>& args) {
    if (o.command == "enumerate" ? o.format != "text" && o.format != "json" : o.format != "json" && o.format != "csv")
        throw UsageError("--format: unsupported value '" + o.format + "' for " + o.command);

    RunManifest manifest;
    manifest.command = o.command;
    manifest.argv = args;
    const auto start = std::chrono::steady_clock::now();

    Outcome outcome;
    if (o.command == "enumerate")
        outcome = cmd_enumerate(o);
    else if (o.command == "types")
        outcome = cmd_types(o);
    else if (o.command == "laws")
        outcome = cmd_laws(o);
    else if (o.command == "search")
        outcome = cmd_search(o, manifest);
    else if (o.command == "pipeline")
        outcome = cmd_pipeline(o, manifest);
    else if (o.command == "dr-number")
        outcome = cmd_dr_number(o);
    else if (o.command == "verify")
        outcome = cmd_verify(o, manifest);

    manifest.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json params = json::object();
    auto put = [&](const char* key, const auto& v) {
        if (v)
            params[key] = *v;
    };
    put("m", o.m), put("M", o.M), put("n", o.n), put("N", o.N), put("L", o.L), put("k", o.k), put("max", o.max);
    put("max_M", o.max_M), put("seed", o.seed);
    for (const auto& [key, value] : {std::pair{"kind", o.kind}, {"suite", o.suite}, {"schedule", o.schedule},
                                     {"type_order", o.type_order}, {"gen", o.gen}, {"structure", o.structure},
                                     {"points", o.points}, {"witness", o.witness}, {"out", o.out}})
        if (!value.empty())
            params[key] = value;
    if (!o.positional.empty())
        params["sizes"] = o.positional;
    params["format"] = o.format;
    params["threads"] = o.threads;
    manifest.parameters = params;

    if (o.out.empty()) {
        std::cout << outcome.text << std::flush;
        std::cerr << manifest.to_json().dump() << "\n";
    } else {
        const fs::path path = resolve_output(o.out);
        if (path.has_parent_path())
            fs::create_directories(path.parent_path());
        std::ofstream(path, std::ios::binary) << outcome.text;
        std::ofstream(path.string() + ".manifest.json", std::ios::binary) << manifest.to_json().dump(2) << "\n";
    }
    return outcome.code;
}

int replay(const std::string& manifest_path) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + manifest_path);
    const json j = json::parse(in);
    const auto args = j.at("argv").get<std::vector<std::string>>();
    for (const auto& input : j.at("inputs")) {
        const auto path = input.at("path").get<std::string>();
        if (sha256_file(path) != input.at("sha256").get<std::string>())
            throw FormatError("input " + path + " changed since the manifest was written");
    }
    return run(args, false);
}

int run(std::vector<std::string> args, bool allow_replay) {
    CLI::App app{"Dual Ramsey witnesses, type catalogs and big Ramsey degree pipelines"};
    app.require_subcommand(1);
    Options o;
    std::string manifest_path;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "Write the report here (manifest goes to <out>.manifest.json)");
        sub->add_option("--format", o.format, "json or csv");
        sub->add_option("--threads", o.threads, "Engine worker threads")->check(CLI::Range(1U, 256U));
    };
    auto coloring_flags = [&](CLI::App* sub) {
        sub->add_option("--coloring", o.coloring_file, "Coloring JSON file");
        sub->add_option("--gen", o.gen, "Generator: constant, random, type-index, first-bits");
        sub->add_option("--seed", o.seed, "Seed for --gen random");
        sub->add_option("--k", o.k, "Number of colors for generators");
        sub->add_option("--M", o.M, "Domain size of the colored maps");
    };

    auto* enumerate = app.add_subcommand("enumerate", "List rsurj M N, types n or emb n m in canonical order");
    enumerate->add_option("kind", o.kind, "rsurj, types or emb")->required();
    enumerate->add_option("sizes", o.positional, "Size parameters")->required();
    enumerate->add_option("--format", o.format, "text or json");
    enumerate->add_option("--out", o.out, "Write the listing here");

    auto* types = app.add_subcommand("types", "Print the mapping-type catalog over an n-letter alphabet");
    types->add_option("--n", o.n, "Alphabet size")->required();
    types->add_option("--out", o.out, "Write the catalog here");

    auto* laws_cmd = app.add_subcommand("laws", "Run an exhaustive law suite");
    laws_cmd->add_option("suite", o.suite, "functoriality, transpose, claims, structures or partition")->required();
    laws_cmd->add_option("--max", o.max, "Size cap for functoriality and transpose");
    laws_cmd->add_option("--m", o.m, "Target cap for claims and structures");
    laws_cmd->add_option("--M", o.M, "Domain cap");
    laws_cmd->add_option("--n", o.n, "Alphabet cap for partition");
    laws_cmd->add_option("--out", o.out, "Write the report here");

    auto* search = app.add_subcommand("search", "Find the least w : M -> N with a monochromatic cone");
    coloring_flags(search);
    search->add_option("--L", o.L, "Codomain size of the colored rigid surjections");
    search->add_option("--N", o.N, "Witness codomain size")->required();
    common(search);

    auto* pipeline = app.add_subcommand("pipeline", "Run the type-by-type color reduction");
    coloring_flags(pipeline);
    pipeline->add_option("--n", o.n, "Alphabet size |A|, or arity for --structure LEX");
    pipeline->add_option("--m", o.m, "Width of the ambient 2^m for structure runs");
    pipeline->add_option("--structure", o.structure, "LEX, Q, EQ, G, OG, B, EB, L or EL");
    pipeline->add_option("--points", o.points, "Comma-separated bitstrings of the substructure");
    pipeline->add_option("--schedule", o.schedule, "Comma-separated sizes M_0,...,M_t");
    pipeline->add_option("--type-order", o.type_order, "Comma-separated catalog indices");
    common(pipeline);

    auto* dr = app.add_subcommand("dr-number", "Exhaust all colorings of RSurj(M, L) for M up to --max-M");
    dr->add_option("--L", o.L, "Colored codomain size")->required();
    dr->add_option("--N", o.N, "Witness codomain size")->required();
    dr->add_option("--k", o.k, "Number of colors")->required();
    dr->add_option("--max-M", o.max_M, "Largest domain size to try")->required();
    common(dr);

    auto* verify = app.add_subcommand("verify", "Report the colors of a coloring on the cone of h");
    coloring_flags(verify);
    verify->add_option("--L", o.L, "Codomain size for RSurj(M, L) generators");
    verify->add_option("--n", o.n, "Alphabet size, or arity for --structure LEX");
    verify->add_option("--m", o.m, "Width for structure generators");
    verify->add_option("--structure", o.structure, "Structure for embedding generators");
    verify->add_option("--points", o.points, "Substructure points");
    verify->add_option("--witness", o.witness, "Images of h, comma-separated")->required();
    verify->add_option("--out", o.out, "Write the report here");

    CLI::App* replay_cmd = nullptr;
    if (allow_replay) {
        replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
        replay_cmd->add_option("manifest", manifest_path, "Manifest JSON")->required();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (replay_cmd && replay_cmd->parsed())
            return replay(manifest_path);
        o.command = app.get_subcommands().front()->get_name();
        if (o.format.empty())
            o.format = o.command == "enumerate" ? "text" : "json";
        return execute(o, args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
    } catch (const FormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return exit_input;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
}
