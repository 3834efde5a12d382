#include "orlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace orlab {

namespace {

using nlohmann::json;

void check_schema(const json& doc, const std::string& kind) {
    if (!doc.contains("schema_version") || !doc["schema_version"].is_string())
        throw IoError("missing schema_version");
    const std::string v = doc["schema_version"].get<std::string>();
    const int major = std::atoi(v.c_str());
    const int ours = std::atoi(kSchemaVersion);
    if (major > ours) throw IoError("schema_version " + v + " is newer than supported");
    if (!doc.contains("kind") || doc["kind"].get<std::string>() != kind)
        throw IoError("expected a " + kind + " document");
}

// Doubles travel as 17-digit strings so the printed form and the
// bitwise round-trip guarantee coincide.
json num(double v) { return format_double(v); }

double get_num(const json& j) { return parse_double(j.get<std::string>()); }

json cnum(cplx v) { return json::array({num(v.real()), num(v.imag())}); }

cplx get_cnum(const json& j) { return {get_num(j.at(0)), get_num(j.at(1))}; }

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw IoError("malformed number: " + s);
    return v;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << content;
        if (!out.flush()) throw IoError("write to " + tmp + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("rename to " + path + " failed: " + ec.message());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json trace_to_json(const GreedyTrace& trace) {
    json steps = json::array();
    for (std::size_t n = 0; n < trace.steps(); ++n) {
        json coeffs = json::object();
        for (const auto& [id, a] : trace.coefficients_per_step[n])
            coeffs[std::to_string(id)] = cnum(a);
        steps.push_back({{"step", n + 1},
                         {"atom_id", trace.selected[n]},
                         {"residual_norm", num(trace.residual_norms[n])},
                         {"functional_sup", num(trace.functional_sups[n])},
                         {"coefficients", std::move(coeffs)}});
    }
    return {{"schema_version", kSchemaVersion},
            {"kind", "trace"},
            {"initial_norm", num(trace.initial_norm)},
            {"stagnated", trace.stagnated},
            {"config",
             {{"tau", num(trace.config.tau)},
              {"max_iterations", trace.config.max_iterations},
              {"projection_tolerance", num(trace.config.projection_tolerance)},
              {"projection_max_inner", trace.config.projection_max_inner},
              {"stop_threshold", num(trace.config.stop_threshold)}}},
            {"steps", std::move(steps)}};
}

GreedyTrace trace_from_json(const json& doc) {
    check_schema(doc, "trace");
    GreedyTrace trace;
    trace.initial_norm = get_num(doc.at("initial_norm"));
    trace.stagnated = doc.at("stagnated").get<bool>();
    const json& cfg = doc.at("config");
    trace.config.tau = get_num(cfg.at("tau"));
    trace.config.max_iterations = cfg.at("max_iterations").get<int>();
    trace.config.projection_tolerance = get_num(cfg.at("projection_tolerance"));
    trace.config.projection_max_inner = cfg.at("projection_max_inner").get<int>();
    trace.config.stop_threshold = get_num(cfg.at("stop_threshold"));
    for (const json& s : doc.at("steps")) {
        trace.selected.push_back(s.at("atom_id").get<int>());
        trace.residual_norms.push_back(get_num(s.at("residual_norm")));
        trace.functional_sups.push_back(get_num(s.at("functional_sup")));
        std::map<int, cplx> coeffs;
        for (const auto& [key, val] : s.at("coefficients").items())
            coeffs[std::stoi(key)] = get_cnum(val);
        trace.coefficients_per_step.push_back(std::move(coeffs));
    }
    return trace;
}

json profile_to_json(const PropertyProfile& profile) {
    json H = json::array(), kN = json::array();
    for (double v : profile.H_measured) H.push_back(num(v));
    for (double v : profile.kN_measured) kN.push_back(num(v));
    return {{"schema_version", kSchemaVersion},
            {"kind", "profile"},
            {"p", num(profile.p)},
            {"alpha", num(profile.alpha)},
            {"c", num(profile.c)},
            {"q_c0", num(profile.q_c0)},
            {"tau", num(profile.tau)},
            {"lambda1", num(profile.lambda1)},
            {"dict_family", profile.dict_family == AtomFamily::Haar ? "haar" : "trig"},
            {"H_scale", num(profile.H_scale)},
            {"kN_scale", num(profile.kN_scale)},
            {"measured_at", profile.measured_at},
            {"H_measured", std::move(H)},
            {"kN_measured", std::move(kN)},
            {"seed", profile.seed},
            {"trials", profile.trials},
            {"truncation", profile.truncation}};
}

PropertyProfile profile_from_json(const json& doc) {
    check_schema(doc, "profile");
    PropertyProfile profile;
    profile.p = get_num(doc.at("p"));
    profile.alpha = get_num(doc.at("alpha"));
    profile.c = get_num(doc.at("c"));
    profile.q_c0 = get_num(doc.at("q_c0"));
    profile.tau = get_num(doc.at("tau"));
    profile.lambda1 = get_num(doc.at("lambda1"));
    profile.dict_family = doc.at("dict_family").get<std::string>() == "trig"
                              ? AtomFamily::Trig
                              : AtomFamily::Haar;
    profile.H_scale = get_num(doc.at("H_scale"));
    profile.kN_scale = get_num(doc.at("kN_scale"));
    profile.measured_at = doc.at("measured_at").get<std::vector<int>>();
    for (const json& v : doc.at("H_measured")) profile.H_measured.push_back(get_num(v));
    for (const json& v : doc.at("kN_measured")) profile.kN_measured.push_back(get_num(v));
    profile.seed = doc.at("seed").get<std::uint64_t>();
    profile.trials = doc.at("trials").get<int>();
    profile.truncation = doc.at("truncation").get<int>();
    return profile;
}

std::string table_to_text(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "p\talpha\ttau\tdict\tgrid_size\ttrunc\tN\tsigma_N\tempirical_phi"
           "\tpredicted_phi\tresidual_at_phi\tflags\n";
    for (const SweepRow& r : rows) {
        out << format_double(r.p) << '\t' << format_double(r.alpha) << '\t'
            << format_double(r.tau) << '\t' << r.dict << '\t' << r.grid_size << '\t'
            << r.trunc << '\t' << r.N << '\t' << format_double(r.sigma_N) << '\t'
            << r.empirical_phi << '\t' << r.predicted_phi << '\t'
            << format_double(r.residual_at_phi) << '\t' << r.flags << '\n';
    }
    return out.str();
}

std::vector<double> TextTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw IoError("no column named " + name);
    const std::size_t idx = static_cast<std::size_t>(it - header.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(parse_double(row.at(idx)));
    return out;
}

TextTable parse_table(const std::string& text) {
    TextTable table;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = s.find('\t', start);
            cells.push_back(s.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        return cells;
    };
    if (!std::getline(in, line)) throw IoError("empty table");
    table.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != table.header.size())
            throw IoError("ragged table row: " + line);
        table.rows.push_back(std::move(cells));
    }
    return table;
}

}  // namespace orlab
