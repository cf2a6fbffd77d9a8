#include "lplab/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace lplab {

using nlohmann::json;

namespace {

// JSON has no infinities; they travel as strings.
json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double read_number(const json& v, const std::string& ptr) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
        if (s == "-inf" || s == "-Infinity") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw ConfigError(ptr, "expected a number");
}

long long read_integer(const json& v, const std::string& ptr) {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    throw ConfigError(ptr, "expected an integer");
}

bool read_bool(const json& v, const std::string& ptr) {
    if (!v.is_boolean()) throw ConfigError(ptr, "expected true or false");
    return v.get<bool>();
}

std::string read_string(const json& v, const std::string& ptr) {
    if (!v.is_string()) throw ConfigError(ptr, "expected a string");
    return v.get<std::string>();
}

const json& require_array(const json& v, const std::string& ptr) {
    if (!v.is_array()) throw ConfigError(ptr, "expected an array");
    return v;
}

const json& require_object(const json& v, const std::string& ptr) {
    if (!v.is_object()) throw ConfigError(ptr, "expected an object");
    return v;
}

void reject_unknown(const json& obj, const std::string& ptr, const std::set<std::string>& known) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) {
            std::string list;
            for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
            throw ConfigError(ptr + "/" + key, "unknown field (expected one of: " + list + ")");
        }
    }
}

std::vector<double> read_numbers(const json& v, const std::string& ptr) {
    std::vector<double> out;
    const auto& a = require_array(v, ptr);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(read_number(a[i], ptr + "/" + std::to_string(i)));
    return out;
}

json numbers(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

json member_to_json(const MemberSpec& m) {
    return {{"kind", to_string(m.kind)}, {"name", m.name},         {"center", m.center}, {"width", m.width},
            {"modulation", m.modulation}, {"radius", m.radius}, {"k_lo", m.k_lo},     {"k_hi", m.k_hi},
            {"seed", m.seed},             {"degree", m.degree}};
}

MemberSpec member_from_json(const json& v, const std::string& ptr, std::size_t index) {
    require_object(v, ptr);
    reject_unknown(v, ptr, {"kind", "name", "center", "width", "modulation", "radius", "k_lo", "k_hi", "seed", "degree"});
    if (!v.contains("kind")) throw ConfigError(ptr + "/kind", "member needs a kind (gaussian, bump, random, hermite)");
    MemberSpec m;
    try {
        m.kind = parse_generator_kind(read_string(v["kind"], ptr + "/kind"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(ptr + "/kind", e.what());
    }
    m.name = v.contains("name") ? read_string(v["name"], ptr + "/name")
                                : std::string(to_string(m.kind)) + "-" + std::to_string(index);
    if (v.contains("center")) m.center = read_number(v["center"], ptr + "/center");
    if (v.contains("width")) m.width = read_number(v["width"], ptr + "/width");
    if (v.contains("modulation")) m.modulation = read_number(v["modulation"], ptr + "/modulation");
    if (v.contains("radius")) m.radius = read_number(v["radius"], ptr + "/radius");
    if (v.contains("k_lo")) m.k_lo = static_cast<int>(read_integer(v["k_lo"], ptr + "/k_lo"));
    if (v.contains("k_hi")) m.k_hi = static_cast<int>(read_integer(v["k_hi"], ptr + "/k_hi"));
    if (v.contains("seed")) {
        const auto s = read_integer(v["seed"], ptr + "/seed");
        if (s < 0) throw ConfigError(ptr + "/seed", "must be >= 0");
        m.seed = static_cast<std::uint64_t>(s);
    }
    if (v.contains("degree")) m.degree = static_cast<int>(read_integer(v["degree"], ptr + "/degree"));
    return m;
}

int line_of(const std::string& text, std::size_t pos) {
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(std::min(pos, text.size())), '\n'));
}

// Best-effort source line for a JSON pointer: follows the object keys through the text.
int locate(const std::string& text, const std::string& pointer) {
    std::size_t pos = 0;
    bool found = false;
    std::stringstream ss(pointer);
    std::string token;
    while (std::getline(ss, token, '/')) {
        if (token.empty() || std::all_of(token.begin(), token.end(), ::isdigit)) continue;
        const auto at = text.find("\"" + token + "\"", pos);
        if (at == std::string::npos) break;
        pos = at;
        found = true;
    }
    return found ? line_of(text, pos) : 0;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

json config_to_json(const SweepConfig& c) {
    const auto& p = c.params;
    json pqr = json::array();
    for (const auto& e : p.pqr) pqr.push_back({number(e.p), number(e.q), number(e.r)});
    json pq = json::array();
    for (const auto& e : p.pq) pq.push_back({number(e[0]), number(e[1])});
    json family = json::array();
    for (const auto& m : c.family) family.push_back(member_to_json(m));
    return {{"suite", to_string(c.suite)},
            {"grid", {{"n", c.grid.n}, {"N", c.grid.N}, {"L", c.grid.L}}},
            {"params",
             {{"k", p.k},
              {"s", numbers(p.s)},
              {"a", numbers(p.a)},
              {"gamma", numbers(p.gamma)},
              {"d", numbers(p.d)},
              {"R", numbers(p.R)},
              {"eps", numbers(p.eps)},
              {"K", numbers(p.K)},
              {"pqr", pqr},
              {"pq", pq},
              {"kernels", p.kernels},
              {"orbit", p.orbit},
              {"orbit_anchor", p.orbit_anchor},
              {"mean_free", p.mean_free},
              {"refine", p.refine},
              {"pairs", p.pairs}}},
            {"family", family},
            {"tolerances",
             {{"max_over_median", c.tolerances.max_over_median},
              {"slope", c.tolerances.slope},
              {"skip_fraction", c.tolerances.skip_fraction},
              {"refinement", c.tolerances.refinement},
              {"aliasing", c.tolerances.aliasing}}},
            {"seed", c.seed}};
}

SweepConfig config_from_json(const json& doc) {
    require_object(doc, "");
    reject_unknown(doc, "", {"suite", "grid", "params", "family", "tolerances", "seed"});
    if (!doc.contains("suite")) throw ConfigError("/suite", "missing suite id");
    SuiteId suite;
    try {
        suite = parse_suite(read_string(doc["suite"], "/suite"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("/suite", e.what());
    }
    int dimension = 0;
    if (doc.contains("grid")) {
        require_object(doc["grid"], "/grid");
        if (doc["grid"].contains("n")) dimension = static_cast<int>(read_integer(doc["grid"]["n"], "/grid/n"));
    }
    SweepConfig c = default_config(suite, dimension);

    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        reject_unknown(g, "/grid", {"n", "N", "L"});
        if (g.contains("n")) c.grid.n = dimension;
        if (g.contains("N")) c.grid.N = static_cast<int>(read_integer(g["N"], "/grid/N"));
        if (g.contains("L")) c.grid.L = read_number(g["L"], "/grid/L");
    }
    if (doc.contains("params")) {
        const auto& v = require_object(doc["params"], "/params");
        reject_unknown(v, "/params", {"k", "s", "a", "gamma", "d", "R", "eps", "K", "pqr", "pq", "kernels", "orbit",
                                      "orbit_anchor", "mean_free", "refine", "pairs"});
        auto& p = c.params;
        if (v.contains("k")) {
            p.k.clear();
            const auto& a = require_array(v["k"], "/params/k");
            for (std::size_t i = 0; i < a.size(); ++i) p.k.push_back(static_cast<int>(read_integer(a[i], "/params/k/" + std::to_string(i))));
        }
        if (v.contains("s")) p.s = read_numbers(v["s"], "/params/s");
        if (v.contains("a")) p.a = read_numbers(v["a"], "/params/a");
        if (v.contains("gamma")) p.gamma = read_numbers(v["gamma"], "/params/gamma");
        if (v.contains("d")) p.d = read_numbers(v["d"], "/params/d");
        if (v.contains("R")) p.R = read_numbers(v["R"], "/params/R");
        if (v.contains("eps")) p.eps = read_numbers(v["eps"], "/params/eps");
        if (v.contains("K")) p.K = read_numbers(v["K"], "/params/K");
        if (v.contains("pqr")) {
            p.pqr.clear();
            const auto& a = require_array(v["pqr"], "/params/pqr");
            for (std::size_t i = 0; i < a.size(); ++i) {
                const std::string ptr = "/params/pqr/" + std::to_string(i);
                const auto e = read_numbers(a[i], ptr);
                if (e.size() != 3) throw ConfigError(ptr, "expected [p, q, r]");
                p.pqr.push_back({e[0], e[1], e[2]});
            }
        }
        if (v.contains("pq")) {
            p.pq.clear();
            const auto& a = require_array(v["pq"], "/params/pq");
            for (std::size_t i = 0; i < a.size(); ++i) {
                const std::string ptr = "/params/pq/" + std::to_string(i);
                const auto e = read_numbers(a[i], ptr);
                if (e.size() != 2) throw ConfigError(ptr, "expected [p, q]");
                p.pq.push_back({e[0], e[1]});
            }
        }
        if (v.contains("kernels")) {
            p.kernels.clear();
            const auto& a = require_array(v["kernels"], "/params/kernels");
            for (std::size_t i = 0; i < a.size(); ++i) p.kernels.push_back(read_string(a[i], "/params/kernels/" + std::to_string(i)));
        }
        if (v.contains("orbit")) p.orbit = read_bool(v["orbit"], "/params/orbit");
        if (v.contains("orbit_anchor")) p.orbit_anchor = static_cast<int>(read_integer(v["orbit_anchor"], "/params/orbit_anchor"));
        if (v.contains("mean_free")) p.mean_free = read_bool(v["mean_free"], "/params/mean_free");
        if (v.contains("refine")) p.refine = read_bool(v["refine"], "/params/refine");
        if (v.contains("pairs")) {
            const auto n = read_integer(v["pairs"], "/params/pairs");
            if (n < 0) throw ConfigError("/params/pairs", "must be >= 0");
            p.pairs = static_cast<std::size_t>(n);
        }
    }
    if (doc.contains("family")) {
        const auto& f = doc["family"];
        if (f.is_string() && f.get<std::string>() == "default") {
            c.family = default_family();
        } else {
            require_array(f, "/family");
            c.family.clear();
            for (std::size_t i = 0; i < f.size(); ++i) c.family.push_back(member_from_json(f[i], "/family/" + std::to_string(i), i));
        }
    }
    if (doc.contains("tolerances")) {
        const auto& t = require_object(doc["tolerances"], "/tolerances");
        reject_unknown(t, "/tolerances", {"max_over_median", "slope", "skip_fraction", "refinement", "aliasing"});
        auto& tol = c.tolerances;
        if (t.contains("max_over_median")) tol.max_over_median = read_number(t["max_over_median"], "/tolerances/max_over_median");
        if (t.contains("slope")) tol.slope = read_number(t["slope"], "/tolerances/slope");
        if (t.contains("skip_fraction")) tol.skip_fraction = read_number(t["skip_fraction"], "/tolerances/skip_fraction");
        if (t.contains("refinement")) tol.refinement = read_number(t["refinement"], "/tolerances/refinement");
        if (t.contains("aliasing")) tol.aliasing = read_number(t["aliasing"], "/tolerances/aliasing");
    }
    if (doc.contains("seed")) {
        const auto s = read_integer(doc["seed"], "/seed");
        if (s < 0) throw ConfigError("/seed", "must be >= 0");
        c.seed = static_cast<std::uint64_t>(s);
    }
    return c;
}

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("override '" + assignment + "' is not key=value");
    std::string pointer;
    std::stringstream ss(assignment.substr(0, eq));
    std::string part;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) throw std::invalid_argument("override key '" + assignment.substr(0, eq) + "' has an empty segment");
        pointer += "/" + part;
    }
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
    doc[json::json_pointer(pointer)] = value;
}

SweepConfig parse_config_text(const std::string& text, const std::string& source, const std::vector<std::string>& overrides) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const int line = line_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigFileError(source + ":" + std::to_string(line) + ": malformed JSON: " + e.what(), line);
    }
    for (const auto& o : overrides) {
        try {
            apply_override(doc, o);
        } catch (const std::exception& e) {
            throw ConfigFileError(std::string("--set ") + o + ": " + e.what(), 0);
        }
    }
    try {
        auto config = config_from_json(doc);
        validate(config);
        return config;
    } catch (const ConfigError& e) {
        const int line = locate(text, e.pointer());
        const std::string where = line > 0 ? source + ":" + std::to_string(line) : source;
        throw ConfigFileError(where + ": " + e.what(), line);
    }
}

json report_to_json(const VerificationReport& r) {
    json doc = report_numbers(r);
    doc["metadata"] = {{"timestamp", r.timestamp}, {"runtime_seconds", r.runtime_seconds}};
    return doc;
}

json report_numbers(const VerificationReport& r) {
    json records = json::array();
    for (const auto& rec : r.records) {
        json params = json::object();
        for (const auto& [k, v] : rec.params) params[k] = number(v);
        records.push_back({{"kind", rec.kind},     {"series", rec.series},       {"member", rec.member},
                           {"x", number(rec.x)},   {"refined", rec.refined},     {"params", params},
                           {"lhs", number(rec.lhs)}, {"rhs", number(rec.rhs)},   {"ratio", number(rec.ratio)},
                           {"tail", number(rec.tail)}, {"skipped", rec.skipped}, {"reason", rec.reason}});
    }
    json curves = json::array();
    for (const auto& c : r.curves) curves.push_back({{"series", c.series}, {"x", number(c.x)}, {"y", number(c.y)}});
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"value", number(c.value)}, {"threshold", number(c.threshold)}, {"pass", c.pass}});
    }
    const auto& a = r.aggregates;
    json agg = {{"records", a.records},
                {"skipped", a.skipped},
                {"max", number(a.max)},
                {"median", number(a.median)},
                {"max_over_median", number(a.max_over_median)},
                {"slope", a.slope ? number(*a.slope) : json(nullptr)},
                {"slope_stderr", a.slope_stderr ? number(*a.slope_stderr) : json(nullptr)},
                {"slope_series", a.slope_series}};
    return {{"suite", to_string(r.config.suite)},
            {"statement", suite_info(r.config.suite).statement},
            {"config", config_to_json(r.config)},
            {"verdict", to_string(r.verdict)},
            {"checks", checks},
            {"aggregates", agg},
            {"notes", r.notes},
            {"curves", curves},
            {"records", records}};
}

VerificationReport report_from_json(const json& doc) {
    VerificationReport r;
    r.config = config_from_json(doc.at("config"));
    for (const auto& v : doc.at("records")) {
        Record rec;
        rec.kind = v.at("kind").get<std::string>();
        rec.series = v.at("series").get<std::string>();
        rec.member = v.at("member").get<std::string>();
        rec.x = read_number(v.at("x"), "/records/x");
        rec.refined = v.at("refined").get<bool>();
        for (const auto& [k, p] : v.at("params").items()) rec.params[k] = read_number(p, "/records/params/" + k);
        rec.lhs = read_number(v.at("lhs"), "/records/lhs");
        rec.rhs = read_number(v.at("rhs"), "/records/rhs");
        rec.ratio = read_number(v.at("ratio"), "/records/ratio");
        rec.tail = read_number(v.at("tail"), "/records/tail");
        rec.skipped = v.at("skipped").get<bool>();
        rec.reason = v.at("reason").get<std::string>();
        r.records.push_back(std::move(rec));
    }
    for (const auto& v : doc.at("curves")) {
        r.curves.push_back({v.at("series").get<std::string>(), read_number(v.at("x"), "/curves/x"), read_number(v.at("y"), "/curves/y")});
    }
    for (const auto& v : doc.at("checks")) {
        r.checks.push_back({v.at("name").get<std::string>(), read_number(v.at("value"), "/checks/value"),
                            read_number(v.at("threshold"), "/checks/threshold"), v.at("pass").get<bool>()});
    }
    const auto& a = doc.at("aggregates");
    r.aggregates.records = a.at("records").get<std::size_t>();
    r.aggregates.skipped = a.at("skipped").get<std::size_t>();
    r.aggregates.max = read_number(a.at("max"), "/aggregates/max");
    r.aggregates.median = read_number(a.at("median"), "/aggregates/median");
    r.aggregates.max_over_median = read_number(a.at("max_over_median"), "/aggregates/max_over_median");
    if (!a.at("slope").is_null()) r.aggregates.slope = read_number(a.at("slope"), "/aggregates/slope");
    if (!a.at("slope_stderr").is_null()) r.aggregates.slope_stderr = read_number(a.at("slope_stderr"), "/aggregates/slope_stderr");
    r.aggregates.slope_series = a.at("slope_series").get<std::string>();
    r.verdict = parse_verdict(doc.at("verdict").get<std::string>());
    r.notes = doc.at("notes").get<std::vector<std::string>>();
    if (doc.contains("metadata")) {
        r.timestamp = doc["metadata"].value("timestamp", "");
        r.runtime_seconds = doc["metadata"].value("runtime_seconds", 0.0);
    }
    return r;
}

std::string summary_text(const VerificationReport& r) {
    const auto& c = r.config;
    const auto& a = r.aggregates;
    std::ostringstream os;
    os << "suite      " << to_string(c.suite) << "\n"
       << "statement  " << suite_info(c.suite).statement << "\n"
       << "grid       n=" << c.grid.n << " N=" << c.grid.N << " L=" << fmt(c.grid.L) << "\n"
       << "seed       " << c.seed << "\n"
       << "records    " << a.records << " (" << a.skipped << " skipped)\n";
    if (a.median > 0.0) {
        os << "ratio      max " << fmt(a.max) << ", median " << fmt(a.median) << ", max/median " << fmt(a.max_over_median) << "\n";
    }
    if (a.slope) os << "slope      " << fmt(*a.slope) << " +/- " << fmt(a.slope_stderr.value_or(0.0)) << " (" << a.slope_series << ")\n";
    os << "checks\n";
    for (const auto& ch : r.checks) {
        os << "  [" << (ch.pass ? "ok" : "FAIL") << "] " << ch.name << ": " << fmt(ch.value) << " <= " << fmt(ch.threshold) << "\n";
    }
    if (!r.notes.empty()) {
        os << "notes\n";
        for (const auto& n : r.notes) os << "  " << n << "\n";
    }
    std::size_t shown = 0;
    for (const auto& rec : r.records) {
        if (!rec.skipped) continue;
        if (shown++ == 0) os << "skips\n";
        if (shown > 10) {
            os << "  ...\n";
            break;
        }
        os << "  " << rec.series << " / " << rec.member << " at x=" << fmt(rec.x) << ": " << rec.reason << "\n";
    }
    os << "verdict    " << to_string(r.verdict) << "\n";
    return os.str();
}

void write_report(const VerificationReport& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw std::runtime_error("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
    }
    write_file(dir / "report.json", report_to_json(r).dump(2) + "\n");

    std::ostringstream table;
    table << "# columns: kind, series, member, x (sweep coordinate), refined (1 = grid with 2N), lhs, rhs, "
             "ratio = lhs/rhs, tail (truncation estimate), skipped, reason, params (name=value; ...)\n"
          << "kind,series,member,x,refined,lhs,rhs,ratio,tail,skipped,reason,params\n";
    for (const auto& rec : r.records) {
        std::string params;
        for (const auto& [k, v] : rec.params) params += (params.empty() ? "" : ";") + k + "=" + fmt(v);
        table << rec.kind << ',' << csv_field(rec.series) << ',' << csv_field(rec.member) << ',' << fmt(rec.x) << ','
              << (rec.refined ? 1 : 0) << ',' << fmt(rec.lhs) << ',' << fmt(rec.rhs) << ',' << fmt(rec.ratio) << ','
              << fmt(rec.tail) << ',' << (rec.skipped ? 1 : 0) << ',' << csv_field(rec.reason) << ',' << csv_field(params)
              << '\n';
    }
    write_file(dir / "table.csv", table.str());

    std::ostringstream curves;
    curves << "# columns: series, x (sweep coordinate), y (ratio; envelope over the family for envelope suites)\n"
           << "series,x,y\n";
    for (const auto& c : r.curves) curves << csv_field(c.series) << ',' << fmt(c.x) << ',' << fmt(c.y) << '\n';
    write_file(dir / "plot-curves.csv", curves.str());

    // log2-spaced histogram of the live ratios, per series
    std::ostringstream hist;
    hist << "# columns: series, lo, hi (ratio bin edges, log2-spaced), count\n"
         << "series,lo,hi,count\n";
    std::vector<std::pair<std::string, std::vector<double>>> groups;
    for (const auto& rec : r.records) {
        if (rec.skipped || rec.kind != "ratio" || rec.refined || !(rec.ratio > 0.0)) continue;
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == rec.series; });
        if (it == groups.end()) {
            groups.push_back({rec.series, {}});
            it = std::prev(groups.end());
        }
        it->second.push_back(std::log2(rec.ratio));
    }
    constexpr int bins = 12;
    for (const auto& [series, logs] : groups) {
        const double lo = *std::min_element(logs.begin(), logs.end());
        const double hi = *std::max_element(logs.begin(), logs.end());
        const int count = hi > lo ? bins : 1;
        const double width = hi > lo ? (hi - lo) / bins : 1.0;
        std::vector<int> counts(static_cast<std::size_t>(count), 0);
        for (double v : logs) {
            const int b = hi > lo ? std::min(count - 1, static_cast<int>((v - lo) / width)) : 0;
            ++counts[static_cast<std::size_t>(b)];
        }
        for (int b = 0; b < count; ++b) {
            const double e0 = hi > lo ? lo + b * width : lo;
            const double e1 = hi > lo ? lo + (b + 1) * width : lo;
            hist << csv_field(series) << ',' << fmt(std::exp2(e0)) << ',' << fmt(std::exp2(e1)) << ',' << counts[static_cast<std::size_t>(b)] << '\n';
        }
    }
    write_file(dir / "plot-histogram.csv", hist.str());
    write_file(dir / "summary.txt", summary_text(r));
}

}  // namespace lplab
