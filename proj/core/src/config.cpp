#include "haptolab/config.hpp"

#include "haptolab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace haptolab {

using nlohmann::json;

namespace {

constexpr ExperimentKind kAllKinds[] = {ExperimentKind::diffuse,     ExperimentKind::sharp,
                                        ExperimentKind::compare,     ExperimentKind::generation,
                                        ExperimentKind::convergence, ExperimentKind::profile};

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Reads the keys of one JSON object, remembering which were consumed so that
// leftovers can be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) {
            throw ConfigError("'" + (path_.empty() ? std::string("<root>") : path_) + "' must be an object");
        }
    }

    const json* child(const std::string& key)
    {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string path(const std::string& key) const { return join(path_, key); }

    void number(const std::string& key, double& out)
    {
        if (const json* v = child(key)) {
            if (!v->is_number()) {
                throw ConfigError("'" + path(key) + "' must be a number");
            }
            out = v->get<double>();
        }
    }

    template <class Int>
    void integer(const std::string& key, Int& out)
    {
        if (const json* v = child(key)) {
            if (!v->is_number_integer()) {
                throw ConfigError("'" + path(key) + "' must be an integer");
            }
            out = v->get<Int>();
        }
    }

    void boolean(const std::string& key, bool& out)
    {
        if (const json* v = child(key)) {
            if (!v->is_boolean()) {
                throw ConfigError("'" + path(key) + "' must be true or false");
            }
            out = v->get<bool>();
        }
    }

    void string(const std::string& key, std::string& out)
    {
        if (const json* v = child(key)) {
            if (!v->is_string()) {
                throw ConfigError("'" + path(key) + "' must be a string");
            }
            out = v->get<std::string>();
        }
    }

    void numbers(const std::string& key, std::vector<double>& out)
    {
        if (const json* v = child(key)) {
            if (!v->is_array()) {
                throw ConfigError("'" + path(key) + "' must be an array of numbers");
            }
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_number()) {
                    throw ConfigError("'" + path(key) + "' must be an array of numbers");
                }
                out.push_back(e.get<double>());
            }
        }
    }

    void finish() const
    {
        for (const auto& [key, value] : j_.items()) {
            if (!seen_.count(key)) {
                throw ConfigError("unknown key '" + join(path_, key) + "'");
            }
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

ModeSum read_modes(const json& j, const std::string& path, ModeSum current)
{
    ObjectReader r(j, path);
    r.number("base", current.base);
    if (const json* modes = r.child("modes")) {
        if (!modes->is_array()) {
            throw ConfigError("'" + r.path("modes") + "' must be an array");
        }
        current.modes.clear();
        for (std::size_t k = 0; k < modes->size(); ++k) {
            ModeSum::Mode m;
            ObjectReader mr((*modes)[k], r.path("modes") + "[" + std::to_string(k) + "]");
            mr.integer("i", m.i);
            mr.integer("j", m.j);
            mr.number("amplitude", m.amplitude);
            mr.finish();
            current.modes.push_back(m);
        }
    }
    r.finish();
    return current;
}

json modes_json(const ModeSum& m)
{
    json modes = json::array();
    for (const auto& mode : m.modes) {
        modes.push_back({{"i", mode.i}, {"j", mode.j}, {"amplitude", mode.amplitude}});
    }
    return {{"base", m.base}, {"modes", modes}};
}

RunConfig from_json(const json& root)
{
    RunConfig cfg;
    ObjectReader r(root, "");

    std::string experiment;
    r.string("experiment", experiment);
    if (experiment.empty()) {
        throw ConfigError("missing required key 'experiment'");
    }
    cfg.experiment = parse_experiment(experiment);

    if (const json* g = r.child("grid")) {
        ObjectReader gr(*g, "grid");
        gr.integer("n", cfg.grid_n);
        gr.number("cells_per_eps", cfg.cells_per_eps);
        gr.finish();
    }

    std::string chi_kind = "linear";
    std::vector<double> chi_coefficients{0.0, 1.0};
    if (const json* p = r.child("params")) {
        ObjectReader pr(*p, "params");
        pr.number("eps", cfg.params.eps);
        pr.number("lambda", cfg.params.lambda);
        pr.number("alpha", cfg.params.alpha);
        pr.number("C0", cfg.params.C0);
        if (const json* c = pr.child("chi")) {
            ObjectReader cr(*c, "params.chi");
            cr.string("kind", chi_kind);
            cr.numbers("coefficients", chi_coefficients);
            cr.number("v_max", cfg.chi_v_max);
            cr.finish();
        }
        pr.finish();
    }
    try {
        const auto need = [&](std::size_t n) {
            if (chi_coefficients.size() != n) {
                throw ConfigError("'params.chi.coefficients' needs " + std::to_string(n) + " values for kind " +
                                  chi_kind);
            }
        };
        switch (ChiSpec::parse_kind(chi_kind)) {
        case ChiSpec::Kind::constant:
            need(1);
            cfg.params.chi = ChiSpec::constant(chi_coefficients[0]);
            break;
        case ChiSpec::Kind::linear:
            need(2);
            cfg.params.chi = ChiSpec::linear(chi_coefficients[0], chi_coefficients[1], cfg.chi_v_max);
            break;
        case ChiSpec::Kind::log1p:
            need(2);
            cfg.params.chi = ChiSpec::log1p(chi_coefficients[0], chi_coefficients[1], cfg.chi_v_max);
            break;
        case ChiSpec::Kind::polynomial:
            cfg.params.chi = ChiSpec::polynomial(chi_coefficients, cfg.chi_v_max);
            break;
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("'params.chi': ") + e.what());
    }

    if (const json* s = r.child("shape")) {
        ObjectReader sr(*s, "shape");
        std::string kind = "circle";
        std::vector<double> center{cfg.shape.center.x, cfg.shape.center.y};
        sr.string("kind", kind);
        sr.numbers("center", center);
        sr.number("r0", cfg.shape.r0);
        sr.number("amplitude", cfg.shape.amplitude);
        sr.integer("lobes", cfg.shape.lobes);
        sr.finish();
        if (center.size() != 2) {
            throw ConfigError("'shape.center' needs two coordinates");
        }
        cfg.shape.center = {center[0], center[1]};
        if (kind == "circle") {
            cfg.shape.kind = ShapeSpec::Kind::circle;
        } else if (kind == "star") {
            cfg.shape.kind = ShapeSpec::Kind::star;
        } else {
            throw ConfigError("'shape.kind' must be circle or star");
        }
    }

    if (const json* i = r.child("initial")) {
        ObjectReader ir(*i, "initial");
        ir.number("width", cfg.width);
        ir.number("d0", cfg.d0);
        ir.number("saturation_inside", cfg.saturation.inside);
        ir.number("saturation_outside", cfg.saturation.outside);
        if (const json* v = ir.child("v0")) {
            cfg.v0 = read_modes(*v, "initial.v0", cfg.v0);
        }
        if (const json* m = ir.child("m0")) {
            cfg.m0 = read_modes(*m, "initial.m0", cfg.m0);
        }
        ir.finish();
    }

    if (const json* s = r.child("sharp")) {
        ObjectReader sr(*s, "sharp");
        sr.integer("n", cfg.sharp_n);
        sr.number("d0", cfg.sharp.d0);
        sr.integer("redistance_every", cfg.sharp.redistance_every);
        sr.integer("level_set_substeps", cfg.sharp.level_set_substeps);
        sr.finish();
    }

    r.number("T", cfg.T);
    if (const json* s = r.child("snapshots")) {
        ObjectReader sr(*s, "snapshots");
        sr.integer("count", cfg.snapshot_count);
        sr.numbers("times", cfg.snapshot_times);
        sr.finish();
    }
    r.numbers("eps_list", cfg.eps_list);

    if (const json* g = r.child("generation")) {
        ObjectReader gr(*g, "generation");
        gr.number("eta", cfg.eta);
        gr.number("M0", cfg.M0);
        gr.finish();
    }
    if (const json* e = r.child("envelope")) {
        ObjectReader er(*e, "envelope");
        er.boolean("enabled", cfg.envelope_enabled);
        er.number("d0", cfg.envelope_d0);
        er.number("K", cfg.envelope_K);
        er.finish();
    }
    if (const json* p = r.child("profile")) {
        ObjectReader pr(*p, "profile");
        pr.number("half_width", cfg.profile_half_width);
        pr.integer("n", cfg.profile_n);
        pr.finish();
    }
    if (const json* o = r.child("output")) {
        ObjectReader orr(*o, "output");
        orr.string("dir", cfg.output_dir);
        orr.boolean("write_fields", cfg.write_fields);
        orr.finish();
    }
    r.integer("seed", cfg.seed);
    r.finish();
    return cfg;
}

json to_json(const RunConfig& cfg)
{
    json chi = {{"kind", ChiSpec::kind_name(cfg.params.chi.kind())},
                {"coefficients", cfg.params.chi.coefficients()},
                {"v_max", cfg.chi_v_max}};
    return {
        {"experiment", experiment_name(cfg.experiment)},
        {"grid", {{"n", cfg.grid_n}, {"cells_per_eps", cfg.cells_per_eps}}},
        {"params",
         {{"eps", cfg.params.eps},
          {"lambda", cfg.params.lambda},
          {"alpha", cfg.params.alpha},
          {"C0", cfg.params.C0},
          {"chi", chi}}},
        {"shape",
         {{"kind", cfg.shape.kind == ShapeSpec::Kind::circle ? "circle" : "star"},
          {"center", {cfg.shape.center.x, cfg.shape.center.y}},
          {"r0", cfg.shape.r0},
          {"amplitude", cfg.shape.amplitude},
          {"lobes", cfg.shape.lobes}}},
        {"initial", {{"width", cfg.width}, {"d0", cfg.d0}, {"saturation_inside", cfg.saturation.inside},
                     {"saturation_outside", cfg.saturation.outside}, {"v0", modes_json(cfg.v0)}, {"m0", modes_json(cfg.m0)}}},
        {"sharp",
         {{"n", cfg.sharp_n},
          {"d0", cfg.sharp.d0},
          {"redistance_every", cfg.sharp.redistance_every},
          {"level_set_substeps", cfg.sharp.level_set_substeps}}},
        {"T", cfg.T},
        {"snapshots", {{"count", cfg.snapshot_count}, {"times", cfg.snapshot_times}}},
        {"eps_list", cfg.eps_list},
        {"generation", {{"eta", cfg.eta}, {"M0", cfg.M0}}},
        {"envelope", {{"enabled", cfg.envelope_enabled}, {"d0", cfg.envelope_d0}, {"K", cfg.envelope_K}}},
        {"profile", {{"half_width", cfg.profile_half_width}, {"n", cfg.profile_n}}},
        {"output", {{"dir", cfg.output_dir}, {"write_fields", cfg.write_fields}}},
        {"seed", cfg.seed},
    };
}

void check(bool ok, const std::string& what)
{
    if (!ok) {
        throw ConfigError(what);
    }
}

}  // namespace

std::string experiment_name(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::diffuse:
        return "diffuse";
    case ExperimentKind::sharp:
        return "sharp";
    case ExperimentKind::compare:
        return "compare";
    case ExperimentKind::generation:
        return "generation";
    case ExperimentKind::convergence:
        return "convergence";
    case ExperimentKind::profile:
        return "profile";
    }
    return "unknown";
}

ExperimentKind parse_experiment(std::string_view name)
{
    for (ExperimentKind k : kAllKinds) {
        const std::string n = experiment_name(k);
        if (name == n || name == "simulate-" + n) {
            return k;
        }
    }
    throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::vector<double> RunConfig::schedule() const
{
    if (!snapshot_times.empty()) {
        std::vector<double> t = snapshot_times;
        std::sort(t.begin(), t.end());
        return t;
    }
    std::vector<double> t;
    for (int k = 1; k <= snapshot_count; ++k) {
        t.push_back(k == snapshot_count ? T : T * k / snapshot_count);
    }
    return t;
}

void validate_config(const RunConfig& cfg)
{
    const auto& p = cfg.params;
    check(p.eps > 0.0 && p.eps < 1.0, "'params.eps' must lie in (0, 1)");
    check(p.lambda > 0.0, "'params.lambda' must be positive");
    check(p.alpha > 0.0, "'params.alpha' must be positive");
    check(p.C0 > 1.0, "'params.C0' must exceed 1");
    check(cfg.grid_n >= 8, "'grid.n' must be at least 8");
    check(cfg.cells_per_eps >= 4.0, "under-resolved: 'grid.cells_per_eps' must be at least 4 (h <= eps/4)");
    check(cfg.T > 0.0, "'T' must be positive");
    check(cfg.snapshot_count >= 1, "'snapshots.count' must be at least 1");
    for (double t : cfg.snapshot_times) {
        check(t > 0.0 && t <= cfg.T, "'snapshots.times' must lie in (0, T]");
    }
    check(cfg.shape.r0 > 0.0, "'shape.r0' must be positive");
    if (cfg.shape.kind == ShapeSpec::Kind::star) {
        check(std::abs(cfg.shape.amplitude) < cfg.shape.r0, "'shape.amplitude' must be smaller than r0");
        check(cfg.shape.lobes >= 1, "'shape.lobes' must be at least 1");
    }
    check(cfg.width >= 0.0, "'initial.width' must be nonnegative (0 selects eps)");
    check(cfg.d0 > 0.0, "'initial.d0' must be positive");
    check(cfg.saturation.inside >= 0.0 && cfg.saturation.outside >= 0.0,
          "'initial.saturation_inside/outside' must be nonnegative (0 disables)");
    check(cfg.v0.lower_bound() > 0.0, "'initial.v0' must stay positive (base > sum of |amplitudes|)");
    check(cfg.m0.lower_bound() >= 0.0, "'initial.m0' must stay nonnegative (base >= sum of |amplitudes|)");
    check(cfg.sharp_n >= 8, "'sharp.n' must be at least 8");
    check(cfg.sharp.d0 > 0.0, "'sharp.d0' must be positive");
    check(cfg.sharp.redistance_every >= 1, "'sharp.redistance_every' must be at least 1");
    check(cfg.sharp.level_set_substeps >= 1, "'sharp.level_set_substeps' must be at least 1");
    check(cfg.eta > 0.0 && cfg.eta < 0.25, "'generation.eta' must lie in (0, 1/4)");
    check(cfg.M0 >= 0.0, "'generation.M0' must be nonnegative");
    check(cfg.envelope_d0 > 0.0, "'envelope.d0' must be positive");
    check(cfg.envelope_K > 1.0, "'envelope.K' must exceed 1");
    check(cfg.profile_half_width >= 10.0, "'profile.half_width' must be at least 10");
    check(cfg.profile_n >= 100, "'profile.n' must be at least 100");
    check(!cfg.output_dir.empty(), "'output.dir' must not be empty");
    for (double e : cfg.eps_list) {
        check(e > 0.0 && e < 1.0, "'eps_list' entries must lie in (0, 1)");
    }

    switch (cfg.experiment) {
    case ExperimentKind::diffuse:
    case ExperimentKind::compare: {
        const double h = 1.0 / cfg.grid_n;
        check(h <= p.eps / 4.0 * (1.0 + 1e-12),
              "under-resolved: h = 1/" + std::to_string(cfg.grid_n) + " exceeds eps/4 for eps = " +
                  std::to_string(p.eps));
        break;
    }
    case ExperimentKind::convergence:
        check(cfg.eps_list.size() >= 2, "'eps_list' needs at least two values for a convergence study");
        for (std::size_t k = 1; k < cfg.eps_list.size(); ++k) {
            check(cfg.eps_list[k] < cfg.eps_list[k - 1], "'eps_list' must be strictly decreasing");
        }
        break;
    case ExperimentKind::generation:
    case ExperimentKind::sharp:
    case ExperimentKind::profile:
        break;
    }
}

RunConfig parse_config_text(std::string_view text, std::string_view source)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // locate the failing byte as line:column
        const std::size_t byte = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
        const std::size_t last_nl = text.substr(0, byte).rfind('\n');
        const std::size_t column = byte - (last_nl == std::string_view::npos ? 0 : last_nl + 1) + 1;
        throw ConfigError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                          ": JSON syntax error: " + e.what());
    }
    try {
        RunConfig cfg = from_json(root);
        validate_config(cfg);
        return cfg;
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(source) + ": " + e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string(source) + ": " + e.what());
    }
}

RunConfig parse_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path.string());
}

std::string emit_config(const RunConfig& cfg) { return to_json(cfg).dump(2); }

std::string normalize_config_text(std::string_view text) { return emit_config(parse_config_text(text)); }

}  // namespace haptolab
